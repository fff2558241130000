#include <doctest.h>

#include <cmath>
#include <vector>

#include "claimsentinel/word2vec.hpp"
#include "test_util.hpp"

using namespace claimsentinel;

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// 4 slots, d = 2, fixed values
std::pair<EmbeddingMatrix, EmbeddingMatrix> tiny_matrices() {
    EmbeddingMatrix in = make_embedding(4, 2);
    EmbeddingMatrix out = make_embedding(4, 2);
    const std::vector<double> iv = {1.0, 2.0, -0.3, 0.4, 0.1, -0.2, 0.7, 0.5};
    const std::vector<double> ov = {0.5, -0.5, 0.2, 0.3, 1.0, 0.0, -0.4, 0.6};
    in.data = iv;
    out.data = ov;
    return {in, out};
}

}  // namespace

TEST_CASE("sgns loss matches the closed form") {
    auto [in, out] = tiny_matrices();
    SgnsExample ex;
    ex.center = 0;   // in row [1, 2]
    ex.context = 0;  // out row [0.5, -0.5]
    ex.negatives = {2};  // out row [1, 0]

    const double dot_ctx = 1.0 * 0.5 + 2.0 * -0.5;  // -0.5
    const double dot_neg = 1.0 * 1.0 + 2.0 * 0.0;   // 1.0
    const double expected = -std::log(sigmoid(dot_ctx)) - std::log(sigmoid(-dot_neg));
    CHECK(sgns_loss(in, out, ex) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("sgns gradients match central differences") {
    auto [in, out] = tiny_matrices();
    SgnsExample ex;
    ex.center = 1;
    ex.context = 3;
    ex.negatives = {0, 2};

    const SgnsGradients g = sgns_gradients(in, out, ex);
    const double h = 1e-6;

    for (std::size_t i = 0; i < in.dim; ++i) {
        const double saved = in.row(ex.center)[i];
        in.row(ex.center)[i] = saved + h;
        const double up = sgns_loss(in, out, ex);
        in.row(ex.center)[i] = saved - h;
        const double down = sgns_loss(in, out, ex);
        in.row(ex.center)[i] = saved;
        CHECK(g.d_center[i] == doctest::Approx((up - down) / (2 * h)).epsilon(1e-6));
    }
    for (const auto& [row, grad] : g.d_output) {
        for (std::size_t i = 0; i < out.dim; ++i) {
            const double saved = out.row(row)[i];
            out.row(row)[i] = saved + h;
            const double up = sgns_loss(in, out, ex);
            out.row(row)[i] = saved - h;
            const double down = sgns_loss(in, out, ex);
            out.row(row)[i] = saved;
            CHECK(grad[i] == doctest::Approx((up - down) / (2 * h)).epsilon(1e-6));
        }
    }
}

TEST_CASE("sgns_step equals one explicit gradient-descent update") {
    auto [in, out] = tiny_matrices();
    SgnsExample ex;
    ex.center = 0;
    ex.context = 1;
    ex.negatives = {2, 3};
    const double lr = 0.1;

    EmbeddingMatrix in_manual = in, out_manual = out;
    const SgnsGradients g = sgns_gradients(in_manual, out_manual, ex);
    for (std::size_t i = 0; i < in.dim; ++i) in_manual.row(ex.center)[i] -= lr * g.d_center[i];
    for (const auto& [row, grad] : g.d_output)
        for (std::size_t i = 0; i < out.dim; ++i) out_manual.row(row)[i] -= lr * grad[i];

    sgns_step(in, out, ex, lr);
    for (std::size_t i = 0; i < in.data.size(); ++i)
        CHECK(in.data[i] == doctest::Approx(in_manual.data[i]).epsilon(1e-12));
    for (std::size_t i = 0; i < out.data.size(); ++i)
        CHECK(out.data[i] == doctest::Approx(out_manual.data[i]).epsilon(1e-12));

    // the step moved downhill on this example
    CHECK(sgns_loss(in, out, ex) < sgns_loss(in_manual, out_manual, ex) + 1e-12);
}

TEST_CASE("train_skipgram is deterministic and well-shaped") {
    Dataset data = testutil::toy_dataset({{{"A", "B", "C"}, 0},
                                          {{"B", "A"}, 0},
                                          {{"C", "A", "B"}, 1},
                                          {{"A", "C"}, 0}});
    const Vocabulary vocab = build_vocabulary(data.bills, 1);
    SkipgramParams params;
    params.d = 6;
    params.epochs = 2;
    params.seed = 33;

    const EmbeddingMatrix a = train_skipgram(data, vocab, params);
    CHECK(a.rows == std::size_t(vocab.slot_count()));
    CHECK(a.dim == 6);
    for (double x : a.data) CHECK(std::isfinite(x));

    const EmbeddingMatrix b = train_skipgram(data, vocab, params);
    CHECK(a == b);

    params.seed = 34;
    const EmbeddingMatrix c = train_skipgram(data, vocab, params);
    CHECK_FALSE(a == c);
}

TEST_CASE("fold restriction changes what gets trained") {
    Dataset data = testutil::toy_dataset({{{"A", "B"}, 0}, {{"C", "D"}, 0}, {{"A", "B"}, 0}});
    const Vocabulary vocab = build_vocabulary(data.bills, 1);
    SkipgramParams params;
    params.d = 4;
    params.epochs = 1;
    const std::vector<int> rows = {0, 2};  // never shows C or D
    const EmbeddingMatrix folded = train_skipgram(data, vocab, params, &rows);
    const EmbeddingMatrix full = train_skipgram(data, vocab, params);
    CHECK_FALSE(folded == full);
}

TEST_CASE("tokens sharing contexts end up closer than unrelated ones") {
    // A and B always appear next to C; D and E form a separate world.
    std::vector<std::pair<std::vector<std::string>, int>> rows;
    for (int i = 0; i < 60; ++i) {
        rows.push_back({{"A", "C"}, 0});
        rows.push_back({{"B", "C"}, 0});
        rows.push_back({{"D", "E"}, 0});
    }
    const Dataset data = testutil::toy_dataset(rows);
    const Vocabulary vocab = build_vocabulary(data.bills, 1);
    SkipgramParams params;
    params.d = 8;
    params.epochs = 25;
    params.learning_rate = 0.05;
    params.seed = 5;
    const EmbeddingMatrix E = train_skipgram(data, vocab, params);

    const auto vec = [&](const std::string& t) {
        const int slot = vocab.lookup(t);
        return std::vector<double>(E.row(std::size_t(slot)), E.row(std::size_t(slot)) + E.dim);
    };
    const double related = cosine(vec("A"), vec("B"));
    const double unrelated = cosine(vec("A"), vec("D"));
    CHECK(related > unrelated);
}

TEST_CASE("unusable inputs are rejected") {
    Dataset data = testutil::toy_dataset({{{"A"}, 0}, {{"B"}, 0}});  // no bill has 2 tokens
    const Vocabulary vocab = build_vocabulary(data.bills, 1);
    SkipgramParams params;
    CHECK_THROWS_WITH_AS(train_skipgram(data, vocab, params), doctest::Contains("no training pairs"),
                         std::invalid_argument);
    params.d = 0;
    CHECK_THROWS_AS(train_skipgram(data, vocab, params), std::invalid_argument);
}
