#include <doctest.h>

#include <cmath>
#include <vector>

#include "claimsentinel/features.hpp"
#include "claimsentinel/vocabulary.hpp"
#include "test_util.hpp"

using namespace claimsentinel;

namespace {

// d1=[A,B], d2=[A], d3=[B,B,C]; slots order by count: B(3), A(2), C(1), <oov>
Dataset idf_corpus() { return testutil::toy_dataset({{{"A", "B"}, 0}, {{"A"}, 0}, {{"B", "B", "C"}, 1}}); }

constexpr double kTol = 1e-12;

}  // namespace

TEST_CASE("bow counts occurrences and funnels the rest into OOV") {
    const Dataset data = idf_corpus();
    const Vocabulary vocab = build_vocabulary(data.bills, 2);  // retains B and A only
    CHECK(vocab.tokens == std::vector<std::string>{"B", "A"});

    const Bill bill = testutil::make_bill("x", {"B", "B", "C", "D", "A"}, 0);
    const std::vector<double> x = bow(bill, vocab);
    REQUIRE(x.size() == 3);
    CHECK(x[0] == 2.0);  // B
    CHECK(x[1] == 1.0);  // A
    CHECK(x[2] == 2.0);  // C and D pool in the OOV slot
}

TEST_CASE("idf weights match the hand-computed corpus") {
    const Dataset data = idf_corpus();
    const Vocabulary vocab = build_vocabulary(data.bills, 1);
    const IdfModel model = tfidf_fit(data, vocab);
    CHECK(model.n_documents == 3);
    REQUIRE(model.idf.size() == 4);
    CHECK(model.idf[0] == doctest::Approx(std::log(3.0 / 2.0)).epsilon(kTol));  // B in d1,d3
    CHECK(model.idf[1] == doctest::Approx(std::log(3.0 / 2.0)).epsilon(kTol));  // A in d1,d2
    CHECK(model.idf[2] == doctest::Approx(std::log(3.0)).epsilon(kTol));        // C in d3
    CHECK(model.idf[3] == doctest::Approx(std::log(3.0)).epsilon(kTol));        // OOV: df clamps to 1
}

TEST_CASE("tfidf entries match the hand-computed corpus") {
    const Dataset data = idf_corpus();
    const Vocabulary vocab = build_vocabulary(data.bills, 1);
    const IdfModel model = tfidf_fit(data, vocab);

    const std::vector<double> d1 = tfidf_transform(data.bills[0], vocab, model);
    CHECK(d1[0] == doctest::Approx(0.5 * std::log(1.5)).epsilon(kTol));  // B
    CHECK(d1[1] == doctest::Approx(0.5 * std::log(1.5)).epsilon(kTol));  // A
    CHECK(d1[2] == 0.0);
    CHECK(d1[3] == 0.0);

    const std::vector<double> d3 = tfidf_transform(data.bills[2], vocab, model);
    CHECK(d3[0] == doctest::Approx(2.0 / 3.0 * std::log(1.5)).epsilon(kTol));  // B twice of three
    CHECK(d3[1] == 0.0);
    CHECK(d3[2] == doctest::Approx(1.0 / 3.0 * std::log(3.0)).epsilon(kTol));  // C once of three
}

TEST_CASE("tfidf of an empty sequence is all zeros") {
    const Dataset data = idf_corpus();
    const Vocabulary vocab = build_vocabulary(data.bills, 1);
    const IdfModel model = tfidf_fit(data, vocab);
    const Bill empty = testutil::make_bill("e", {}, 0);
    for (double v : tfidf_transform(empty, vocab, model)) CHECK(v == 0.0);
}

TEST_CASE("fold-restricted idf fit sees only the given rows") {
    const Dataset data = idf_corpus();
    const Vocabulary vocab = build_vocabulary(data.bills, 1);
    const std::vector<int> rows = {0, 1};  // d1 and d2 only
    const IdfModel model = tfidf_fit(data, vocab, &rows);
    CHECK(model.n_documents == 2);
    CHECK(model.idf[1] == doctest::Approx(std::log(2.0 / 2.0)).epsilon(kTol));  // A in both
    CHECK(model.idf[2] == doctest::Approx(std::log(2.0)).epsilon(kTol));        // C unseen: df clamps

    const std::vector<int> none;
    CHECK_THROWS_AS(tfidf_fit(data, vocab, &none), std::invalid_argument);
}

TEST_CASE("static encoder scales training ranges to [0,1]") {
    Dataset data = testutil::toy_dataset({{{"A"}, 0}, {{"A", "B"}, 0}});
    data.bills[0].static_features.age = 20;
    data.bills[1].static_features.age = 60;
    data.bills[0].visit.total_amount = 10.0;
    data.bills[1].visit.total_amount = 30.0;
    const StaticEncoder enc = fit_static_encoder(data);

    CHECK(enc.general_width() == 27);
    CHECK(enc.visit_width() == 16);
    CHECK(enc.width() == 43);

    Bill probe = testutil::make_bill("p", {"A"}, 0);
    probe.static_features.age = 40;       // midpoint of [20,60]
    probe.visit.total_amount = 30.0;      // top of [10,30]
    const std::vector<double> g = encode_general(probe, enc);
    REQUIRE(g.size() == 27);
    CHECK(g[0] == doctest::Approx(0.5).epsilon(kTol));
    CHECK(g[1] == 1.0);  // sex=0 one-hot
    CHECK(g[2] == 0.0);

    const std::vector<double> v = encode_visit_numeric(probe, enc);
    REQUIRE(v.size() == 16);
    CHECK(v[0] == doctest::Approx(1.0).epsilon(kTol));  // total_amount at the max

    // values outside the fitted range extrapolate linearly rather than clamp
    probe.static_features.age = 100;
    CHECK(encode_general(probe, enc)[0] == doctest::Approx(2.0).epsilon(kTol));
}

TEST_CASE("zero-range numeric columns encode as 0") {
    const Dataset data = testutil::toy_dataset({{{"A"}, 0}, {{"B"}, 0}});  // all ages differ, counts same
    const StaticEncoder enc = fit_static_encoder(data);
    const std::vector<double> v = encode_visit_numeric(data.bills[0], enc);
    // count_sum == 1 for both bills -> zero range -> encoded 0
    const int count_sum_index = 1 + 3 + 3;  // total_amount + billing + performance one-hots
    CHECK(v[count_sum_index] == 0.0);
}

TEST_CASE("out-of-schema categoricals are rejected at encode time") {
    const Dataset data = testutil::toy_dataset({{{"A"}, 0}});
    const StaticEncoder enc = fit_static_encoder(data);
    Bill bad = testutil::make_bill("b", {"A"}, 0);
    bad.static_features.sex = 5;
    CHECK_THROWS_WITH_AS(encode_static(bad, enc), doctest::Contains("sex"), std::invalid_argument);
}

TEST_CASE("assemble concatenates treatment and static blocks") {
    const Dataset data = idf_corpus();
    const Vocabulary vocab = build_vocabulary(data.bills, 1);
    const IdfModel model = tfidf_fit(data, vocab);
    const StaticEncoder enc = fit_static_encoder(data);

    const std::vector<double> x = assemble(data.bills[0], vocab, &model, enc, FeatureMode::tfidf);
    CHECK(x.size() == size_t(vocab.slot_count() + enc.width()));
    const std::vector<double> head = tfidf_transform(data.bills[0], vocab, model);
    for (size_t i = 0; i < head.size(); ++i) CHECK(x[i] == head[i]);

    const std::vector<double> xb = assemble(data.bills[0], vocab, nullptr, enc, FeatureMode::bow);
    CHECK(xb.size() == x.size());
    CHECK(xb[0] == 1.0);  // bow count for B

    CHECK_THROWS_AS(assemble(data.bills[0], vocab, nullptr, enc, FeatureMode::tfidf),
                    std::invalid_argument);
}

TEST_CASE("feature names align with the assembled width") {
    const Dataset data = idf_corpus();
    const Vocabulary vocab = build_vocabulary(data.bills, 1);
    const StaticEncoder enc = fit_static_encoder(data);
    const auto names = feature_names(vocab, enc);
    CHECK(names.size() == size_t(vocab.slot_count() + enc.width()));
    CHECK(names[0] == "tok:B");
    CHECK(names[size_t(vocab.size())] == "tok:<oov>");
    CHECK(names[size_t(vocab.slot_count())] == "age");
    CHECK(names.back() == "factor_max");
}
