#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "claimsentinel/gbdt.hpp"
#include "claimsentinel/rng.hpp"
#include "test_util.hpp"

using namespace claimsentinel;

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

TEST_CASE("a single tree finds the separating threshold and Newton leaf values") {
    // two clusters on one feature; the only split satisfying min_leaf=4 is the
    // 4/4 cut at midpoint (4+10)/2
    const std::vector<std::vector<double>> X = {{1}, {2}, {3}, {4}, {10}, {11}, {12}, {13}};
    const std::vector<int> y = {0, 0, 0, 0, 1, 1, 1, 1};
    GbdtParams params;
    params.n_trees = 1;
    params.max_depth = 3;
    params.learning_rate = 1.0;
    params.min_leaf = 4;
    params.lambda = 1.0;

    const GbdtEnsemble model = train_gbdt(X, y, params);
    CHECK(model.base_logit == 0.0);  // balanced classes
    CHECK(model.n_features == 1);
    REQUIRE(model.trees.size() == 1);

    const RegressionTree& tree = model.trees[0];
    REQUIRE(tree.nodes.size() == 3);
    CHECK(tree.nodes[0].feature == 0);
    CHECK(tree.nodes[0].threshold == 7.0);
    // per side: G = ±4*0.5 = ±2, H = 4*0.25 = 1, leaf = -G/(H+1) = ∓1
    CHECK(tree.evaluate({3.0}) == -1.0);
    CHECK(tree.evaluate({12.0}) == 1.0);

    CHECK(predict_proba(model, std::vector<double>{3.0}) == doctest::Approx(sigmoid(-1.0)).epsilon(1e-15));
    CHECK(predict_proba(model, std::vector<double>{12.0}) == doctest::Approx(sigmoid(1.0)).epsilon(1e-15));
}

TEST_CASE("an uninformative constant feature yields flat base-rate predictions") {
    std::vector<std::vector<double>> X(10, std::vector<double>{1.0, 2.0});
    std::vector<int> y(10, 0);
    y[0] = y[1] = y[2] = 1;
    GbdtParams params;
    params.n_trees = 50;

    const GbdtEnsemble model = train_gbdt(X, y, params);
    for (const RegressionTree& tree : model.trees) CHECK(tree.nodes.size() == 1);
    CHECK(predict_proba(model, {1.0, 2.0}) == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(predict_proba(model, {-5.0, 99.0}) == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("min_leaf too large for any split degenerates to the prior") {
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (int i = 1; i <= 10; ++i) {
        X.push_back({double(i)});
        y.push_back(i > 5 ? 1 : 0);
    }
    GbdtParams params;
    params.n_trees = 20;
    params.min_leaf = 6;  // 2*6 > 10, no node may split

    const GbdtEnsemble model = train_gbdt(X, y, params);
    for (const RegressionTree& tree : model.trees) CHECK(tree.nodes.size() == 1);
    // balanced labels: every gradient sum is exactly zero, so leaves stay 0
    CHECK(predict_proba(model, std::vector<double>{2.0}) == 0.5);
    CHECK(predict_proba(model, std::vector<double>{9.0}) == 0.5);
}

TEST_CASE("depth-two trees learn an interaction no single split explains") {
    // y = a xor b on the unit square corners, counts skewed so the greedy
    // root split has positive gain
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    auto corner = [&](double a, double b, int label, int copies) {
        for (int i = 0; i < copies; ++i) {
            X.push_back({a, b});
            y.push_back(label);
        }
    };
    corner(0, 0, 0, 10);
    corner(0, 1, 1, 8);
    corner(1, 0, 1, 8);
    corner(1, 1, 0, 8);

    GbdtParams params;
    params.n_trees = 40;
    params.max_depth = 2;
    params.learning_rate = 0.3;
    params.min_leaf = 1;

    const GbdtEnsemble model = train_gbdt(X, y, params);
    CHECK(predict_proba(model, {0.0, 0.0}) < 0.5);
    CHECK(predict_proba(model, {0.0, 1.0}) > 0.5);
    CHECK(predict_proba(model, {1.0, 0.0}) > 0.5);
    CHECK(predict_proba(model, {1.0, 1.0}) < 0.5);
}

TEST_CASE("row and column subsampling stay reproducible under the seed") {
    Rng rng(404);
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (int i = 0; i < 120; ++i) {
        std::vector<double> x = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
        const double signal = 1.5 * x[0] - x[2] + 0.3 * rng.normal();
        X.push_back(std::move(x));
        y.push_back(signal > 0 ? 1 : 0);
    }

    GbdtParams params;
    params.n_trees = 15;
    params.max_depth = 3;
    params.subsample = 0.7;
    params.colsample = 0.5;
    params.seed = 9;

    const GbdtEnsemble a = train_gbdt(X, y, params);
    const GbdtEnsemble b = train_gbdt(X, y, params);
    CHECK(predict_proba(a, X) == predict_proba(b, X));

    params.seed = 10;
    const GbdtEnsemble c = train_gbdt(X, y, params);
    CHECK(predict_proba(a, X) != predict_proba(c, X));

    // the sampled model should still have picked up the signal
    std::vector<double> scores = predict_proba(a, X);
    CHECK(testutil::roc_auc_oracle(y, scores) > 0.9);
}

TEST_CASE("defective inputs are rejected up front") {
    const std::vector<std::vector<double>> X = {{1.0}, {2.0}, {3.0}, {4.0}};
    const std::vector<int> y = {0, 1, 0, 1};
    GbdtParams params;

    CHECK_THROWS_WITH_AS(train_gbdt({{1.0}}, {0}, params), doctest::Contains("two samples"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(train_gbdt(X, {0, 1}, params), doctest::Contains("mismatch"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(train_gbdt({{1.0}, {2.0, 3.0}, {4.0}, {5.0}}, y, params),
                         doctest::Contains("ragged"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(train_gbdt({{1.0}, {std::nan("")}, {3.0}, {4.0}}, y, params),
                         doctest::Contains("NaN"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(train_gbdt(X, {0, 0, 0, 0}, params), doctest::Contains("single class"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(train_gbdt(X, {0, 2, 0, 1}, params), doctest::Contains("0 or 1"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(train_gbdt({{}, {}, {}, {}}, y, params), doctest::Contains("zero-width"),
                         std::invalid_argument);

    params.learning_rate = 0.0;
    CHECK_THROWS_AS(train_gbdt(X, y, params), std::invalid_argument);
    params.learning_rate = 0.1;
    params.colsample = 1.5;
    CHECK_THROWS_AS(train_gbdt(X, y, params), std::invalid_argument);
}

TEST_CASE("prediction validates its input vector") {
    GbdtParams params;
    params.n_trees = 2;
    const GbdtEnsemble model =
        train_gbdt({{1.0, 0.0}, {2.0, 1.0}, {3.0, 0.0}, {4.0, 1.0}}, {0, 0, 1, 1}, params);
    CHECK_THROWS_WITH_AS(predict_proba(model, std::vector<double>{1.0}), doctest::Contains("expected 2"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(predict_proba(model, std::vector<double>{1.0, std::nan("")}), doctest::Contains("NaN"),
                         std::invalid_argument);
}

TEST_CASE("checkpoints reproduce predictions bit for bit") {
    Rng rng(77);
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (int i = 0; i < 60; ++i) {
        X.push_back({rng.normal(), rng.normal(), rng.next_double()});
        y.push_back(X.back()[0] + X.back()[2] > 0.5 ? 1 : 0);
    }
    GbdtParams params;
    params.n_trees = 10;
    params.max_depth = 4;
    params.subsample = 0.8;

    const GbdtEnsemble model = train_gbdt(X, y, params);
    testutil::TempDir dir("gbdt-ckpt");
    const std::string path = (dir / "model.ckpt").string();
    save_gbdt(model, path);
    const GbdtEnsemble back = load_gbdt(path);

    CHECK(back.base_logit == model.base_logit);
    CHECK(back.learning_rate == model.learning_rate);
    CHECK(back.n_features == model.n_features);
    CHECK(back.trees.size() == model.trees.size());
    CHECK(predict_proba(back, X) == predict_proba(model, X));
}
