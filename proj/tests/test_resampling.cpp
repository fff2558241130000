#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "claimsentinel/resampling.hpp"
#include "claimsentinel/rng.hpp"
#include "claimsentinel/vocabulary.hpp"
#include "test_util.hpp"

using namespace claimsentinel;

namespace {

// Distance from s to the closest point of segment [p, q], along with the
// segment parameter of that closest point.
double segment_distance(const std::vector<double>& s, const std::vector<double>& p,
                        const std::vector<double>& q, double& t_out) {
    double qp2 = 0.0, dot = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        qp2 += (q[j] - p[j]) * (q[j] - p[j]);
        dot += (s[j] - p[j]) * (q[j] - p[j]);
    }
    const double t = qp2 == 0.0 ? 0.0 : dot / qp2;
    t_out = t;
    double d2 = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const double proj = p[j] + t * (q[j] - p[j]);
        d2 += (s[j] - proj) * (s[j] - proj);
    }
    return std::sqrt(d2);
}

// True when s sits on a segment between two of the given points.
bool on_some_segment(const std::vector<double>& s, const std::vector<std::vector<double>>& points) {
    for (std::size_t a = 0; a < points.size(); ++a)
        for (std::size_t b = 0; b < points.size(); ++b) {
            if (a == b) continue;
            double t = 0.0;
            if (segment_distance(s, points[a], points[b], t) <= 1e-9 && t >= -1e-12 && t <= 1.0 + 1e-12)
                return true;
        }
    return false;
}

// Two well-separated 2-d clusters: `n_min` minority (label 1) near the origin,
// `n_maj` majority (label 0) near (5, 5).
void two_clusters(int n_min, int n_maj, std::vector<std::vector<double>>& X, std::vector<int>& y,
                  std::uint64_t seed = 5) {
    Rng rng(seed);
    X.clear();
    y.clear();
    for (int i = 0; i < n_min; ++i) {
        X.push_back({rng.next_double() - 0.5, rng.next_double() - 0.5});
        y.push_back(1);
    }
    for (int i = 0; i < n_maj; ++i) {
        X.push_back({5.0 + rng.next_double() - 0.5, 5.0 + rng.next_double() - 0.5});
        y.push_back(0);
    }
}

}  // namespace

TEST_CASE("interpolate walks the segment") {
    CHECK(interpolate({1.0, 2.0}, {3.0, -2.0}, 0.0) == std::vector<double>{1.0, 2.0});
    CHECK(interpolate({1.0, 2.0}, {3.0, -2.0}, 1.0) == std::vector<double>{3.0, -2.0});
    CHECK(interpolate({1.0, 2.0}, {3.0, -2.0}, 0.25) == std::vector<double>{1.5, 1.0});
    CHECK_THROWS_AS(interpolate({1.0}, {1.0, 2.0}, 0.5), std::invalid_argument);
}

TEST_CASE("method names round-trip") {
    for (auto t : {ResampleTag::none, ResampleTag::smote, ResampleTag::adasyn,
                   ResampleTag::repeated_enn, ResampleTag::instance_hardness, ResampleTag::smoteenn})
        CHECK(resample_tag_from_string(to_string(t)) == t);
    CHECK_THROWS_AS(resample_tag_from_string("bootstrap"), std::invalid_argument);
    CHECK(ResampleMethod::make(ResampleTag::repeated_enn).k_neighbors == 3);
    CHECK(ResampleMethod::make(ResampleTag::smote).k_neighbors == 5);
}

TEST_CASE("the null method copies its input") {
    std::vector<std::vector<double>> X, X_out;
    std::vector<int> y, y_out;
    two_clusters(4, 9, X, y);
    resample(X, y, ResampleMethod::make(ResampleTag::none), X_out, y_out);
    CHECK(X_out == X);
    CHECK(y_out == y);
}

TEST_CASE("smote balances exactly with on-segment synthetics after the originals") {
    std::vector<std::vector<double>> X, X_out;
    std::vector<int> y, y_out;
    two_clusters(5, 20, X, y);
    ResampleMethod method = ResampleMethod::make(ResampleTag::smote);
    method.k_neighbors = 3;

    resample(X, y, method, X_out, y_out);
    REQUIRE(X_out.size() == 40);  // 25 originals + 15 synthetics
    for (std::size_t i = 0; i < X.size(); ++i) {
        CHECK(X_out[i] == X[i]);
        CHECK(y_out[i] == y[i]);
    }

    std::vector<std::vector<double>> minority_points;
    for (std::size_t i = 0; i < X.size(); ++i)
        if (y[i] == 1) minority_points.push_back(X[i]);
    long long pos = 0, neg = 0;
    for (std::size_t i = 0; i < y_out.size(); ++i) {
        (y_out[i] == 1 ? pos : neg) += 1;
        if (i >= X.size()) {
            CHECK(y_out[i] == 1);  // synthetics take the minority label
            CHECK(on_some_segment(X_out[i], minority_points));
        }
    }
    CHECK(pos == neg);

    SUBCASE("deterministic under the seed") {
        std::vector<std::vector<double>> X2;
        std::vector<int> y2;
        resample(X, y, method, X2, y2);
        CHECK(X2 == X_out);
        method.seed += 1;
        resample(X, y, method, X2, y2);
        CHECK(X2 != X_out);
    }
}

TEST_CASE("smote treats whichever class is smaller as the minority") {
    // here label 0 is the rare one
    std::vector<std::vector<double>> X = {{0.0}, {0.1}, {0.2}, {5.0}, {5.1}, {5.2}, {5.3}, {5.4}};
    std::vector<int> y = {0, 0, 0, 1, 1, 1, 1, 1};
    ResampleMethod method = ResampleMethod::make(ResampleTag::smote);
    method.k_neighbors = 2;
    std::vector<std::vector<double>> X_out;
    std::vector<int> y_out;
    resample(X, y, method, X_out, y_out);
    REQUIRE(X_out.size() == 10);
    CHECK(y_out[8] == 0);
    CHECK(y_out[9] == 0);
}

TEST_CASE("smote needs more minority samples than neighbors") {
    std::vector<std::vector<double>> X, X_out;
    std::vector<int> y, y_out;
    two_clusters(4, 12, X, y);
    ResampleMethod method = ResampleMethod::make(ResampleTag::smote);  // k = 5 > 4 minority
    CHECK_THROWS_WITH_AS(resample(X, y, method, X_out, y_out),
                         doctest::Contains("more than k_neighbors"), std::invalid_argument);
}

TEST_CASE("adasyn spends its budget on minority points in majority territory") {
    // 4 minority near the origin plus 2 minority embedded in the majority
    // cluster; only the embedded pair has majority-dominated neighborhoods
    std::vector<std::vector<double>> X, X_out;
    std::vector<int> y, y_out;
    two_clusters(4, 20, X, y);
    X.push_back({5.2, 4.9});
    y.push_back(1);
    X.push_back({4.8, 5.1});
    y.push_back(1);

    ResampleMethod method = ResampleMethod::make(ResampleTag::adasyn);
    method.k_neighbors = 3;
    resample(X, y, method, X_out, y_out);

    // llround(1.0 * 20) - 6 = 14 synthetics, exact balance
    REQUIRE(X_out.size() == X.size() + 14);
    const std::vector<std::vector<double>> embedded = {X[24], X[25]};
    std::vector<std::vector<double>> minority_points;
    for (std::size_t i = 0; i < X.size(); ++i)
        if (y[i] == 1) minority_points.push_back(X[i]);

    for (std::size_t i = X.size(); i < X_out.size(); ++i) {
        CHECK(y_out[i] == 1);
        // every synthetic segment must start at one of the embedded points,
        // because the origin-cluster points carry zero hardness weight
        bool from_embedded = false;
        for (const auto& p : embedded)
            for (const auto& q : minority_points) {
                if (p == q) continue;
                double t = 0.0;
                if (segment_distance(X_out[i], p, q, t) <= 1e-9 && t >= -1e-12 && t <= 1.0 + 1e-12)
                    from_embedded = true;
            }
        CHECK(from_embedded);
    }
}

TEST_CASE("repeated_enn deletes majority invaders and reaches a fixed point") {
    // minority triplet near 0 with two majority invaders in between, plus a
    // clean majority cluster at 10
    std::vector<std::vector<double>> X = {{0.0}, {0.1}, {0.2}, {0.05}, {0.15},
                                          {10.0}, {10.1}, {10.2}, {10.3}, {10.4}};
    std::vector<int> y = {1, 1, 1, 0, 0, 0, 0, 0, 0, 0};

    std::vector<std::vector<double>> X_out;
    std::vector<int> y_out;
    resample(X, y, ResampleMethod::make(ResampleTag::repeated_enn), X_out, y_out);

    REQUIRE(X_out.size() == 8);
    // all minority rows kept, invaders gone, survivors in original order
    CHECK(X_out[0] == X[0]);
    CHECK(X_out[1] == X[1]);
    CHECK(X_out[2] == X[2]);
    CHECK(X_out[3] == X[5]);
    CHECK(y_out == std::vector<int>{1, 1, 1, 0, 0, 0, 0, 0});

    SUBCASE("the cleaned set is already stable") {
        std::vector<std::vector<double>> X_again;
        std::vector<int> y_again;
        resample(X_out, y_out, ResampleMethod::make(ResampleTag::repeated_enn), X_again, y_again);
        CHECK(X_again == X_out);
        CHECK(y_again == y_out);
    }
}

TEST_CASE("instance hardness keeps every minority row and the requested share of the majority") {
    std::vector<std::vector<double>> X, X_out;
    std::vector<int> y, y_out;
    two_clusters(6, 14, X, y);

    ResampleMethod method = ResampleMethod::make(ResampleTag::instance_hardness);
    method.iht_keep_fraction = 0.5;
    resample(X, y, method, X_out, y_out);

    REQUIRE(X_out.size() == 13);  // 6 minority + llround(0.5 * 14) = 7 majority
    CHECK(std::count(y_out.begin(), y_out.end(), 1) == 6);
    CHECK(std::count(y_out.begin(), y_out.end(), 0) == 7);

    // survivors preserve the original row order
    std::size_t cursor = 0;
    for (const auto& row : X_out) {
        while (cursor < X.size() && X[cursor] != row) ++cursor;
        REQUIRE(cursor < X.size());
        ++cursor;
    }
}

TEST_CASE("smoteenn oversamples then prunes only majority rows") {
    std::vector<std::vector<double>> X, X_out;
    std::vector<int> y, y_out;
    two_clusters(5, 16, X, y);
    // a majority straggler inside the minority cluster, food for the ENN pass
    X.push_back({0.05, 0.0});
    y.push_back(0);

    ResampleMethod method = ResampleMethod::make(ResampleTag::smoteenn);
    method.k_neighbors = 3;
    resample(X, y, method, X_out, y_out);

    const long long pos = std::count(y_out.begin(), y_out.end(), 1);
    const long long neg = std::count(y_out.begin(), y_out.end(), 0);
    CHECK(pos == 17);  // 5 originals + (17 majority - 5) synthetics, none pruned
    CHECK(neg < 17);   // the straggler was voted out
    CHECK(neg >= 16);

    std::vector<std::vector<double>> X2;
    std::vector<int> y2;
    resample(X, y, method, X2, y2);
    CHECK(X2 == X_out);
    CHECK(y2 == y_out);
}

TEST_CASE("defective inputs and parameters are rejected") {
    std::vector<std::vector<double>> X = {{1.0}, {2.0}}, X_out;
    std::vector<int> y = {0}, y_out;
    ResampleMethod method = ResampleMethod::make(ResampleTag::smote);
    CHECK_THROWS_WITH_AS(resample(X, y, method, X_out, y_out), doctest::Contains("mismatch"),
                         std::invalid_argument);

    y = {0, 0};
    CHECK_THROWS_WITH_AS(resample(X, y, method, X_out, y_out), doctest::Contains("both classes"),
                         std::invalid_argument);

    y = {0, 1};
    method.target_ratio = 1.5;
    CHECK_THROWS_AS(resample(X, y, method, X_out, y_out), std::invalid_argument);
    method.target_ratio = 1.0;
    method.k_neighbors = 0;
    CHECK_THROWS_AS(resample(X, y, method, X_out, y_out), std::invalid_argument);
}

TEST_CASE("the benchmark evaluates each method against an untouched test fold") {
    std::vector<std::pair<std::vector<std::string>, int>> rows;
    for (int i = 0; i < 50; ++i) {
        const bool fraud = i % 5 == 0;  // 10 fraud, 40 clean
        if (fraud)
            rows.push_back({{"RISKY", "A", "B"}, 1});
        else
            rows.push_back({{"A", "B", (i % 2) ? "C" : "D"}, 0});
    }
    const Dataset data = testutil::toy_dataset(rows);
    const Vocabulary vocab = build_vocabulary(data.bills, 1);

    ResampleMethod smote = ResampleMethod::make(ResampleTag::smote);
    smote.k_neighbors = 2;
    GbdtParams params;
    params.n_trees = 10;
    params.max_depth = 2;

    const auto bench = resample_benchmark(data, vocab, {smote}, params, 0.8, 99);
    REQUIRE(bench.size() == 2);
    CHECK(bench[0].method == "none");
    CHECK(bench[1].method == "smote");
    CHECK(bench[0].train_rows == 40);
    CHECK(bench[1].train_rows > bench[0].train_rows);
    for (const auto& row : bench) {
        CHECK(row.roc_auc >= 0.0);
        CHECK(row.roc_auc <= 1.0);
        CHECK(row.pr_auc >= 0.0);
        CHECK(row.pr_auc <= 1.0);
    }
}
