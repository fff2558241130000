#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "claimsentinel/generator.hpp"
#include "test_util.hpp"

using namespace claimsentinel;

namespace {

GeneratorConfig small_config() {
    GeneratorConfig config;
    config.n_bills = 5000;  // stock vocabulary, desk-scale corpus
    config.seed = 7;
    return config;
}

}  // namespace

TEST_CASE("the synthetic corpus respects its configured shape") {
    const GeneratorConfig config = small_config();
    const Dataset data = generate_synthetic(config);

    REQUIRE(data.size() == 5000);
    CHECK(data.schema == DatasetSchema{});
    CHECK_NOTHROW(validate_dataset(data));

    CHECK(data.bills.front().id == "B0001");
    CHECK(data.bills.back().id == "B5000");

    std::set<std::string> tokens;
    long long fraud = 0;
    for (const Bill& b : data.bills) {
        CHECK(b.length() >= std::size_t(config.length_mode));
        CHECK(b.length() <= std::size_t(config.max_length));
        fraud += b.label;
        for (const std::string& t : b.treatments) tokens.insert(t);
    }
    CHECK(tokens.size() <= std::size_t(config.vocab_size));
    CHECK(tokens.count("T001") == 1);  // the head rank is everywhere

    // calibrated marginal: 2% +- sampling noise (sigma ~ 0.2pp at n=5000)
    const double rate = double(fraud) / double(data.size());
    CHECK(rate > 0.012);
    CHECK(rate < 0.028);

    // modal length is the configured one
    const std::vector<long long> hist = length_histogram(data);
    const auto mode = std::max_element(hist.begin(), hist.end()) - hist.begin();
    CHECK(mode == config.length_mode);
    long long total = 0;
    for (long long c : hist) total += c;
    CHECK(total == 5000);

    // no single token gives fraud away
    const Vocabulary vocab = build_vocabulary(data.bills, 2);
    CHECK(max_label_correlation(data, vocab) < 0.1);
}

TEST_CASE("generation is a pure function of the config") {
    GeneratorConfig config = small_config();
    config.n_bills = 500;
    config.vocab_size = 100;
    config.n_signal_pairs = 4;  // fits the 100-token vocabulary's band
    const Dataset a = generate_synthetic(config);
    const Dataset b = generate_synthetic(config);
    CHECK(a == b);

    config.seed += 1;
    const Dataset c = generate_synthetic(config);
    CHECK_FALSE(a == c);
}

TEST_CASE("bad generator settings are rejected") {
    const auto reject = [](auto mutate) {
        GeneratorConfig config = small_config();
        mutate(config);
        CHECK_THROWS_AS(generate_synthetic(config), std::invalid_argument);
    };
    reject([](GeneratorConfig& c) { c.vocab_size = 0; });
    reject([](GeneratorConfig& c) { c.fraud_rate = 0.0; });
    reject([](GeneratorConfig& c) { c.fraud_rate = 1.0; });
    reject([](GeneratorConfig& c) { c.n_bills = -1; });
    reject([](GeneratorConfig& c) { c.length_mode = 0; });
    reject([](GeneratorConfig& c) { c.max_length = 1; });  // below the mode
    reject([](GeneratorConfig& c) { c.n_signal_pairs = 0; });
    reject([](GeneratorConfig& c) { c.signal_strength = 0.0; });
    reject([](GeneratorConfig& c) { c.signal_strength = 1.1; });
    reject([](GeneratorConfig& c) { c.zipf_exponent = 0.0; });
    reject([](GeneratorConfig& c) {
        c.vocab_size = 40;       // mid-rank band holds 4 tokens
        c.n_signal_pairs = 9;    // needs 18
    });
}

TEST_CASE("rank_frequency orders by count, ties by code") {
    Dataset data = testutil::toy_dataset({{{"A", "B", "A"}, 0}, {{"B", "A"}, 1}, {{"C"}, 0}});
    // counts: A=3, B=2, C=1
    const auto rf = rank_frequency(data);
    REQUIRE(rf.size() == 3);
    CHECK(rf[0] == std::pair<int, long long>{1, 3});
    CHECK(rf[1] == std::pair<int, long long>{2, 2});
    CHECK(rf[2] == std::pair<int, long long>{3, 1});

    const Dataset empty;
    CHECK_THROWS_AS(rank_frequency(empty), std::invalid_argument);

    SUBCASE("generated corpora come out non-increasing and complete") {
        GeneratorConfig config = small_config();
        config.n_bills = 1000;
        const Dataset gen = generate_synthetic(config);
        const auto ranks = rank_frequency(gen);
        long long tokens = 0, sum = 0;
        for (const Bill& b : gen.bills) tokens += static_cast<long long>(b.length());
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            CHECK(ranks[i].first == int(i + 1));
            if (i > 0) CHECK(ranks[i].second <= ranks[i - 1].second);
            sum += ranks[i].second;
        }
        CHECK(sum == tokens);
        CHECK(ranks.front().second > ranks.back().second);
    }
}

TEST_CASE("max_label_correlation matches a hand-worked value") {
    // token A: present in 3 of 6 bills, 2 of them fraud; B mirrors it.
    // r = (1/3 - 1/4) / sqrt(1/2 * 1/2 * 1/2 * 1/2) = 1/3
    Dataset data = testutil::toy_dataset({{{"A"}, 1}, {{"A"}, 1}, {{"A"}, 0},
                                          {{"B"}, 1}, {{"B"}, 0}, {{"B"}, 0}});
    const Vocabulary vocab = build_vocabulary(data.bills, 1);
    CHECK(max_label_correlation(data, vocab) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    SUBCASE("a perfectly aligned token scores one") {
        Dataset d = testutil::toy_dataset({{{"A"}, 1}, {{"A"}, 1}, {{"B"}, 0}, {{"B"}, 0}});
        CHECK(max_label_correlation(d, build_vocabulary(d.bills, 1)) == doctest::Approx(1.0));
    }
    SUBCASE("tokens present everywhere are skipped as zero-variance") {
        Dataset d = testutil::toy_dataset({{{"A", "C"}, 1}, {{"A", "C"}, 0}});
        // both retained tokens are constant columns, so nothing is scorable
        CHECK(max_label_correlation(d, build_vocabulary(d.bills, 1)) == 0.0);
    }
    SUBCASE("degenerate labels throw") {
        Dataset d = testutil::toy_dataset({{{"A"}, 1}, {{"B"}, 1}});
        CHECK_THROWS_AS(max_label_correlation(d, build_vocabulary(d.bills, 1)),
                        std::invalid_argument);
        const Dataset none;
        CHECK_THROWS_AS(max_label_correlation(none, build_vocabulary(d.bills, 1)),
                        std::invalid_argument);
    }
}

TEST_CASE("length_histogram clamps at its cap") {
    Dataset data;
    for (std::size_t k : {std::size_t(0), std::size_t(1), std::size_t(2), std::size_t(5),
                          std::size_t(50), std::size_t(60)}) {
        std::vector<std::string> seq(k, "A");
        data.bills.push_back(testutil::make_bill("b" + std::to_string(data.bills.size()), seq, 0));
    }
    const std::vector<long long> hist = length_histogram(data, 50);
    REQUIRE(hist.size() == 51);
    CHECK(hist[0] == 1);
    CHECK(hist[1] == 1);
    CHECK(hist[2] == 1);
    CHECK(hist[5] == 1);
    CHECK(hist[50] == 2);  // 50 and the clamped 60

    CHECK_THROWS_AS(length_histogram(data, 0), std::invalid_argument);
}
