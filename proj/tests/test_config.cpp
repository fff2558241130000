#include <doctest.h>

#include <string>

#include "claimsentinel/config.hpp"
#include "test_util.hpp"

using namespace claimsentinel;

namespace {

Config parse(const std::string& text) { return Config::parse(text, "test.cfg"); }

}  // namespace

TEST_CASE("sections, comments, and whitespace parse") {
    Config c = parse(
        "# leading comment\n"
        "[generator]\n"
        "n_bills = 500\n"
        "fraud_rate=0.05\n"
        "\n"
        "[model]\n"
        "kind = gbdt   \n");
    CHECK(c.get_int("generator", "n_bills", 0) == 500);
    CHECK(c.get_double("generator", "fraud_rate", 0) == doctest::Approx(0.05));
    CHECK(c.get_str("model", "kind", "") == "gbdt");
    CHECK_NOTHROW(c.finish());
}

TEST_CASE("missing keys fall back; has() does not consume") {
    Config c = parse("[model]\nkind = swem\n");
    CHECK(c.has("model", "kind"));
    CHECK_FALSE(c.has("model", "d"));
    CHECK(c.get_int("model", "d", 300) == 300);
    CHECK(c.unconsumed().size() == 1);  // has() left kind untouched
    CHECK(c.get_str("model", "kind", "") == "swem");
    CHECK(c.unconsumed().empty());
}

TEST_CASE("require_str names the missing key") {
    Config c = parse("[data]\npath = x.jsonl\n");
    CHECK(c.require_str("data", "path") == "x.jsonl");
    CHECK_THROWS_WITH_AS(c.require_str("data", "bundle_dir"),
                         doctest::Contains("data.bundle_dir"), ConfigError);
}

TEST_CASE("typed getters reject garbage with the key location") {
    Config c = parse("[model]\nn_trees = many\nlr = fast\nflag = perhaps\nseed = -1\n");
    CHECK_THROWS_WITH_AS(c.get_int("model", "n_trees", 0), doctest::Contains("not an integer"), ConfigError);
    CHECK_THROWS_WITH_AS(c.get_double("model", "lr", 0.0), doctest::Contains("not a number"), ConfigError);
    CHECK_THROWS_WITH_AS(c.get_bool("model", "flag", false), doctest::Contains("not a boolean"), ConfigError);
    CHECK_THROWS_WITH_AS(c.get_u64("model", "seed", 0), doctest::Contains("not an unsigned integer"),
                         ConfigError);
}

TEST_CASE("boolean spellings") {
    Config c = parse("[a]\nt1 = true\nt2 = 1\nf1 = false\nf2 = 0\n");
    CHECK(c.get_bool("a", "t1", false));
    CHECK(c.get_bool("a", "t2", false));
    CHECK_FALSE(c.get_bool("a", "f1", true));
    CHECK_FALSE(c.get_bool("a", "f2", true));
}

TEST_CASE("lists split on commas") {
    Config c = parse("[sweep]\nfractions = 0.1, 0.5 ,1.0\ndimensions = 8,16\n");
    CHECK(c.get_double_list("sweep", "fractions", {}) == std::vector<double>{0.1, 0.5, 1.0});
    CHECK(c.get_int_list("sweep", "dimensions", {}) == std::vector<long long>{8, 16});
}

TEST_CASE("malformed input is rejected with line numbers") {
    CHECK_THROWS_WITH_AS(parse("[unclosed\n"), doctest::Contains("test.cfg:1"), ConfigError);
    CHECK_THROWS_WITH_AS(parse("[a]\njust words\n"), doctest::Contains("test.cfg:2"), ConfigError);
    CHECK_THROWS_WITH_AS(parse("key = 1\n"), doctest::Contains("key 'key'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse("[a]\nx = 1\nx = 2\n"), doctest::Contains("duplicate"), ConfigError);
    CHECK_THROWS_WITH_AS(parse("[a]\n= 1\n"), doctest::Contains("empty key"), ConfigError);
}

TEST_CASE("finish rejects untouched keys") {
    Config c = parse("[generator]\nn_bills = 5\nmystery = 1\n");
    CHECK(c.get_int("generator", "n_bills", 0) == 5);
    CHECK_THROWS_WITH_AS(c.finish(), doctest::Contains("generator.mystery"), ConfigError);
    const auto leftover = c.unconsumed();
    REQUIRE(leftover.size() == 1);
    CHECK(leftover[0].first == "generator");
    CHECK(leftover[0].second == "mystery");
}

TEST_CASE("load reads a real file and reports a missing one") {
    testutil::TempDir dir("config");
    const auto path = dir / "run.cfg";
    testutil::spit(path, "[generator]\nn_bills = 7\n");
    Config c = Config::load(path.string());
    CHECK(c.get_int("generator", "n_bills", 0) == 7);
    CHECK_THROWS_AS(Config::load((dir / "absent.cfg").string()), ConfigError);
}
