#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "claimsentinel/robustness.hpp"
#include "test_util.hpp"

using namespace claimsentinel;

namespace {

// Fraud bills carry BAD, the rest GOOD; every bill shares the filler X.
Dataset marked_dataset() {
    return testutil::toy_dataset({{{"BAD", "X"}, 1},
                                  {{"GOOD", "X"}, 0},
                                  {{"BAD", "X", "X"}, 1},
                                  {{"GOOD", "X"}, 0},
                                  {{"BAD", "X"}, 1},
                                  {{"GOOD", "X", "X"}, 0}});
}

bool contains(const Bill& bill, const std::string& token) {
    return std::find(bill.treatments.begin(), bill.treatments.end(), token) != bill.treatments.end();
}

// GOOD overrides BAD: an appended GOOD whitewashes a fraudulent sequence to a
// score below even the all-clean bills.
double token_scorer(const Bill& bill) {
    const bool bad = contains(bill, "BAD");
    const bool good = contains(bill, "GOOD");
    if (bad && good) return 0.1;
    if (bad) return 0.9;
    if (good) return 0.3;
    return 0.5;
}

}  // namespace

TEST_CASE("attack mode names round-trip") {
    for (auto m : {AttackMode::none, AttackMode::random, AttackMode::malicious})
        CHECK(attack_mode_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(attack_mode_from_string("replay"), std::invalid_argument);
}

TEST_CASE("random_append adds one neutral retained token per bill") {
    const Dataset data = marked_dataset();
    const Dataset original = data;
    const Vocabulary vocab = build_vocabulary(data.bills, 1);

    const Dataset out = random_append(data, vocab, 42);
    CHECK(data == original);  // input untouched
    REQUIRE(out.size() == data.size());

    for (std::size_t i = 0; i < out.bills.size(); ++i) {
        const Bill& before = data.bills[i];
        const Bill& after = out.bills[i];
        REQUIRE(after.treatments.size() == before.treatments.size() + 1);
        for (std::size_t t = 0; t < before.treatments.size(); ++t)
            CHECK(after.treatments[t] == before.treatments[t]);
        CHECK(vocab.is_retained(after.treatments.back()));

        const std::size_t k = after.treatments.size();
        REQUIRE(after.visit.count.size() == k);
        CHECK(after.visit.count.back() == 1);
        CHECK(after.visit.cost.back() == 0.0);
        CHECK(after.visit.factor.back() == 1.0);
        CHECK(after.visit.total_amount == before.visit.total_amount);
        CHECK(after.label == before.label);
    }

    CHECK(random_append(data, vocab, 42) == out);
    CHECK(random_append(data, vocab, 43) != out);

    const Vocabulary empty;
    CHECK_THROWS_AS(random_append(data, empty, 42), std::invalid_argument);
}

TEST_CASE("appended visit lines copy each bill's modal categorical values") {
    Dataset data = marked_dataset();
    Bill& b = data.bills[2];  // three treatments
    b.visit.group = {7, 2, 2};          // clear mode 2
    b.visit.benefit_kind = {3, 5, 1};   // all tied: smallest value wins
    b.visit.cost_category = {4, 4, 9};

    const Vocabulary vocab = build_vocabulary(data.bills, 1);
    const Dataset out = random_append(data, vocab, 1);
    const Bill& after = out.bills[2];
    CHECK(after.visit.group.back() == 2);
    CHECK(after.visit.benefit_kind.back() == 1);
    CHECK(after.visit.cost_category.back() == 4);
}

TEST_CASE("malicious_append whitewashes every fraudulent bill with the best candidate") {
    const Dataset data = marked_dataset();
    const Vocabulary vocab = build_vocabulary(data.bills, 1);

    const MaliciousResult result =
        malicious_append(token_scorer, data, vocab, vocab.size(), 9);

    REQUIRE(result.chosen.size() == 3);
    for (const auto& [id, token] : result.chosen) CHECK(token == "GOOD");

    for (std::size_t i = 0; i < data.bills.size(); ++i) {
        const Bill& before = data.bills[i];
        const Bill& after = result.data.bills[i];
        if (before.label == 1) {
            REQUIRE(after.treatments.size() == before.treatments.size() + 1);
            CHECK(after.treatments.back() == "GOOD");
        } else {
            CHECK(after == before);  // non-fraud bills pass through untouched
        }
    }

    CHECK_THROWS_AS(malicious_append(token_scorer, data, vocab, 0, 9), std::invalid_argument);
    CHECK_THROWS_AS(malicious_append(token_scorer, data, vocab, vocab.size() + 1, 9),
                    std::invalid_argument);
}

TEST_CASE("the two objectives pick different tokens when lowering and swinging disagree") {
    const Dataset data = testutil::toy_dataset(
        {{{"BASE"}, 1}, {{"BASE", "SPIKE"}, 0}, {{"BASE", "GOOD"}, 0}, {{"BASE", "FILLER"}, 0}});
    const Vocabulary vocab = build_vocabulary(data.bills, 1);

    // SPIKE swings the score furthest, GOOD lowers it the most
    const Scorer scorer = [](const Bill& bill) {
        if (contains(bill, "SPIKE")) return 0.99;
        if (contains(bill, "GOOD")) return 0.40;
        return 0.50;
    };

    const MaliciousResult lowest = malicious_append(scorer, data, vocab, vocab.size(), 9,
                                                    AttackObjective::minimize_score);
    REQUIRE(lowest.chosen.size() == 1);
    CHECK(lowest.chosen[0].second == "GOOD");

    const MaliciousResult swing = malicious_append(scorer, data, vocab, vocab.size(), 9,
                                                   AttackObjective::max_abs_delta);
    REQUIRE(swing.chosen.size() == 1);
    CHECK(swing.chosen[0].second == "SPIKE");
}

TEST_CASE("attack_report compares clean and corrupted scores") {
    const Dataset data = marked_dataset();
    const Vocabulary vocab = build_vocabulary(data.bills, 1);

    SUBCASE("a whitewashing attack inverts a perfect ranking") {
        AttackParams params;
        params.mode = AttackMode::malicious;
        params.n_candidates = vocab.size();

        const AttackReport report = attack_report(token_scorer, data, vocab, params);
        CHECK(report.mode == AttackMode::malicious);
        CHECK(report.roc_before.kind == CurveKind::roc);
        CHECK(report.pr_before.kind == CurveKind::pr);
        CHECK(report.roc_before.auc == 1.0);
        CHECK(report.roc_after.auc == 0.0);  // every fraud bill now scores below every clean one
        CHECK(report.roc_delta == report.roc_before.auc - report.roc_after.auc);
        CHECK(report.pr_delta == report.pr_before.auc - report.pr_after.auc);
        CHECK(report.chosen.size() == 3);
    }

    SUBCASE("mode none is a no-op") {
        AttackParams params;
        params.mode = AttackMode::none;
        const AttackReport report = attack_report(token_scorer, data, vocab, params);
        CHECK(report.roc_delta == 0.0);
        CHECK(report.pr_delta == 0.0);
        CHECK(report.roc_after.auc == report.roc_before.auc);
        CHECK(report.chosen.empty());
    }

    SUBCASE("a token-blind scorer is immune to appended tokens") {
        const Scorer age_scorer = [](const Bill& bill) {
            return double(bill.static_features.age) / 120.0;
        };
        for (AttackMode mode : {AttackMode::random, AttackMode::malicious}) {
            AttackParams params;
            params.mode = mode;
            params.n_candidates = 2;
            const AttackReport report = attack_report(age_scorer, data, vocab, params);
            CHECK(report.roc_delta == 0.0);
            CHECK(report.pr_delta == 0.0);
        }
    }
}
