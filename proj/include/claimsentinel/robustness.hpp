#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "claimsentinel/dataset.hpp"
#include "claimsentinel/metrics.hpp"
#include "claimsentinel/vocabulary.hpp"

namespace claimsentinel {

// Fraud probability for one bill, from whatever model the caller trained.
using Scorer = std::function<double(const Bill&)>;

enum class AttackMode { none, random, malicious };
enum class AttackObjective { minimize_score, max_abs_delta };

const char* to_string(AttackMode mode);
AttackMode attack_mode_from_string(const std::string& name);

// Copy of the dataset where every bill gains one uniformly drawn retained
// token at the end of its sequence. Visit arrays extend with neutral values:
// count 1, cost 0, factor 1, and the bill's modal categorical indices.
Dataset random_append(const Dataset& dataset, const Vocabulary& vocab, std::uint64_t seed);

struct MaliciousResult {
    Dataset data;
    std::vector<std::pair<std::string, std::string>> chosen;  // (bill id, appended token)
};

// Samples one shared candidate pool (without replacement), then for each
// fraudulent bill appends the candidate that minimizes the fraud score
// (or maximizes |delta| under that objective). Non-fraud bills pass through
// untouched.
MaliciousResult malicious_append(const Scorer& scorer, const Dataset& dataset, const Vocabulary& vocab,
                                 int n_candidates, std::uint64_t seed,
                                 AttackObjective objective = AttackObjective::minimize_score);

struct AttackParams {
    AttackMode mode = AttackMode::random;
    int n_candidates = 100;
    std::uint64_t seed = 5;
    AttackObjective objective = AttackObjective::minimize_score;
};

struct AttackReport {
    AttackMode mode = AttackMode::none;
    Curve roc_before, roc_after;
    Curve pr_before, pr_after;
    double roc_delta = 0.0;  // before minus after: positive = degradation
    double pr_delta = 0.0;
    std::vector<std::pair<std::string, std::string>> chosen;  // malicious mode only
};

// Scores the untouched fold, applies the corruption, scores again.
AttackReport attack_report(const Scorer& scorer, const Dataset& test_data, const Vocabulary& vocab,
                           const AttackParams& params);

}  // namespace claimsentinel
