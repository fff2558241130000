#include "claimsentinel/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "claimsentinel/rng.hpp"

namespace claimsentinel {

const char* to_string(AttackMode mode) {
    switch (mode) {
        case AttackMode::none: return "none";
        case AttackMode::random: return "random";
        case AttackMode::malicious: return "malicious";
    }
    return "?";
}

AttackMode attack_mode_from_string(const std::string& name) {
    if (name == "none") return AttackMode::none;
    if (name == "random") return AttackMode::random;
    if (name == "malicious") return AttackMode::malicious;
    throw std::invalid_argument("unknown attack mode '" + name + "'");
}

namespace {

int modal_index(const std::vector<int>& values) {
    if (values.empty()) return 0;
    std::map<int, int> freq;
    for (int v : values) ++freq[v];
    int best = values[0], best_n = 0;
    for (const auto& [v, n] : freq)
        if (n > best_n) {  // map order gives the smallest value on ties
            best = v;
            best_n = n;
        }
    return best;
}

// Append one token with a neutral visit line: the treatment is visible to
// the sequence models but adds nothing to costs.
void append_token(Bill& bill, const std::string& token) {
    bill.treatments.push_back(token);
    bill.visit.count.push_back(1);
    bill.visit.cost.push_back(0.0);
    bill.visit.factor.push_back(1.0);
    bill.visit.group.push_back(modal_index(bill.visit.group));
    bill.visit.benefit_kind.push_back(modal_index(bill.visit.benefit_kind));
    bill.visit.cost_category.push_back(modal_index(bill.visit.cost_category));
}

}  // namespace

Dataset random_append(const Dataset& dataset, const Vocabulary& vocab, std::uint64_t seed) {
    if (vocab.tokens.empty()) throw std::invalid_argument("random_append: empty vocabulary");
    Dataset out = dataset;
    Rng rng(derive_seed(seed, "attack-random"));
    for (Bill& bill : out.bills) append_token(bill, vocab.tokens[rng.below(vocab.tokens.size())]);
    return out;
}

MaliciousResult malicious_append(const Scorer& scorer, const Dataset& dataset, const Vocabulary& vocab,
                                 int n_candidates, std::uint64_t seed, AttackObjective objective) {
    if (n_candidates < 1) throw std::invalid_argument("malicious_append: n_candidates must be >= 1");
    if (static_cast<std::size_t>(n_candidates) > vocab.tokens.size())
        throw std::invalid_argument("malicious_append: n_candidates exceeds vocabulary size");

    Rng rng(derive_seed(seed, "attack-malicious"));
    std::vector<std::size_t> pick = rng.sample_without_replacement(vocab.tokens.size(),
                                                                   static_cast<std::size_t>(n_candidates));
    std::vector<std::string> pool;
    pool.reserve(pick.size());
    for (std::size_t i : pick) pool.push_back(vocab.tokens[i]);

    MaliciousResult result;
    result.data = dataset;
    for (Bill& bill : result.data.bills) {
        if (bill.label != 1) continue;
        double base = objective == AttackObjective::max_abs_delta ? scorer(bill) : 0.0;
        Bill trial = bill;
        double best_score = 0.0;
        std::size_t best_c = pool.size();
        for (std::size_t c = 0; c < pool.size(); ++c) {
            trial = bill;
            append_token(trial, pool[c]);
            double score = scorer(trial);
            double key = objective == AttackObjective::minimize_score ? score : -std::abs(score - base);
            if (best_c == pool.size() || key < best_score) {
                best_score = key;
                best_c = c;
            }
        }
        append_token(bill, pool[best_c]);
        result.chosen.emplace_back(bill.id, pool[best_c]);
    }
    return result;
}

AttackReport attack_report(const Scorer& scorer, const Dataset& test_data, const Vocabulary& vocab,
                           const AttackParams& params) {
    auto score_all = [&](const Dataset& data) {
        std::vector<double> scores;
        scores.reserve(data.size());
        for (const Bill& bill : data.bills) scores.push_back(scorer(bill));
        return scores;
    };
    std::vector<int> labels = test_data.labels();

    AttackReport report;
    report.mode = params.mode;
    std::vector<double> before = score_all(test_data);
    report.roc_before = roc(labels, before);
    report.pr_before = pr(labels, before);

    std::vector<double> after;
    switch (params.mode) {
        case AttackMode::none:
            after = before;
            break;
        case AttackMode::random:
            after = score_all(random_append(test_data, vocab, params.seed));
            break;
        case AttackMode::malicious: {
            MaliciousResult attacked =
                malicious_append(scorer, test_data, vocab, params.n_candidates, params.seed, params.objective);
            report.chosen = std::move(attacked.chosen);
            after = score_all(attacked.data);
            break;
        }
    }
    report.roc_after = roc(labels, after);
    report.pr_after = pr(labels, after);
    report.roc_delta = report.roc_before.auc - report.roc_after.auc;
    report.pr_delta = report.pr_before.auc - report.pr_after.auc;
    return report;
}

}  // namespace claimsentinel
