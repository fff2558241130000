#include "claimsentinel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "claimsentinel/rng.hpp"

namespace claimsentinel {

namespace {

void check_binary(const std::vector<int>& v, const char* what) {
    for (int x : v)
        if (x != 0 && x != 1) throw std::invalid_argument(std::string(what) + ": entries must be 0 or 1");
}

// indices sorted by score descending, ties by index for determinism
std::vector<size_t> order_by_score_desc(const std::vector<double>& scores) {
    std::vector<size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return scores[a] > scores[b]; });
    return idx;
}

std::pair<long long, long long> class_counts(const std::vector<int>& labels) {
    long long p = 0;
    for (int y : labels) p += y;
    return {p, static_cast<long long>(labels.size()) - p};
}

}  // namespace

ConfusionMatrix confusion(const std::vector<int>& labels, const std::vector<int>& predictions) {
    if (labels.empty()) throw std::invalid_argument("confusion: empty input");
    if (labels.size() != predictions.size()) throw std::invalid_argument("confusion: length mismatch");
    check_binary(labels, "confusion labels");
    check_binary(predictions, "confusion predictions");
    ConfusionMatrix cm;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1)
            predictions[i] == 1 ? ++cm.tp : ++cm.fn;
        else
            predictions[i] == 1 ? ++cm.fp : ++cm.tn;
    }
    return cm;
}

Rates derived_rates(const ConfusionMatrix& cm) {
    Rates r;
    if (cm.tp + cm.fn > 0)
        r.recall = static_cast<double>(cm.tp) / (cm.tp + cm.fn);
    else
        r.recall_defined = false;
    if (cm.tp + cm.fp > 0)
        r.precision = static_cast<double>(cm.tp) / (cm.tp + cm.fp);
    else
        r.precision_defined = false;
    if (cm.fp + cm.tn > 0)
        r.fpr = static_cast<double>(cm.fp) / (cm.fp + cm.tn);
    else
        r.fpr_defined = false;
    if (r.recall_defined && r.precision_defined && r.precision + r.recall > 0)
        r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    else
        r.f1_defined = false;
    return r;
}

Curve roc(const std::vector<int>& labels, const std::vector<double>& scores) {
    if (labels.size() != scores.size()) throw std::invalid_argument("roc: length mismatch");
    check_binary(labels, "roc labels");
    const auto [p, n] = class_counts(labels);
    if (p == 0 || n == 0) throw std::invalid_argument("roc: both classes required");

    const auto idx = order_by_score_desc(scores);

    Curve c;
    c.kind = CurveKind::roc;
    c.points.emplace_back(0.0, 0.0);

    long long tp = 0, fp = 0;
    double tie_credit = 0.0;  // concordant + 0.5*tied pairs, accumulated per tie group
    size_t i = 0;
    while (i < idx.size()) {
        size_t j = i;
        long long gp = 0, gn = 0;  // positives/negatives at this score
        while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) {
            labels[idx[j]] == 1 ? ++gp : ++gn;
            ++j;
        }
        // negatives ranked strictly below this group, plus half for in-group ties
        tie_credit += static_cast<double>(gp) * (static_cast<double>(n - fp - gn) + 0.5 * gn);
        tp += gp;
        fp += gn;
        c.points.emplace_back(static_cast<double>(fp) / n, static_cast<double>(tp) / p);
        i = j;
    }
    c.auc = tie_credit / (static_cast<double>(p) * static_cast<double>(n));
    return c;
}

Curve pr(const std::vector<int>& labels, const std::vector<double>& scores) {
    if (labels.size() != scores.size()) throw std::invalid_argument("pr: length mismatch");
    check_binary(labels, "pr labels");
    const auto [p, n] = class_counts(labels);
    (void)n;
    if (p == 0) throw std::invalid_argument("pr: at least one positive required");

    const auto idx = order_by_score_desc(scores);

    Curve c;
    c.kind = CurveKind::pr;
    long long tp = 0, fp = 0;
    double auc = 0.0;
    double prev_recall = 0.0;
    size_t i = 0;
    while (i < idx.size()) {
        size_t j = i;
        while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) {
            labels[idx[j]] == 1 ? ++tp : ++fp;
            ++j;
        }
        const double recall = static_cast<double>(tp) / p;
        const double precision = static_cast<double>(tp) / (tp + fp);
        c.points.emplace_back(recall, precision);
        auc += (recall - prev_recall) * precision;
        prev_recall = recall;
        i = j;
    }
    c.auc = auc;
    return c;
}

SplitPlan stratified_split(const std::vector<int>& labels, double train_fraction, uint64_t seed) {
    check_binary(labels, "stratified_split labels");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("stratified_split: train_fraction must be in (0,1)");

    std::vector<int> pos, neg;
    for (size_t i = 0; i < labels.size(); ++i)
        (labels[i] == 1 ? pos : neg).push_back(static_cast<int>(i));
    if (pos.size() < 2 || neg.size() < 2)
        throw std::invalid_argument("stratified_split: each class needs >= 2 members");

    SplitPlan plan;
    plan.seed = seed;
    Rng rng(derive_seed(seed, "stratified-split"));
    for (auto* cls : {&pos, &neg}) {
        rng.shuffle(*cls);
        auto train_n = static_cast<size_t>(std::llround(train_fraction * static_cast<double>(cls->size())));
        train_n = std::clamp<size_t>(train_n, 1, cls->size());
        plan.train.insert(plan.train.end(), cls->begin(), cls->begin() + train_n);
        plan.test.insert(plan.test.end(), cls->begin() + train_n, cls->end());
    }
    if (plan.test.empty()) throw std::invalid_argument("stratified_split: test fold is empty");
    std::sort(plan.train.begin(), plan.train.end());
    std::sort(plan.test.begin(), plan.test.end());
    return plan;
}

SplitPlan stratified_split(const Dataset& dataset, double train_fraction, uint64_t seed) {
    return stratified_split(dataset.labels(), train_fraction, seed);
}

std::map<std::string, MetricSummary> repeated_cv(
    int n_repeats, double train_fraction, const std::vector<int>& labels, uint64_t seed,
    const std::function<std::map<std::string, double>(const SplitPlan&)>& run_fold) {
    if (n_repeats < 2) throw std::invalid_argument("repeated_cv: n_repeats must be >= 2");

    std::map<std::string, std::vector<double>> samples;
    for (int r = 0; r < n_repeats; ++r) {
        const uint64_t fold_seed = derive_seed(seed, "cv-repeat-" + std::to_string(r));
        const auto metrics = run_fold(stratified_split(labels, train_fraction, fold_seed));
        for (const auto& [name, value] : metrics) samples[name].push_back(value);
    }

    std::map<std::string, MetricSummary> out;
    for (const auto& [name, values] : samples) {
        MetricSummary s;
        s.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = values.size() > 1 ? std::sqrt(ss / (values.size() - 1)) : 0.0;
        out[name] = s;
    }
    return out;
}

}  // namespace claimsentinel
