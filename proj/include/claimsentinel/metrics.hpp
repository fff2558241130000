#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "claimsentinel/dataset.hpp"

namespace claimsentinel {

struct ConfusionMatrix {
    long long tp = 0, fp = 0, fn = 0, tn = 0;
    long long total() const { return tp + fp + fn + tn; }
};

ConfusionMatrix confusion(const std::vector<int>& labels, const std::vector<int>& predictions);

// Zero-denominator rates come back as 0 with the matching flag cleared;
// never NaN.
struct Rates {
    double recall = 0, precision = 0, fpr = 0, f1 = 0;
    bool recall_defined = true, precision_defined = true, fpr_defined = true, f1_defined = true;
};

Rates derived_rates(const ConfusionMatrix& cm);

enum class CurveKind { roc, pr };

struct Curve {
    std::vector<std::pair<double, double>> points;  // roc: (fpr,tpr); pr: (recall,precision)
    double auc = 0.0;
    CurveKind kind = CurveKind::roc;
};

// Points over all distinct thresholds, descending, from (0,0) to (1,1).
// AUC is the Mann-Whitney statistic: ties earn half credit.
Curve roc(const std::vector<int>& labels, const std::vector<double>& scores);

// AUC is step-wise average precision: sum of (R_i - R_{i-1}) * P_i.
Curve pr(const std::vector<int>& labels, const std::vector<double>& scores);

struct SplitPlan {
    std::vector<int> train;
    std::vector<int> test;
    uint64_t seed = 0;
};

// Per-class shuffled partition at train_fraction; both classes need >= 2
// members and the test fold must come out non-empty.
SplitPlan stratified_split(const std::vector<int>& labels, double train_fraction, uint64_t seed);
SplitPlan stratified_split(const Dataset& dataset, double train_fraction, uint64_t seed);

struct MetricSummary {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation
};

// n_repeats independent stratified holdouts (the 80/20-protocol reading of
// "k-fold"); run_fold trains and scores one split and returns named metrics.
std::map<std::string, MetricSummary> repeated_cv(
    int n_repeats, double train_fraction, const std::vector<int>& labels, uint64_t seed,
    const std::function<std::map<std::string, double>(const SplitPlan&)>& run_fold);

}  // namespace claimsentinel
