#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "claimsentinel/dataset.hpp"
#include "claimsentinel/gbdt.hpp"
#include "claimsentinel/vocabulary.hpp"

namespace claimsentinel {

enum class ResampleTag { none, smote, adasyn, repeated_enn, instance_hardness, smoteenn };

const char* to_string(ResampleTag tag);
ResampleTag resample_tag_from_string(const std::string& name);

struct ResampleMethod {
    ResampleTag tag = ResampleTag::none;
    int k_neighbors = 5;            // interpolation neighbors (smote/adasyn), vote size (repeated_enn)
    double target_ratio = 1.0;      // desired minority/majority count ratio
    double iht_keep_fraction = 0.5; // share of majority rows kept by instance_hardness
    int max_enn_iters = 100;
    std::uint64_t seed = 17;

    // Canonical per-method defaults (repeated_enn votes with k=3, the rest
    // interpolate with k=5).
    static ResampleMethod make(ResampleTag tag);
};

// Rebalances (X, y) per the method. Oversampling appends synthetic minority
// rows after the originals; undersampling returns a subset in original
// order. Original minority rows are always retained.
void resample(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
              const ResampleMethod& method, std::vector<std::vector<double>>& X_out,
              std::vector<int>& y_out);

// Point on the segment from p toward q: p + u * (q - p).
std::vector<double> interpolate(const std::vector<double>& p, const std::vector<double>& q, double u);

struct ResampleBenchmarkRow {
    std::string method;
    std::size_t train_rows = 0;  // after resampling
    double roc_auc = 0.0;
    double pr_auc = 0.0;
};

// One stratified 80/20 split: per method, resample the training fold only,
// train gbdt on TF-IDF + static features, evaluate on the untouched test
// fold. A "none" baseline row always comes first.
std::vector<ResampleBenchmarkRow> resample_benchmark(const Dataset& dataset, const Vocabulary& vocab,
                                                     const std::vector<ResampleMethod>& methods,
                                                     const GbdtParams& model_params, double train_fraction,
                                                     std::uint64_t split_seed);

}  // namespace claimsentinel
