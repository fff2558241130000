#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace claimsentinel {

struct GbdtParams {
    int n_trees = 200;
    int max_depth = 6;
    double learning_rate = 0.1;
    double colsample = 1.0;  // share of features per tree
    double subsample = 1.0;  // share of rows per tree
    int min_leaf = 5;
    double lambda = 1.0;  // L2 regularizer on leaf values
    std::uint64_t seed = 3;
};

// feature == -1 marks a leaf. Internal nodes send x[feature] <= threshold
// left.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
};

struct RegressionTree {
    std::vector<TreeNode> nodes;  // node 0 is the root

    double evaluate(const std::vector<double>& x) const;
};

struct GbdtEnsemble {
    double base_logit = 0.0;
    double learning_rate = 0.1;
    std::size_t n_features = 0;
    std::vector<RegressionTree> trees;
};

// Second-order logistic-loss boosting with exact greedy splits (midpoint
// thresholds) and L2-regularized Newton leaf values -G/(H+lambda). Row and
// column subsets per tree come from the seeded generator. Rejects NaN
// features and single-class labels.
GbdtEnsemble train_gbdt(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                        const GbdtParams& params);

// sigmoid(base_logit + lr * sum of tree outputs); throws on width mismatch
// or NaN input.
double predict_proba(const GbdtEnsemble& ensemble, const std::vector<double>& x);
std::vector<double> predict_proba(const GbdtEnsemble& ensemble, const std::vector<std::vector<double>>& X);

// Bit-exact round-trip (hexfloat text container).
void save_gbdt(const GbdtEnsemble& ensemble, const std::string& path);
GbdtEnsemble load_gbdt(const std::string& path);

}  // namespace claimsentinel
