#include "claimsentinel/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "claimsentinel/checkpoint.hpp"
#include "claimsentinel/rng.hpp"

namespace claimsentinel {

double RegressionTree::evaluate(const std::vector<double>& x) const {
    int node = 0;
    while (nodes[static_cast<std::size_t>(node)].feature >= 0) {
        const TreeNode& n = nodes[static_cast<std::size_t>(node)];
        node = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(node)].value;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Nonzero entries of one feature, ascending by value; zeros are implicit.
struct SparseColumn {
    std::vector<double> value;
    std::vector<int> row;
};

// Per-node accumulator for the ascending split sweep.
struct SweepState {
    double gl = 0.0, hl = 0.0;
    int cnt_l = 0;
    double prev = 0.0;
    bool has_prev = false;
    bool zero_done = false;
};

struct NodeStats {
    double g = 0.0, h = 0.0;
    int cnt = 0;
};

struct BestSplit {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
};

struct BuildNode {
    NodeStats stats;
    int depth = 0;
    BestSplit best;
    int left = -1, right = -1;
};

}  // namespace

GbdtEnsemble train_gbdt(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                        const GbdtParams& params) {
    const std::size_t n = X.size();
    if (n < 2) throw std::invalid_argument("train_gbdt: need at least two samples");
    if (y.size() != n) throw std::invalid_argument("train_gbdt: feature/label count mismatch");
    if (params.n_trees < 1 || params.max_depth < 0 || params.learning_rate <= 0.0 || params.min_leaf < 1 ||
        params.lambda < 0.0 || params.colsample <= 0.0 || params.colsample > 1.0 || params.subsample <= 0.0 ||
        params.subsample > 1.0)
        throw std::invalid_argument("train_gbdt: invalid hyperparameters");

    const std::size_t p = X[0].size();
    if (p == 0) throw std::invalid_argument("train_gbdt: zero-width feature matrix");
    long long positives = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (X[i].size() != p) throw std::invalid_argument("train_gbdt: ragged feature matrix");
        for (double v : X[i])
            if (std::isnan(v)) throw std::invalid_argument("train_gbdt: feature matrix contains NaN");
        if (y[i] != 0 && y[i] != 1) throw std::invalid_argument("train_gbdt: labels must be 0 or 1");
        positives += y[i];
    }
    if (positives == 0 || positives == static_cast<long long>(n))
        throw std::invalid_argument("train_gbdt: labels contain a single class");

    // Presort nonzero entries per feature once; the zero runs are implicit
    // and re-inserted during each sweep.
    std::vector<SparseColumn> columns(p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j)
            if (X[i][j] != 0.0) {
                columns[j].value.push_back(X[i][j]);
                columns[j].row.push_back(static_cast<int>(i));
            }
    for (SparseColumn& col : columns) {
        std::vector<std::size_t> idx(col.value.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return col.value[a] < col.value[b]; });
        SparseColumn sorted;
        sorted.value.reserve(idx.size());
        sorted.row.reserve(idx.size());
        for (std::size_t i : idx) {
            sorted.value.push_back(col.value[i]);
            sorted.row.push_back(col.row[i]);
        }
        col = std::move(sorted);
    }

    GbdtEnsemble ensemble;
    ensemble.learning_rate = params.learning_rate;
    ensemble.n_features = p;
    const double pos_rate = static_cast<double>(positives) / static_cast<double>(n);
    ensemble.base_logit = std::log(pos_rate / (1.0 - pos_rate));

    std::vector<double> logit(n, ensemble.base_logit);
    std::vector<double> g(n), h(n);
    std::vector<int> node_of_row(n);   // -1 = row not sampled for this tree
    std::vector<char> in_level;        // node id -> participates in current level
    std::vector<SweepState> sweep;     // node id -> sweep accumulator

    for (int tree_idx = 0; tree_idx < params.n_trees; ++tree_idx) {
        Rng rng(derive_seed(params.seed, "gbdt-tree-" + std::to_string(tree_idx)));

        std::vector<int> sampled;
        if (params.subsample < 1.0) {
            auto k = static_cast<std::size_t>(std::llround(params.subsample * static_cast<double>(n)));
            k = std::clamp<std::size_t>(k, 1, n);
            std::vector<std::size_t> pick = rng.sample_without_replacement(n, k);
            std::sort(pick.begin(), pick.end());
            sampled.assign(pick.begin(), pick.end());
        } else {
            sampled.resize(n);
            for (std::size_t i = 0; i < n; ++i) sampled[i] = static_cast<int>(i);
        }

        std::vector<int> features;
        if (params.colsample < 1.0) {
            auto k = static_cast<std::size_t>(std::llround(params.colsample * static_cast<double>(p)));
            k = std::clamp<std::size_t>(k, 1, p);
            std::vector<std::size_t> pick = rng.sample_without_replacement(p, k);
            std::sort(pick.begin(), pick.end());
            features.assign(pick.begin(), pick.end());
        } else {
            features.resize(p);
            for (std::size_t j = 0; j < p; ++j) features[j] = static_cast<int>(j);
        }

        // Logistic-loss derivatives at the current ensemble prediction.
        for (int r : sampled) {
            double prob = sigmoid(logit[static_cast<std::size_t>(r)]);
            g[static_cast<std::size_t>(r)] = prob - static_cast<double>(y[static_cast<std::size_t>(r)]);
            h[static_cast<std::size_t>(r)] = prob * (1.0 - prob);
        }

        std::vector<BuildNode> nodes(1);
        std::fill(node_of_row.begin(), node_of_row.end(), -1);
        for (int r : sampled) {
            node_of_row[static_cast<std::size_t>(r)] = 0;
            nodes[0].stats.g += g[static_cast<std::size_t>(r)];
            nodes[0].stats.h += h[static_cast<std::size_t>(r)];
            nodes[0].stats.cnt += 1;
        }

        std::vector<int> level{0};
        while (!level.empty()) {
            in_level.assign(nodes.size(), 0);
            sweep.assign(nodes.size(), SweepState{});
            bool any_candidate = false;
            for (int id : level) {
                BuildNode& nd = nodes[static_cast<std::size_t>(id)];
                if (nd.depth < params.max_depth && nd.stats.cnt >= 2 * params.min_leaf) {
                    in_level[static_cast<std::size_t>(id)] = 1;
                    any_candidate = true;
                }
            }

            if (any_candidate) {
                // Scratch reused across features: per-node nonzero totals.
                std::vector<NodeStats> nonzero(nodes.size());
                for (int j : features) {
                    const SparseColumn& col = columns[static_cast<std::size_t>(j)];

                    for (std::size_t id = 0; id < nodes.size(); ++id) nonzero[id] = NodeStats{};
                    for (std::size_t e = 0; e < col.row.size(); ++e) {
                        int nd = node_of_row[static_cast<std::size_t>(col.row[e])];
                        if (nd < 0 || !in_level[static_cast<std::size_t>(nd)]) continue;
                        nonzero[static_cast<std::size_t>(nd)].g += g[static_cast<std::size_t>(col.row[e])];
                        nonzero[static_cast<std::size_t>(nd)].h += h[static_cast<std::size_t>(col.row[e])];
                        nonzero[static_cast<std::size_t>(nd)].cnt += 1;
                    }

                    for (int id : level) {
                        if (in_level[static_cast<std::size_t>(id)]) sweep[static_cast<std::size_t>(id)] = SweepState{};
                    }

                    auto try_split = [&](int id, double threshold, const SweepState& st) {
                        BuildNode& nd = nodes[static_cast<std::size_t>(id)];
                        int cnt_r = nd.stats.cnt - st.cnt_l;
                        if (st.cnt_l < params.min_leaf || cnt_r < params.min_leaf) return;
                        double gr = nd.stats.g - st.gl;
                        double hr = nd.stats.h - st.hl;
                        double gain = 0.5 * (st.gl * st.gl / (st.hl + params.lambda) +
                                             gr * gr / (hr + params.lambda) -
                                             nd.stats.g * nd.stats.g / (nd.stats.h + params.lambda));
                        if (gain > nd.best.gain) {
                            nd.best.gain = gain;
                            nd.best.feature = j;
                            nd.best.threshold = threshold;
                        }
                    };

                    auto insert_zero_block = [&](int id, SweepState& st) {
                        // Zeros sit between the negative and positive runs.
                        const NodeStats& all = nodes[static_cast<std::size_t>(id)].stats;
                        const NodeStats& nz = nonzero[static_cast<std::size_t>(id)];
                        int zero_cnt = all.cnt - nz.cnt;
                        if (zero_cnt > 0) {
                            if (st.has_prev) try_split(id, (st.prev + 0.0) / 2.0, st);
                            st.gl += all.g - nz.g;
                            st.hl += all.h - nz.h;
                            st.cnt_l += zero_cnt;
                            st.prev = 0.0;
                            st.has_prev = true;
                        }
                        st.zero_done = true;
                    };

                    for (std::size_t e = 0; e < col.row.size(); ++e) {
                        int id = node_of_row[static_cast<std::size_t>(col.row[e])];
                        if (id < 0 || !in_level[static_cast<std::size_t>(id)]) continue;
                        SweepState& st = sweep[static_cast<std::size_t>(id)];
                        double value = col.value[e];
                        if (!st.zero_done && value > 0.0) insert_zero_block(id, st);
                        if (st.has_prev && value > st.prev) try_split(id, (st.prev + value) / 2.0, st);
                        st.gl += g[static_cast<std::size_t>(col.row[e])];
                        st.hl += h[static_cast<std::size_t>(col.row[e])];
                        st.cnt_l += 1;
                        st.prev = value;
                        st.has_prev = true;
                    }
                    // Node whose nonzeros are all negative still has its zero
                    // run on the right.
                    for (int id : level) {
                        SweepState& st = sweep[static_cast<std::size_t>(id)];
                        if (in_level[static_cast<std::size_t>(id)] && !st.zero_done) insert_zero_block(id, st);
                    }
                }
            }

            // Materialize decisions: split where a positive gain was found,
            // otherwise finalize the leaf.
            std::vector<int> next_level;
            for (int id : level) {
                BuildNode& nd = nodes[static_cast<std::size_t>(id)];
                if (nd.best.feature >= 0 && nd.best.gain > 0.0) {
                    nd.left = static_cast<int>(nodes.size());
                    nd.right = nd.left + 1;
                    nodes.emplace_back();
                    nodes.emplace_back();
                    nodes[static_cast<std::size_t>(nd.left)].depth = nd.depth + 1;
                    nodes[static_cast<std::size_t>(nd.right)].depth = nd.depth + 1;
                    next_level.push_back(nd.left);
                    next_level.push_back(nd.right);
                }
            }
            if (next_level.empty()) break;

            for (int r : sampled) {
                int id = node_of_row[static_cast<std::size_t>(r)];
                const BuildNode& nd = nodes[static_cast<std::size_t>(id)];
                if (nd.left < 0) continue;
                int child = X[static_cast<std::size_t>(r)][static_cast<std::size_t>(nd.best.feature)] <=
                                    nd.best.threshold
                                ? nd.left
                                : nd.right;
                node_of_row[static_cast<std::size_t>(r)] = child;
                BuildNode& c = nodes[static_cast<std::size_t>(child)];
                c.stats.g += g[static_cast<std::size_t>(r)];
                c.stats.h += h[static_cast<std::size_t>(r)];
                c.stats.cnt += 1;
            }
            level = std::move(next_level);
        }

        RegressionTree tree;
        tree.nodes.resize(nodes.size());
        for (std::size_t id = 0; id < nodes.size(); ++id) {
            const BuildNode& nd = nodes[id];
            TreeNode& out = tree.nodes[id];
            if (nd.left >= 0) {
                out.feature = nd.best.feature;
                out.threshold = nd.best.threshold;
                out.left = nd.left;
                out.right = nd.right;
            } else {
                out.feature = -1;
                out.value = -nd.stats.g / (nd.stats.h + params.lambda);
            }
        }

        for (std::size_t i = 0; i < n; ++i)
            logit[i] += params.learning_rate * tree.evaluate(X[i]);
        ensemble.trees.push_back(std::move(tree));
    }
    return ensemble;
}

double predict_proba(const GbdtEnsemble& ensemble, const std::vector<double>& x) {
    if (x.size() != ensemble.n_features)
        throw std::invalid_argument("predict_proba: expected " + std::to_string(ensemble.n_features) +
                                    " features, got " + std::to_string(x.size()));
    for (double v : x)
        if (std::isnan(v)) throw std::invalid_argument("predict_proba: feature vector contains NaN");
    double z = ensemble.base_logit;
    for (const RegressionTree& tree : ensemble.trees) z += ensemble.learning_rate * tree.evaluate(x);
    return sigmoid(z);
}

std::vector<double> predict_proba(const GbdtEnsemble& ensemble, const std::vector<std::vector<double>>& X) {
    std::vector<double> out;
    out.reserve(X.size());
    for (const auto& x : X) out.push_back(predict_proba(ensemble, x));
    return out;
}

void save_gbdt(const GbdtEnsemble& ensemble, const std::string& path) {
    CheckpointWriter w("gbdt");
    w.put_u64("version", 1);
    w.put_f64("base_logit", ensemble.base_logit);
    w.put_f64("learning_rate", ensemble.learning_rate);
    w.put_u64("n_features", ensemble.n_features);
    w.put_u64("n_trees", ensemble.trees.size());
    for (std::size_t t = 0; t < ensemble.trees.size(); ++t) {
        const RegressionTree& tree = ensemble.trees[t];
        std::vector<double> feature, threshold, left, right, value;
        for (const TreeNode& nd : tree.nodes) {
            feature.push_back(nd.feature);
            threshold.push_back(nd.threshold);
            left.push_back(nd.left);
            right.push_back(nd.right);
            value.push_back(nd.value);
        }
        std::string prefix = "tree" + std::to_string(t);
        w.put_vec(prefix + "_feature", feature);
        w.put_vec(prefix + "_threshold", threshold);
        w.put_vec(prefix + "_left", left);
        w.put_vec(prefix + "_right", right);
        w.put_vec(prefix + "_value", value);
    }
    w.write(path);
}

GbdtEnsemble load_gbdt(const std::string& path) {
    CheckpointReader r(path, "gbdt");
    GbdtEnsemble ensemble;
    ensemble.base_logit = r.get_f64("base_logit");
    ensemble.learning_rate = r.get_f64("learning_rate");
    ensemble.n_features = r.get_u64("n_features");
    std::size_t n_trees = r.get_u64("n_trees");
    for (std::size_t t = 0; t < n_trees; ++t) {
        std::string prefix = "tree" + std::to_string(t);
        std::vector<double> feature = r.get_vec(prefix + "_feature");
        std::vector<double> threshold = r.get_vec(prefix + "_threshold");
        std::vector<double> left = r.get_vec(prefix + "_left");
        std::vector<double> right = r.get_vec(prefix + "_right");
        std::vector<double> value = r.get_vec(prefix + "_value");
        if (feature.size() != threshold.size() || feature.size() != left.size() ||
            feature.size() != right.size() || feature.size() != value.size())
            throw std::runtime_error("checkpoint: tree '" + prefix + "' arrays disagree on length");
        RegressionTree tree;
        tree.nodes.resize(feature.size());
        for (std::size_t i = 0; i < feature.size(); ++i) {
            tree.nodes[i].feature = static_cast<int>(feature[i]);
            tree.nodes[i].threshold = threshold[i];
            tree.nodes[i].left = static_cast<int>(left[i]);
            tree.nodes[i].right = static_cast<int>(right[i]);
            tree.nodes[i].value = value[i];
        }
        ensemble.trees.push_back(std::move(tree));
    }
    return ensemble;
}

}  // namespace claimsentinel
