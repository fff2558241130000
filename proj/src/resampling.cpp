#include "claimsentinel/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "claimsentinel/features.hpp"
#include "claimsentinel/metrics.hpp"
#include "claimsentinel/rng.hpp"

namespace claimsentinel {

const char* to_string(ResampleTag tag) {
    switch (tag) {
        case ResampleTag::none: return "none";
        case ResampleTag::smote: return "smote";
        case ResampleTag::adasyn: return "adasyn";
        case ResampleTag::repeated_enn: return "repeated_enn";
        case ResampleTag::instance_hardness: return "instance_hardness";
        case ResampleTag::smoteenn: return "smoteenn";
    }
    return "?";
}

ResampleTag resample_tag_from_string(const std::string& name) {
    if (name == "none") return ResampleTag::none;
    if (name == "smote") return ResampleTag::smote;
    if (name == "adasyn") return ResampleTag::adasyn;
    if (name == "repeated_enn") return ResampleTag::repeated_enn;
    if (name == "instance_hardness") return ResampleTag::instance_hardness;
    if (name == "smoteenn") return ResampleTag::smoteenn;
    throw std::invalid_argument("unknown resampling method '" + name + "'");
}

ResampleMethod ResampleMethod::make(ResampleTag tag) {
    ResampleMethod m;
    m.tag = tag;
    if (tag == ResampleTag::repeated_enn) m.k_neighbors = 3;
    return m;
}

std::vector<double> interpolate(const std::vector<double>& p, const std::vector<double>& q, double u) {
    if (p.size() != q.size()) throw std::invalid_argument("interpolate: dimension mismatch");
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] + u * (q[i] - p[i]);
    return out;
}

namespace {

// ENN vote size inside smoteenn (the smote phase uses method.k_neighbors).
constexpr int kSmoteennVoteK = 3;

struct FlatMatrix {
    std::size_t n = 0, d = 0;
    std::vector<double> data;
    std::vector<double> sqnorm;

    const double* row(std::size_t i) const { return data.data() + i * d; }
};

FlatMatrix flatten(const std::vector<std::vector<double>>& X) {
    FlatMatrix m;
    m.n = X.size();
    m.d = X.empty() ? 0 : X[0].size();
    m.data.resize(m.n * m.d);
    m.sqnorm.resize(m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
        if (X[i].size() != m.d) throw std::invalid_argument("resample: ragged feature matrix");
        double s = 0.0;
        for (std::size_t j = 0; j < m.d; ++j) {
            double v = X[i][j];
            m.data[i * m.d + j] = v;
            s += v * v;
        }
        m.sqnorm[i] = s;
    }
    return m;
}

double sqdist(const FlatMatrix& m, std::size_t a, std::size_t b) {
    const double* pa = m.row(a);
    const double* pb = m.row(b);
    double dot = 0.0;
    for (std::size_t j = 0; j < m.d; ++j) dot += pa[j] * pb[j];
    double s = m.sqnorm[a] + m.sqnorm[b] - 2.0 * dot;
    return s < 0.0 ? 0.0 : s;  // numeric guard
}

// k nearest rows to `query` among `candidates` (self excluded), ties broken
// by ascending row index.
std::vector<std::size_t> k_nearest(const FlatMatrix& m, std::size_t query,
                                   const std::vector<std::size_t>& candidates, std::size_t k) {
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(candidates.size());
    for (std::size_t c : candidates) {
        if (c == query) continue;
        scored.emplace_back(sqdist(m, query, c), c);
    }
    std::size_t take = std::min(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end());
    std::vector<std::size_t> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back(scored[i].second);
    return out;
}

std::vector<std::size_t> rows_with_label(const std::vector<int>& y, int label) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] == label) out.push_back(i);
    return out;
}

// Minority nearest-neighbor table shared by smote and adasyn synthesis.
std::vector<std::vector<std::size_t>> minority_neighbor_table(const FlatMatrix& m,
                                                              const std::vector<std::size_t>& minority,
                                                              int k, const char* who) {
    if (minority.size() <= static_cast<std::size_t>(k))
        throw std::invalid_argument(std::string(who) +
                                    ": minority class must have more than k_neighbors samples");
    std::vector<std::vector<std::size_t>> table(minority.size());
    for (std::size_t i = 0; i < minority.size(); ++i)
        table[i] = k_nearest(m, minority[i], minority, static_cast<std::size_t>(k));
    return table;
}

void synthesize(const FlatMatrix& m, const std::vector<std::size_t>& minority,
                const std::vector<std::vector<std::size_t>>& table, const std::vector<std::size_t>& per_point,
                int minority_label, Rng& rng, std::vector<std::vector<double>>& X_out,
                std::vector<int>& y_out) {
    for (std::size_t i = 0; i < minority.size(); ++i) {
        const double* p = m.row(minority[i]);
        for (std::size_t s = 0; s < per_point[i]; ++s) {
            std::size_t q_row = table[i][rng.below(table[i].size())];
            const double* q = m.row(q_row);
            double u = rng.next_double();
            std::vector<double> point(m.d);
            for (std::size_t j = 0; j < m.d; ++j) point[j] = p[j] + u * (q[j] - p[j]);
            X_out.push_back(std::move(point));
            y_out.push_back(minority_label);
        }
    }
}

// Largest-remainder apportionment of `total` into weights (tie: lower index).
std::vector<std::size_t> apportion(const std::vector<double>& weights, std::size_t total) {
    double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<std::size_t> counts(weights.size(), 0);
    if (wsum <= 0.0 || total == 0) return counts;
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        double share = static_cast<double>(total) * weights[i] / wsum;
        counts[i] = static_cast<std::size_t>(std::floor(share));
        assigned += counts[i];
        remainders.emplace_back(-(share - std::floor(share)), i);
    }
    std::sort(remainders.begin(), remainders.end());
    for (std::size_t r = 0; assigned < total && r < remainders.size(); ++r, ++assigned)
        counts[remainders[r].second] += 1;
    return counts;
}

// One ENN sweep: simultaneously drop every majority row whose k-neighbor
// vote (within `current`) disagrees with its label. Returns true if anything
// was removed.
bool enn_pass(const FlatMatrix& m, const std::vector<int>& y, int majority_label, int vote_k,
              std::vector<std::size_t>& current) {
    std::vector<char> drop(current.size(), 0);
    bool removed = false;
    for (std::size_t idx = 0; idx < current.size(); ++idx) {
        std::size_t i = current[idx];
        if (y[i] != majority_label) continue;
        std::vector<std::size_t> nb = k_nearest(m, i, current, static_cast<std::size_t>(vote_k));
        if (nb.empty()) continue;
        int same = 0;
        for (std::size_t n : nb)
            if (y[n] == majority_label) ++same;
        if (2 * same < static_cast<int>(nb.size())) {  // strict-minority vote; ties keep the row
            drop[idx] = 1;
            removed = true;
        }
    }
    if (removed) {
        std::vector<std::size_t> kept;
        kept.reserve(current.size());
        for (std::size_t idx = 0; idx < current.size(); ++idx)
            if (!drop[idx]) kept.push_back(current[idx]);
        current = std::move(kept);
    }
    return removed;
}

// Out-of-fold correct-class probabilities from a stratified 3-fold cv with a
// small internal booster.
std::vector<double> out_of_fold_correct_prob(const std::vector<std::vector<double>>& X,
                                             const std::vector<int>& y, std::uint64_t seed) {
    constexpr int kFolds = 3;
    std::vector<int> fold_of(y.size(), 0);
    Rng rng(derive_seed(seed, "iht-folds"));
    for (int label : {0, 1}) {
        std::vector<std::size_t> rows = rows_with_label(y, label);
        rng.shuffle(rows);
        for (std::size_t i = 0; i < rows.size(); ++i) fold_of[rows[i]] = static_cast<int>(i % kFolds);
    }

    GbdtParams params;
    params.n_trees = 50;
    params.max_depth = 3;
    params.learning_rate = 0.1;
    params.seed = derive_seed(seed, "iht-gbdt");

    std::vector<double> correct(y.size(), 0.0);
    for (int f = 0; f < kFolds; ++f) {
        std::vector<std::vector<double>> X_train;
        std::vector<int> y_train;
        for (std::size_t i = 0; i < y.size(); ++i)
            if (fold_of[i] != f) {
                X_train.push_back(X[i]);
                y_train.push_back(y[i]);
            }
        GbdtEnsemble model = train_gbdt(X_train, y_train, params);
        for (std::size_t i = 0; i < y.size(); ++i)
            if (fold_of[i] == f) {
                double p = predict_proba(model, X[i]);
                correct[i] = y[i] == 1 ? p : 1.0 - p;
            }
    }
    return correct;
}

}  // namespace

void resample(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
              const ResampleMethod& method, std::vector<std::vector<double>>& X_out, std::vector<int>& y_out) {
    if (X.size() != y.size()) throw std::invalid_argument("resample: feature/label count mismatch");
    if (method.k_neighbors < 1 || method.target_ratio <= 0.0 || method.target_ratio > 1.0 ||
        method.iht_keep_fraction <= 0.0 || method.iht_keep_fraction > 1.0 || method.max_enn_iters < 1)
        throw std::invalid_argument("resample: invalid method parameters");

    std::vector<std::size_t> pos = rows_with_label(y, 1);
    std::vector<std::size_t> neg = rows_with_label(y, 0);
    if (pos.empty() || neg.empty()) throw std::invalid_argument("resample: both classes must be present");
    const int minority_label = pos.size() <= neg.size() ? 1 : 0;
    const std::vector<std::size_t>& minority = minority_label == 1 ? pos : neg;
    const std::vector<std::size_t>& majority = minority_label == 1 ? neg : pos;
    const int majority_label = 1 - minority_label;

    X_out = X;
    y_out = y;
    if (method.tag == ResampleTag::none) return;

    FlatMatrix m = flatten(X);
    Rng rng(derive_seed(method.seed, std::string("resample-") + to_string(method.tag)));

    auto synth_total = [&]() -> std::size_t {
        auto target = static_cast<std::size_t>(std::llround(method.target_ratio * static_cast<double>(majority.size())));
        return target > minority.size() ? target - minority.size() : 0;
    };

    switch (method.tag) {
        case ResampleTag::none:
            return;

        case ResampleTag::smote: {
            std::size_t total = synth_total();
            auto table = minority_neighbor_table(m, minority, method.k_neighbors, "smote");
            // Uniform base-point draws; allocation fixed by the draw sequence.
            std::vector<std::size_t> per_point(minority.size(), 0);
            for (std::size_t s = 0; s < total; ++s) per_point[rng.below(minority.size())] += 1;
            synthesize(m, minority, table, per_point, minority_label, rng, X_out, y_out);
            return;
        }

        case ResampleTag::adasyn: {
            std::size_t total = synth_total();
            auto table = minority_neighbor_table(m, minority, method.k_neighbors, "adasyn");
            std::vector<std::size_t> everything(X.size());
            std::iota(everything.begin(), everything.end(), 0);
            std::vector<double> density(minority.size(), 0.0);
            for (std::size_t i = 0; i < minority.size(); ++i) {
                std::vector<std::size_t> nb =
                    k_nearest(m, minority[i], everything, static_cast<std::size_t>(method.k_neighbors));
                int maj = 0;
                for (std::size_t n : nb)
                    if (y[n] == majority_label) ++maj;
                density[i] = nb.empty() ? 0.0 : static_cast<double>(maj) / static_cast<double>(nb.size());
            }
            double dsum = std::accumulate(density.begin(), density.end(), 0.0);
            if (dsum <= 0.0) density.assign(minority.size(), 1.0);  // uniform fallback
            std::vector<std::size_t> per_point = apportion(density, total);
            synthesize(m, minority, table, per_point, minority_label, rng, X_out, y_out);
            return;
        }

        case ResampleTag::repeated_enn: {
            std::vector<std::size_t> current(X.size());
            std::iota(current.begin(), current.end(), 0);
            for (int iter = 0; iter < method.max_enn_iters; ++iter)
                if (!enn_pass(m, y, majority_label, method.k_neighbors, current)) break;
            X_out.clear();
            y_out.clear();
            for (std::size_t i : current) {
                X_out.push_back(X[i]);
                y_out.push_back(y[i]);
            }
            return;
        }

        case ResampleTag::instance_hardness: {
            std::vector<double> correct = out_of_fold_correct_prob(X, y, method.seed);
            auto keep_n = static_cast<std::size_t>(
                std::llround(method.iht_keep_fraction * static_cast<double>(majority.size())));
            keep_n = std::clamp<std::size_t>(keep_n, 1, majority.size());
            std::vector<std::size_t> order = majority;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return correct[a] > correct[b];  // easiest (most confidently correct) first
            });
            std::vector<char> keep(X.size(), 0);
            for (std::size_t i : minority) keep[i] = 1;
            for (std::size_t i = 0; i < keep_n; ++i) keep[order[i]] = 1;
            X_out.clear();
            y_out.clear();
            for (std::size_t i = 0; i < X.size(); ++i)
                if (keep[i]) {
                    X_out.push_back(X[i]);
                    y_out.push_back(y[i]);
                }
            return;
        }

        case ResampleTag::smoteenn: {
            ResampleMethod smote_part = method;
            smote_part.tag = ResampleTag::smote;
            resample(X, y, smote_part, X_out, y_out);
            FlatMatrix combined = flatten(X_out);
            std::vector<std::size_t> current(X_out.size());
            std::iota(current.begin(), current.end(), 0);
            enn_pass(combined, y_out, majority_label, kSmoteennVoteK, current);
            std::vector<std::vector<double>> X_kept;
            std::vector<int> y_kept;
            for (std::size_t i : current) {
                X_kept.push_back(std::move(X_out[i]));
                y_kept.push_back(y_out[i]);
            }
            X_out = std::move(X_kept);
            y_out = std::move(y_kept);
            return;
        }
    }
}

std::vector<ResampleBenchmarkRow> resample_benchmark(const Dataset& dataset, const Vocabulary& vocab,
                                                     const std::vector<ResampleMethod>& methods,
                                                     const GbdtParams& model_params, double train_fraction,
                                                     std::uint64_t split_seed) {
    SplitPlan plan = stratified_split(dataset.labels(), train_fraction, split_seed);

    IdfModel idf = tfidf_fit(dataset, vocab, &plan.train);
    StaticEncoder encoder = fit_static_encoder(dataset, &plan.train);

    auto build = [&](const std::vector<int>& rows) {
        std::vector<std::vector<double>> X;
        std::vector<int> y;
        X.reserve(rows.size());
        y.reserve(rows.size());
        for (int r : rows) {
            const Bill& bill = dataset.bills.at(static_cast<std::size_t>(r));
            X.push_back(assemble(bill, vocab, &idf, encoder, FeatureMode::tfidf));
            y.push_back(bill.label);
        }
        return std::make_pair(std::move(X), std::move(y));
    };
    auto [X_train, y_train] = build(plan.train);
    auto [X_test, y_test] = build(plan.test);

    std::vector<ResampleMethod> run;
    bool has_none = false;
    for (const ResampleMethod& m : methods)
        if (m.tag == ResampleTag::none) has_none = true;
    if (!has_none) run.push_back(ResampleMethod::make(ResampleTag::none));
    run.insert(run.end(), methods.begin(), methods.end());

    std::vector<ResampleBenchmarkRow> rows;
    for (const ResampleMethod& m : run) {
        std::vector<std::vector<double>> X_r;
        std::vector<int> y_r;
        resample(X_train, y_train, m, X_r, y_r);
        GbdtEnsemble model = train_gbdt(X_r, y_r, model_params);
        std::vector<double> scores = predict_proba(model, X_test);
        ResampleBenchmarkRow row;
        row.method = to_string(m.tag);
        row.train_rows = X_r.size();
        row.roc_auc = roc(y_test, scores).auc;
        row.pr_auc = pr(y_test, scores).auc;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace claimsentinel
