#include "claimsentinel/word2vec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "claimsentinel/rng.hpp"

namespace claimsentinel {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// ln sigmoid(x), stable for large |x|
double log_sigmoid(double x) { return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x)); }

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void check_example(const EmbeddingMatrix& input, const EmbeddingMatrix& output, const SgnsExample& ex) {
    if (input.dim != output.dim || input.rows != output.rows)
        throw std::invalid_argument("sgns: input/output matrix shapes differ");
    if (ex.center >= input.rows || ex.context >= input.rows)
        throw std::invalid_argument("sgns: row index out of range");
    for (std::size_t n : ex.negatives)
        if (n >= input.rows) throw std::invalid_argument("sgns: negative row index out of range");
}

}  // namespace

double sgns_loss(const EmbeddingMatrix& input, const EmbeddingMatrix& output, const SgnsExample& ex) {
    check_example(input, output, ex);
    const double* in = input.row(ex.center);
    double loss = -log_sigmoid(dot(output.row(ex.context), in, input.dim));
    for (std::size_t n : ex.negatives) loss -= log_sigmoid(-dot(output.row(n), in, input.dim));
    return loss;
}

SgnsGradients sgns_gradients(const EmbeddingMatrix& input, const EmbeddingMatrix& output, const SgnsExample& ex) {
    check_example(input, output, ex);
    const std::size_t d = input.dim;
    const double* in = input.row(ex.center);

    SgnsGradients g;
    g.d_center.assign(d, 0.0);
    g.d_output.reserve(1 + ex.negatives.size());

    auto accumulate = [&](std::size_t out_row, double label) {
        const double* out = output.row(out_row);
        // d/dscore of -ln sigmoid(label ? score : -score)
        double coeff = sigmoid(dot(out, in, d)) - label;
        std::vector<double> d_out(d);
        for (std::size_t i = 0; i < d; ++i) {
            d_out[i] = coeff * in[i];
            g.d_center[i] += coeff * out[i];
        }
        g.d_output.emplace_back(out_row, std::move(d_out));
    };
    accumulate(ex.context, 1.0);
    for (std::size_t n : ex.negatives) accumulate(n, 0.0);
    return g;
}

void sgns_step(EmbeddingMatrix& input, EmbeddingMatrix& output, const SgnsExample& ex, double learning_rate) {
    check_example(input, output, ex);
    const std::size_t d = input.dim;
    double* in = input.row(ex.center);

    // Accumulate the center-row gradient before touching output rows so the
    // update uses pre-step values on both sides, matching sgns_gradients.
    std::vector<double> d_center(d, 0.0);
    auto update_output = [&](std::size_t out_row, double label) {
        double* out = output.row(out_row);
        double coeff = sigmoid(dot(out, in, d)) - label;
        for (std::size_t i = 0; i < d; ++i) {
            d_center[i] += coeff * out[i];
            out[i] -= learning_rate * coeff * in[i];
        }
    };
    update_output(ex.context, 1.0);
    for (std::size_t n : ex.negatives) update_output(n, 0.0);
    for (std::size_t i = 0; i < d; ++i) in[i] -= learning_rate * d_center[i];
}

EmbeddingMatrix train_skipgram(const Dataset& dataset, const Vocabulary& vocab, const SkipgramParams& params,
                               const std::vector<int>* rows) {
    if (params.window_size < 1 || params.d < 1 || params.negatives < 1 || params.epochs < 1 ||
        params.learning_rate <= 0.0)
        throw std::invalid_argument("train_skipgram: invalid hyperparameters");

    std::vector<int> all;
    if (!rows) {
        all.resize(dataset.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        rows = &all;
    }

    // Map each fold bill to vocabulary slots once; count slot occurrences for
    // the negative-sampling distribution.
    const std::size_t slots = vocab.slot_count();
    std::vector<std::vector<std::size_t>> sequences;
    sequences.reserve(rows->size());
    std::vector<double> weight(slots, 0.0);
    std::size_t total_positions = 0;
    for (int r : *rows) {
        const Bill& bill = dataset.bills.at(static_cast<std::size_t>(r));
        std::vector<std::size_t> seq;
        seq.reserve(bill.treatments.size());
        for (const auto& code : bill.treatments) {
            std::size_t slot = vocab.lookup(code);
            seq.push_back(slot);
            weight[slot] += 1.0;
        }
        total_positions += seq.size();
        sequences.push_back(std::move(seq));
    }
    bool any_pair = false;
    for (const auto& seq : sequences)
        if (seq.size() >= 2) any_pair = true;
    if (!any_pair) throw std::invalid_argument("train_skipgram: no training pairs");

    // Unigram^(3/4) cumulative table for negative draws.
    std::vector<double> cumulative(slots, 0.0);
    double acc = 0.0;
    for (std::size_t s = 0; s < slots; ++s) {
        if (weight[s] > 0.0) acc += std::pow(weight[s], 0.75);
        cumulative[s] = acc;
    }
    auto draw_slot = [&](Rng& rng) {
        double u = rng.next_double() * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                                 static_cast<std::ptrdiff_t>(slots) - 1));
    };

    EmbeddingMatrix input = make_embedding(slots, static_cast<std::size_t>(params.d));
    EmbeddingMatrix output = make_embedding(slots, static_cast<std::size_t>(params.d));
    {
        Rng init(derive_seed(params.seed, "skipgram-init"));
        double half = 0.5 / static_cast<double>(params.d);
        for (double& x : input.data) x = init.uniform(-half, half);
        // output matrix stays zero
    }

    Rng rng(derive_seed(params.seed, "skipgram-train"));
    SgnsExample ex;
    ex.negatives.reserve(static_cast<std::size_t>(params.negatives));

    const double lr0 = params.learning_rate;
    const double lr_floor = lr0 * 1e-4;
    const double schedule_span =
        static_cast<double>(total_positions) * static_cast<double>(params.epochs) + 1.0;
    std::size_t positions_done = 0;

    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        for (const auto& seq : sequences) {
            double lr = std::max(lr_floor, lr0 * (1.0 - static_cast<double>(positions_done) / schedule_span));
            positions_done += seq.size();
            if (seq.size() < 2) continue;
            const std::ptrdiff_t len = static_cast<std::ptrdiff_t>(seq.size());
            for (std::ptrdiff_t i = 0; i < len; ++i) {
                std::ptrdiff_t b = rng.uniform_int(1, params.window_size);
                std::ptrdiff_t first = std::max<std::ptrdiff_t>(0, i - b);
                std::ptrdiff_t last = std::min(len - 1, i + b);
                for (std::ptrdiff_t j = first; j <= last; ++j) {
                    if (j == i) continue;
                    ex.center = seq[static_cast<std::size_t>(i)];
                    ex.context = seq[static_cast<std::size_t>(j)];
                    ex.negatives.clear();
                    for (int n = 0; n < params.negatives; ++n) {
                        std::size_t cand = draw_slot(rng);
                        if (cand == ex.context) continue;  // don't contradict the positive pair
                        ex.negatives.push_back(cand);
                    }
                    sgns_step(input, output, ex, lr);
                }
            }
        }
    }
    return input;
}

}  // namespace claimsentinel
