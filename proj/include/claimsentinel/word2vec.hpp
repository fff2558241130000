#pragma once

#include <cstdint>
#include <vector>

#include "claimsentinel/dataset.hpp"
#include "claimsentinel/embedding.hpp"
#include "claimsentinel/vocabulary.hpp"

namespace claimsentinel {

struct SkipgramParams {
    int window_size = 10;
    int min_count = 2;
    int d = 300;
    int negatives = 5;
    int epochs = 5;
    double learning_rate = 0.025;  // decays linearly to learning_rate * 1e-4
    std::uint64_t seed = 1;
};

// One stochastic step: a (center, context) pair plus sampled negative slots.
struct SgnsExample {
    std::size_t center = 0;
    std::size_t context = 0;
    std::vector<std::size_t> negatives;
};

struct SgnsGradients {
    std::vector<double> d_center;                                   // w.r.t. input row `center`
    std::vector<std::pair<std::size_t, std::vector<double>>> d_output;  // context row first, then negatives
};

// Negative-sampling objective for one example:
//   -ln sigmoid(out_ctx . in_c) - sum_neg ln sigmoid(-out_neg . in_c)
double sgns_loss(const EmbeddingMatrix& input, const EmbeddingMatrix& output, const SgnsExample& ex);
SgnsGradients sgns_gradients(const EmbeddingMatrix& input, const EmbeddingMatrix& output, const SgnsExample& ex);

// Gradient-descent update touching only the center input row and the listed
// output rows.
void sgns_step(EmbeddingMatrix& input, EmbeddingMatrix& output, const SgnsExample& ex, double learning_rate);

// SGD over all in-window (center, context) pairs, negatives drawn from the
// fold's unigram distribution raised to 3/4 (OOV slot included). Effective
// window per position is uniform in [1, window_size]. Returns the input
// (center) matrix. `rows` restricts training to a fold; null means all bills.
EmbeddingMatrix train_skipgram(const Dataset& dataset, const Vocabulary& vocab, const SkipgramParams& params,
                               const std::vector<int>* rows = nullptr);

}  // namespace claimsentinel
