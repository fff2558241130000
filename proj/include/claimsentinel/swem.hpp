#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "claimsentinel/dataset.hpp"
#include "claimsentinel/embedding.hpp"
#include "claimsentinel/features.hpp"
#include "claimsentinel/vocabulary.hpp"

namespace claimsentinel {

enum class Aggregation { mean, max, concat };

const char* to_string(Aggregation aggregation);
Aggregation aggregation_from_string(const std::string& name);

struct SwemConfig {
    int d = 300;
    Aggregation aggregation = Aggregation::max;
    std::vector<int> treatment_hidden{100};
    std::vector<int> static_hidden{32};
    std::array<int, 2> head_hidden{64, 32};
    bool use_static = true;
    double init_sigma = 0.01;
    std::uint64_t seed = 1;
};

struct TrainParams {
    int epochs = 3;
    int batch_size = 2048;
    double learning_rate = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t seed = 7;
};

// Fully-connected layer, weights row-major [out][in].
struct Dense {
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<double> w;
    std::vector<double> b;

    bool operator==(const Dense&) const = default;
};

// Embedding lookup -> pooling -> treatment tower -> (optional static tower)
// -> two-layer head -> linear 2-class output -> softmax.
struct SwemModel {
    SwemConfig config;
    EmbeddingMatrix embedding;
    std::vector<Dense> treatment_tower;
    std::vector<Dense> static_tower;  // empty when !config.use_static
    std::array<Dense, 2> head;
    Dense output;
    StaticEncoder encoder;
    std::uint64_t vocab_hash = 0;
};

// Row i of the result (flattened row-major, k rows of width E.dim) is the
// embedding of the i-th treatment token; unknown tokens hit the OOV row.
std::vector<double> embed_sequence(const Bill& bill, const EmbeddingMatrix& E, const Vocabulary& vocab);

// rows: k*d flattened matrix. mean/max are column-wise (length d), concat is
// mean followed by max (length 2d). k=0 pools to the zero vector.
std::vector<double> aggregate(const std::vector<double>& rows, std::size_t d, Aggregation strategy);

// Fresh model: Gaussian(0, init_sigma) weights; hidden-layer biases start at a
// small positive constant so every relu unit is active, the output bias at
// zero. Embedding from init_E when given (must be slot_count x d), else
// Gaussian. The static encoder is fitted on `rows` (null = all bills) when
// use_static.
SwemModel swem_init(const Dataset& dataset, const Vocabulary& vocab, const SwemConfig& config,
                    const EmbeddingMatrix* init_E = nullptr, const std::vector<int>* rows = nullptr);

// (p_nonfraud, p_fraud), summing to 1. Throws "numeric overflow" if any
// intermediate goes non-finite.
std::pair<double, double> forward(const SwemModel& model, const Bill& bill, const Vocabulary& vocab);

std::vector<double> predict_scores(const SwemModel& model, const Dataset& dataset, const Vocabulary& vocab);

// Flat views over every trainable tensor, in a fixed order (embedding, then
// each layer's weights and biases). Gradient buffers align with the
// concatenation of these views.
struct ParamView {
    std::string name;
    double* data;
    std::size_t size;
};

std::vector<ParamView> parameter_views(SwemModel& model);
std::size_t parameter_count(const SwemModel& model);

// Mean cross-entropy over `rows` plus its gradient (resized/overwritten,
// aligned with parameter_views order).
double loss_and_gradients(const SwemModel& model, const Dataset& dataset, const Vocabulary& vocab,
                          const std::vector<int>& rows, std::vector<double>& grad);

// Mean cross-entropy only (evaluation pass).
double mean_cross_entropy(const SwemModel& model, const Dataset& dataset, const Vocabulary& vocab,
                          const std::vector<int>& rows);

struct SwemTrainLog {
    double initial_loss = 0.0;
    std::vector<double> epoch_loss;  // full-pass training loss after each epoch
};

// Mini-batch Adam on cross-entropy over shuffled epochs; the last partial
// batch is trained on. `rows` null = all bills. Throws on single-class data.
SwemModel train_swem(const Dataset& dataset, const Vocabulary& vocab, const SwemConfig& config,
                     const TrainParams& params, const EmbeddingMatrix* init_E = nullptr,
                     const std::vector<int>* rows = nullptr, SwemTrainLog* log = nullptr);

// Bit-exact parameter round-trip (hexfloat text container).
void save_swem(const SwemModel& model, const std::string& path);
SwemModel load_swem(const std::string& path);

}  // namespace claimsentinel
