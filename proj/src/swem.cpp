#include "claimsentinel/swem.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "claimsentinel/checkpoint.hpp"
#include "claimsentinel/rng.hpp"

namespace claimsentinel {

const char* to_string(Aggregation aggregation) {
    switch (aggregation) {
        case Aggregation::mean: return "mean";
        case Aggregation::max: return "max";
        case Aggregation::concat: return "concat";
    }
    return "?";
}

Aggregation aggregation_from_string(const std::string& name) {
    if (name == "mean") return Aggregation::mean;
    if (name == "max") return Aggregation::max;
    if (name == "concat") return Aggregation::concat;
    throw std::invalid_argument("unknown aggregation '" + name + "' (expected mean, max or concat)");
}

std::vector<double> embed_sequence(const Bill& bill, const EmbeddingMatrix& E, const Vocabulary& vocab) {
    if (E.rows != static_cast<std::size_t>(vocab.slot_count()))
        throw std::invalid_argument("embed_sequence: embedding rows do not match vocabulary");
    std::vector<double> X(bill.treatments.size() * E.dim);
    for (std::size_t i = 0; i < bill.treatments.size(); ++i) {
        const double* src = E.row(vocab.lookup(bill.treatments[i]));
        std::copy(src, src + E.dim, X.begin() + static_cast<std::ptrdiff_t>(i * E.dim));
    }
    return X;
}

std::vector<double> aggregate(const std::vector<double>& rows, std::size_t d, Aggregation strategy) {
    if (d == 0) throw std::invalid_argument("aggregate: d must be positive");
    if (rows.size() % d != 0) throw std::invalid_argument("aggregate: matrix size is not a multiple of d");
    const std::size_t k = rows.size() / d;
    const std::size_t width = strategy == Aggregation::concat ? 2 * d : d;
    std::vector<double> out(width, 0.0);
    if (k == 0) return out;

    double* mean_part = strategy == Aggregation::max ? nullptr : out.data();
    double* max_part = strategy == Aggregation::mean ? nullptr
                       : strategy == Aggregation::max ? out.data()
                                                      : out.data() + d;
    if (max_part)
        for (std::size_t j = 0; j < d; ++j) max_part[j] = rows[j];  // row 0
    for (std::size_t i = 0; i < k; ++i) {
        const double* row = rows.data() + i * d;
        for (std::size_t j = 0; j < d; ++j) {
            if (mean_part) mean_part[j] += row[j];
            if (max_part && row[j] > max_part[j]) max_part[j] = row[j];
        }
    }
    if (mean_part)
        for (std::size_t j = 0; j < d; ++j) mean_part[j] /= static_cast<double>(k);
    return out;
}

namespace {

void validate_config(const SwemConfig& config) {
    if (config.d < 1) throw std::invalid_argument("swem: d must be >= 1");
    for (int w : config.treatment_hidden)
        if (w < 1) throw std::invalid_argument("swem: treatment tower widths must be >= 1");
    for (int w : config.static_hidden)
        if (w < 1) throw std::invalid_argument("swem: static tower widths must be >= 1");
    for (int w : config.head_hidden)
        if (w < 1) throw std::invalid_argument("swem: head widths must be >= 1");
    if (config.init_sigma < 0.0) throw std::invalid_argument("swem: init_sigma must be >= 0");
}

Dense make_dense(std::size_t in, std::size_t out) {
    Dense l;
    l.in = in;
    l.out = out;
    l.w.assign(in * out, 0.0);
    l.b.assign(out, 0.0);
    return l;
}

void gaussian_fill(std::vector<double>& v, double sigma, std::uint64_t seed) {
    Rng rng(seed);
    for (double& x : v) x = rng.normal(0.0, sigma);
}

std::size_t tower_input_width(const SwemConfig& config) {
    return config.aggregation == Aggregation::concat ? 2 * static_cast<std::size_t>(config.d)
                                                     : static_cast<std::size_t>(config.d);
}

std::size_t tower_output_width(std::size_t in, const std::vector<Dense>& tower) {
    return tower.empty() ? in : tower.back().out;
}

// y = relu(Wx + b) when relu, else Wx + b
void dense_forward(const Dense& l, const std::vector<double>& x, std::vector<double>& y, bool relu) {
    y.resize(l.out);
    for (std::size_t i = 0; i < l.out; ++i) {
        const double* wr = l.w.data() + i * l.in;
        double s = l.b[i];
        for (std::size_t j = 0; j < l.in; ++j) s += wr[j] * x[j];
        y[i] = relu && s < 0.0 ? 0.0 : s;
    }
}

// dpre already includes the activation mask. Accumulates into gw/gb and
// computes dx (overwritten).
void dense_backward(const Dense& l, const std::vector<double>& x, const std::vector<double>& dpre, double* gw,
                    double* gb, std::vector<double>& dx) {
    dx.assign(l.in, 0.0);
    for (std::size_t i = 0; i < l.out; ++i) {
        double g = dpre[i];
        gb[i] += g;
        double* gwr = gw + i * l.in;
        const double* wr = l.w.data() + i * l.in;
        for (std::size_t j = 0; j < l.in; ++j) {
            gwr[j] += g * x[j];
            dx[j] += wr[j] * g;
        }
    }
}

void relu_mask(const std::vector<double>& act, std::vector<double>& dy) {
    for (std::size_t i = 0; i < act.size(); ++i)
        if (act[i] <= 0.0) dy[i] = 0.0;
}

// Everything the backward pass needs from one bill's forward pass.
struct Trace {
    std::vector<std::size_t> slots;
    std::size_t k = 0;
    std::vector<std::size_t> argmax;       // winning sequence position per column
    std::vector<double> tower_in;          // pooled vector
    std::vector<std::vector<double>> t_act;
    std::vector<double> static_in;
    std::vector<std::vector<double>> s_act;
    std::vector<double> h_in;              // concatenated tower outputs
    std::array<std::vector<double>, 2> head_act;
    std::array<double, 2> logits{};
    std::array<double, 2> prob{};
};

void forward_trace(const SwemModel& model, const Bill& bill, const Vocabulary& vocab, Trace& t) {
    const std::size_t d = static_cast<std::size_t>(model.config.d);
    const Aggregation agg = model.config.aggregation;

    t.slots.clear();
    t.slots.reserve(bill.treatments.size());
    for (const auto& code : bill.treatments) t.slots.push_back(vocab.lookup(code));
    t.k = t.slots.size();

    // Pool straight from the embedding rows; sequence order fixes the
    // summation order for the mean.
    t.tower_in.assign(tower_input_width(model.config), 0.0);
    double* mean_part = agg == Aggregation::max ? nullptr : t.tower_in.data();
    double* max_part = agg == Aggregation::mean ? nullptr
                       : agg == Aggregation::max ? t.tower_in.data()
                                                 : t.tower_in.data() + d;
    if (max_part) t.argmax.assign(d, 0);
    if (t.k > 0) {
        if (max_part) {
            const double* row0 = model.embedding.row(t.slots[0]);
            std::copy(row0, row0 + d, max_part);
        }
        for (std::size_t i = 0; i < t.k; ++i) {
            const double* row = model.embedding.row(t.slots[i]);
            for (std::size_t j = 0; j < d; ++j) {
                if (mean_part) mean_part[j] += row[j];
                if (max_part && row[j] > max_part[j]) {
                    max_part[j] = row[j];
                    t.argmax[j] = i;
                }
            }
        }
        if (mean_part)
            for (std::size_t j = 0; j < d; ++j) mean_part[j] /= static_cast<double>(t.k);
    }

    t.t_act.resize(model.treatment_tower.size());
    const std::vector<double>* x = &t.tower_in;
    for (std::size_t l = 0; l < model.treatment_tower.size(); ++l) {
        dense_forward(model.treatment_tower[l], *x, t.t_act[l], true);
        x = &t.t_act[l];
    }
    const std::vector<double>& t_out = *x;

    t.h_in.assign(t_out.begin(), t_out.end());
    if (model.config.use_static) {
        t.static_in = encode_static(bill, model.encoder);
        t.s_act.resize(model.static_tower.size());
        const std::vector<double>* sx = &t.static_in;
        for (std::size_t l = 0; l < model.static_tower.size(); ++l) {
            dense_forward(model.static_tower[l], *sx, t.s_act[l], true);
            sx = &t.s_act[l];
        }
        t.h_in.insert(t.h_in.end(), sx->begin(), sx->end());
    }

    dense_forward(model.head[0], t.h_in, t.head_act[0], true);
    dense_forward(model.head[1], t.head_act[0], t.head_act[1], true);

    std::vector<double> logits;
    dense_forward(model.output, t.head_act[1], logits, false);
    t.logits = {logits[0], logits[1]};

    double mx = std::max(t.logits[0], t.logits[1]);
    double e0 = std::exp(t.logits[0] - mx);
    double e1 = std::exp(t.logits[1] - mx);
    double z = e0 + e1;
    t.prob = {e0 / z, e1 / z};
    if (!std::isfinite(t.logits[0]) || !std::isfinite(t.logits[1]) || !std::isfinite(t.prob[0]) ||
        !std::isfinite(t.prob[1]))
        throw std::runtime_error("numeric overflow");
}

// Gradient buffer offsets per tensor, in parameter_views order.
struct GradLayout {
    std::size_t embedding = 0;
    std::vector<std::pair<std::size_t, std::size_t>> treatment;  // (w off, b off)
    std::vector<std::pair<std::size_t, std::size_t>> statics;
    std::array<std::pair<std::size_t, std::size_t>, 2> head;
    std::pair<std::size_t, std::size_t> output;
    std::size_t total = 0;
};

GradLayout make_layout(const SwemModel& model) {
    GradLayout L;
    std::size_t off = 0;
    L.embedding = off;
    off += model.embedding.data.size();
    auto add = [&](const Dense& l) {
        std::pair<std::size_t, std::size_t> p{off, off + l.w.size()};
        off += l.w.size() + l.b.size();
        return p;
    };
    for (const Dense& l : model.treatment_tower) L.treatment.push_back(add(l));
    for (const Dense& l : model.static_tower) L.statics.push_back(add(l));
    L.head[0] = add(model.head[0]);
    L.head[1] = add(model.head[1]);
    L.output = add(model.output);
    L.total = off;
    return L;
}

void backward_trace(const SwemModel& model, const Trace& t, const std::array<double, 2>& dlogits,
                    const GradLayout& L, std::vector<double>& grad, std::vector<double>& buf_a,
                    std::vector<double>& buf_b) {
    const std::size_t d = static_cast<std::size_t>(model.config.d);
    const Aggregation agg = model.config.aggregation;

    std::vector<double>& dy = buf_a;
    std::vector<double>& dx = buf_b;

    dy.assign(dlogits.begin(), dlogits.end());
    dense_backward(model.output, t.head_act[1], dy, grad.data() + L.output.first,
                   grad.data() + L.output.second, dx);

    relu_mask(t.head_act[1], dx);
    std::swap(dy, dx);
    dense_backward(model.head[1], t.head_act[0], dy, grad.data() + L.head[1].first,
                   grad.data() + L.head[1].second, dx);

    relu_mask(t.head_act[0], dx);
    std::swap(dy, dx);
    dense_backward(model.head[0], t.h_in, dy, grad.data() + L.head[0].first, grad.data() + L.head[0].second,
                   dx);

    // dx is now the gradient w.r.t. h_in = [treatment out ; static out]
    const std::size_t t_width = model.treatment_tower.empty() ? tower_input_width(model.config)
                                                              : model.treatment_tower.back().out;
    std::vector<double> d_tout(dx.begin(), dx.begin() + static_cast<std::ptrdiff_t>(t_width));

    if (model.config.use_static) {
        std::vector<double> d_sout(dx.begin() + static_cast<std::ptrdiff_t>(t_width), dx.end());
        for (std::size_t l = model.static_tower.size(); l-- > 0;) {
            relu_mask(t.s_act[l], d_sout);
            const std::vector<double>& input = l == 0 ? t.static_in : t.s_act[l - 1];
            dense_backward(model.static_tower[l], input, d_sout, grad.data() + L.statics[l].first,
                           grad.data() + L.statics[l].second, dx);
            d_sout = dx;
        }
        // gradient w.r.t. encoded static inputs is discarded
    }

    for (std::size_t l = model.treatment_tower.size(); l-- > 0;) {
        relu_mask(t.t_act[l], d_tout);
        const std::vector<double>& input = l == 0 ? t.tower_in : t.t_act[l - 1];
        dense_backward(model.treatment_tower[l], input, d_tout, grad.data() + L.treatment[l].first,
                       grad.data() + L.treatment[l].second, dx);
        d_tout = dx;
    }

    // d_tout is the gradient w.r.t. the pooled vector
    if (t.k == 0) return;
    double* ge = grad.data() + L.embedding;
    const double* d_mean = agg == Aggregation::max ? nullptr : d_tout.data();
    const double* d_max = agg == Aggregation::mean ? nullptr
                          : agg == Aggregation::max ? d_tout.data()
                                                    : d_tout.data() + d;
    if (d_mean) {
        const double inv_k = 1.0 / static_cast<double>(t.k);
        for (std::size_t i = 0; i < t.k; ++i) {
            double* row = ge + t.slots[i] * d;
            for (std::size_t j = 0; j < d; ++j) row[j] += d_mean[j] * inv_k;
        }
    }
    if (d_max) {
        for (std::size_t j = 0; j < d; ++j) ge[t.slots[t.argmax[j]] * d + j] += d_max[j];
    }
}

}  // namespace

SwemModel swem_init(const Dataset& dataset, const Vocabulary& vocab, const SwemConfig& config,
                    const EmbeddingMatrix* init_E, const std::vector<int>* rows) {
    validate_config(config);
    SwemModel model;
    model.config = config;
    model.vocab_hash = vocab.content_hash();

    const std::size_t d = static_cast<std::size_t>(config.d);
    if (init_E) {
        if (init_E->rows != static_cast<std::size_t>(vocab.slot_count()) || init_E->dim != d)
            throw std::invalid_argument("swem_init: pretrained embedding shape does not match vocabulary/d");
        model.embedding = *init_E;
    } else {
        model.embedding = make_embedding(vocab.slot_count(), d);
        gaussian_fill(model.embedding.data, config.init_sigma, derive_seed(config.seed, "swem-init-embedding"));
    }

    // Hidden relu layers start with a small positive bias: with zero biases and
    // narrow layers, every unit of a layer can start dead (the sign of w.x is
    // invariant to init_sigma), which cuts the gradient path and freezes training.
    constexpr double kReluBias = 0.01;

    auto build_tower = [&](const std::vector<int>& widths, std::size_t in, const char* name) {
        std::vector<Dense> tower;
        for (std::size_t l = 0; l < widths.size(); ++l) {
            Dense layer = make_dense(in, static_cast<std::size_t>(widths[l]));
            gaussian_fill(layer.w, config.init_sigma,
                          derive_seed(config.seed, std::string("swem-init-") + name + std::to_string(l)));
            std::fill(layer.b.begin(), layer.b.end(), kReluBias);
            in = layer.out;
            tower.push_back(std::move(layer));
        }
        return tower;
    };

    std::size_t t_in = tower_input_width(config);
    model.treatment_tower = build_tower(config.treatment_hidden, t_in, "treatment");
    std::size_t head_in = tower_output_width(t_in, model.treatment_tower);

    if (config.use_static) {
        model.encoder = fit_static_encoder(dataset, rows);
        std::size_t s_in = static_cast<std::size_t>(model.encoder.width());
        model.static_tower = build_tower(config.static_hidden, s_in, "static");
        head_in += tower_output_width(s_in, model.static_tower);
    }

    model.head[0] = make_dense(head_in, static_cast<std::size_t>(config.head_hidden[0]));
    gaussian_fill(model.head[0].w, config.init_sigma, derive_seed(config.seed, "swem-init-head0"));
    std::fill(model.head[0].b.begin(), model.head[0].b.end(), kReluBias);
    model.head[1] = make_dense(model.head[0].out, static_cast<std::size_t>(config.head_hidden[1]));
    gaussian_fill(model.head[1].w, config.init_sigma, derive_seed(config.seed, "swem-init-head1"));
    std::fill(model.head[1].b.begin(), model.head[1].b.end(), kReluBias);
    model.output = make_dense(model.head[1].out, 2);  // softmax layer: bias stays zero
    gaussian_fill(model.output.w, config.init_sigma, derive_seed(config.seed, "swem-init-output"));
    return model;
}

std::pair<double, double> forward(const SwemModel& model, const Bill& bill, const Vocabulary& vocab) {
    Trace t;
    forward_trace(model, bill, vocab, t);
    return {t.prob[0], t.prob[1]};
}

std::vector<double> predict_scores(const SwemModel& model, const Dataset& dataset, const Vocabulary& vocab) {
    if (model.vocab_hash != vocab.content_hash())
        throw std::invalid_argument("predict_scores: vocabulary does not match the model");
    std::vector<double> scores;
    scores.reserve(dataset.size());
    Trace t;
    for (const Bill& bill : dataset.bills) {
        forward_trace(model, bill, vocab, t);
        scores.push_back(t.prob[1]);
    }
    return scores;
}

std::vector<ParamView> parameter_views(SwemModel& model) {
    std::vector<ParamView> views;
    views.push_back({"embedding", model.embedding.data.data(), model.embedding.data.size()});
    auto add = [&](Dense& l, const std::string& name) {
        views.push_back({name + "_w", l.w.data(), l.w.size()});
        views.push_back({name + "_b", l.b.data(), l.b.size()});
    };
    for (std::size_t l = 0; l < model.treatment_tower.size(); ++l)
        add(model.treatment_tower[l], "treatment_tower" + std::to_string(l));
    for (std::size_t l = 0; l < model.static_tower.size(); ++l)
        add(model.static_tower[l], "static_tower" + std::to_string(l));
    add(model.head[0], "head0");
    add(model.head[1], "head1");
    add(model.output, "output");
    return views;
}

std::size_t parameter_count(const SwemModel& model) {
    return make_layout(model).total;
}

double loss_and_gradients(const SwemModel& model, const Dataset& dataset, const Vocabulary& vocab,
                          const std::vector<int>& rows, std::vector<double>& grad) {
    if (rows.empty()) throw std::invalid_argument("loss_and_gradients: empty row set");
    GradLayout L = make_layout(model);
    grad.assign(L.total, 0.0);

    Trace t;
    std::vector<double> buf_a, buf_b;
    double loss = 0.0;
    for (int r : rows) {
        const Bill& bill = dataset.bills.at(static_cast<std::size_t>(r));
        forward_trace(model, bill, vocab, t);
        double p = t.prob[static_cast<std::size_t>(bill.label)];
        loss += -std::log(std::max(p, 1e-300));
        std::array<double, 2> dlogits = {t.prob[0], t.prob[1]};
        dlogits[static_cast<std::size_t>(bill.label)] -= 1.0;
        backward_trace(model, t, dlogits, L, grad, buf_a, buf_b);
    }
    const double inv_n = 1.0 / static_cast<double>(rows.size());
    for (double& g : grad) g *= inv_n;
    return loss * inv_n;
}

double mean_cross_entropy(const SwemModel& model, const Dataset& dataset, const Vocabulary& vocab,
                          const std::vector<int>& rows) {
    if (rows.empty()) throw std::invalid_argument("mean_cross_entropy: empty row set");
    Trace t;
    double loss = 0.0;
    for (int r : rows) {
        const Bill& bill = dataset.bills.at(static_cast<std::size_t>(r));
        forward_trace(model, bill, vocab, t);
        loss += -std::log(std::max(t.prob[static_cast<std::size_t>(bill.label)], 1e-300));
    }
    return loss / static_cast<double>(rows.size());
}

SwemModel train_swem(const Dataset& dataset, const Vocabulary& vocab, const SwemConfig& config,
                     const TrainParams& params, const EmbeddingMatrix* init_E, const std::vector<int>* rows,
                     SwemTrainLog* log) {
    if (params.epochs < 1 || params.batch_size < 1 || params.learning_rate <= 0.0)
        throw std::invalid_argument("train_swem: invalid training parameters");

    std::vector<int> all;
    if (!rows) {
        all.resize(dataset.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        rows = &all;
    }
    bool has_pos = false, has_neg = false;
    for (int r : *rows) {
        (dataset.bills.at(static_cast<std::size_t>(r)).label ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) throw std::invalid_argument("train_swem: training data contains a single class");

    SwemModel model = swem_init(dataset, vocab, config, init_E, rows);
    GradLayout L = make_layout(model);
    std::vector<ParamView> views = parameter_views(model);

    std::vector<double> grad;
    std::vector<double> m(L.total, 0.0), v(L.total, 0.0);
    long t_step = 0;

    if (log) {
        log->initial_loss = mean_cross_entropy(model, dataset, vocab, *rows);
        log->epoch_loss.clear();
    }

    std::vector<int> order = *rows;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        Rng shuffle_rng(derive_seed(params.seed, "swem-shuffle-epoch-" + std::to_string(epoch)));
        shuffle_rng.shuffle(order);
        for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(params.batch_size)) {
            std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(params.batch_size));
            std::vector<int> batch(order.begin() + static_cast<std::ptrdiff_t>(start),
                                   order.begin() + static_cast<std::ptrdiff_t>(stop));
            loss_and_gradients(model, dataset, vocab, batch, grad);

            ++t_step;
            const double bc1 = 1.0 - std::pow(params.beta1, static_cast<double>(t_step));
            const double bc2 = 1.0 - std::pow(params.beta2, static_cast<double>(t_step));
            std::size_t off = 0;
            for (ParamView& view : views) {
                for (std::size_t i = 0; i < view.size; ++i) {
                    const std::size_t g = off + i;
                    m[g] = params.beta1 * m[g] + (1.0 - params.beta1) * grad[g];
                    v[g] = params.beta2 * v[g] + (1.0 - params.beta2) * grad[g] * grad[g];
                    view.data[i] -= params.learning_rate * (m[g] / bc1) / (std::sqrt(v[g] / bc2) + params.epsilon);
                }
                off += view.size;
            }
        }
        if (log) log->epoch_loss.push_back(mean_cross_entropy(model, dataset, vocab, *rows));
    }
    return model;
}

void save_swem(const SwemModel& model, const std::string& path) {
    CheckpointWriter w("swem");
    w.put_u64("version", 1);
    w.put_u64("d", static_cast<std::uint64_t>(model.config.d));
    w.put_str("aggregation", to_string(model.config.aggregation));
    w.put_u64("use_static", model.config.use_static ? 1 : 0);
    w.put_f64("init_sigma", model.config.init_sigma);
    w.put_u64("seed", model.config.seed);
    w.put_u64("vocab_hash", model.vocab_hash);

    auto int_vec = [](const std::vector<int>& xs) {
        return std::vector<double>(xs.begin(), xs.end());
    };
    w.put_vec("treatment_hidden", int_vec(model.config.treatment_hidden));
    w.put_vec("static_hidden", int_vec(model.config.static_hidden));
    w.put_vec("head_hidden", {static_cast<double>(model.config.head_hidden[0]),
                              static_cast<double>(model.config.head_hidden[1])});

    const DatasetSchema& s = model.encoder.schema;
    w.put_vec("schema", {static_cast<double>(s.sex_card), static_cast<double>(s.insurance_type_card),
                         static_cast<double>(s.doctor_specialty_card), static_cast<double>(s.group_card),
                         static_cast<double>(s.benefit_kind_card),
                         static_cast<double>(s.cost_category_card),
                         static_cast<double>(s.billing_type_card),
                         static_cast<double>(s.performance_type_card)});
    w.put_vec("encoder_lo", std::vector<double>(model.encoder.lo.begin(), model.encoder.lo.end()));
    w.put_vec("encoder_hi", std::vector<double>(model.encoder.hi.begin(), model.encoder.hi.end()));

    w.put_u64("embedding_rows", model.embedding.rows);
    w.put_u64("embedding_dim", model.embedding.dim);
    w.put_vec("embedding", model.embedding.data);

    auto put_dense = [&](const Dense& l, const std::string& name) {
        w.put_u64(name + "_in", l.in);
        w.put_u64(name + "_out", l.out);
        w.put_vec(name + "_w", l.w);
        w.put_vec(name + "_b", l.b);
    };
    w.put_u64("n_treatment_layers", model.treatment_tower.size());
    for (std::size_t l = 0; l < model.treatment_tower.size(); ++l)
        put_dense(model.treatment_tower[l], "treatment_tower" + std::to_string(l));
    w.put_u64("n_static_layers", model.static_tower.size());
    for (std::size_t l = 0; l < model.static_tower.size(); ++l)
        put_dense(model.static_tower[l], "static_tower" + std::to_string(l));
    put_dense(model.head[0], "head0");
    put_dense(model.head[1], "head1");
    put_dense(model.output, "output");
    w.write(path);
}

SwemModel load_swem(const std::string& path) {
    CheckpointReader r(path, "swem");
    SwemModel model;
    model.config.d = static_cast<int>(r.get_u64("d"));
    model.config.aggregation = aggregation_from_string(r.get_str("aggregation"));
    model.config.use_static = r.get_u64("use_static") != 0;
    model.config.init_sigma = r.get_f64("init_sigma");
    model.config.seed = r.get_u64("seed");
    model.vocab_hash = r.get_u64("vocab_hash");

    auto to_ints = [](const std::vector<double>& xs) {
        std::vector<int> out;
        out.reserve(xs.size());
        for (double x : xs) out.push_back(static_cast<int>(x));
        return out;
    };
    model.config.treatment_hidden = to_ints(r.get_vec("treatment_hidden"));
    model.config.static_hidden = to_ints(r.get_vec("static_hidden"));
    std::vector<int> head = to_ints(r.get_vec("head_hidden"));
    if (head.size() != 2) throw std::runtime_error("checkpoint: head_hidden must have two entries");
    model.config.head_hidden = {head[0], head[1]};

    std::vector<double> schema = r.get_vec("schema");
    if (schema.size() != 8) throw std::runtime_error("checkpoint: schema must have eight entries");
    model.encoder.schema.sex_card = static_cast<int>(schema[0]);
    model.encoder.schema.insurance_type_card = static_cast<int>(schema[1]);
    model.encoder.schema.doctor_specialty_card = static_cast<int>(schema[2]);
    model.encoder.schema.group_card = static_cast<int>(schema[3]);
    model.encoder.schema.benefit_kind_card = static_cast<int>(schema[4]);
    model.encoder.schema.cost_category_card = static_cast<int>(schema[5]);
    model.encoder.schema.billing_type_card = static_cast<int>(schema[6]);
    model.encoder.schema.performance_type_card = static_cast<int>(schema[7]);

    std::vector<double> lo = r.get_vec("encoder_lo"), hi = r.get_vec("encoder_hi");
    if (lo.size() != StaticEncoder::n_numeric || hi.size() != StaticEncoder::n_numeric)
        throw std::runtime_error("checkpoint: encoder ranges have wrong width");
    std::copy(lo.begin(), lo.end(), model.encoder.lo.begin());
    std::copy(hi.begin(), hi.end(), model.encoder.hi.begin());

    model.embedding.rows = r.get_u64("embedding_rows");
    model.embedding.dim = r.get_u64("embedding_dim");
    model.embedding.data = r.get_vec("embedding");
    if (model.embedding.data.size() != model.embedding.rows * model.embedding.dim)
        throw std::runtime_error("checkpoint: embedding size mismatch");

    auto get_dense = [&](const std::string& name) {
        Dense l;
        l.in = r.get_u64(name + "_in");
        l.out = r.get_u64(name + "_out");
        l.w = r.get_vec(name + "_w");
        l.b = r.get_vec(name + "_b");
        if (l.w.size() != l.in * l.out || l.b.size() != l.out)
            throw std::runtime_error("checkpoint: layer '" + name + "' size mismatch");
        return l;
    };
    std::size_t nt = r.get_u64("n_treatment_layers");
    for (std::size_t l = 0; l < nt; ++l)
        model.treatment_tower.push_back(get_dense("treatment_tower" + std::to_string(l)));
    std::size_t ns = r.get_u64("n_static_layers");
    for (std::size_t l = 0; l < ns; ++l)
        model.static_tower.push_back(get_dense("static_tower" + std::to_string(l)));
    model.head[0] = get_dense("head0");
    model.head[1] = get_dense("head1");
    model.output = get_dense("output");
    return model;
}

}  // namespace claimsentinel
