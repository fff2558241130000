#include "claimsentinel/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "claimsentinel/checkpoint.hpp"
#include "claimsentinel/csv.hpp"
#include "claimsentinel/dataset_io.hpp"
#include "claimsentinel/generator.hpp"
#include "claimsentinel/metrics.hpp"
#include "claimsentinel/resampling.hpp"
#include "claimsentinel/rng.hpp"
#include "claimsentinel/word2vec.hpp"

namespace claimsentinel {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// config plumbing

// Every key any command understands, so a shared config file can carry
// sections for several commands while misspellings still fail loudly.
const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> table = {
        {"data", {"path", "bundle_dir"}},
        {"generator",
         {"vocab_size", "zipf_exponent", "fraud_rate", "n_bills", "length_mode", "max_length",
          "n_signal_pairs", "signal_strength", "seed"}},
        {"features", {"mode", "min_count"}},
        {"model",
         {"kind", "seed", "n_trees", "max_depth", "learning_rate", "gbdt_learning_rate",
          "swem_learning_rate", "min_leaf", "lambda", "subsample", "colsample", "d", "aggregation",
          "epochs", "batch_size", "init_sigma", "use_static", "treatment_hidden", "static_hidden",
          "head_hidden", "pretrain_embeddings"}},
        {"validation", {"n_repeats", "fraction", "seed"}},
        {"sweep", {"fractions", "dimensions"}},
        {"resample",
         {"methods", "k_neighbors", "target_ratio", "iht_keep_fraction", "max_enn_iters", "seed"}},
        {"attack", {"mode", "n_candidates", "seed", "objective"}},
    };
    return table;
}

// Commands consume only the keys they act on; anything else must at least be
// a key some command understands.
void finish_config(const Config& config) {
    for (const auto& [section, key] : config.unconsumed()) {
        auto it = known_keys().find(section);
        if (it == known_keys().end()) {
            std::string known;
            for (const auto& [name, keys] : known_keys()) known += (known.empty() ? "" : ", ") + name;
            throw ConfigError("config: unknown section [" + section + "] (known sections: " + known + ")");
        }
        if (!it->second.count(key))
            throw ConfigError("config: unknown key '" + key + "' in section [" + section + "]");
    }
}

int to_int(long long value, const std::string& what) {
    if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max())
        throw ConfigError(what + ": value " + std::to_string(value) + " out of int range");
    return static_cast<int>(value);
}

std::vector<int> to_int_list(const std::vector<long long>& values, const std::string& what) {
    std::vector<int> out;
    out.reserve(values.size());
    for (long long v : values) out.push_back(to_int(v, what));
    return out;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        const char c = i < text.size() ? text[i] : ',';
        if (c != ',') {
            item += c;
            continue;
        }
        const auto begin = item.find_first_not_of(" \t");
        if (begin != std::string::npos) {
            const auto end = item.find_last_not_of(" \t");
            out.push_back(item.substr(begin, end - begin + 1));
        }
        item.clear();
    }
    return out;
}

GeneratorConfig read_generator(Config& config, std::uint64_t master_seed) {
    GeneratorConfig g;
    g.vocab_size = to_int(config.get_int("generator", "vocab_size", g.vocab_size), "generator.vocab_size");
    g.zipf_exponent = config.get_double("generator", "zipf_exponent", g.zipf_exponent);
    g.fraud_rate = config.get_double("generator", "fraud_rate", g.fraud_rate);
    g.n_bills = to_int(config.get_int("generator", "n_bills", g.n_bills), "generator.n_bills");
    g.length_mode = to_int(config.get_int("generator", "length_mode", g.length_mode), "generator.length_mode");
    g.max_length = to_int(config.get_int("generator", "max_length", g.max_length), "generator.max_length");
    g.n_signal_pairs =
        to_int(config.get_int("generator", "n_signal_pairs", g.n_signal_pairs), "generator.n_signal_pairs");
    g.signal_strength = config.get_double("generator", "signal_strength", g.signal_strength);
    g.seed = config.get_u64("generator", "seed", master_seed);
    if (g.vocab_size < 2) throw ConfigError("generator.vocab_size must be >= 2");
    if (g.zipf_exponent <= 0.0) throw ConfigError("generator.zipf_exponent must be positive");
    if (!(g.fraud_rate > 0.0 && g.fraud_rate < 1.0)) throw ConfigError("generator.fraud_rate must lie in (0,1)");
    if (g.n_bills < 1) throw ConfigError("generator.n_bills must be >= 1");
    if (g.length_mode < 1) throw ConfigError("generator.length_mode must be >= 1");
    if (g.max_length < g.length_mode) throw ConfigError("generator.max_length must be >= length_mode");
    if (g.n_signal_pairs < 0) throw ConfigError("generator.n_signal_pairs must be >= 0");
    if (!(g.signal_strength >= 0.0 && g.signal_strength <= 1.0))
        throw ConfigError("generator.signal_strength must lie in [0,1]");
    return g;
}

int read_min_count(Config& config) {
    const int min_count = to_int(config.get_int("features", "min_count", 2), "features.min_count");
    if (min_count < 1) throw ConfigError("features.min_count must be >= 1");
    return min_count;
}

struct FeatureOptions {
    FeatureMode mode = FeatureMode::tfidf;
    int min_count = 2;
};

FeatureOptions read_features(Config& config) {
    FeatureOptions f;
    const std::string mode = config.get_str("features", "mode", "tfidf");
    if (mode == "bow")
        f.mode = FeatureMode::bow;
    else if (mode == "tfidf")
        f.mode = FeatureMode::tfidf;
    else
        throw ConfigError("features.mode must be bow or tfidf, got '" + mode + "'");
    f.min_count = read_min_count(config);
    return f;
}

struct ValidationOptions {
    int n_repeats = 1;
    double fraction = 0.8;
};

ValidationOptions read_validation(Config& config, int default_repeats) {
    ValidationOptions v;
    v.n_repeats = to_int(config.get_int("validation", "n_repeats", default_repeats), "validation.n_repeats");
    v.fraction = config.get_double("validation", "fraction", 0.8);
    if (v.n_repeats < 1) throw ConfigError("validation.n_repeats must be >= 1");
    if (!(v.fraction > 0.0 && v.fraction < 1.0)) throw ConfigError("validation.fraction must lie in (0,1)");
    return v;
}

GbdtParams read_gbdt_params(Config& config, std::uint64_t seed, const char* lr_key) {
    GbdtParams p;
    p.n_trees = to_int(config.get_int("model", "n_trees", p.n_trees), "model.n_trees");
    p.max_depth = to_int(config.get_int("model", "max_depth", p.max_depth), "model.max_depth");
    p.learning_rate = config.get_double("model", lr_key, 0.1);
    p.min_leaf = to_int(config.get_int("model", "min_leaf", p.min_leaf), "model.min_leaf");
    p.lambda = config.get_double("model", "lambda", p.lambda);
    p.subsample = config.get_double("model", "subsample", p.subsample);
    p.colsample = config.get_double("model", "colsample", p.colsample);
    p.seed = seed;
    if (p.n_trees < 1) throw ConfigError("model.n_trees must be >= 1");
    if (p.max_depth < 0) throw ConfigError("model.max_depth must be >= 0");
    if (p.learning_rate <= 0.0) throw ConfigError(std::string("model.") + lr_key + " must be positive");
    if (p.min_leaf < 1) throw ConfigError("model.min_leaf must be >= 1");
    if (p.lambda < 0.0) throw ConfigError("model.lambda must be >= 0");
    if (!(p.subsample > 0.0 && p.subsample <= 1.0)) throw ConfigError("model.subsample must lie in (0,1]");
    if (!(p.colsample > 0.0 && p.colsample <= 1.0)) throw ConfigError("model.colsample must lie in (0,1]");
    return p;
}

struct SwemOptions {
    SwemConfig config;
    TrainParams train;
    bool pretrain = false;
};

std::vector<long long> to_ll(const std::vector<int>& v) { return {v.begin(), v.end()}; }

SwemOptions read_swem_options(Config& config, std::uint64_t seed, const char* lr_key) {
    SwemOptions o;
    o.config.d = to_int(config.get_int("model", "d", o.config.d), "model.d");
    const std::string agg = config.get_str("model", "aggregation", "max");
    try {
        o.config.aggregation = aggregation_from_string(agg);
    } catch (const std::exception&) {
        throw ConfigError("model.aggregation must be mean, max, or concat, got '" + agg + "'");
    }
    o.config.use_static = config.get_bool("model", "use_static", o.config.use_static);
    o.config.init_sigma = config.get_double("model", "init_sigma", o.config.init_sigma);
    o.config.treatment_hidden = to_int_list(
        config.get_int_list("model", "treatment_hidden", to_ll(o.config.treatment_hidden)),
        "model.treatment_hidden");
    o.config.static_hidden = to_int_list(
        config.get_int_list("model", "static_hidden", to_ll(o.config.static_hidden)), "model.static_hidden");
    const std::vector<int> head = to_int_list(
        config.get_int_list("model", "head_hidden", {o.config.head_hidden[0], o.config.head_hidden[1]}),
        "model.head_hidden");
    if (head.size() != 2) throw ConfigError("model.head_hidden must list exactly two layer widths");
    o.config.head_hidden = {head[0], head[1]};
    o.config.seed = seed;
    o.train.epochs = to_int(config.get_int("model", "epochs", o.train.epochs), "model.epochs");
    o.train.batch_size = to_int(config.get_int("model", "batch_size", o.train.batch_size), "model.batch_size");
    o.train.learning_rate = config.get_double("model", lr_key, 0.001);
    o.train.seed = seed;
    o.pretrain = config.get_bool("model", "pretrain_embeddings", false);
    if (o.config.d < 1) throw ConfigError("model.d must be >= 1");
    if (o.config.init_sigma < 0.0) throw ConfigError("model.init_sigma must be >= 0");
    for (int h : o.config.treatment_hidden)
        if (h < 1) throw ConfigError("model.treatment_hidden widths must be >= 1");
    for (int h : o.config.static_hidden)
        if (h < 1) throw ConfigError("model.static_hidden widths must be >= 1");
    if (o.config.head_hidden[0] < 1 || o.config.head_hidden[1] < 1)
        throw ConfigError("model.head_hidden widths must be >= 1");
    if (o.train.epochs < 1) throw ConfigError("model.epochs must be >= 1");
    if (o.train.batch_size < 1) throw ConfigError("model.batch_size must be >= 1");
    if (o.train.learning_rate <= 0.0) throw ConfigError(std::string("model.") + lr_key + " must be positive");
    return o;
}

struct ModelOptions {
    std::string kind = "gbdt";
    std::uint64_t seed = 0;
    GbdtParams gbdt;
    SwemOptions swem;
};

// forced_kind pins the model for commands whose experiment design dictates
// it; a conflicting explicit kind is a config error, not a silent override.
ModelOptions read_model(Config& config, std::uint64_t master_seed, const char* forced_kind,
                        const char* command) {
    ModelOptions m;
    m.kind = config.get_str("model", "kind", forced_kind ? forced_kind : "gbdt");
    if (m.kind != "gbdt" && m.kind != "swem")
        throw ConfigError("model.kind must be gbdt or swem, got '" + m.kind + "'");
    if (forced_kind && m.kind != forced_kind)
        throw ConfigError(std::string(command) + " always trains " + forced_kind +
                          "; remove model.kind or set it to " + forced_kind);
    m.seed = config.get_u64("model", "seed", derive_seed(master_seed, "model"));
    if (m.kind == "gbdt")
        m.gbdt = read_gbdt_params(config, m.seed, "learning_rate");
    else
        m.swem = read_swem_options(config, m.seed, "learning_rate");
    return m;
}

// [data] path wins; otherwise the corpus is generated in-process.
Dataset obtain_dataset(Config& config, std::uint64_t master_seed) {
    if (config.has("data", "path")) {
        const std::string path = config.get_str("data", "path", "");
        return load_dataset(path);
    }
    return generate_synthetic(read_generator(config, master_seed));
}

// ---------------------------------------------------------------------------
// fold plumbing

std::vector<int> subset_ints(const std::vector<int>& values, const std::vector<int>& rows) {
    std::vector<int> out;
    out.reserve(rows.size());
    for (int r : rows) out.push_back(values[r]);
    return out;
}

Dataset fold_dataset(const Dataset& data, const std::vector<int>& rows) {
    Dataset out;
    out.schema = data.schema;
    out.bills.reserve(rows.size());
    for (int r : rows) out.bills.push_back(data.bills[r]);
    return out;
}

template <typename FeatureFn>
std::vector<std::vector<double>> build_matrix(const Dataset& data, const std::vector<int>& rows,
                                              FeatureFn&& features) {
    std::vector<std::vector<double>> X;
    X.reserve(rows.size());
    for (int r : rows) X.push_back(features(data.bills[r]));
    return X;
}

using RunFold = std::function<std::map<std::string, double>(const SplitPlan&)>;

// repeated_cv demands >= 2 repeats (a std needs that many samples); a single
// holdout reuses its repeat-0 split so raising n_repeats only appends folds.
std::map<std::string, MetricSummary> run_holdouts(int n_repeats, double fraction,
                                                  const std::vector<int>& labels, std::uint64_t seed,
                                                  const RunFold& run_fold) {
    if (n_repeats >= 2) return repeated_cv(n_repeats, fraction, labels, seed, run_fold);
    const SplitPlan plan = stratified_split(labels, fraction, derive_seed(seed, "cv-repeat-0"));
    std::map<std::string, MetricSummary> out;
    for (const auto& [name, value] : run_fold(plan)) out[name] = {value, 0.0};
    return out;
}

double score_bill(const ScoringBundle& bundle, const Bill& bill) {
    if (bundle.model_kind == "gbdt") {
        const IdfModel* idf = bundle.feature_mode == FeatureMode::tfidf ? &bundle.idf : nullptr;
        return predict_proba(bundle.gbdt, assemble(bill, bundle.vocab, idf, bundle.encoder, bundle.feature_mode));
    }
    return forward(bundle.swem, bill, bundle.vocab).second;
}

std::vector<double> score_rows(const ScoringBundle& bundle, const Dataset& data,
                               const std::vector<int>& rows) {
    std::vector<double> scores;
    scores.reserve(rows.size());
    for (int r : rows) scores.push_back(score_bill(bundle, data.bills[r]));
    return scores;
}

// Fits vocabulary, feature transforms and the model on the given training
// rows. Only these rows influence any fitted state.
ScoringBundle fit_bundle(const Dataset& data, const std::vector<int>& train_rows,
                         const FeatureOptions& features, const ModelOptions& model,
                         std::uint64_t master_seed) {
    ScoringBundle b;
    b.model_kind = model.kind;
    b.feature_mode = features.mode;
    b.vocab = build_vocabulary(fold_dataset(data, train_rows).bills, features.min_count);
    const std::vector<int> labels = data.labels();
    if (model.kind == "gbdt") {
        if (features.mode == FeatureMode::tfidf) b.idf = tfidf_fit(data, b.vocab, &train_rows);
        b.encoder = fit_static_encoder(data, &train_rows);
        const IdfModel* idf = features.mode == FeatureMode::tfidf ? &b.idf : nullptr;
        auto fn = [&](const Bill& bill) { return assemble(bill, b.vocab, idf, b.encoder, features.mode); };
        b.gbdt = train_gbdt(build_matrix(data, train_rows, fn), subset_ints(labels, train_rows), model.gbdt);
    } else {
        EmbeddingMatrix pretrained;
        const EmbeddingMatrix* init = nullptr;
        if (model.swem.pretrain) {
            SkipgramParams sp;
            sp.d = model.swem.config.d;
            sp.min_count = features.min_count;
            sp.seed = derive_seed(master_seed, "word2vec");
            pretrained = train_skipgram(data, b.vocab, sp, &train_rows);
            init = &pretrained;
        }
        b.swem = train_swem(data, b.vocab, model.swem.config, model.swem.train, init, &train_rows);
        b.encoder = b.swem.encoder;
    }
    return b;
}

// ---------------------------------------------------------------------------
// output plumbing

fs::path write_curve_csv(const Curve& curve, const fs::path& path) {
    CsvWriter w(curve.kind == CurveKind::roc ? std::vector<std::string>{"fpr", "tpr"}
                                             : std::vector<std::string>{"recall", "precision"});
    for (const auto& [x, y] : curve.points) w.add_row({format_double(x), format_double(y)});
    w.write(path.string());
    return path;
}

fs::path write_json(const json& value, const fs::path& path) {
    write_text_atomic(path.string(), value.dump(2) + "\n");
    return path;
}

bool nondecreasing(const std::vector<double>& values) {
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[i - 1] - 1e-12) return false;
    return true;
}

std::vector<double> schema_to_vec(const DatasetSchema& s) {
    return {double(s.sex_card),           double(s.insurance_type_card), double(s.doctor_specialty_card),
            double(s.group_card),         double(s.benefit_kind_card),   double(s.cost_category_card),
            double(s.billing_type_card),  double(s.performance_type_card)};
}

DatasetSchema schema_from_vec(const std::vector<double>& v) {
    if (v.size() != 8) throw std::runtime_error("load_bundle: encoder_schema must hold 8 values");
    DatasetSchema s;
    s.sex_card = int(std::llround(v[0]));
    s.insurance_type_card = int(std::llround(v[1]));
    s.doctor_specialty_card = int(std::llround(v[2]));
    s.group_card = int(std::llround(v[3]));
    s.benefit_kind_card = int(std::llround(v[4]));
    s.cost_category_card = int(std::llround(v[5]));
    s.billing_type_card = int(std::llround(v[6]));
    s.performance_type_card = int(std::llround(v[7]));
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// bundles

void save_bundle(const ScoringBundle& bundle, const fs::path& dir) {
    if (bundle.model_kind != "gbdt" && bundle.model_kind != "swem")
        throw std::invalid_argument("save_bundle: unknown model kind '" + bundle.model_kind + "'");
    fs::create_directories(dir);
    save_vocabulary(bundle.vocab, (dir / "vocab.txt").string());
    CheckpointWriter w("pipeline");
    w.put_str("model_kind", bundle.model_kind);
    w.put_str("feature_mode", bundle.feature_mode == FeatureMode::bow ? "bow" : "tfidf");
    w.put_u64("vocab_hash", bundle.vocab.content_hash());
    w.put_i64("idf_documents", bundle.idf.n_documents);
    w.put_vec("idf", bundle.idf.idf);
    w.put_vec("encoder_schema", schema_to_vec(bundle.encoder.schema));
    w.put_vec("encoder_lo", {bundle.encoder.lo.begin(), bundle.encoder.lo.end()});
    w.put_vec("encoder_hi", {bundle.encoder.hi.begin(), bundle.encoder.hi.end()});
    w.write((dir / "pipeline.ckpt").string());
    if (bundle.model_kind == "gbdt")
        save_gbdt(bundle.gbdt, (dir / "model.ckpt").string());
    else
        save_swem(bundle.swem, (dir / "model.ckpt").string());
}

ScoringBundle load_bundle(const fs::path& dir) {
    ScoringBundle b;
    CheckpointReader r((dir / "pipeline.ckpt").string(), "pipeline");
    b.model_kind = r.get_str("model_kind");
    if (b.model_kind != "gbdt" && b.model_kind != "swem")
        throw std::runtime_error("load_bundle: unknown model kind '" + b.model_kind + "'");
    const std::string mode = r.get_str("feature_mode");
    if (mode == "bow")
        b.feature_mode = FeatureMode::bow;
    else if (mode == "tfidf")
        b.feature_mode = FeatureMode::tfidf;
    else
        throw std::runtime_error("load_bundle: unknown feature mode '" + mode + "'");
    b.vocab = load_vocabulary((dir / "vocab.txt").string());
    if (b.vocab.content_hash() != r.get_u64("vocab_hash"))
        throw std::runtime_error("load_bundle: vocab.txt does not match pipeline.ckpt (content hash differs)");
    b.idf.n_documents = r.get_i64("idf_documents");
    b.idf.idf = r.get_vec("idf");
    b.encoder.schema = schema_from_vec(r.get_vec("encoder_schema"));
    const std::vector<double> lo = r.get_vec("encoder_lo");
    const std::vector<double> hi = r.get_vec("encoder_hi");
    if (lo.size() != b.encoder.lo.size() || hi.size() != b.encoder.hi.size())
        throw std::runtime_error("load_bundle: encoder ranges must hold " +
                                 std::to_string(b.encoder.lo.size()) + " values");
    std::copy(lo.begin(), lo.end(), b.encoder.lo.begin());
    std::copy(hi.begin(), hi.end(), b.encoder.hi.begin());
    if (b.model_kind == "gbdt") {
        b.gbdt = load_gbdt((dir / "model.ckpt").string());
        const std::size_t slots = static_cast<std::size_t>(b.vocab.slot_count());
        if (b.feature_mode == FeatureMode::tfidf && b.idf.idf.size() != slots)
            throw std::runtime_error("load_bundle: idf width does not match the vocabulary");
        const std::size_t width = slots + static_cast<std::size_t>(b.encoder.width());
        if (b.gbdt.n_features != width)
            throw std::runtime_error("load_bundle: model expects " + std::to_string(b.gbdt.n_features) +
                                     " features, pipeline produces " + std::to_string(width));
    } else {
        b.swem = load_swem((dir / "model.ckpt").string());
        if (b.swem.vocab_hash != b.vocab.content_hash())
            throw std::runtime_error("load_bundle: vocab.txt does not match the model checkpoint");
        b.encoder = b.swem.encoder;
    }
    return b;
}

Scorer make_scorer(const ScoringBundle& bundle) {
    auto shared = std::make_shared<const ScoringBundle>(bundle);
    return [shared](const Bill& bill) { return score_bill(*shared, bill); };
}

// ---------------------------------------------------------------------------
// commands

WrittenFiles cmd_gen(Config& config, std::uint64_t master_seed, const fs::path& out_dir) {
    const GeneratorConfig gen = read_generator(config, master_seed);
    finish_config(config);
    const Dataset data = generate_synthetic(gen);
    fs::create_directories(out_dir);

    const fs::path data_path = out_dir / "dataset.jsonl";
    save_dataset(data, data_path);

    long long fraud = 0;
    for (const Bill& bill : data.bills) fraud += bill.label;
    json summary;
    summary["fraud_rate"] = data.bills.empty() ? 0.0 : double(fraud) / double(data.bills.size());
    summary["n_bills"] = static_cast<long long>(data.bills.size());
    summary["n_fraud"] = fraud;
    summary["seed"] = gen.seed;
    summary["vocab_size"] = gen.vocab_size;
    return {data_path, write_json(summary, out_dir / "summary.json")};
}

WrittenFiles cmd_stats(Config& config, std::uint64_t master_seed, const fs::path& out_dir) {
    const int min_count = read_min_count(config);
    const Dataset data = obtain_dataset(config, master_seed);
    finish_config(config);
    if (data.bills.empty()) throw std::runtime_error("stats: dataset is empty");
    fs::create_directories(out_dir);

    const std::vector<long long> hist = length_histogram(data, 50);
    CsvWriter h({"length", "count"});
    if (hist[0] > 0) h.add_row({"0", std::to_string(hist[0])});
    for (int k = 1; k < 50; ++k) h.add_row({std::to_string(k), std::to_string(hist[k])});
    h.add_row({"50+", std::to_string(hist[50])});
    const fs::path hist_path = out_dir / "histogram.csv";
    h.write(hist_path.string());

    const auto ranked = rank_frequency(data);
    CsvWriter r({"rank", "count"});
    for (const auto& [rank, count] : ranked) r.add_row({std::to_string(rank), std::to_string(count)});
    const fs::path rank_path = out_dir / "rank_frequency.csv";
    r.write(rank_path.string());

    // least-squares slope of ln(count) against ln(rank)
    double slope = 0.0;
    if (ranked.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& [rank, count] : ranked) {
            const double x = std::log(double(rank));
            const double y = std::log(double(count));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = double(ranked.size());
        slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }

    long long fraud = 0;
    for (const Bill& bill : data.bills) fraud += bill.label;
    int mode_bin = 0;
    long long mode_count = -1;
    for (int k = 0; k <= 50; ++k)
        if (hist[k] > mode_count) {
            mode_count = hist[k];
            mode_bin = k;
        }

    const Vocabulary vocab = build_vocabulary(data.bills, min_count);
    json summary;
    summary["distinct_tokens"] = static_cast<long long>(ranked.size());
    summary["fraud_rate"] = double(fraud) / double(data.bills.size());
    summary["length_mode"] = mode_bin;
    if (fraud == 0 || fraud == static_cast<long long>(data.bills.size()))
        summary["max_label_correlation"] = nullptr;
    else
        summary["max_label_correlation"] = max_label_correlation(data, vocab);
    summary["n_bills"] = static_cast<long long>(data.bills.size());
    summary["rank_slope"] = slope;
    summary["vocab_retained"] = vocab.size();
    return {hist_path, rank_path, write_json(summary, out_dir / "summary.json")};
}

namespace {

enum class Channel { general_only, visit_only, both };

std::vector<double> channel_features(const Bill& bill, Channel channel, const Vocabulary& vocab,
                                     const IdfModel& idf, const StaticEncoder& encoder, FeatureMode mode) {
    switch (channel) {
        case Channel::general_only:
            return encode_general(bill, encoder);
        case Channel::visit_only: {
            std::vector<double> x =
                mode == FeatureMode::bow ? bow(bill, vocab) : tfidf_transform(bill, vocab, idf);
            const std::vector<double> v = encode_visit_numeric(bill, encoder);
            x.insert(x.end(), v.begin(), v.end());
            return x;
        }
        case Channel::both:
            return assemble(bill, vocab, mode == FeatureMode::tfidf ? &idf : nullptr, encoder, mode);
    }
    throw std::logic_error("channel_features: unreachable");
}

}  // namespace

WrittenFiles cmd_compare_features(Config& config, std::uint64_t master_seed, const fs::path& out_dir) {
    const FeatureOptions features = read_features(config);
    const ModelOptions model = read_model(config, master_seed, "gbdt", "compare-features");
    const ValidationOptions val = read_validation(config, 1);
    const Dataset data = obtain_dataset(config, master_seed);
    finish_config(config);

    struct Row {
        const char* name;
        Channel channel;
    };
    const std::array<Row, 3> rows{{{"General", Channel::general_only},
                                   {"Visit-specific", Channel::visit_only},
                                   {"Both", Channel::both}}};

    const std::vector<int> labels = data.labels();
    auto run_fold = [&](const SplitPlan& plan) {
        const Vocabulary vocab = build_vocabulary(fold_dataset(data, plan.train).bills, features.min_count);
        const IdfModel idf = tfidf_fit(data, vocab, &plan.train);
        const StaticEncoder encoder = fit_static_encoder(data, &plan.train);
        const std::vector<int> y_train = subset_ints(labels, plan.train);
        const std::vector<int> y_test = subset_ints(labels, plan.test);
        std::map<std::string, double> metrics;
        for (const Row& row : rows) {
            auto fn = [&](const Bill& bill) {
                return channel_features(bill, row.channel, vocab, idf, encoder, features.mode);
            };
            const GbdtEnsemble m = train_gbdt(build_matrix(data, plan.train, fn), y_train, model.gbdt);
            const std::vector<double> scores = predict_proba(m, build_matrix(data, plan.test, fn));
            metrics[std::string(row.name) + "|roc"] = roc(y_test, scores).auc;
            metrics[std::string(row.name) + "|pr"] = pr(y_test, scores).auc;
        }
        return metrics;
    };
    const auto summary =
        run_holdouts(val.n_repeats, val.fraction, labels, derive_seed(master_seed, "cv"), run_fold);

    fs::create_directories(out_dir);
    CsvWriter w({"feature_set", "roc_auc_mean", "roc_auc_std", "pr_auc_mean", "pr_auc_std"});
    for (const Row& row : rows) {
        const MetricSummary& rc = summary.at(std::string(row.name) + "|roc");
        const MetricSummary& pc = summary.at(std::string(row.name) + "|pr");
        w.add_row({row.name, format_double(rc.mean), format_double(rc.stddev), format_double(pc.mean),
                   format_double(pc.stddev)});
    }
    const fs::path csv_path = out_dir / "compare_features.csv";
    w.write(csv_path.string());
    return {csv_path};
}

WrittenFiles cmd_compare_models(Config& config, std::uint64_t master_seed, const fs::path& out_dir) {
    if (config.has("model", "kind"))
        throw ConfigError("compare-models trains every model kind; remove model.kind");
    if (config.has("model", "learning_rate"))
        throw ConfigError(
            "compare-models trains both gbdt and swem; set gbdt_learning_rate / swem_learning_rate "
            "instead of learning_rate");
    const int min_count = read_min_count(config);
    const std::uint64_t model_seed = config.get_u64("model", "seed", derive_seed(master_seed, "model"));
    const GbdtParams gbdt_params = read_gbdt_params(config, model_seed, "gbdt_learning_rate");
    const SwemOptions swem_options = read_swem_options(config, model_seed, "swem_learning_rate");
    const ValidationOptions val = read_validation(config, 10);
    const Dataset data = obtain_dataset(config, master_seed);
    finish_config(config);

    struct Row {
        const char* name;
        bool is_swem;
        FeatureMode mode;        // gbdt rows
        Aggregation aggregation; // swem rows
        bool with_static;
    };
    const std::array<Row, 10> rows{{
        {"gbdt-bow", false, FeatureMode::bow, Aggregation::mean, false},
        {"gbdt-bow", false, FeatureMode::bow, Aggregation::mean, true},
        {"gbdt-tfidf", false, FeatureMode::tfidf, Aggregation::mean, false},
        {"gbdt-tfidf", false, FeatureMode::tfidf, Aggregation::mean, true},
        {"swem-mean", true, FeatureMode::bow, Aggregation::mean, false},
        {"swem-mean", true, FeatureMode::bow, Aggregation::mean, true},
        {"swem-concat", true, FeatureMode::bow, Aggregation::concat, false},
        {"swem-concat", true, FeatureMode::bow, Aggregation::concat, true},
        {"swem-max", true, FeatureMode::bow, Aggregation::max, false},
        {"swem-max", true, FeatureMode::bow, Aggregation::max, true},
    }};
    auto row_key = [](const Row& row) { return std::string(row.name) + (row.with_static ? "|yes" : "|no"); };

    const std::vector<int> labels = data.labels();
    const std::uint64_t w2v_seed = derive_seed(master_seed, "word2vec");
    auto run_fold = [&](const SplitPlan& plan) {
        const Vocabulary vocab = build_vocabulary(fold_dataset(data, plan.train).bills, min_count);
        const IdfModel idf = tfidf_fit(data, vocab, &plan.train);
        const StaticEncoder encoder = fit_static_encoder(data, &plan.train);
        const std::vector<int> y_train = subset_ints(labels, plan.train);
        const std::vector<int> y_test = subset_ints(labels, plan.test);

        EmbeddingMatrix pretrained;
        const EmbeddingMatrix* init = nullptr;
        if (swem_options.pretrain) {
            SkipgramParams sp;
            sp.d = swem_options.config.d;
            sp.min_count = min_count;
            sp.seed = w2v_seed;
            pretrained = train_skipgram(data, vocab, sp, &plan.train);
            init = &pretrained;
        }

        std::map<std::string, double> metrics;
        for (const Row& row : rows) {
            std::vector<double> scores;
            if (!row.is_swem) {
                auto fn = [&](const Bill& bill) {
                    if (row.with_static)
                        return assemble(bill, vocab, row.mode == FeatureMode::tfidf ? &idf : nullptr,
                                        encoder, row.mode);
                    return row.mode == FeatureMode::bow ? bow(bill, vocab)
                                                        : tfidf_transform(bill, vocab, idf);
                };
                const GbdtEnsemble m = train_gbdt(build_matrix(data, plan.train, fn), y_train, gbdt_params);
                scores = predict_proba(m, build_matrix(data, plan.test, fn));
            } else {
                SwemConfig sc = swem_options.config;
                sc.aggregation = row.aggregation;
                sc.use_static = row.with_static;
                const SwemModel m = train_swem(data, vocab, sc, swem_options.train, init, &plan.train);
                scores.reserve(plan.test.size());
                for (int r : plan.test) scores.push_back(forward(m, data.bills[r], vocab).second);
            }
            metrics[row_key(row) + "|roc"] = roc(y_test, scores).auc;
            metrics[row_key(row) + "|pr"] = pr(y_test, scores).auc;
        }
        return metrics;
    };
    const auto summary =
        run_holdouts(val.n_repeats, val.fraction, labels, derive_seed(master_seed, "cv"), run_fold);

    fs::create_directories(out_dir);
    CsvWriter w({"model", "static_features", "roc_auc_mean", "roc_auc_std", "pr_auc_mean", "pr_auc_std"});
    for (const Row& row : rows) {
        const MetricSummary& rc = summary.at(row_key(row) + "|roc");
        const MetricSummary& pc = summary.at(row_key(row) + "|pr");
        w.add_row({row.name, row.with_static ? "yes" : "no", format_double(rc.mean),
                   format_double(rc.stddev), format_double(pc.mean), format_double(pc.stddev)});
    }
    const fs::path csv_path = out_dir / "compare_models.csv";
    w.write(csv_path.string());
    return {csv_path};
}

WrittenFiles cmd_sweep_size(Config& config, std::uint64_t master_seed, const fs::path& out_dir) {
    const FeatureOptions features = read_features(config);
    const ModelOptions model = read_model(config, master_seed, nullptr, "sweep-size");
    const ValidationOptions val = read_validation(config, 1);
    std::vector<double> default_fractions;
    for (int i = 1; i <= 10; ++i) default_fractions.push_back(double(i) / 10.0);
    const std::vector<double> fractions =
        config.get_double_list("sweep", "fractions", default_fractions);
    if (fractions.empty()) throw ConfigError("sweep.fractions must not be empty");
    for (double f : fractions)
        if (!(f > 0.0 && f <= 1.0)) throw ConfigError("sweep.fractions entries must lie in (0,1]");
    const Dataset data = obtain_dataset(config, master_seed);
    finish_config(config);

    const std::vector<int> labels = data.labels();
    const SplitPlan plan = stratified_split(labels, val.fraction, derive_seed(master_seed, "split"));
    const std::vector<int> y_test = subset_ints(labels, plan.test);

    fs::create_directories(out_dir);
    CsvWriter w({"train_fraction", "train_rows", "roc_auc", "pr_auc"});
    std::vector<double> roc_trend, pr_trend;
    for (std::size_t i = 0; i < fractions.size(); ++i) {
        std::vector<int> rows;
        if (fractions[i] >= 1.0) {
            rows = plan.train;
        } else {
            const std::vector<int> fold_labels = subset_ints(labels, plan.train);
            const SplitPlan sub = stratified_split(
                fold_labels, fractions[i], derive_seed(master_seed, "sweep-size-" + std::to_string(i)));
            rows.reserve(sub.train.size());
            for (int idx : sub.train) rows.push_back(plan.train[idx]);
        }
        const ScoringBundle bundle = fit_bundle(data, rows, features, model, master_seed);
        const std::vector<double> scores = score_rows(bundle, data, plan.test);
        const double roc_auc = roc(y_test, scores).auc;
        const double pr_auc = pr(y_test, scores).auc;
        w.add_row({format_double(fractions[i]), std::to_string(rows.size()), format_double(roc_auc),
                   format_double(pr_auc)});
        roc_trend.push_back(roc_auc);
        pr_trend.push_back(pr_auc);
    }
    const fs::path csv_path = out_dir / "sweep_size.csv";
    w.write(csv_path.string());

    json summary;
    summary["n_rows"] = static_cast<long long>(fractions.size());
    summary["pr_auc_monotone_nondecreasing"] = nondecreasing(pr_trend);
    summary["roc_auc_monotone_nondecreasing"] = nondecreasing(roc_trend);
    return {csv_path, write_json(summary, out_dir / "summary.json")};
}

WrittenFiles cmd_sweep_dim(Config& config, std::uint64_t master_seed, const fs::path& out_dir) {
    const FeatureOptions features = read_features(config);
    ModelOptions model = read_model(config, master_seed, "swem", "sweep-dim");
    const ValidationOptions val = read_validation(config, 1);
    const std::vector<int> dims = to_int_list(
        config.get_int_list("sweep", "dimensions", {8, 16, 32, 64, 128, 300}), "sweep.dimensions");
    if (dims.empty()) throw ConfigError("sweep.dimensions must not be empty");
    for (int d : dims)
        if (d < 1) throw ConfigError("sweep.dimensions entries must be >= 1");
    const Dataset data = obtain_dataset(config, master_seed);
    finish_config(config);

    const std::vector<int> labels = data.labels();
    const SplitPlan plan = stratified_split(labels, val.fraction, derive_seed(master_seed, "split"));
    const std::vector<int> y_test = subset_ints(labels, plan.test);

    fs::create_directories(out_dir);
    CsvWriter w({"dimension", "roc_auc", "pr_auc"});
    std::vector<double> roc_trend, pr_trend;
    for (int d : dims) {
        model.swem.config.d = d;
        const ScoringBundle bundle = fit_bundle(data, plan.train, features, model, master_seed);
        const std::vector<double> scores = score_rows(bundle, data, plan.test);
        const double roc_auc = roc(y_test, scores).auc;
        const double pr_auc = pr(y_test, scores).auc;
        w.add_row({std::to_string(d), format_double(roc_auc), format_double(pr_auc)});
        roc_trend.push_back(roc_auc);
        pr_trend.push_back(pr_auc);
    }
    const fs::path csv_path = out_dir / "sweep_dim.csv";
    w.write(csv_path.string());

    json summary;
    summary["n_rows"] = static_cast<long long>(dims.size());
    summary["pr_auc_monotone_nondecreasing"] = nondecreasing(pr_trend);
    summary["roc_auc_monotone_nondecreasing"] = nondecreasing(roc_trend);
    return {csv_path, write_json(summary, out_dir / "summary.json")};
}

WrittenFiles cmd_resample_bench(Config& config, std::uint64_t master_seed, const fs::path& out_dir) {
    const int min_count = read_min_count(config);
    const ModelOptions model = read_model(config, master_seed, "gbdt", "resample-bench");
    const ValidationOptions val = read_validation(config, 1);

    const std::vector<std::string> names =
        split_list(config.get_str("resample", "methods", "smote,adasyn,repeated_enn,instance_hardness,smoteenn"));
    if (names.empty()) throw ConfigError("resample.methods must not be empty");
    const std::uint64_t resample_seed = config.get_u64("resample", "seed", derive_seed(master_seed, "resample"));
    const bool has_k = config.has("resample", "k_neighbors");
    const int k_override = has_k ? to_int(config.get_int("resample", "k_neighbors", 0), "resample.k_neighbors") : 0;
    if (has_k && k_override < 1) throw ConfigError("resample.k_neighbors must be >= 1");
    const double target_ratio = config.get_double("resample", "target_ratio", 1.0);
    if (target_ratio <= 0.0) throw ConfigError("resample.target_ratio must be positive");
    const double iht_keep = config.get_double("resample", "iht_keep_fraction", 0.5);
    if (!(iht_keep > 0.0 && iht_keep <= 1.0)) throw ConfigError("resample.iht_keep_fraction must lie in (0,1]");
    const int max_enn = to_int(config.get_int("resample", "max_enn_iters", 100), "resample.max_enn_iters");
    if (max_enn < 1) throw ConfigError("resample.max_enn_iters must be >= 1");

    std::vector<ResampleMethod> methods;
    for (const std::string& name : names) {
        ResampleTag tag;
        try {
            tag = resample_tag_from_string(name);
        } catch (const std::exception&) {
            throw ConfigError("resample.methods: unknown method '" + name + "'");
        }
        ResampleMethod m = ResampleMethod::make(tag);
        if (has_k) m.k_neighbors = k_override;
        m.target_ratio = target_ratio;
        m.iht_keep_fraction = iht_keep;
        m.max_enn_iters = max_enn;
        m.seed = resample_seed;
        methods.push_back(m);
    }
    const Dataset data = obtain_dataset(config, master_seed);
    finish_config(config);

    const Vocabulary vocab = build_vocabulary(data.bills, min_count);
    const auto rows =
        resample_benchmark(data, vocab, methods, model.gbdt, val.fraction, derive_seed(master_seed, "split"));

    fs::create_directories(out_dir);
    CsvWriter w({"method", "train_rows", "roc_auc", "pr_auc"});
    for (const ResampleBenchmarkRow& row : rows)
        w.add_row({row.method, std::to_string(row.train_rows), format_double(row.roc_auc),
                   format_double(row.pr_auc)});
    const fs::path csv_path = out_dir / "resample_bench.csv";
    w.write(csv_path.string());
    return {csv_path};
}

WrittenFiles cmd_attack(Config& config, std::uint64_t master_seed, const fs::path& out_dir) {
    AttackParams params;
    const std::string mode = config.get_str("attack", "mode", "random");
    try {
        params.mode = attack_mode_from_string(mode);
    } catch (const std::exception&) {
        throw ConfigError("attack.mode must be random or malicious, got '" + mode + "'");
    }
    if (params.mode == AttackMode::none)
        throw ConfigError("attack.mode must be random or malicious, got '" + mode + "'");
    params.n_candidates = to_int(config.get_int("attack", "n_candidates", 100), "attack.n_candidates");
    if (params.n_candidates < 1) throw ConfigError("attack.n_candidates must be >= 1");
    params.seed = config.get_u64("attack", "seed", derive_seed(master_seed, "attack"));
    const std::string objective = config.get_str("attack", "objective", "minimize_score");
    if (objective == "minimize_score")
        params.objective = AttackObjective::minimize_score;
    else if (objective == "max_abs_delta")
        params.objective = AttackObjective::max_abs_delta;
    else
        throw ConfigError("attack.objective must be minimize_score or max_abs_delta, got '" + objective + "'");

    ScoringBundle bundle;
    Dataset target;
    if (config.has("data", "bundle_dir")) {
        const std::string bundle_dir = config.get_str("data", "bundle_dir", "");
        target = obtain_dataset(config, master_seed);
        finish_config(config);
        bundle = load_bundle(bundle_dir);
    } else {
        const FeatureOptions features = read_features(config);
        const ModelOptions model = read_model(config, master_seed, nullptr, "attack");
        const ValidationOptions val = read_validation(config, 1);
        const Dataset data = obtain_dataset(config, master_seed);
        finish_config(config);
        const SplitPlan plan =
            stratified_split(data.labels(), val.fraction, derive_seed(master_seed, "split"));
        bundle = fit_bundle(data, plan.train, features, model, master_seed);
        target = fold_dataset(data, plan.test);
    }

    const AttackReport report = attack_report(make_scorer(bundle), target, bundle.vocab, params);

    fs::create_directories(out_dir);
    WrittenFiles written;
    written.push_back(write_curve_csv(report.roc_before, out_dir / "roc_before.csv"));
    written.push_back(write_curve_csv(report.roc_after, out_dir / "roc_after.csv"));
    written.push_back(write_curve_csv(report.pr_before, out_dir / "pr_before.csv"));
    written.push_back(write_curve_csv(report.pr_after, out_dir / "pr_after.csv"));

    long long fraud = 0;
    for (const Bill& bill : target.bills) fraud += bill.label;
    json summary;
    summary["mode"] = mode;
    summary["model_kind"] = bundle.model_kind;
    summary["n_bills"] = static_cast<long long>(target.bills.size());
    summary["n_fraud"] = fraud;
    summary["pr_auc_after"] = report.pr_after.auc;
    summary["pr_auc_before"] = report.pr_before.auc;
    summary["pr_delta"] = report.pr_delta;
    summary["roc_auc_after"] = report.roc_after.auc;
    summary["roc_auc_before"] = report.roc_before.auc;
    summary["roc_delta"] = report.roc_delta;
    if (params.mode == AttackMode::malicious) {
        summary["n_candidates"] = params.n_candidates;
        summary["n_modified"] = static_cast<long long>(report.chosen.size());
        summary["objective"] = objective;
        CsvWriter c({"bill_id", "token"});
        for (const auto& [id, token] : report.chosen) c.add_row({id, token});
        const fs::path chosen_path = out_dir / "chosen.csv";
        c.write(chosen_path.string());
        written.push_back(chosen_path);
    }
    written.push_back(write_json(summary, out_dir / "attack_summary.json"));
    return written;
}

WrittenFiles cmd_train(Config& config, std::uint64_t master_seed, const fs::path& out_dir) {
    const FeatureOptions features = read_features(config);
    const ModelOptions model = read_model(config, master_seed, nullptr, "train");
    const ValidationOptions val = read_validation(config, 1);
    const Dataset data = obtain_dataset(config, master_seed);
    finish_config(config);

    const std::vector<int> labels = data.labels();
    const SplitPlan plan = stratified_split(labels, val.fraction, derive_seed(master_seed, "split"));
    const ScoringBundle bundle = fit_bundle(data, plan.train, features, model, master_seed);
    save_bundle(bundle, out_dir);

    const Dataset test_fold = fold_dataset(data, plan.test);
    const fs::path test_path = out_dir / "test.jsonl";
    save_dataset(test_fold, test_path);

    const std::vector<double> scores = score_rows(bundle, data, plan.test);
    const std::vector<int> y_test = subset_ints(labels, plan.test);
    json summary;
    summary["feature_mode"] = bundle.feature_mode == FeatureMode::bow ? "bow" : "tfidf";
    summary["model_kind"] = bundle.model_kind;
    summary["n_test"] = static_cast<long long>(plan.test.size());
    summary["n_train"] = static_cast<long long>(plan.train.size());
    summary["pr_auc"] = pr(y_test, scores).auc;
    summary["roc_auc"] = roc(y_test, scores).auc;
    summary["seed"] = master_seed;
    return {out_dir / "vocab.txt", out_dir / "pipeline.ckpt", out_dir / "model.ckpt", test_path,
            write_json(summary, out_dir / "summary.json")};
}

namespace {

WrittenFiles score_command(Config& config, const fs::path& out_dir, bool emit_curves,
                           const char* command) {
    const std::string bundle_dir = config.require_str("data", "bundle_dir");
    const std::string data_path = config.require_str("data", "path");
    finish_config(config);
    const ScoringBundle bundle = load_bundle(bundle_dir);
    const Dataset data = load_dataset(data_path);
    if (data.bills.empty()) throw std::runtime_error(std::string(command) + ": dataset is empty");

    const std::vector<int> labels = data.labels();
    std::vector<double> scores;
    scores.reserve(data.bills.size());
    for (const Bill& bill : data.bills) scores.push_back(score_bill(bundle, bill));

    const Curve roc_curve = roc(labels, scores);
    const Curve pr_curve = pr(labels, scores);

    fs::create_directories(out_dir);
    WrittenFiles written;
    if (emit_curves) {
        written.push_back(write_curve_csv(roc_curve, out_dir / "roc.csv"));
        written.push_back(write_curve_csv(pr_curve, out_dir / "pr.csv"));
    } else {
        CsvWriter s({"bill_id", "label", "score"});
        for (std::size_t i = 0; i < data.bills.size(); ++i)
            s.add_row({data.bills[i].id, std::to_string(labels[i]), format_double(scores[i])});
        const fs::path scores_path = out_dir / "scores.csv";
        s.write(scores_path.string());
        written.push_back(scores_path);
    }

    long long fraud = 0;
    for (int y : labels) fraud += y;
    json summary;
    summary["model_kind"] = bundle.model_kind;
    summary["n_bills"] = static_cast<long long>(data.bills.size());
    summary["n_fraud"] = fraud;
    summary["pr_auc"] = pr_curve.auc;
    summary["roc_auc"] = roc_curve.auc;
    written.push_back(write_json(summary, out_dir / "metrics.json"));
    return written;
}

}  // namespace

WrittenFiles cmd_curves(Config& config, std::uint64_t master_seed, const fs::path& out_dir) {
    (void)master_seed;  // scoring a saved model draws no randomness
    return score_command(config, out_dir, true, "curves");
}

WrittenFiles cmd_eval(Config& config, std::uint64_t master_seed, const fs::path& out_dir) {
    (void)master_seed;
    return score_command(config, out_dir, false, "eval");
}

// ---------------------------------------------------------------------------
// dispatch

std::uint64_t resolve_master_seed(Config& config, std::optional<std::uint64_t> cli_seed) {
    const std::uint64_t from_config = config.get_u64("validation", "seed", 42);
    return cli_seed ? *cli_seed : from_config;
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {
        "gen",        "stats",  "compare-features", "compare-models", "sweep-size", "sweep-dim",
        "resample-bench", "attack", "curves",           "train",          "eval"};
    return names;
}

WrittenFiles run_command(const std::string& name, Config& config, std::optional<std::uint64_t> cli_seed,
                         const fs::path& out_dir) {
    const std::uint64_t master_seed = resolve_master_seed(config, cli_seed);
    using Command = WrittenFiles (*)(Config&, std::uint64_t, const fs::path&);
    static const std::map<std::string, Command> table = {
        {"gen", cmd_gen},
        {"stats", cmd_stats},
        {"compare-features", cmd_compare_features},
        {"compare-models", cmd_compare_models},
        {"sweep-size", cmd_sweep_size},
        {"sweep-dim", cmd_sweep_dim},
        {"resample-bench", cmd_resample_bench},
        {"attack", cmd_attack},
        {"curves", cmd_curves},
        {"train", cmd_train},
        {"eval", cmd_eval},
    };
    const auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown command '" + name + "'");
    return it->second(config, master_seed, out_dir);
}

}  // namespace claimsentinel
