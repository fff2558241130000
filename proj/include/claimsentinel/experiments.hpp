#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "claimsentinel/config.hpp"
#include "claimsentinel/dataset.hpp"
#include "claimsentinel/features.hpp"
#include "claimsentinel/gbdt.hpp"
#include "claimsentinel/robustness.hpp"
#include "claimsentinel/swem.hpp"
#include "claimsentinel/vocabulary.hpp"

namespace claimsentinel {

// A trained scoring pipeline: the vocabulary, the feature transforms fitted
// on the training fold, and the model itself. On disk this is a directory
// holding vocab.txt, pipeline.ckpt and model.ckpt.
struct ScoringBundle {
    std::string model_kind;                         // "gbdt" or "swem"
    FeatureMode feature_mode = FeatureMode::tfidf;  // gbdt input layout
    Vocabulary vocab;
    IdfModel idf;           // fitted only for gbdt + tfidf
    StaticEncoder encoder;  // gbdt static block (swem carries its own copy)
    GbdtEnsemble gbdt;
    SwemModel swem;
};

void save_bundle(const ScoringBundle& bundle, const std::filesystem::path& dir);
ScoringBundle load_bundle(const std::filesystem::path& dir);

// Self-contained fraud scorer; holds its own copy of the bundle.
Scorer make_scorer(const ScoringBundle& bundle);

// Paths of every file the command wrote, in write order.
using WrittenFiles = std::vector<std::filesystem::path>;

// Each command reads its config sections, runs one experiment, and writes
// CSV/JSON artifacts under out_dir (created if missing). master_seed feeds
// every random component the config does not pin explicitly. Unknown
// sections and misspelled keys raise ConfigError.
WrittenFiles cmd_gen(Config& config, std::uint64_t master_seed, const std::filesystem::path& out_dir);
WrittenFiles cmd_stats(Config& config, std::uint64_t master_seed, const std::filesystem::path& out_dir);
WrittenFiles cmd_compare_features(Config& config, std::uint64_t master_seed, const std::filesystem::path& out_dir);
WrittenFiles cmd_compare_models(Config& config, std::uint64_t master_seed, const std::filesystem::path& out_dir);
WrittenFiles cmd_sweep_size(Config& config, std::uint64_t master_seed, const std::filesystem::path& out_dir);
WrittenFiles cmd_sweep_dim(Config& config, std::uint64_t master_seed, const std::filesystem::path& out_dir);
WrittenFiles cmd_resample_bench(Config& config, std::uint64_t master_seed, const std::filesystem::path& out_dir);
WrittenFiles cmd_attack(Config& config, std::uint64_t master_seed, const std::filesystem::path& out_dir);
WrittenFiles cmd_curves(Config& config, std::uint64_t master_seed, const std::filesystem::path& out_dir);
WrittenFiles cmd_train(Config& config, std::uint64_t master_seed, const std::filesystem::path& out_dir);
WrittenFiles cmd_eval(Config& config, std::uint64_t master_seed, const std::filesystem::path& out_dir);

// Master seed precedence: --seed on the command line, then [validation]
// seed, then 42. Always consumes the config key so strict validation stays
// quiet about it.
std::uint64_t resolve_master_seed(Config& config, std::optional<std::uint64_t> cli_seed);

// Dispatches one named command end to end (the CLI entry point; also handy
// for tests). Throws std::invalid_argument for an unknown name.
WrittenFiles run_command(const std::string& name, Config& config, std::optional<std::uint64_t> cli_seed,
                         const std::filesystem::path& out_dir);

const std::vector<std::string>& command_names();

}  // namespace claimsentinel
