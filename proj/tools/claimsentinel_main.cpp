#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "claimsentinel/config.hpp"
#include "claimsentinel/experiments.hpp"

namespace {

const std::map<std::string, std::string>& command_help() {
    static const std::map<std::string, std::string> help = {
        {"gen", "generate a synthetic claims corpus and write it as JSONL"},
        {"stats", "summarize a corpus: length histogram, token rank/frequency, label balance"},
        {"compare-features", "score general vs visit-specific vs combined feature blocks"},
        {"compare-models", "run the model grid (gbdt/swem variants, with and without static features)"},
        {"sweep-size", "measure test AUC as the training fold grows"},
        {"sweep-dim", "measure test AUC across embedding dimensions"},
        {"resample-bench", "compare class-imbalance resamplers on a shared split"},
        {"attack", "append adversarial treatments to fraud bills and remeasure AUC"},
        {"curves", "write ROC and PR curves for a saved model on a dataset"},
        {"train", "fit a model and save the scoring bundle plus its held-out fold"},
        {"eval", "score a dataset with a saved model and write per-bill scores"},
    };
    return help;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"claimsentinel: fraud modeling experiments over claim sequences"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed_value = 0;
    for (const std::string& name : claimsentinel::command_names()) {
        CLI::App* sub = app.add_subcommand(name, command_help().at(name));
        sub->add_option("--config", config_path, "experiment config file")->required();
        sub->add_option("--seed", seed_value, "master seed (overrides [validation] seed)");
        sub->add_option("--out", out_dir, "output directory (default: current directory)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // bad usage counts as a configuration problem; --help stays 0
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    std::optional<std::uint64_t> seed;
    if (sub->count("--seed") > 0) seed = seed_value;

    try {
        claimsentinel::Config config = claimsentinel::Config::load(config_path);
        const auto written = claimsentinel::run_command(sub->get_name(), config, seed, out_dir);
        for (const auto& path : written) std::cout << path.string() << "\n";
        return 0;
    } catch (const claimsentinel::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
