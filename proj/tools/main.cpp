#include "eigenrestrict/config.hpp"
#include "eigenrestrict/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace er = eigenrestrict;

namespace {

struct RunArgs {
    std::string experiment;
    std::string config_path;
    std::string out_dir = "eigenrestrict-out";
    bool plot = false;
    std::vector<std::pair<std::string, std::string>> overrides;  // applied in command-line order
    std::vector<std::string> sets;
};

// Flags that map one-to-one onto config keys.
const std::vector<std::pair<std::string, std::string>> kOverrideFlags = {
    {"--family", "family"},   {"--curve", "curve"},             {"--p", "p"},
    {"--degrees", "degrees"}, {"--lambda-list", "lambda-list"}, {"--n-max", "n-max"},
    {"--seed", "seed"},
};

er::ExperimentConfig build_config(const RunArgs& args) {
    er::ExperimentConfig config;
    if (!args.config_path.empty()) config = er::load_config(args.config_path);
    if (!args.experiment.empty()) config.experiment = er::parse_experiment_kind(args.experiment);
    for (const auto& [key, value] : args.overrides) er::set_config_value(config, key, value);
    for (const auto& kv : args.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw er::ConfigError("--set", "expected key=value, got '" + kv + "'");
        er::set_config_value(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (args.plot) config.plot = true;
    return config;
}

int run(const RunArgs& args) {
    er::ExperimentConfig config;
    try {
        config = build_config(args);
    } catch (const er::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        er::report_invalid_config(config, args.out_dir, e);
        return er::kExitInvalidConfig;
    }

    const er::RunOutcome outcome = er::run_experiment(config, args.out_dir);
    if (!outcome.message.empty()) std::cerr << outcome.verdict << ": " << outcome.message << '\n';
    for (const auto& f : outcome.files) std::cout << "wrote " << f.string() << '\n';
    std::cout << "verdict: " << outcome.verdict << '\n';
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical experiments on eigenfunction restriction bounds"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "Print the experiment catalog");

    RunArgs args;
    auto* run_cmd = app.add_subcommand("run", "Run one experiment and write results into --out");
    run_cmd->add_option("experiment", args.experiment, "Experiment name (overrides the config file)");
    run_cmd->add_option("--config", args.config_path, "Key-value config file")->check(CLI::ExistingFile);
    run_cmd->add_option("--out", args.out_dir, "Output directory")->capture_default_str();
    run_cmd->add_flag("--plot", args.plot, "Also write plot.svg");
    std::vector<std::string> flag_values(kOverrideFlags.size());
    for (std::size_t i = 0; i < kOverrideFlags.size(); ++i) {
        run_cmd->add_option(kOverrideFlags[i].first, flag_values[i], "Sets config key '" + kOverrideFlags[i].second + "'");
    }
    run_cmd->add_option("--set", args.sets, "Set any config key, KEY=VALUE (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : er::kExitInvalidConfig;
    }

    if (list->parsed()) {
        std::cout << er::format_catalog();
        return er::kExitSuccess;
    }
    for (std::size_t i = 0; i < kOverrideFlags.size(); ++i) {
        if (run_cmd->count(kOverrideFlags[i].first) > 0) args.overrides.emplace_back(kOverrideFlags[i].second, flag_values[i]);
    }
    return run(args);
}
