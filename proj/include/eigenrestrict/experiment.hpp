#pragma once

#include "eigenrestrict/config.hpp"
#include "eigenrestrict/geometry.hpp"
#include "eigenrestrict/restriction.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace eigenrestrict {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitContractFailure = 1;
inline constexpr int kExitInvalidConfig = 2;

struct CatalogEntry {
    std::string name;
    std::string verifies;
    std::string description;
};

// Stable, ordered list of runnable experiments.
const std::vector<CatalogEntry>& experiment_catalog();
// One "name → verifies: description" line per entry.
std::string format_catalog();

// Parses "equator", "latitude:<colatitude>" or "great-subsphere".
CurveSpec parse_curve(const std::string& text);

// Family names accepted by the sweep experiment, except "turning-point" which is not a
// single template. Zonal poles sit on the curve or at its normal pole respectively.
FamilyTemplate named_family(const std::string& name, const CurveSpec& curve, std::optional<double> delta = {});

struct RunOutcome {
    int exit_code;
    std::string verdict;  // pass | fail | no_contract | invalid_config | error
    std::vector<std::filesystem::path> files;
    std::string message;  // error text, empty on success
};

// Runs the configured experiment and writes results.csv, summary.json (always, also on
// failure when the directory is writable) and, if requested, plot.svg into out_dir.
RunOutcome run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

// Writes the failure summary for a configuration rejected before running (exit code 2).
RunOutcome report_invalid_config(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                                 const ConfigError& error);

}  // namespace eigenrestrict
