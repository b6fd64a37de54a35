#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eigenrestrict {

enum class ExperimentKind { Sweep, Kernel, Phase, Airy, Torus, OracleTable };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);

// Invalid configuration; field() names the offending key.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Flat key = value experiment description. Physics parameters have no implicit
// defaults; validate() reports whichever the chosen experiment still needs.
struct ExperimentConfig {
    std::optional<ExperimentKind> experiment;

    // sweep
    std::optional<std::string> family;  // highest-weight | zonal-on-curve | zonal-off-curve | averaged | turning-point
    std::optional<std::string> curve;   // equator | latitude:<colatitude> | great-subsphere
    std::optional<double> p;            // inf allowed
    std::vector<int> degrees;
    std::optional<double> delta;        // averaged family window
    std::optional<double> tolerance;    // overrides the per-family slope tolerance
    std::optional<int> curve_points;
    std::optional<int> ambient_resolution;

    // kernel / airy
    std::vector<double> lambdas;
    std::optional<double> r;
    std::optional<double> window;
    std::optional<int> grid;
    std::optional<std::string> airy_case;  // model | variable
    std::optional<double> step;
    std::optional<long long> memory_cap_mib;

    // phase
    std::vector<double> colatitudes;

    // torus
    std::vector<long long> n_list;
    std::optional<long long> n_max;
    std::optional<int> seed_count;

    // oracle-table
    std::optional<int> d;
    std::optional<int> k;
    std::optional<bool> curved;

    std::uint64_t seed = 0;
    bool plot = false;

    bool operator==(const ExperimentConfig&) const = default;
};

// Keys in their canonical serialization order.
const std::vector<std::string>& config_keys();

// Applies one key = value assignment; throws ConfigError for unknown keys or bad values.
void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);

// Parses "key = value" lines; '#' starts a comment, blank lines are ignored, repeated keys are errors.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

// Canonical text form: every set key in config_keys() order, doubles with 17 significant digits.
std::string serialize_config(const ExperimentConfig& config);

// Checks that the keys required by the chosen experiment are present and consistent.
void validate(const ExperimentConfig& config);

// Parses "a:b" (geometric sqrt(2) ladder) or a comma-separated list.
std::vector<int> parse_degrees(std::string_view text);

// 17-significant-digit decimal; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double value);

}  // namespace eigenrestrict
