#include "eigenrestrict/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

namespace eigenrestrict {

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Sweep: return "sweep";
        case ExperimentKind::Kernel: return "kernel";
        case ExperimentKind::Phase: return "phase";
        case ExperimentKind::Airy: return "airy";
        case ExperimentKind::Torus: return "torus";
        case ExperimentKind::OracleTable: return "oracle-table";
    }
    return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
    for (auto kind : {ExperimentKind::Sweep, ExperimentKind::Kernel, ExperimentKind::Phase, ExperimentKind::Airy,
                      ExperimentKind::Torus, ExperimentKind::OracleTable}) {
        if (name == to_string(kind)) return kind;
    }
    throw ConfigError("experiment", "unknown experiment '" + std::string(name) +
                                        "' (expected sweep, kernel, phase, airy, torus or oracle-table)");
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(std::string_view key, std::string_view raw) {
    const std::string text = trim(raw);
    if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
    // "pi" and "pi/<number>" are accepted for angles.
    if (text.rfind("pi", 0) == 0) {
        if (text == "pi") return std::numbers::pi;
        if (text.size() > 3 && text[2] == '/') return std::numbers::pi / parse_double(key, text.substr(3));
    }
    if (text.empty()) throw ConfigError(std::string(key), "expected a number, got an empty value");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || errno == ERANGE || std::isnan(v)) {
        throw ConfigError(std::string(key), "expected a number, got '" + text + "'");
    }
    return v;
}

long long parse_integer(std::string_view key, std::string_view raw) {
    const std::string text = trim(raw);
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
        throw ConfigError(std::string(key), "expected an integer, got '" + text + "'");
    }
    return v;
}

int parse_int(std::string_view key, std::string_view raw) {
    const long long v = parse_integer(key, raw);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ConfigError(std::string(key), "integer out of range");
    }
    return static_cast<int>(v);
}

bool parse_bool(std::string_view key, std::string_view raw) {
    const std::string text = trim(raw);
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw ConfigError(std::string(key), "expected true or false, got '" + text + "'");
}

std::vector<std::string> split_list(std::string_view raw) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in{std::string(raw)};
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    return out;
}

template <class T, class Parse>
std::vector<T> parse_list(std::string_view key, std::string_view raw, Parse parse) {
    std::vector<T> out;
    for (const auto& item : split_list(raw)) out.push_back(parse(key, item));
    if (out.empty()) throw ConfigError(std::string(key), "expected a non-empty comma-separated list");
    return out;
}

template <class T, class Format>
std::string join(const std::vector<T>& values, Format format) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format(values[i]);
    }
    return out;
}

std::string canonical_curve(std::string_view raw) {
    const std::string text = trim(raw);
    if (text == "equator" || text == "great-subsphere") return text;
    if (text.rfind("latitude:", 0) == 0) {
        const double theta = parse_double("curve", text.substr(9));
        if (!(theta > 0.0 && theta <= std::numbers::pi / 2 + 1e-15)) {
            throw ConfigError("curve", "latitude colatitude must lie in (0, pi/2]");
        }
        return "latitude:" + format_double(theta);
    }
    throw ConfigError("curve", "unknown curve '" + text + "' (expected equator, latitude:<colatitude> or great-subsphere)");
}

const std::set<std::string>& families() {
    static const std::set<std::string> names{"highest-weight", "zonal-on-curve", "zonal-off-curve", "averaged",
                                             "turning-point"};
    return names;
}

struct Field {
    std::string key;
    std::function<void(ExperimentConfig&, std::string_view)> set;
    std::function<std::optional<std::string>(const ExperimentConfig&)> get;
};

template <class T>
std::optional<std::string> opt_double(const std::optional<T>& v) {
    if (!v) return std::nullopt;
    return format_double(*v);
}

template <class T>
std::optional<std::string> opt_int(const std::optional<T>& v) {
    if (!v) return std::nullopt;
    return std::to_string(*v);
}

void require_positive(std::string_view key, double v) {
    if (!(v > 0.0)) throw ConfigError(std::string(key), "must be positive");
}

const std::vector<Field>& schema() {
    static const std::vector<Field> fields = [] {
        std::vector<Field> f;
        f.push_back({"experiment", [](auto& c, auto v) { c.experiment = parse_experiment_kind(trim(v)); },
                     [](const auto& c) -> std::optional<std::string> {
                         if (!c.experiment) return std::nullopt;
                         return to_string(*c.experiment);
                     }});
        f.push_back({"family",
                     [](auto& c, auto v) {
                         const std::string name = trim(v);
                         if (!families().count(name)) {
                             throw ConfigError("family", "unknown family '" + name +
                                                             "' (expected highest-weight, zonal-on-curve, "
                                                             "zonal-off-curve, averaged or turning-point)");
                         }
                         c.family = name;
                     },
                     [](const auto& c) { return c.family; }});
        f.push_back({"curve", [](auto& c, auto v) { c.curve = canonical_curve(v); }, [](const auto& c) { return c.curve; }});
        f.push_back({"p",
                     [](auto& c, auto v) {
                         const double p = parse_double("p", v);
                         if (!(p >= 2.0)) throw ConfigError("p", "must be >= 2 or inf");
                         c.p = p;
                     },
                     [](const auto& c) { return opt_double(c.p); }});
        f.push_back({"degrees", [](auto& c, auto v) { c.degrees = parse_degrees(v); },
                     [](const auto& c) -> std::optional<std::string> {
                         if (c.degrees.empty()) return std::nullopt;
                         return join(c.degrees, [](int n) { return std::to_string(n); });
                     }});
        f.push_back({"delta",
                     [](auto& c, auto v) {
                         c.delta = parse_double("delta", v);
                         require_positive("delta", *c.delta);
                     },
                     [](const auto& c) { return opt_double(c.delta); }});
        f.push_back({"tolerance",
                     [](auto& c, auto v) {
                         c.tolerance = parse_double("tolerance", v);
                         require_positive("tolerance", *c.tolerance);
                     },
                     [](const auto& c) { return opt_double(c.tolerance); }});
        f.push_back({"curve-points",
                     [](auto& c, auto v) {
                         c.curve_points = parse_int("curve-points", v);
                         require_positive("curve-points", *c.curve_points);
                     },
                     [](const auto& c) { return opt_int(c.curve_points); }});
        f.push_back({"ambient-resolution",
                     [](auto& c, auto v) {
                         c.ambient_resolution = parse_int("ambient-resolution", v);
                         require_positive("ambient-resolution", *c.ambient_resolution);
                     },
                     [](const auto& c) { return opt_int(c.ambient_resolution); }});
        f.push_back({"lambda-list",
                     [](auto& c, auto v) {
                         c.lambdas = parse_list<double>("lambda-list", v, parse_double);
                         for (double l : c.lambdas) require_positive("lambda-list", l);
                     },
                     [](const auto& c) -> std::optional<std::string> {
                         if (c.lambdas.empty()) return std::nullopt;
                         return join(c.lambdas, format_double);
                     }});
        f.push_back({"r",
                     [](auto& c, auto v) {
                         c.r = parse_double("r", v);
                         if (!(*c.r > 0.0 && *c.r < std::numbers::pi / 2)) throw ConfigError("r", "must lie in (0, pi/2)");
                     },
                     [](const auto& c) { return opt_double(c.r); }});
        f.push_back({"window",
                     [](auto& c, auto v) {
                         c.window = parse_double("window", v);
                         require_positive("window", *c.window);
                     },
                     [](const auto& c) { return opt_double(c.window); }});
        f.push_back({"grid",
                     [](auto& c, auto v) {
                         c.grid = parse_int("grid", v);
                         if (*c.grid < 3) throw ConfigError("grid", "must be >= 3");
                     },
                     [](const auto& c) { return opt_int(c.grid); }});
        f.push_back({"airy-case",
                     [](auto& c, auto v) {
                         const std::string name = trim(v);
                         if (name != "model" && name != "variable") {
                             throw ConfigError("airy-case", "expected model or variable, got '" + name + "'");
                         }
                         c.airy_case = name;
                     },
                     [](const auto& c) { return c.airy_case; }});
        f.push_back({"step",
                     [](auto& c, auto v) {
                         c.step = parse_double("step", v);
                         require_positive("step", *c.step);
                     },
                     [](const auto& c) { return opt_double(c.step); }});
        f.push_back({"memory-cap-mib",
                     [](auto& c, auto v) {
                         c.memory_cap_mib = parse_integer("memory-cap-mib", v);
                         require_positive("memory-cap-mib", static_cast<double>(*c.memory_cap_mib));
                     },
                     [](const auto& c) { return opt_int(c.memory_cap_mib); }});
        f.push_back({"colatitudes",
                     [](auto& c, auto v) {
                         c.colatitudes = parse_list<double>("colatitudes", v, parse_double);
                         for (double t : c.colatitudes) {
                             if (!(t > 0.0 && t <= std::numbers::pi / 2 + 1e-15)) {
                                 throw ConfigError("colatitudes", "each colatitude must lie in (0, pi/2]");
                             }
                         }
                     },
                     [](const auto& c) -> std::optional<std::string> {
                         if (c.colatitudes.empty()) return std::nullopt;
                         return join(c.colatitudes, format_double);
                     }});
        f.push_back({"n-list",
                     [](auto& c, auto v) {
                         c.n_list = parse_list<long long>("n-list", v, parse_integer);
                         for (long long n : c.n_list) require_positive("n-list", static_cast<double>(n));
                     },
                     [](const auto& c) -> std::optional<std::string> {
                         if (c.n_list.empty()) return std::nullopt;
                         return join(c.n_list, [](long long n) { return std::to_string(n); });
                     }});
        f.push_back({"n-max",
                     [](auto& c, auto v) {
                         c.n_max = parse_integer("n-max", v);
                         if (*c.n_max < 2 || *c.n_max > 10'000'000) throw ConfigError("n-max", "must lie in [2, 10^7]");
                     },
                     [](const auto& c) { return opt_int(c.n_max); }});
        f.push_back({"seed-count",
                     [](auto& c, auto v) {
                         c.seed_count = parse_int("seed-count", v);
                         require_positive("seed-count", *c.seed_count);
                     },
                     [](const auto& c) { return opt_int(c.seed_count); }});
        f.push_back({"d",
                     [](auto& c, auto v) {
                         c.d = parse_int("d", v);
                         if (*c.d < 2) throw ConfigError("d", "must be >= 2");
                     },
                     [](const auto& c) { return opt_int(c.d); }});
        f.push_back({"k",
                     [](auto& c, auto v) {
                         c.k = parse_int("k", v);
                         if (*c.k < 1) throw ConfigError("k", "must be >= 1");
                     },
                     [](const auto& c) { return opt_int(c.k); }});
        f.push_back({"curved", [](auto& c, auto v) { c.curved = parse_bool("curved", v); },
                     [](const auto& c) -> std::optional<std::string> {
                         if (!c.curved) return std::nullopt;
                         return *c.curved ? "true" : "false";
                     }});
        f.push_back({"seed",
                     [](auto& c, auto v) {
                         const std::string text = trim(v);
                         char* end = nullptr;
                         errno = 0;
                         const unsigned long long s = std::strtoull(text.c_str(), &end, 10);
                         if (text.empty() || text[0] == '-' || end != text.c_str() + text.size() || errno == ERANGE) {
                             throw ConfigError("seed", "expected a nonnegative integer, got '" + text + "'");
                         }
                         c.seed = s;
                     },
                     [](const auto& c) -> std::optional<std::string> { return std::to_string(c.seed); }});
        f.push_back({"plot", [](auto& c, auto v) { c.plot = parse_bool("plot", v); },
                     [](const auto& c) -> std::optional<std::string> { return c.plot ? "true" : "false"; }});
        return f;
    }();
    return fields;
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& f : schema()) out.push_back(f.key);
        return out;
    }();
    return keys;
}

void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value) {
    for (const auto& f : schema()) {
        if (f.key == key) {
            f.set(config, value);
            return;
        }
    }
    throw ConfigError(std::string(key), "unknown key");
}

std::vector<int> parse_degrees(std::string_view raw) {
    const std::string text = trim(raw);
    std::vector<int> out;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        const int lo = parse_int("degrees", std::string_view(text).substr(0, colon));
        const int hi = parse_int("degrees", std::string_view(text).substr(colon + 1));
        if (lo < 1 || hi < lo) throw ConfigError("degrees", "range a:b needs 1 <= a <= b");
        for (int k = 0;; ++k) {
            const double v = lo * std::pow(std::numbers::sqrt2, k);
            if (v > hi * (1.0 + 1e-12)) break;
            const int n = static_cast<int>(std::lround(v));
            if (out.empty() || n > out.back()) out.push_back(n);
        }
    } else {
        out = parse_list<int>("degrees", text, parse_int);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] < 1) throw ConfigError("degrees", "degrees must be positive");
        if (i > 0 && out[i] <= out[i - 1]) throw ConfigError("degrees", "degrees must increase strictly");
    }
    return out;
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig config;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(number), "expected 'key = value', got '" + body + "'");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        if (!seen.insert(key).second) throw ConfigError(key, "given more than once");
        set_config_value(config, key, std::string_view(body).substr(eq + 1));
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const ExperimentConfig& config) {
    std::string out;
    for (const auto& f : schema()) {
        if (auto v = f.get(config)) out += f.key + " = " + *v + "\n";
    }
    return out;
}

void validate(const ExperimentConfig& config) {
    if (!config.experiment) throw ConfigError("experiment", "missing");
    auto need = [](bool present, const char* key) {
        if (!present) throw ConfigError(key, "required for this experiment");
    };
    switch (*config.experiment) {
        case ExperimentKind::Sweep: {
            need(config.family.has_value(), "family");
            need(config.curve.has_value(), "curve");
            need(config.p.has_value(), "p");
            need(!config.degrees.empty(), "degrees");
            if (config.degrees.size() < 4) throw ConfigError("degrees", "a sweep needs at least 4 degrees");
            const bool latitude = config.curve->rfind("latitude:", 0) == 0;
            if (*config.family == "averaged") {
                need(config.delta.has_value(), "delta");
                if (*config.curve == "great-subsphere") throw ConfigError("curve", "averaged family lives on S^2");
            }
            if (*config.family == "turning-point") {
                if (!latitude) throw ConfigError("curve", "turning-point family needs a latitude curve");
                if (*config.p != 2.0) throw ConfigError("p", "turning-point family is defined for p = 2");
            }
            break;
        }
        case ExperimentKind::Kernel:
            need(config.curve.has_value(), "curve");
            need(!config.lambdas.empty(), "lambda-list");
            if (*config.curve == "great-subsphere") throw ConfigError("curve", "kernel experiment needs a curve on S^2");
            break;
        case ExperimentKind::Phase:
            need(!config.colatitudes.empty(), "colatitudes");
            break;
        case ExperimentKind::Airy:
            need(!config.lambdas.empty(), "lambda-list");
            need(config.airy_case.has_value(), "airy-case");
            if (config.lambdas.size() < 2) throw ConfigError("lambda-list", "need at least 2 frequencies for a slope");
            break;
        case ExperimentKind::Torus:
            if (config.n_list.empty() && !config.n_max) throw ConfigError("n-list", "give n-list, n-max, or both");
            break;
        case ExperimentKind::OracleTable:
            need(config.d.has_value(), "d");
            need(config.k.has_value(), "k");
            if (*config.k > *config.d - 1) throw ConfigError("k", "must satisfy k <= d - 1");
            if (config.curved.value_or(false) && !(*config.d == 2 && *config.k == 1)) {
                throw ConfigError("curved", "only meaningful for d = 2, k = 1");
            }
            break;
    }
}

}  // namespace eigenrestrict
