#include "eigenrestrict/config.hpp"
#include "eigenrestrict/experiment.hpp"
#include "test_support_fs.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <numbers>

using namespace eigenrestrict;
using testing::scratch_dir;
using testing::slurp;

TEST_SUITE("config") {

TEST_CASE("parsing a full sweep config") {
    const auto c = parse_config(R"(
# highest weight harmonics on the equator
experiment = sweep
family     = highest-weight
curve      = equator
p          = 2
degrees    = 16:256
plot       = true
)");
    CHECK(c.experiment == ExperimentKind::Sweep);
    CHECK(c.family == "highest-weight");
    CHECK(c.p == 2.0);
    CHECK(c.degrees == std::vector<int>{16, 23, 32, 45, 64, 91, 128, 181, 256});
    CHECK(c.plot);
    CHECK_NOTHROW(validate(c));
}

TEST_CASE("value syntax") {
    ExperimentConfig c;
    set_config_value(c, "p", "inf");
    CHECK(std::isinf(*c.p));
    set_config_value(c, "curve", "latitude:pi/4");
    CHECK(c.curve == "latitude:" + format_double(std::numbers::pi / 4));
    set_config_value(c, "colatitudes", "pi/4, pi/3");
    CHECK(c.colatitudes.size() == 2);
    CHECK(c.colatitudes[1] == doctest::Approx(std::numbers::pi / 3).epsilon(1e-15));
    set_config_value(c, "degrees", "8,10,12,16");
    CHECK(c.degrees == std::vector<int>{8, 10, 12, 16});
    set_config_value(c, "lambda-list", "50,100,200");
    CHECK(c.lambdas == std::vector<double>{50, 100, 200});
    set_config_value(c, "n-list", "25,65");
    CHECK(c.n_list == std::vector<long long>{25, 65});
}

TEST_CASE("invalid values name the offending field") {
    ExperimentConfig c;
    auto field_of = [&](const char* key, const char* value) -> std::string {
        try {
            set_config_value(c, key, value);
        } catch (const ConfigError& e) {
            return e.field();
        }
        return "";
    };
    CHECK(field_of("p", "1.5") == "p");
    CHECK(field_of("p", "abc") == "p");
    CHECK(field_of("degrees", "16,8,32") == "degrees");
    CHECK(field_of("degrees", "0:8") == "degrees");
    CHECK(field_of("family", "gaussian-beam") == "family");
    CHECK(field_of("curve", "helix") == "curve");
    CHECK(field_of("experiment", "fft") == "experiment");
    CHECK(field_of("no-such-key", "1") == "no-such-key");
    CHECK(field_of("seed", "-3") == "seed");
    CHECK_THROWS_AS(parse_config("p = 2\np = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("just words\n"), ConfigError);
}

TEST_CASE("per-experiment required keys") {
    auto missing = [](const std::string& text) -> std::string {
        try {
            validate(parse_config(text));
        } catch (const ConfigError& e) {
            return e.field();
        }
        return "";
    };
    CHECK(missing("") == "experiment");
    CHECK(missing("experiment = sweep\n") == "family");
    CHECK(missing("experiment = sweep\nfamily = averaged\ncurve = equator\np = 2\ndegrees = 16:64\n") == "delta");
    CHECK(missing("experiment = sweep\nfamily = turning-point\ncurve = equator\np = 2\ndegrees = 16:64\n") == "curve");
    CHECK(missing("experiment = sweep\nfamily = turning-point\ncurve = latitude:1\np = 4\ndegrees = 16:64\n") == "p");
    CHECK(missing("experiment = sweep\nfamily = zonal-on-curve\ncurve = equator\np = 2\ndegrees = 16:23\n") == "degrees");
    CHECK(missing("experiment = kernel\ncurve = equator\n") == "lambda-list");
    CHECK(missing("experiment = phase\n") == "colatitudes");
    CHECK(missing("experiment = airy\nlambda-list = 200\nairy-case = model\n") == "lambda-list");
    CHECK(missing("experiment = torus\n") == "n-list");
    CHECK(missing("experiment = oracle-table\nd = 3\n") == "k");
    CHECK(missing("experiment = oracle-table\nd = 3\nk = 3\n") == "k");
    CHECK(missing("experiment = oracle-table\nd = 3\nk = 2\ncurved = true\n") == "curved");
    CHECK(missing("experiment = oracle-table\nd = 3\nk = 2\n").empty());
}

TEST_CASE("serialization round trip") {
    const char* texts[] = {
        "experiment = sweep\nfamily = averaged\ncurve = latitude:1.2\np = inf\ndegrees = 16:128\ndelta = 0.5\n"
        "tolerance = 0.05\ncurve-points = 8192\nambient-resolution = 300\nseed = 4\nplot = true\n",
        "experiment = torus\nn-list = 25,65,325\nn-max = 100000\nseed-count = 3\nseed = 17\n",
        "experiment = airy\nlambda-list = 200,400\nairy-case = variable\nstep = 0.001\nmemory-cap-mib = 64\n",
        "experiment = kernel\ncurve = equator\nlambda-list = 50,100\nr = 0.3\nwindow = 0.25\ngrid = 21\n",
        "experiment = oracle-table\nd = 2\nk = 1\ncurved = true\n",
    };
    for (const char* text : texts) {
        const auto c = parse_config(text);
        const auto again = parse_config(serialize_config(c));
        CHECK(again == c);
        CHECK(serialize_config(again) == serialize_config(c));
    }
}

TEST_CASE("catalog") {
    const std::string text = format_catalog();
    CHECK(text.find("phase → Lemma 4.5") != std::string::npos);
    CHECK(text.find("airy → Lemma 4.6") != std::string::npos);
    CHECK(text == format_catalog());
    std::vector<std::string> names;
    for (const auto& e : experiment_catalog()) names.push_back(e.name);
    CHECK(names == std::vector<std::string>{"sweep", "kernel", "phase", "airy", "torus", "oracle-table"});
    for (const auto& name : names) CHECK_NOTHROW(parse_experiment_kind(name));
}

TEST_CASE("runs are byte-for-byte reproducible") {
    const auto sweep = parse_config(
        "experiment = sweep\nfamily = highest-weight\ncurve = equator\np = 2\ndegrees = 8:32\nplot = true\n");
    const auto torus = parse_config("experiment = torus\nn-list = 25,65,325,1105\nn-max = 5000\nseed-count = 2\nseed = 7\n");
    for (const auto& cfg : {sweep, torus}) {
        const auto a = scratch_dir("det-a"), b = scratch_dir("det-b");
        const auto ra = run_experiment(cfg, a), rb = run_experiment(cfg, b);
        CHECK(ra.exit_code == 0);
        REQUIRE(ra.files.size() == rb.files.size());
        for (std::size_t i = 0; i < ra.files.size(); ++i) {
            CHECK(ra.files[i].filename() == rb.files[i].filename());
            CHECK(slurp(ra.files[i]) == slurp(rb.files[i]));
        }
    }
}

TEST_CASE("sweep output layout") {
    const auto dir = scratch_dir("sweep-layout");
    const auto cfg = parse_config("experiment = sweep\nfamily = zonal-on-curve\ncurve = equator\np = inf\ndegrees = 8:32\n");
    const auto r = run_experiment(cfg, dir);
    REQUIRE(r.exit_code == 0);
    const std::string csv = slurp(dir / "results.csv");
    CHECK(csv.rfind("n,lambda,p,restricted_norm,ambient_norm,ratio\n", 0) == 0);
    CHECK(csv.find("\n8,8.4852813742385695,inf,") != std::string::npos);
    const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    CHECK(summary["experiment"] == "sweep");
    CHECK(summary["verdict"] == r.verdict);
    CHECK(summary.contains("results"));
    CHECK_FALSE(std::filesystem::exists(dir / "plot.svg"));
}

TEST_CASE("exit codes and failure summaries") {
    SUBCASE("invalid configuration") {
        const auto dir = scratch_dir("exit-invalid");
        const auto r = run_experiment(parse_config("experiment = sweep\nfamily = highest-weight\n"), dir);
        CHECK(r.exit_code == kExitInvalidConfig);
        const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
        CHECK(summary["verdict"] == "invalid_config");
        CHECK(summary["field"] == "curve");
    }
    SUBCASE("invalid argument raised while computing") {
        const auto dir = scratch_dir("exit-underresolved");
        const auto r = run_experiment(
            parse_config("experiment = sweep\nfamily = highest-weight\ncurve = equator\np = 2\ndegrees = 8:32\ncurve-points = 16\n"),
            dir);
        CHECK(r.exit_code == kExitInvalidConfig);
        CHECK(std::filesystem::exists(dir / "summary.json"));
    }
    SUBCASE("contract failure") {
        const auto dir = scratch_dir("exit-contract");
        const auto r = run_experiment(
            parse_config("experiment = sweep\nfamily = highest-weight\ncurve = equator\np = 2\ndegrees = 8:32\ntolerance = 1e-9\n"),
            dir);
        CHECK(r.exit_code == kExitContractFailure);
        CHECK(r.verdict == "fail");
        const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
        CHECK(summary["verdict"] == "fail");
        CHECK(std::filesystem::exists(dir / "results.csv"));
    }
    SUBCASE("unwritable output directory") {
        const auto dir = scratch_dir("exit-unwritable");
        const auto blocker = dir / "file";
        std::ofstream(blocker) << "x";
        const auto r = run_experiment(parse_config("experiment = oracle-table\nd = 2\nk = 1\n"), blocker);
        CHECK(r.exit_code == kExitContractFailure);
        CHECK(r.verdict == "error");
    }
}

TEST_CASE("oracle table output") {
    const auto dir = scratch_dir("oracle");
    const auto r = run_experiment(parse_config("experiment = oracle-table\nd = 3\nk = 2\n"), dir);
    REQUIRE(r.exit_code == 0);
    const std::string csv = slurp(dir / "results.csv");
    CHECK(csv.rfind("d,k,p,value,log_endpoint\n", 0) == 0);
    CHECK(csv.find("3,2,3,0.33333333333333331,true\n") != std::string::npos);
    CHECK(csv.find("3,2,inf,1,false\n") != std::string::npos);
}

}  // TEST_SUITE
