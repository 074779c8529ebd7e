#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "sdelab/runner/config.hpp"
#include "sdelab/runner/experiments.hpp"
#include "sdelab/runner/expression.hpp"
#include "sdelab/runner/io.hpp"
#include "sdelab/runner/runner.hpp"

using namespace sdelab;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("sdelab_test_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig parse(const std::string& text) { return to_experiment_config(parse_config_text(text)); }

template <typename F>
ConfigError config_error(F&& f) {
    try {
        f();
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("no ConfigError raised");
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("INI parsing", "[runner][config]") {
    const auto doc = parse_ini("# comment\nexperiment = arcsine\n; other\n[params]\nn_paths = \"500\"\n");
    CHECK(doc.sections.at("").at("experiment").text == "arcsine");
    CHECK(doc.sections.at("params").at("n_paths").text == "500");
    CHECK(doc.sections.at("params").at("n_paths").line == 5);

    auto e = config_error([] { parse_ini("experiment = arcsine\nbroken line\n", "a.ini"); });
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
    CHECK(std::string(e.what()).rfind("a.ini:2:1:", 0) == 0);
    e = config_error([] { parse_ini("x = 1\nx = 2\n"); });
    CHECK(e.line() == 2);
    e = config_error([] { parse_ini("[params\n"); });
    CHECK(e.line() == 1);
    e = config_error([] { parse_ini("[a]\n[a]\n"); });
    CHECK(e.line() == 2);
}

TEST_CASE("schema validation of experiment configs", "[runner][config]") {
    const auto cfg = parse("experiment = arcsine\nseed = 9\n[params]\nn_paths = 500\n");
    CHECK(cfg.seed == 9);
    CHECK(cfg.params.at("n_paths") == 500);
    CHECK(cfg.params.at("n_steps") == 1000);

    auto e = config_error([] { parse("experiment = arcsine\ncolour = red\n"); });
    CHECK(e.line() == 2);
    e = config_error([] { parse("experiment = arcsine\n[params]\nbogus = 1\n"); });
    CHECK(e.line() == 3);
    e = config_error([] { parse("experiment = arcsine\n[params]\nn_paths = abc\n"); });
    CHECK(e.line() == 3);
    CHECK(e.column() == 11);
    e = config_error([] { parse("experiment = arcsine\n[params]\nn_paths = 0\n"); });
    CHECK(e.line() == 3);
    e = config_error([] { parse("experiment = arcsine\n[params]\nn_paths = 2.5\n"); });
    CHECK(e.line() == 3);
    CHECK_THROWS_AS(parse("experiment = nonexistent\n"), ConfigError);
    CHECK_THROWS_AS(parse("seed = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse("experiment = arcsine\n[model]\npreset = ou\n"), ConfigError);
    CHECK_THROWS_AS(parse("experiment = arrhenius\n[model]\npreset = bm\n"), ConfigError);
    CHECK_THROWS_AS(parse("experiment = arcsine\n[extra]\na = 1\n"), ConfigError);
    e = config_error([] { parse("experiment = arrhenius\n[model]\npreset = gradient\npotential = x^2 +* 1\n"); });
    CHECK(e.line() == 4);

    const auto grad = parse("experiment = arrhenius\n[model]\npreset = gradient\npotential = x^4/4 - x^2/2\n");
    CHECK(grad.model.potential == "x^4/4 - x^2/2");
}

TEST_CASE("JSON configs", "[runner][config]") {
    const auto cfg = to_experiment_config(parse_config_text(R"({"experiment": "arcsine", "params": {"T": 2}})"));
    CHECK(cfg.params.at("T") == 2.0);
    auto e = config_error([] { parse_json_config("{\n  \"experiment\": \"arcsine\",\n  oops\n}"); });
    CHECK(e.line() == 3);
    CHECK_THROWS_AS(parse_json_config("[1, 2]"), ConfigError);
    CHECK(canonical_text(cfg) == canonical_text(cfg));
    auto other = cfg;
    other.output = "elsewhere";
    CHECK(canonical_text(other) == canonical_text(cfg));
}

TEST_CASE("expressions and symbolic derivatives", "[runner][expression]") {
    const auto u = Expression::parse("x^4/4 - x^2/2");
    CHECK(u(2.0) == Approx(2.0));
    const auto du = u.derivative();
    CHECK(du(2.0) == Approx(6.0));
    CHECK(du.derivative()(2.0) == Approx(11.0));
    CHECK(Expression::parse("-2^2")(0.0) == -4.0);
    CHECK(Expression::parse("2^3^2")(0.0) == 512.0);
    CHECK(Expression::parse("(x + 1) * (x - 1)")(3.0) == 8.0);
    CHECK_FALSE(Expression::parse("3 * 2").depends_on_x());
    CHECK(Expression::constant(1.5)(9.0) == 1.5);
    try {
        (void)Expression::parse("x + * 2");
        FAIL("parse succeeded");
    } catch (const ExpressionError& e) {
        CHECK(e.column() == 5);
    }
    CHECK_THROWS_AS(Expression::parse("2^x").derivative(), ExpressionError);
    CHECK_THROWS_AS(Expression::parse("y"), ExpressionError);
}

TEST_CASE("registry covers every acceptance criterion", "[runner][registry]") {
    const auto& reg = experiment_registry();
    CHECK(reg.size() >= 10);
    std::set<int> criteria;
    std::set<std::string> names;
    for (const auto& e : reg) {
        criteria.insert(e.criterion);
        names.insert(e.name);
    }
    for (int c = 1; c <= 13; ++c) CHECK(criteria.count(c) == 1);
    CHECK(names.size() == reg.size());
    CHECK_THROWS_AS(find_experiment("missing"), std::out_of_range);
    CHECK(list_experiments_text().find("arcsine") != std::string::npos);
}

TEST_CASE("csv and checksum helpers", "[runner][io]") {
    CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
    CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
    CHECK(format_number(0.1) == "0.1");
    CsvTable t({"a", "b"});
    t.add_row({1.0, 2.5});
    CHECK(t.str() == "a,b\n1,2.5\n");
    CHECK(t.rows() == 1);
    CHECK_THROWS(t.add_row({1.0}));
}

TEST_CASE("runs are reproducible byte for byte", "[runner][run]") {
    TempDir tmp("repro");
    auto cfg = parse("experiment = arcsine\nseed = 5\n[params]\nn_paths = 400\nn_steps = 100\n");
    const auto a = run_and_write(cfg, (tmp.path / "a").string());
    const auto b = run_and_write(cfg, (tmp.path / "b").string(), Execution::serial);
    CHECK(a.status == 0);
    CHECK(fs::exists(tmp.path / "a" / "manifest.json"));
    REQUIRE(a.manifest.outputs.size() >= 2);
    for (const auto& entry : a.manifest.outputs) {
        CHECK(slurp(tmp.path / "a" / entry.file) == slurp(tmp.path / "b" / entry.file));
        CHECK(entry.checksum == hex64(fnv1a64(slurp(tmp.path / "a" / entry.file))));
    }
    CHECK(a.manifest.config_hash == b.manifest.config_hash);
    const auto manifest = nlohmann::json::parse(slurp(tmp.path / "a" / "manifest.json"));
    CHECK(manifest.at("seed") == 5);
    CHECK(manifest.at("version") == version());

    cfg.seed = 6;
    const auto c = run_and_write(cfg, (tmp.path / "c").string());
    CHECK(slurp(tmp.path / "c" / "occupation_cdf.csv") != slurp(tmp.path / "a" / "occupation_cdf.csv"));

    const auto plots = emit_plot_data(tmp.path / "a");
    REQUIRE(plots.size() == 1);
    const auto data = read_csv(plots.front());
    CHECK(data.header == std::vector<std::string>{"file", "x_name", "x", "series", "y", "y_lo", "y_hi"});
    CHECK_FALSE(data.rows.empty());
    CHECK_THROWS(emit_plot_data(tmp.path / "missing"));
}

TEST_CASE("output directory resolution", "[runner][run]") {
    auto cfg = default_config("arcsine");
    CHECK(resolve_output_dir(cfg, std::string("x/y")) == fs::path("x/y"));
    cfg.output = "from_config";
    CHECK(resolve_output_dir(cfg, std::nullopt) == fs::path("from_config"));
    cfg.output.reset();
    ::setenv(output_root_variable, "/tmp/root", 1);
    CHECK(resolve_output_dir(cfg, std::nullopt) == fs::path("/tmp/root/arcsine"));
    ::unsetenv(output_root_variable);
    CHECK(resolve_output_dir(cfg, std::nullopt) == fs::path("runs/arcsine"));
}

TEST_CASE("data files carry the documented headers", "[runner][run]") {
    auto cfg = parse("experiment = arrhenius\n[params]\neps1 = 1\neps2 = 0.5\neps3 = 0.25\nn_paths = 100\n");
    const auto arr = run_experiment(cfg);
    REQUIRE(arr.files.size() == 1);
    CHECK(arr.files[0].content.rfind("eps,eps_log_mean_tau,stderr", 0) == 0);
    CHECK(arr.summary.at("eps").size() == 3);

    cfg = parse("experiment = hairer_mattingly\n[params]\ndecay_steps = 5\n");
    const auto hm = run_experiment(cfg);
    bool found = false;
    for (const auto& f : hm.files)
        if (f.name == "rho_beta_decay.csv") {
            found = true;
            CHECK(f.content.rfind("n,rho_beta_distance", 0) == 0);
        }
    CHECK(found);
}

TEST_CASE("command line interface", "[runner][cli]") {
    TempDir tmp("cli");
    const std::string cli = SDELAB_CLI_PATH;
    const auto run = [&](const std::string& args) {
        const int rc = std::system((cli + " " + args + " > " + (tmp.path / "out.txt").string() + " 2>&1").c_str());
        return WEXITSTATUS(rc);
    };
    CHECK(run("list") == 0);
    CHECK(slurp(tmp.path / "out.txt").find("hairer_mattingly") != std::string::npos);
    CHECK(run("--version") == 0);

    {
        std::ofstream bad(tmp.path / "bad.ini");
        bad << "experiment = arcsine\nunknown_key = 1\n";
    }
    CHECK(run("run -c " + (tmp.path / "bad.ini").string() + " -o " + (tmp.path / "bad_out").string()) == 1);
    CHECK(slurp(tmp.path / "out.txt").find(":2:") != std::string::npos);
    CHECK_FALSE(fs::exists(tmp.path / "bad_out"));

    {
        std::ofstream good(tmp.path / "good.ini");
        good << "experiment = arcsine\n[params]\nn_paths = 200\nn_steps = 50\n";
    }
    CHECK(run("run -c " + (tmp.path / "good.ini").string() + " -o " + (tmp.path / "good_out").string()) == 0);
    CHECK(fs::exists(tmp.path / "good_out" / "summary.json"));
    CHECK(run("plot-data " + (tmp.path / "good_out").string()) == 0);
    CHECK(fs::exists(tmp.path / "good_out" / "plot"));
    CHECK(run("plot-data " + (tmp.path / "nowhere").string()) != 0);
}
