#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "bbmlab/errors.hpp"
#include "bbmlab/harness/commands.hpp"
#include "bbmlab/harness/config.hpp"
#include "bbmlab/harness/identity.hpp"
#include "bbmlab/harness/io.hpp"

using namespace bbmlab;
using namespace bbmlab::harness;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("bbmlab_test_harness_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

bool message_contains(const std::string& yaml, const std::string& needle) {
    try {
        parse_config(yaml);
    } catch (const ConfigError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace

TEST_CASE("format_double round trips") {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const double v = std::exp(u(gen)) * (i % 2 ? -1 : 1);
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("sha256") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("config defaults, parsing and round trip") {
    const auto empty = parse_config("");
    CHECK(empty == ExperimentConfig{});

    const std::string text = R"(
seed: 42
output: out/dir
grid: {n: 1024, length: 60.5}
model: {kind: kdv}
initial_data: {kind: random, s: 2, norm: 0.5, max_mode: 30, stream: 3}
stepper: {dt: 0.0005, dealias: false, record_every: 7, enforce_ceiling: false}
simulate: {T: -2.5}
sweep:
  eps_list: [0.3, 0.1, 0.01]
  s: 2.5
  dt_overrides: [{eps: 0.1, dt: 0.25}]
  synthetic: [{eps: 0.3, error: 1}, {eps: 0.1, error: 0.5}, {eps: 0.01, error: 0.1}]
growth: {eps_list: [0.2, 0.1, 0.05], T: 5, reference_time: 0.5, factor: 4}
identity: {samples: 12}
strichartz: {eps_list: [0.1], q: 10, r: 5, ensemble_size: 3}
)";
    const auto cfg = parse_config(text);
    CHECK(cfg.seed == 42);
    CHECK(cfg.grid.length == 60.5);
    CHECK(cfg.model.kind == "kdv");
    REQUIRE(std::holds_alternative<RandomData>(cfg.initial_data));
    CHECK(std::get<RandomData>(cfg.initial_data).max_mode == 30);
    CHECK(cfg.stepper.record_every == 7);
    CHECK(cfg.sweep.dt_overrides.size() == 1);
    CHECK(cfg.strichartz.r == 5.0);
    CHECK(parse_config(to_yaml(cfg)) == cfg);
    CHECK(to_yaml(parse_config(to_yaml(cfg))) == to_yaml(cfg));

    auto other = ExperimentConfig{};
    other.initial_data = SolitonData{0.7, -3.0};
    other.sweep.eps_list = {0.1, 0.07, 0.03};
    CHECK(parse_config(to_yaml(other)) == other);
}

TEST_CASE("config validation names the field") {
    CHECK(message_contains("grid: {n: 100}", "grid"));
    CHECK(message_contains("grid: {n: 512, lenght: 80}", "grid.lenght"));
    CHECK(message_contains("bogus: 1", "bogus"));
    CHECK(message_contains("stepper: {dt: -1}", "stepper.dt"));
    CHECK(message_contains("stepper: {dt: abc}", "stepper.dt"));
    CHECK(message_contains("model: {kind: nls}", "model.kind"));
    CHECK(message_contains("model: {eps: 2}", "model.eps"));
    CHECK(message_contains("sweep: {eps_list: [0.1, 0.2, 0.05]}", "sweep.eps_list"));
    CHECK(message_contains("sweep: {eps_list: [0.2, 0.1]}", "sweep.eps_list"));
    CHECK(message_contains("sweep: {s: 7}", "sweep.s"));
    CHECK(message_contains("initial_data: {kind: sech2, speed: 1}", "initial_data.speed"));
    CHECK(message_contains("initial_data: {kind: gauss}", "initial_data.kind"));
    CHECK(message_contains("strichartz: {q: 6, r: 1000}", "strichartz"));
    CHECK(message_contains("growth: {reference_time: 30}", "growth.reference_time"));
    CHECK(message_contains("identity: {samples: 0}", "identity.samples"));
    CHECK(message_contains("seed: [1", "YAML"));
    CHECK_THROWS_AS(load_config("/nonexistent/file.yaml"), InputError);
}

TEST_CASE("CSV write and read") {
    const auto dir = scratch("csv");
    CsvWriter w(dir / "a.csv", {"t", "error"});
    w.row({0.0, 0.1});
    w.row({1e-300, -2.5});
    CHECK_THROWS_AS(w.row({1.0}), Error);
    w.close();
    CHECK(slurp(dir / "a.csv") == "t,error\n0,0.1\n1e-300,-2.5\n");
    const auto t = read_csv(dir / "a.csv");
    CHECK(t.rows.size() == 2);
    CHECK(t.rows[1][0] == 1e-300);
    CHECK(t.column("error") == 1);
    CHECK_THROWS_AS(t.column("missing"), InputError);
    CHECK_THROWS_AS(read_csv(dir / "none.csv"), InputError);
    write_text(dir / "bad.csv", "a,b\n1,x\n");
    CHECK_THROWS_AS(read_csv(dir / "bad.csv"), InputError);

    const auto g = make_grid(8, 8.0);
    const auto f = Field::from_function(g, [](double x) { return x * x; });
    write_field_csv(dir / "f.csv", f);
    write_spectrum_csv(dir / "s.csv", f);
    const auto ft = read_csv(dir / "f.csv");
    CHECK(ft.header == std::vector<std::string>{"x", "value"});
    CHECK(ft.rows[0][0] == -4.0);
    CHECK(ft.rows[0][1] == 16.0);
    const auto st = read_csv(dir / "s.csv");
    CHECK(st.header == std::vector<std::string>{"k", "re", "im"});
    CHECK(st.rows[4][0] == -4.0);
}

TEST_CASE("identity report") {
    CHECK_THROWS_AS(run_identity_check(0, 0), ConfigError);
    const auto a = run_identity_check(5, 2000);
    const auto b = run_identity_check(5, 2000);
    CHECK(a.pass());
    REQUIRE(a.identities.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(a.identities[i].max_residual == b.identities[i].max_residual);
}

TEST_CASE("commands: usage errors and synthetic sweep") {
    const auto dir = scratch("cmd");
    CommandOptions opts;
    CHECK(run_command("simulate", opts) == kExitUsage);
    CHECK(run_command("no-such-command", opts) == kExitUsage);
    opts.samples = 0;
    CHECK(run_command("identity-check", opts) == kExitUsage);

    write_text(dir / "synthetic.yaml",
               "sweep:\n  synthetic: [{eps: 0.2, error: 0.4}, {eps: 0.1, error: 0.2}, {eps: 0.05, error: 0.1}]\n");
    CommandOptions sweep;
    sweep.config_path = (dir / "synthetic.yaml").string();
    sweep.out = (dir / "syn").string();
    CHECK(run_command("sweep", sweep) == kExitPass);
    const auto fit = read_json(dir / "syn" / "fit.json");
    CHECK(fit["slope"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit["verdict"] == "pass");
    CHECK(fs::exists(dir / "syn" / "manifest.json"));

    CommandOptions plot;
    plot.input = (dir / "syn").string();
    CHECK(run_command("plotdata", plot) == kExitPass);
    CHECK(read_csv(dir / "syn" / "sweep.csv").rows.size() == 3);
    CHECK(fs::exists(dir / "syn" / "plots" / "loglog.dat"));

    fs::create_directories(dir / "empty");
    plot.input = (dir / "empty").string();
    CHECK(run_command("plotdata", plot) == kExitUsage);
}
