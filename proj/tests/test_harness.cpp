#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "helpers.hpp"
#include "micropolar/errors.hpp"
#include "micropolar/harness.hpp"

using namespace micropolar;
using namespace micropolar::harness;
namespace fs = std::filesystem;

namespace {

ExperimentSpec parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string config_error(const std::string& text) {
  try {
    (void)parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("micropolar_tests_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("minimal config gets the documented defaults") {
  const ExperimentSpec s = parse("dim = 2\n");
  CHECK(s.id == "experiment");
  CHECK(s.sim.grid.dim() == 2);
  CHECK(s.sim.grid.points_per_axis() == 64);
  CHECK(s.sim.grid.box_length() == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(s.sim.params.mu == 1.0);
  CHECK(s.sim.params.nu == 1.0);
  CHECK(s.sim.params.chi == 1.0);
  CHECK(s.sim.params.kappa == 0.0);
  CHECK(s.sim.dt == doctest::Approx(1e-2));
  CHECK(s.sim.t_end == doctest::Approx(1.0));
  CHECK(s.sim.record_stride == 1);
  CHECK(s.sim.dealias);
  CHECK(s.sim.nonlinear);
  CHECK(s.init.kind == "random_solenoidal");
  CHECK(s.checks.empty());
  CHECK(s.out_dir == fs::path("out"));
  CHECK_FALSE(s.hypothesis.has_value());
  CHECK(s.energy_tol == doctest::Approx(1e-6));
}

TEST_CASE("config values and syntax") {
  const ExperimentSpec s = parse(R"(# comment line
id = tg
dim = 2
n = 32
box_length = 4pi   # trailing comment
mu = 0.05
nu = 0.07
chi = 0.5
dt = 0.01
t_end = 2
record_stride = 5
seminorm_orders = 0, 2
nonlinear = false
initdata.kind = taylor_green
initdata.amplitude = 2
seed = 11
checks = energy, oracle
hypothesis.alpha = 0.25
hypothesis.C0 = 4
tol.slope = 0.1
sync.orders = 0,1
window.t_min = 3
)");
  CHECK(s.id == "tg");
  CHECK(s.sim.grid.box_length() == doctest::Approx(4.0 * std::numbers::pi));
  CHECK(s.sim.params.nu == 0.07);
  CHECK(s.sim.record_stride == 5);
  CHECK(s.sim.seminorm_orders == std::vector<int>{0, 2});
  CHECK_FALSE(s.sim.nonlinear);
  CHECK(s.init.kind == "taylor_green");
  CHECK(s.init.seed == 11);
  CHECK(s.checks == std::vector<std::string>{"energy", "oracle"});
  REQUIRE(s.hypothesis.has_value());
  CHECK(s.hypothesis->eta == 0.25);
  CHECK(s.hypothesis->C0 == 4.0);
  CHECK(s.sync.slope_tol == 0.1);
  CHECK(s.sync_orders == std::vector<int>{0, 1});
  CHECK(s.window_t_min == 3.0);
}

TEST_CASE("config errors name the key") {
  CHECK(config_error("dim = 2\nchi = 0\n").find("'chi' must be positive") != std::string::npos);
  const std::string unknown = config_error("dim = 2\nnu_bar = 1\n");
  CHECK(unknown.find("nu_bar") != std::string::npos);
  CHECK(unknown.find("line 2") != std::string::npos);
  CHECK(config_error("mu = abc\n").find("'mu'") != std::string::npos);
  CHECK(config_error("mu = 1\nmu = 2\n").find("mu") != std::string::npos);
  CHECK(config_error("just text\n").find("line 1") != std::string::npos);
  CHECK(config_error("n = 48\n").find("'n'") != std::string::npos);
  CHECK(config_error("dim = 2\nkappa = 0.1\n").find("'kappa'") != std::string::npos);
  CHECK(config_error("checks = energy, wobble\n").find("wobble") != std::string::npos);
  CHECK(config_error("dim = 3\ninitdata.kind = taylor_green\n").find("initdata.kind") != std::string::npos);
  CHECK(config_error("initdata.kind = decay_character\ninitdata.alpha = 0.6\n").find("initdata.alpha") !=
        std::string::npos);
  CHECK(config_error("hypothesis.alpha = 0.3\nhypothesis.eta = 0.1\n").find("hypothesis") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("rendered configs parse back to the same spec") {
  const ExperimentSpec s = parse(R"(id = rt
dim = 3
n = 16
box_length = 1.2345678901234567
mu = 0.1
nu = 0.3
chi = 0.7
kappa = 0.05
dt = 0.001
t_end = 0.3
seminorm_orders = 0,1,3
initdata.kind = decay_character
initdata.alpha = 0.3
initdata.kc = 10
checks = sync, bounds
hypothesis.alpha = 0.3
hypothesis.c0 = 0.5
sync.sandwich_orders = 0
sync.eps_absolute = false
)");
  const std::string text = render_config(s);
  const ExperimentSpec back = parse(text);
  CHECK(render_config(back) == text);
  CHECK(back.sim.grid == s.sim.grid);
  CHECK(back.sim.params.kappa == s.sim.params.kappa);
  CHECK(back.init.kc == s.init.kc);
  CHECK(back.hypothesis->c0 == 0.5);
  CHECK_FALSE(back.sync.eps_absolute);
  CHECK(back.sync.sandwich_orders == std::vector<int>{0});
}

TEST_CASE("hypothesis strings") {
  const auto h = parse_hypothesis("alpha=0.25 C0=5 c0=1");
  CHECK(h.alpha == 0.25);
  CHECK(h.eta == 0.25);
  CHECK(h.C0 == 5.0);
  CHECK(h.c0 == 1.0);
  const auto g = parse_hypothesis("\xCE\xB1=0.2,eta=0.3,T0=2");
  CHECK(g.alpha == 0.2);
  CHECK(g.eta == 0.3);
  CHECK(g.T0 == 2.0);
  CHECK_THROWS_AS(parse_hypothesis("alpha"), ConfigError);
  CHECK_THROWS_AS(parse_hypothesis("beta=1"), ConfigError);
}

TEST_CASE("CSV output") {
  NormSeries s;
  s.append(0.0, {{"u:m=0", 1.0 / 3.0}, {"energy", 2.0}, {"b", 1e-300}});
  SUBCASE("single record") {
    std::ostringstream out;
    write_csv(s, out);
    const std::string text = out.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    CHECK(text.substr(0, text.find('\n')) == "t,b,energy,u:m=0");
  }
  SUBCASE("round trip keeps every digit") {
    s.append(0.1, {{"u:m=0", std::nextafter(0.25, 1.0)}, {"energy", 1.0 / 7.0}, {"b", 6.02214076e23}});
    std::ostringstream out;
    write_csv(s, out);
    std::istringstream in(out.str());
    const NormSeries back = parse_csv(in);
    CHECK(back.times() == s.times());
    for (const auto& label : s.labels()) CHECK(back.column(label) == s.column(label));
  }
  SUBCASE("malformed input") {
    std::istringstream bad("t,a\n0,1,2\n");
    CHECK_THROWS(parse_csv(bad));
    std::istringstream empty("");
    CHECK_THROWS(parse_csv(empty));
  }
}

TEST_CASE("experiment with no checks still writes the series") {
  ExperimentSpec s = parse("id = quiet\ndim = 2\nn = 16\ndt = 0.1\nt_end = 0.5\nseed = 3\n");
  s.out_dir = scratch_dir("quiet");
  const Report r = run_experiment(s);
  CHECK(r.records.empty());
  CHECK(r.pass());
  CHECK(fs::exists(s.out_dir / "series.csv"));
  CHECK(fs::exists(s.out_dir / "config.cfg"));
  const auto json = nlohmann::json::parse(slurp(s.out_dir / "report.json"));
  CHECK(json["id"] == "quiet");
  CHECK(json["checks"].empty());
  CHECK(json["environment"]["n"] == 16);
  CHECK(json["environment"].contains("validity_window"));
  CHECK(read_csv(s.out_dir / "series.csv").size() == 6);
  CHECK(load_config(s.out_dir / "config.cfg").id == "quiet");
}

TEST_CASE("experiments are byte-for-byte reproducible") {
  ExperimentSpec s = parse("dim = 2\nn = 32\nmu = 0.05\nnu = 0.05\nchi = 0.2\ndt = 0.05\nt_end = 1\nseed = 9\n"
                           "initdata.with_w = true\nchecks = energy, oracle\n");
  s.out_dir = scratch_dir("repro_a");
  (void)run_experiment(s);
  const std::string a = slurp(s.out_dir / "series.csv");
  s.out_dir = scratch_dir("repro_b");
  (void)run_experiment(s);
  CHECK(slurp(s.out_dir / "series.csv") == a);
  CHECK(slurp(s.out_dir / "report.json") == slurp(s.out_dir.parent_path() / "repro_a" / "report.json"));
}

TEST_CASE("oracle, residual and energy checks pass on a Taylor-Green run") {
  ExperimentSpec s = parse("id = tg\ndim = 2\nn = 32\nmu = 0.05\nnu = 0.05\nchi = 0.1\ndt = 0.01\nt_end = 1\n"
                           "initdata.kind = taylor_green\nchecks = energy, oracle, epsilon_residual, bounds\n");
  s.out_dir = scratch_dir("tg");
  const Report r = run_experiment(s);
  for (const auto& rec : r.records) CHECK_MESSAGE((rec.pass || !rec.required), rec.check << " " << rec.measured);
  CHECK(r.pass());
  CHECK(r.records.size() >= 4);
}

TEST_CASE("blow-up flushes the partial series") {
  ExperimentSpec s = parse("dim = 2\nn = 16\nmu = 1e-4\nnu = 1e-4\nchi = 1e-4\ndt = 2\nt_end = 200\n"
                           "initdata.amplitude = 50\nblowup_factor = 1.5\n");
  s.out_dir = scratch_dir("blowup");
  CHECK_THROWS_AS(run_experiment(s), dynamics::SimulationAborted);
  CHECK(fs::exists(s.out_dir / "series.csv"));
  CHECK(read_csv(s.out_dir / "series.csv").size() >= 1);
}

TEST_CASE("report checks can be rerun on a stored series") {
  ExperimentSpec s = parse("dim = 2\nn = 16\nmu = 0.1\nnu = 0.1\nchi = 0.3\ndt = 0.02\nt_end = 1\nseed = 4\n");
  s.out_dir = scratch_dir("rerun");
  (void)run_experiment(s);
  const NormSeries series = read_csv(s.out_dir / "series.csv");
  ExperimentSpec again = load_config(s.out_dir / "config.cfg");
  again.checks = {"energy"};
  auto z0 = make_initial_state(again);
  dynamics::normalize_state(z0, again.sim.dealias);
  const auto records = run_checks(again, series, z0);
  REQUIRE(records.size() == 1);
  CHECK(records[0].pass);
}

TEST_CASE("sync preset reproduces the half-power gap between w and u") {
  ExperimentSpec s = parse(R"(id = sync2d
dim = 2
n = 128
box_length = 32pi
mu = 0.1
nu = 0.1
chi = 1
dt = 1
t_end = 256
seminorm_orders = 0, 1
initdata.kind = decay_character
initdata.alpha = 0.25
initdata.kc = 2
seed = 5
checks = sync
)");
  s.out_dir = scratch_dir("sync2d");
  const Report r = run_experiment(s);
  bool found = false;
  for (const auto& rec : r.records) {
    if (rec.check == "gap:w:m=0-u:m=0") {
      found = true;
      CHECK(rec.measured == doctest::Approx(-0.5).epsilon(0.4));
      CHECK(rec.pass);
    }
  }
  CHECK(found);
}

TEST_CASE("every check name maps to a diagnostic") {
  ExperimentSpec s = parse("dim = 2\nn = 16\nmu = 0.1\nnu = 0.2\nchi = 0.5\ndt = 0.05\nt_end = 30\nrecord_stride = 2\n"
                           "initdata.kind = decay_character\ninitdata.alpha = 0.2\n");
  s.out_dir = scratch_dir("names");
  s.window_t_min = 5.0;
  s.window_t_max = 30.0;
  const auto result = dynamics::simulate(s.sim, [&] {
    auto z = make_initial_state(s);
    dynamics::normalize_state(z, true);
    return z;
  }());
  auto z0 = make_initial_state(s);
  dynamics::normalize_state(z0, true);
  for (const auto& name : known_checks()) {
    s.checks = {name};
    const auto records = run_checks(s, result.series, z0);
    CHECK_MESSAGE(!records.empty(), name);
  }
}
