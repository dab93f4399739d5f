// Acceptance suite: one PASS/FAIL line per criterion.
//
//   micropolar_acceptance [--criterion N ...] [--cache DIR] [--unit-tests PATH]
//
// Long runs are cached under DIR keyed by their rendered config, so criteria
// that share a run (4, 5 and 6) only pay for it once.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "micropolar/diagnostics.hpp"
#include "micropolar/epsilon.hpp"
#include "micropolar/harness.hpp"
#include "micropolar/initdata.hpp"
#include "micropolar/integrator.hpp"
#include "micropolar/linear.hpp"
#include "micropolar/runtime.hpp"
#include "micropolar/spectral_ops.hpp"

namespace fs = std::filesystem;
using namespace micropolar;
using diagnostics::CheckRecord;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

FluidParams params(double mu, double nu, double chi, double kappa = 0.0) {
  FluidParams p;
  p.mu = mu;
  p.nu = nu;
  p.chi = chi;
  p.kappa = kappa;
  return p;
}

// ------------------------------------------------------------ cached runs

struct Run {
  harness::ExperimentSpec spec;
  NormSeries series;
  MicropolarState z0;
  bool cached = false;
  double seconds = 0.0;
};

fs::path g_cache = "acceptance_runs";

harness::ExperimentSpec spec_from(const std::string& text) {
  std::istringstream in(text);
  return harness::parse_config(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Run cached_run(const std::string& config_text, const dynamics::SimulateOptions& options = {}) {
  Run run{spec_from(config_text), {}, MicropolarState::zero(Grid(2, 8, 1.0)), false, 0.0};
  run.z0 = harness::make_initial_state(run.spec);
  dynamics::normalize_state(run.z0, run.spec.sim.dealias);
  const fs::path dir = g_cache / run.spec.id;
  const std::string rendered = harness::render_config(run.spec);
  const bool reusable = !options.on_record && fs::exists(dir / "series.csv") &&
                        fs::exists(dir / "config.cfg") && slurp(dir / "config.cfg") == rendered;
  if (reusable) {
    run.series = harness::read_csv(dir / "series.csv");
    run.cached = true;
    return run;
  }
  const auto start = Clock::now();
  run.series = dynamics::simulate(run.spec.sim, run.z0, options).series;
  run.seconds = seconds_since(start);
  fs::create_directories(dir);
  harness::emit_csv(run.series, dir / "series.csv");
  std::ofstream(dir / "config.cfg") << rendered;
  return run;
}

std::string timing(const Run& r) {
  return r.cached ? "cached run" : fmt("run %.0f s", r.seconds);
}

// Decay-character run shared by criteria 4, 5 and 6.
const char* kDecay2D = R"(id = decay_2d_512
dim = 2
n = 512
box_length = 64pi
mu = 0.1
nu = 0.1
chi = 0.25
dt = 1
t_end = 1024
seminorm_orders = 0, 1, 2
initdata.kind = decay_character
initdata.alpha = 0.25
initdata.amplitude = 1
initdata.kc = 4
seed = 11
hypothesis.alpha = 0.25
hypothesis.C0 = 5
hypothesis.c0 = 1
sync.orders = 0, 1
)";

// 3D run for the div w check. At 64^3 the window is short, and alpha = 1/4
// data gives a gap of about -0.65 that is still steepening at the window end.
// Data with alpha = 0.45 reaches its late-time gap inside the window.
const char* kDecay3D = R"(id = decay_3d_64
dim = 3
n = 64
box_length = 16pi
mu = 0.05
nu = 0.05
chi = 1
dt = 1
t_end = 128
seminorm_orders = 0, 1
initdata.kind = decay_character
initdata.alpha = 0.45
initdata.amplitude = 1
initdata.kc = 2.5
seed = 3
sync.orders = 0
)";

std::vector<CheckRecord> sync_records(const Run& run) {
  const auto window = harness::window_for(run.spec, run.series);
  diagnostics::DecayHypothesis hyp;
  if (run.spec.hypothesis) {
    hyp = *run.spec.hypothesis;
  } else {
    hyp.alpha = hyp.eta = run.spec.init.alpha;
  }
  return diagnostics::sync_report(run.series, hyp, run.spec.sim.params, run.spec.sim.grid.dim(),
                                  run.spec.sync_orders, window, run.spec.sync);
}

const CheckRecord& find(const std::vector<CheckRecord>& records, const std::string& name) {
  for (const auto& r : records) {
    if (r.check == name) return r;
  }
  throw std::runtime_error("missing record " + name);
}

// ---------------------------------------------------------------- criteria

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  const Grid g(2, 64, 2.0 * std::numbers::pi);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pick(0.01, 1.0);
  const FluidParams p = params(pick(rng), pick(rng), pick(rng));
  initdata::SpectrumEnvelope env;
  env.cutoff_kc = g.k0() * g.dealias_cutoff();
  env.seed = 7;
  MicropolarState z0 = initdata::random_solenoidal(g, env, true);
  dynamics::normalize_state(z0, true);

  const dynamics::LawsonRK4 rk(g, p, 0.05, {false, true});
  MicropolarState z = z0;
  for (int i = 0; i < 20; ++i) z = rk.step(z);
  const MicropolarState oracle = initdata::linear_oracle_evolve(z0, p, 1.0);

  double scale = 0.0;
  for (const auto* f : {&oracle.u, &oracle.w}) {
    for (auto c : f->coeffs()) scale = std::max(scale, std::abs(c));
  }
  double worst = 0.0;
  auto compare = [&](const SpectralField& a, const SpectralField& b) {
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
      const double ref = std::max(std::abs(b.coeffs()[i]), 1e-14 * scale);
      worst = std::max(worst, std::abs(a.coeffs()[i] - b.coeffs()[i]) / ref);
    }
  };
  compare(z.u, oracle.u);
  compare(z.w, oracle.w);
  const double secs = seconds_since(start);
  return {worst <= 1e-10 && secs < 5.0,
          "mu=" + fmt("%.3f", p.mu) + " nu=" + fmt("%.3f", p.nu) + " chi=" + fmt("%.3f", p.chi) +
              ", worst per-mode relative error " + fmt("%.2e", worst) + " (tol 1e-10), " +
              fmt("%.1f s", secs)};
}

Outcome momentum_identity() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (int dim : {2, 3}) {
    const Grid g(dim, dim == 2 ? 64 : 32, 4.0 * std::numbers::pi);
    const FluidParams p = params(0.07, 0.11, 0.6, dim == 3 ? 0.3 : 0.0);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      initdata::SpectrumEnvelope env;
      env.cutoff_kc = g.k0() * g.dealias_cutoff();
      env.exponent_r = -1.0;
      env.seed = 1000 * dim + seed;
      MicropolarState z = initdata::random_solenoidal(g, env, true);
      dynamics::normalize_state(z, true);
      SpectralField a = dynamics::momentum_linear_rhs(z, p);
      const SpectralField b = dynamics::momentum_linear_rhs_synchronized(z, p);
      const double scale = std::max(std::sqrt(spectral::seminorm_squared(a, 0)),
                                    std::sqrt(spectral::seminorm_squared(b, 0)));
      a -= b;
      worst = std::max(worst, std::sqrt(spectral::seminorm_squared(a, 0)) / scale);
    }
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-12 && secs < 10.0,
          "100 states each in 2D (64^2) and 3D (32^3), worst relative difference " +
              fmt("%.2e", worst) + " (tol 1e-12), " + fmt("%.1f s", secs)};
}

Outcome energy_estimate() {
  const auto start = Clock::now();
  const Run run = cached_run(R"(id = energy_2d_256
dim = 2
n = 256
box_length = 2pi
mu = 0.05
nu = 0.05
chi = 0.02
dt = 0.01
t_end = 10
record_stride = 1
initdata.kind = taylor_green
initdata.amplitude = 1
initdata.with_w = true
initdata.w_amplitude = 1
initdata.kc = 4
seed = 5
)");
  const auto sweep = diagnostics::energy_check_all_pairs(run.series, run.spec.sim.params);
  const double secs = seconds_since(start);
  return {sweep.worst_relative_slack >= -1e-6 && (run.cached || secs < 120.0),
          "worst (rhs - lhs)/||z(s)||^2 = " + fmt("%.3e", sweep.worst_relative_slack) + " at s=" +
              fmt("%.2f", sweep.worst_s) + ", t=" + fmt("%.2f", sweep.worst_t) + " over " +
              std::to_string(run.series.size()) + " records (tol -1e-6), " + timing(run)};
}

Outcome decay_gaps() {
  const Run run = cached_run(kDecay2D);
  const auto window = harness::window_for(run.spec, run.series);
  auto slope = [&](const char* label) {
    return diagnostics::fit_decay_exponent(run.series, label, window.t_min, window.t_max).slope;
  };
  const double su = slope("u:m=0");
  const double gap_w = slope("w:m=0") - su;
  const double gap_du = slope("u:m=1") - su;
  const bool pass = std::abs(su + 0.25) <= 0.1 && std::abs(gap_w + 0.5) <= 0.2 &&
                    std::abs(gap_du + 0.5) <= 0.2 && (run.cached || run.seconds < 900.0);
  return {pass, "window [" + fmt("%.3g", window.t_min) + ", " + fmt("%.4g", window.t_max) +
                    "]: slope(u)=" + fmt("%.3f", su) + " (-0.25+-0.1), slope(w)-slope(u)=" +
                    fmt("%.3f", gap_w) + " (-0.5+-0.2), slope(Du)-slope(u)=" + fmt("%.3f", gap_du) +
                    " (-0.5+-0.2), " + timing(run)};
}

Outcome synchronization() {
  const Run run2 = cached_run(kDecay2D);
  const auto rec2 = sync_records(run2);
  const CheckRecord& gap = find(rec2, "gap:eps:m=0-w:m=0");
  const CheckRecord& ratio = find(rec2, "ratio:eps/w:trend");
  const bool gap_ok = gap.measured <= -0.8;

  const Run run3 = cached_run(kDecay3D);
  const auto w3 = harness::window_for(run3.spec, run3.series);
  const double sd = diagnostics::fit_decay_exponent(run3.series, "divw:m=0", w3.t_min, w3.t_max).slope;
  const double sc = diagnostics::fit_decay_exponent(run3.series, "curlw:m=0", w3.t_min, w3.t_max).slope;
  const bool div_ok = sd - sc <= -0.8;

  return {gap_ok && ratio.pass && div_ok,
          "2D slope(eps)-slope(w)=" + fmt("%.2f", gap.measured) + " (<= -0.8, " + gap.note +
              "), eps/w ratio " + fmt("%.2e", ratio.predicted) + " -> " + fmt("%.2e", ratio.measured) +
              (ratio.pass ? " monotone" : " NOT monotone") + "; 3D window [" + fmt("%.3g", w3.t_min) +
              ", " + fmt("%.4g", w3.t_max) + "] slope(div w)-slope(curl w)=" + fmt("%.2f", sd - sc) +
              " (<= -0.8); " + timing(run2) + ", 3D " + timing(run3)};
}

Outcome du_band() {
  const Run run = cached_run(kDecay2D);
  const auto records = sync_records(run);
  const CheckRecord& r = find(records, "sandwich:u:m=1");
  return {r.pass, "max/min of ||Du|| t^0.75 over the window = " + fmt("%.3f", r.measured) +
                      " (<= C0/c0 = 5); " + r.note + "; " + timing(run)};
}

Outcome monotonicity_thresholds() {
  // 3D small data: the bound 0.005 gamma^-5 ||z0||^4 falls inside the run.
  const Run run3 = cached_run(R"(id = monotone_3d_64
dim = 3
n = 64
box_length = 2pi
mu = 0.05
nu = 0.05
chi = 0.5
dt = 0.02
t_end = 4
seminorm_orders = 0, 1
initdata.kind = decay_character
initdata.alpha = 0.25
initdata.amplitude = 0.1
initdata.kc = 1.5
seed = 2
)");
  const auto& z3 = run3.series.column("z:m=0");
  const double bound = diagnostics::t_doublestar_bound_3d(run3.spec.sim.params, z3.front());
  const auto onset3 = diagnostics::monotonicity_onset(run3.series, "z:m=1");
  const bool inside = bound <= run3.series.times().back();
  const bool ok3 = inside && onset3 && *onset3 <= bound;

  // 2D: after ||z|| <= 2 gamma, ||Dz|| never increases.
  const Run run2 = cached_run(R"(id = monotone_2d_128
dim = 2
n = 128
box_length = 2pi
mu = 0.05
nu = 0.05
chi = 0.3
dt = 0.01
t_end = 15
record_stride = 5
initdata.kind = random_solenoidal
initdata.amplitude = 1
initdata.with_w = true
initdata.kc = 8
seed = 4
)");
  const auto& t2 = run2.series.times();
  const auto& z2 = run2.series.column("z:m=0");
  const auto& dz2 = run2.series.column("z:m=1");
  const double threshold = 2.0 * run2.spec.sim.params.gamma();
  std::size_t enter = z2.size();
  for (std::size_t i = 0; i < z2.size(); ++i) {
    if (z2[i] <= threshold) {
      enter = i;
      break;
    }
  }
  double worst_rise = 0.0;
  for (std::size_t i = enter; i + 1 < dz2.size(); ++i) {
    worst_rise = std::max(worst_rise, (dz2[i + 1] - dz2[i]) / dz2[i]);
  }
  const bool entered = enter < z2.size() && enter + 2 < z2.size();
  const bool ok2 = entered && worst_rise <= 1e-10;
  return {ok3 && ok2,
          "3D ||z0||=" + fmt("%.3g", z3.front()) + ", t** bound " + fmt("%.3g", bound) +
              (inside ? " (inside horizon)" : " (beyond horizon)") + ", onset " +
              (onset3 ? fmt("%.3g", *onset3) : std::string("none")) + "; 2D ||z|| <= 2 gamma from t=" +
              (entered ? fmt("%.3g", t2[enter]) : std::string("never")) +
              ", largest relative rise of ||Dz|| after it " + fmt("%.2e", worst_rise) +
              " (tol 1e-10); " + timing(run3) + ", 2D " + timing(run2)};
}

Outcome epsilon_residual() {
  const auto start = Clock::now();
  const Grid g(2, 64, 2.0 * std::numbers::pi);
  const FluidParams p = params(0.05, 0.08, 0.1);
  MicropolarState z0 = initdata::taylor_green(g, 1.0);
  initdata::SpectrumEnvelope env;
  env.cutoff_kc = 3.0;
  env.amplitude = 0.5;
  env.seed = 12;
  z0.w = initdata::random_field(g, 1, env, false);
  const auto ref = diagnostics::residual_refinement(z0, p, 0.01 / 8.0, 16, {8, 4, 2});
  const double min_order = std::min(ref.orders[0], ref.orders[1]);
  const auto& fine = ref.samples.back();
  const double rel = fine.residual / fine.eps_h1;
  return {min_order >= 1.8 && rel < 1e-4,
          "residuals " + fmt("%.2e", ref.samples[0].residual) + ", " +
              fmt("%.2e", ref.samples[1].residual) + ", " + fmt("%.2e", fine.residual) +
              " for strides 8,4,2; orders " + fmt("%.3f", ref.orders[0]) + ", " +
              fmt("%.3f", ref.orders[1]) + " (>= 1.8); finest/||eps||_H1 = " + fmt("%.2e", rel) +
              " (< 1e-4), " + fmt("%.1f s", seconds_since(start))};
}

Outcome constants() {
  const double K = diagnostics::BoundConstants::K_smallness;
  const double t2 = diagnostics::t_doublestar_bound_3d(params(1, 1, 1), 1.0);
  const double p3 = diagnostics::BoundConstants::p_n(3);
  const bool k_ok = std::abs(K - 0.3141) <= 1e-4;
  return {k_ok && t2 == 0.005 && p3 == 0.25,
          "K = 12^(1/8)/sqrt(6 pi) = " + fmt("%.7f", K) + (k_ok ? "" : " OUTSIDE") +
              " 0.3141+-0.0001; t**(gamma=1, ||z0||=1) = " + fmt("%.17g", t2) + "; p_n(3) = " +
              fmt("%.17g", p3)};
}

std::string g_unit_tests;

Outcome invariant_suite() {
  if (g_unit_tests.empty() || !fs::exists(g_unit_tests)) {
    return {false, "unit test binary not found (pass --unit-tests)"};
  }
  const auto start = Clock::now();
  const std::string cmd = "\"" + g_unit_tests + "\" --minimal > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  const double secs = seconds_since(start);
  return {rc == 0 && secs < 300.0,
          std::string("property and unit tests ") + (rc == 0 ? "passed" : "FAILED") + " in " +
              fmt("%.1f s", secs) + " (< 300 s)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria for the micropolar solver"};
  std::vector<int> selected;
  std::string cache = g_cache.string();
  app.add_option("--criterion", selected, "Criterion number (repeatable; default all)")
      ->check(CLI::Range(1, 10));
  app.add_option("--cache", cache, "Directory for cached long runs");
  app.add_option("--unit-tests", g_unit_tests, "Path of the unit test binary (criterion 10)");
  CLI11_PARSE(app, argc, argv);
  tune_allocator();
  g_cache = cache;

  const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria{
      {1, {"oracle equivalence", oracle_equivalence}},
      {2, {"momentum identity", momentum_identity}},
      {3, {"energy estimate", energy_estimate}},
      {4, {"decay exponents of u, w, Du", decay_gaps}},
      {5, {"synchronization of w with half the vorticity", synchronization}},
      {6, {"two-sided bound on ||Du||", du_band}},
      {7, {"monotonicity thresholds", monotonicity_thresholds}},
      {8, {"eps equation residual", epsilon_residual}},
      {9, {"constant spot checks", constants}},
      {10, {"invariant suite", invariant_suite}},
  };
  if (selected.empty()) {
    for (const auto& [n, _] : criteria) selected.push_back(n);
  }
  bool all = true;
  for (int n : selected) {
    const auto& [name, fn] = criteria.at(n);
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
