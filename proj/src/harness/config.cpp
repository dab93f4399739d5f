#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "micropolar/errors.hpp"
#include "micropolar/harness.hpp"

namespace micropolar::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// A real number, optionally followed by `pi` or `*pi`; bare `pi` is accepted too.
double parse_real(const std::string& key, const std::string& text) {
  std::string s = trim(text);
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    s.resize(s.size() - 2);
    if (!s.empty() && s.back() == '*') s.pop_back();
    if (s.empty()) return factor;
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "' expects a number, got '" + text + "'");
  }
  return v * factor;
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("key '" + key + "' expects an integer, got '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const long long v = parse_integer(key, text);
  if (v < -2147483647LL || v > 2147483647LL) throw ConfigError("key '" + key + "' is out of range");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
  std::string s = trim(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("key '" + key + "' expects true or false, got '" + text + "'");
}

struct Draft {
  int dim = 2;
  int n = 64;
  double box_length = 2.0 * std::numbers::pi;
  ExperimentSpec spec;
  bool has_hypothesis = false;
  bool eta_given = false;
  diagnostics::DecayHypothesis hypothesis;
};

using Setter = std::function<void(Draft&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["id"] = [](Draft& d, const std::string&, const std::string& v) { d.spec.id = trim(v); };
    t["dim"] = [](Draft& d, const std::string& k, const std::string& v) { d.dim = parse_int(k, v); };
    t["n"] = [](Draft& d, const std::string& k, const std::string& v) { d.n = parse_int(k, v); };
    t["box_length"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.box_length = parse_real(k, v);
    };
    t["mu"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sim.params.mu = parse_real(k, v);
    };
    t["nu"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sim.params.nu = parse_real(k, v);
    };
    t["chi"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sim.params.chi = parse_real(k, v);
    };
    t["kappa"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sim.params.kappa = parse_real(k, v);
    };
    t["dt"] = [](Draft& d, const std::string& k, const std::string& v) { d.spec.sim.dt = parse_real(k, v); };
    t["t_end"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sim.t_end = parse_real(k, v);
    };
    t["record_stride"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sim.record_stride = parse_int(k, v);
    };
    t["seminorm_orders"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sim.seminorm_orders.clear();
      for (const auto& item : split_list(v)) d.spec.sim.seminorm_orders.push_back(parse_int(k, item));
    };
    t["dealias"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sim.dealias = parse_bool(k, v);
    };
    t["nonlinear"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sim.nonlinear = parse_bool(k, v);
    };
    t["blowup_factor"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sim.blowup_factor = parse_real(k, v);
    };
    t["initdata.kind"] = [](Draft& d, const std::string&, const std::string& v) { d.spec.init.kind = trim(v); };
    t["initdata.alpha"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.init.alpha = parse_real(k, v);
    };
    t["initdata.amplitude"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.init.amplitude = parse_real(k, v);
    };
    auto seed = [](Draft& d, const std::string& k, const std::string& v) {
      const long long s = parse_integer(k, v);
      if (s < 0) throw ConfigError("key '" + k + "' must be nonnegative");
      d.spec.init.seed = static_cast<std::uint64_t>(s);
    };
    t["initdata.seed"] = seed;
    t["seed"] = seed;
    t["initdata.kc"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.init.kc = parse_real(k, v);
    };
    t["initdata.with_w"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.init.with_w = parse_bool(k, v);
    };
    t["initdata.exponent_r"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.init.exponent_r = parse_real(k, v);
    };
    t["initdata.w_amplitude"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.init.w_amplitude = parse_real(k, v);
    };
    t["initdata.rescale_small"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.init.rescale_small = parse_bool(k, v);
    };
    t["checks"] = [](Draft& d, const std::string&, const std::string& v) { d.spec.checks = split_list(v); };
    t["out_dir"] = [](Draft& d, const std::string&, const std::string& v) { d.spec.out_dir = trim(v); };
    auto hyp = [](double diagnostics::DecayHypothesis::*field) {
      return [field](Draft& d, const std::string& k, const std::string& v) {
        d.has_hypothesis = true;
        if (field == &diagnostics::DecayHypothesis::eta) d.eta_given = true;
        d.hypothesis.*field = parse_real(k, v);
      };
    };
    t["hypothesis.alpha"] = hyp(&diagnostics::DecayHypothesis::alpha);
    t["hypothesis.eta"] = hyp(&diagnostics::DecayHypothesis::eta);
    t["hypothesis.C0"] = hyp(&diagnostics::DecayHypothesis::C0);
    t["hypothesis.c0"] = hyp(&diagnostics::DecayHypothesis::c0);
    t["hypothesis.T0"] = hyp(&diagnostics::DecayHypothesis::T0);
    t["hypothesis.t0"] = hyp(&diagnostics::DecayHypothesis::t0);
    t["tol.energy"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.energy_tol = parse_real(k, v);
    };
    t["tol.slope"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sync.slope_tol = parse_real(k, v);
    };
    t["tol.gap"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sync.gap_tol = parse_real(k, v);
    };
    t["sync.orders"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sync_orders.clear();
      for (const auto& item : split_list(v)) d.spec.sync_orders.push_back(parse_int(k, item));
    };
    t["sync.sandwich_orders"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sync.sandwich_orders.clear();
      for (const auto& item : split_list(v)) d.spec.sync.sandwich_orders.push_back(parse_int(k, item));
    };
    t["sync.eps_absolute"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.sync.eps_absolute = parse_bool(k, v);
    };
    t["window.t_min"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.window_t_min = parse_real(k, v);
    };
    t["window.t_max"] = [](Draft& d, const std::string& k, const std::string& v) {
      d.spec.window_t_max = parse_real(k, v);
    };
    return t;
  }();
  return table;
}

void positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ConfigError("key '" + key + "' must be positive");
}

ExperimentSpec finish(Draft& d) {
  ExperimentSpec& s = d.spec;
  if (d.dim != 2 && d.dim != 3) throw ConfigError("key 'dim' must be 2 or 3");
  if (d.n < 8 || (d.n & (d.n - 1)) != 0) {
    throw ConfigError("key 'n' must be a power of two and at least 8");
  }
  positive("box_length", d.box_length);
  s.sim.grid = Grid(d.dim, d.n, d.box_length);

  const FluidParams& p = s.sim.params;
  positive("mu", p.mu);
  positive("nu", p.nu);
  positive("chi", p.chi);
  if (!(p.kappa >= 0.0)) throw ConfigError("key 'kappa' must be nonnegative");
  if (d.dim == 2 && p.kappa != 0.0) throw ConfigError("key 'kappa' only applies in 3D");
  positive("dt", s.sim.dt);
  positive("t_end", s.sim.t_end);
  if (s.sim.record_stride < 1) throw ConfigError("key 'record_stride' must be at least 1");
  if (!(s.sim.blowup_factor > 1.0)) throw ConfigError("key 'blowup_factor' must exceed 1");
  for (int m : s.sim.seminorm_orders) {
    if (m < 0) throw ConfigError("key 'seminorm_orders' must list nonnegative orders");
  }
  for (int m : s.sync_orders) {
    if (m < 0) throw ConfigError("key 'sync.orders' must list nonnegative orders");
  }

  const auto& kinds = std::vector<std::string>{"decay_character", "taylor_green", "random_solenoidal"};
  if (std::find(kinds.begin(), kinds.end(), s.init.kind) == kinds.end()) {
    throw ConfigError("key 'initdata.kind' must be one of decay_character, taylor_green, "
                      "random_solenoidal");
  }
  if (s.init.kind == "taylor_green" && d.dim != 2) {
    throw ConfigError("key 'initdata.kind': taylor_green needs dim = 2");
  }
  if (s.init.kind == "decay_character" && !(s.init.alpha > 0.0 && s.init.alpha < 0.5)) {
    throw ConfigError("key 'initdata.alpha' must lie in (0, 1/2)");
  }
  if (!(s.init.amplitude >= 0.0)) throw ConfigError("key 'initdata.amplitude' must be nonnegative");
  if (s.init.kc < 0.0) throw ConfigError("key 'initdata.kc' must be nonnegative");
  const double nyquist = s.sim.grid.k0() * (d.n / 2);
  if (s.init.kc > nyquist) throw ConfigError("key 'initdata.kc' exceeds the grid Nyquist wavenumber");

  for (const auto& c : s.checks) {
    const auto& known = known_checks();
    if (std::find(known.begin(), known.end(), c) == known.end()) {
      throw ConfigError("key 'checks' names unknown check '" + c + "'");
    }
  }
  if (d.has_hypothesis) {
    if (!d.eta_given) d.hypothesis.eta = d.hypothesis.alpha;
    try {
      d.hypothesis.validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("hypothesis: ") + e.what());
    }
    s.hypothesis = d.hypothesis;
  }
  positive("tol.energy", s.energy_tol);
  positive("tol.slope", s.sync.slope_tol);
  positive("tol.gap", s.sync.gap_tol);
  if (s.out_dir.empty()) throw ConfigError("key 'out_dir' must not be empty");
  return s;
}

std::string real_text(double v) {
  std::ostringstream o;
  o.precision(17);
  o << v;
  return o.str();
}

template <typename T>
std::string list_text(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_same_v<T, std::string>) {
      out += v[i];
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"energy", "sync",   "monotonicity",
                                              "epsilon_residual", "oracle", "bounds"};
  return names;
}

ExperimentSpec::ExperimentSpec() : sim{Grid(2, 64, 2.0 * std::numbers::pi), {}} {}

ExperimentSpec parse_config(std::istream& in) {
  Draft d;
  std::map<std::string, int> seen;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown key '" + key + "'", line_no);
    if (seen.count(key)) {
      throw ConfigError("key '" + key + "' repeats line " + std::to_string(seen[key]), line_no);
    }
    seen[key] = line_no;
    try {
      it->second(d, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), line_no);
    }
  }
  return finish(d);
}

ExperimentSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  ExperimentSpec spec = parse_config(in);
  return spec;
}

std::string render_config(const ExperimentSpec& s) {
  std::ostringstream o;
  const auto& g = s.sim.grid;
  const auto& p = s.sim.params;
  o << "id = " << s.id << "\n";
  o << "dim = " << g.dim() << "\n";
  o << "n = " << g.points_per_axis() << "\n";
  o << "box_length = " << real_text(g.box_length()) << "\n";
  o << "mu = " << real_text(p.mu) << "\n";
  o << "nu = " << real_text(p.nu) << "\n";
  o << "chi = " << real_text(p.chi) << "\n";
  o << "kappa = " << real_text(p.kappa) << "\n";
  o << "dt = " << real_text(s.sim.dt) << "\n";
  o << "t_end = " << real_text(s.sim.t_end) << "\n";
  o << "record_stride = " << s.sim.record_stride << "\n";
  o << "seminorm_orders = " << list_text(s.sim.seminorm_orders) << "\n";
  o << "dealias = " << (s.sim.dealias ? "true" : "false") << "\n";
  o << "nonlinear = " << (s.sim.nonlinear ? "true" : "false") << "\n";
  o << "blowup_factor = " << real_text(s.sim.blowup_factor) << "\n";
  o << "initdata.kind = " << s.init.kind << "\n";
  o << "initdata.alpha = " << real_text(s.init.alpha) << "\n";
  o << "initdata.amplitude = " << real_text(s.init.amplitude) << "\n";
  o << "initdata.seed = " << s.init.seed << "\n";
  o << "initdata.kc = " << real_text(s.init.kc) << "\n";
  o << "initdata.with_w = " << (s.init.with_w ? "true" : "false") << "\n";
  o << "initdata.exponent_r = " << real_text(s.init.exponent_r) << "\n";
  o << "initdata.w_amplitude = " << real_text(s.init.w_amplitude) << "\n";
  o << "initdata.rescale_small = " << (s.init.rescale_small ? "true" : "false") << "\n";
  o << "checks = " << list_text(s.checks) << "\n";
  o << "out_dir = " << s.out_dir.string() << "\n";
  if (s.hypothesis) {
    const auto& h = *s.hypothesis;
    o << "hypothesis.alpha = " << real_text(h.alpha) << "\n";
    o << "hypothesis.eta = " << real_text(h.eta) << "\n";
    o << "hypothesis.C0 = " << real_text(h.C0) << "\n";
    o << "hypothesis.c0 = " << real_text(h.c0) << "\n";
    o << "hypothesis.T0 = " << real_text(h.T0) << "\n";
    o << "hypothesis.t0 = " << real_text(h.t0) << "\n";
  }
  o << "tol.energy = " << real_text(s.energy_tol) << "\n";
  o << "tol.slope = " << real_text(s.sync.slope_tol) << "\n";
  o << "tol.gap = " << real_text(s.sync.gap_tol) << "\n";
  o << "sync.orders = " << list_text(s.sync_orders) << "\n";
  o << "sync.sandwich_orders = " << list_text(s.sync.sandwich_orders) << "\n";
  o << "sync.eps_absolute = " << (s.sync.eps_absolute ? "true" : "false") << "\n";
  o << "window.t_min = " << real_text(s.window_t_min) << "\n";
  o << "window.t_max = " << real_text(s.window_t_max) << "\n";
  return o.str();
}

diagnostics::DecayHypothesis parse_hypothesis(const std::string& text) {
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  diagnostics::DecayHypothesis h;
  bool eta_given = false;
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ConfigError("hypothesis term '" + token + "' lacks '='");
    std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "\xCE\xB1") key = "alpha";
    if (key == "\xCE\xB7") key = "eta";
    const double v = parse_real("hypothesis." + key, value);
    if (key == "alpha") {
      h.alpha = v;
    } else if (key == "eta") {
      h.eta = v;
      eta_given = true;
    } else if (key == "C0") {
      h.C0 = v;
    } else if (key == "c0") {
      h.c0 = v;
    } else if (key == "T0") {
      h.T0 = v;
    } else if (key == "t0") {
      h.t0 = v;
    } else {
      throw ConfigError("unknown hypothesis key '" + key + "'");
    }
  }
  if (!eta_given) h.eta = h.alpha;
  try {
    h.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("hypothesis: ") + e.what());
  }
  return h;
}

}  // namespace micropolar::harness
