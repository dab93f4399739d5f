#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "micropolar/diagnostics.hpp"
#include "micropolar/simulate.hpp"

namespace micropolar::harness {

/// Initial-data selection (initdata.* keys).
struct InitSpec {
  std::string kind = "random_solenoidal";  ///< decay_character | taylor_green | random_solenoidal
  double alpha = 0.25;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
  double kc = 0.0;  ///< physical cutoff wavenumber, 0 selects the default
  bool with_w = false;
  double exponent_r = 0.0;
  double w_amplitude = -1.0;
  bool rescale_small = true;
};

/// Names accepted in the `checks` list.
const std::vector<std::string>& known_checks();

struct ExperimentSpec {
  std::string id = "experiment";
  dynamics::SimConfig sim;
  InitSpec init;
  std::optional<diagnostics::DecayHypothesis> hypothesis;
  std::vector<std::string> checks;
  std::filesystem::path out_dir = "out";
  double energy_tol = 1e-6;
  diagnostics::SyncOptions sync;
  /// Orders reported by the sync check.
  std::vector<int> sync_orders{0};
  /// Explicit fit window; either end <= 0 falls back to the computed window.
  double window_t_min = 0.0;
  double window_t_max = 0.0;

  ExperimentSpec();
};

/// Parse flat `key = value` text (`#` starts a comment). Unknown keys, bad
/// values and invalid parameters raise ConfigError; the message names the key
/// and, for parse problems, the line.
ExperimentSpec parse_config(std::istream& in);
ExperimentSpec load_config(const std::filesystem::path& path);

/// Canonical text form of a spec; parse_config(render_config(s)) reproduces s.
std::string render_config(const ExperimentSpec& spec);

/// Initial state described by the spec.
MicropolarState make_initial_state(const ExperimentSpec& spec);

struct Report {
  std::string id;
  std::vector<diagnostics::CheckRecord> records;
  diagnostics::ValidityWindow window;
  double max_cfl = 0.0;
  bool pass() const { return diagnostics::all_required_pass(records); }
};

/// Validity window for a spec and its series, honouring explicit overrides.
diagnostics::ValidityWindow window_for(const ExperimentSpec& spec, const NormSeries& series);

/// Run the named checks on a recorded series. `z0` is the normalized initial state,
/// needed by the oracle and epsilon_residual checks.
std::vector<diagnostics::CheckRecord> run_checks(const ExperimentSpec& spec,
                                                 const NormSeries& series,
                                                 const MicropolarState& z0);

/// Generate data, simulate, write series.csv, config.cfg and report.json into
/// out_dir, and return the report. A blow-up writes the partial series before
/// the SimulationAborted propagates.
Report run_experiment(const ExperimentSpec& spec);

/// Report as JSON text.
std::string report_json(const Report& report, const ExperimentSpec& spec);

/// CSV: `t` then the labels in lexicographic order, 17 significant digits.
void emit_csv(const NormSeries& series, const std::filesystem::path& path);
void write_csv(const NormSeries& series, std::ostream& out);
NormSeries read_csv(const std::filesystem::path& path);
NormSeries parse_csv(std::istream& in);

/// Parse "alpha=0.25 C0=3 c0=0.5 ..." (space or comma separated) into a hypothesis.
diagnostics::DecayHypothesis parse_hypothesis(const std::string& text);

}  // namespace micropolar::harness
