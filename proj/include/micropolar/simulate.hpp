#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "micropolar/errors.hpp"
#include "micropolar/fluid.hpp"
#include "micropolar/norm_series.hpp"

namespace micropolar::dynamics {

struct SimConfig {
  Grid grid;
  FluidParams params;
  double dt = 1e-2;
  double t_end = 1.0;
  int record_stride = 1;
  std::vector<int> seminorm_orders{0, 1};
  bool dealias = true;
  bool nonlinear = true;
  /// Blow-up ceiling as a multiple of ||z0||.
  double blowup_factor = 1e6;
};

struct SimulateOptions {
  /// Called with every recorded state, in time order.
  std::function<void(const MicropolarState&)> on_record;
  /// Keep every n-th recorded state in the result (0 keeps none).
  int snapshot_every = 0;
};

struct SimulationResult {
  NormSeries series;
  std::vector<MicropolarState> snapshots;
  MicropolarState final_state;
  /// Largest max|u| * dt * k_max seen at record times.
  double max_cfl = 0.0;
};

/// Raised when a run blows up; carries everything recorded before the failure.
class SimulationAborted : public BlowUpError {
 public:
  SimulationAborted(const BlowUpError& cause, NormSeries partial)
      : BlowUpError(cause), partial_(std::move(partial)) {}
  const NormSeries& partial() const noexcept { return partial_; }

 private:
  NormSeries partial_;
};

/// Norms recorded for one state: u, w, eps, z at each order, divu:m=0, the
/// energy budget terms (energy, dissip_u = mu ||Du||^2, dissip_w = nu ||Dw||^2)
/// and, in 3D, divw and curlw at each order.
std::map<std::string, double> state_norms(const MicropolarState& z, const FluidParams& params,
                                          const std::vector<int>& orders);

/// Integrate from z0 (normalized first) to t_end, recording every
/// record_stride steps and at the final time. The series also carries
/// energy_lhs = ||z(t)||^2 + 2 int_0^t (dissip_u + dissip_w), accumulated by
/// the trapezoidal rule over the records. t_end equal to the initial time
/// gives a single record.
SimulationResult simulate(const SimConfig& config, const MicropolarState& z0,
                          const SimulateOptions& options = {});

/// Orders actually recorded: the requested ones plus 0 and 1, sorted.
std::vector<int> recorded_orders(const std::vector<int>& requested);

}  // namespace micropolar::dynamics
