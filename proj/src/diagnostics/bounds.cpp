#include <algorithm>
#include <cmath>
#include <numbers>

#include "micropolar/diagnostics.hpp"
#include "micropolar/errors.hpp"

namespace micropolar::diagnostics {

bool all_required_pass(const std::vector<CheckRecord>& records) {
  return std::all_of(records.begin(), records.end(),
                     [](const CheckRecord& r) { return r.pass || !r.required; });
}

void DecayHypothesis::validate() const {
  if (!(alpha >= 0.0)) throw DomainError("hypothesis alpha must be nonnegative");
  if (!(eta >= alpha)) throw DomainError("hypothesis eta must be at least alpha");
  if (!(c0 > 0.0) || !(C0 >= c0)) throw DomainError("hypothesis needs 0 < c0 <= C0");
  if (!(T0 >= 0.0) || !(t0 >= 0.0)) throw DomainError("hypothesis times must be nonnegative");
}

double DecayHypothesis::q() const {
  if (!(alpha > 0.0)) throw DomainError("q = eta / alpha needs alpha > 0");
  return eta / alpha;
}

double t_doublestar_bound_3d(const FluidParams& params, double z0_norm) {
  const double z2 = z0_norm * z0_norm;
  return BoundConstants::t_doublestar_coeff_3d * std::pow(params.gamma(), -5.0) * z2 * z2;
}

SmallnessMargin smallness_margin(const MicropolarState& state, const FluidParams& params) {
  const double z = state_norm(state);
  const double dz = state_seminorm(state, 1);
  const double gamma = params.gamma();
  SmallnessMargin out;
  if (state.grid().dim() == 3) {
    out.value = BoundConstants::K_smallness * std::sqrt(z) * std::sqrt(dz);
    out.threshold = gamma;
  } else {
    out.value = z;
    out.threshold = BoundConstants::smallness_coeff_2d * gamma;
  }
  out.satisfied = out.value < out.threshold;
  out.h1_value = std::sqrt(z) * std::sqrt(dz);
  out.h1_threshold = BoundConstants::h1_initdata_threshold * gamma;
  out.h1_satisfied = out.h1_value <= out.h1_threshold;
  return out;
}

ValidityWindow validity_window(const NormSeries& series, const Grid& grid,
                               const FluidParams& params, double kc_physical) {
  if (series.empty()) throw StructuralError("validity window needs a nonempty series");
  const double gamma = params.gamma();
  const double L = grid.box_length();
  const double pi = std::numbers::pi;
  const auto& t = series.times();

  ValidityWindow out;
  out.t_max = std::min(0.1 * L * L / (4.0 * pi * pi * gamma), t.back());

  const auto& dz = series.column(NormSeries::label("z", 1));
  double peak = t.front();
  for (std::size_t i = 0; i + 1 < dz.size(); ++i) {
    if (dz[i + 1] <= dz[i]) {
      peak = t[i];
      break;
    }
    peak = t[i + 1];
  }
  out.t_min = peak;
  if (kc_physical > 0.0) out.t_min = std::max(out.t_min, 2.0 / (gamma * kc_physical * kc_physical));
  out.t_min = std::max(out.t_min, 10.0 / (4.0 * params.chi));
  return out;
}

}  // namespace micropolar::diagnostics
