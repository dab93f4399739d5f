#include "micropolar/epsilon.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "micropolar/errors.hpp"
#include "micropolar/integrator.hpp"
#include "micropolar/nonlinear.hpp"
#include "micropolar/spectral_ops.hpp"

namespace micropolar::diagnostics {

SpectralField epsilon_field(const MicropolarState& z) {
  SpectralField eps = z.w;
  eps.axpy(-0.5, spectral::curl(z.u));
  return eps;
}

SpectralField elliptic_operator(const SpectralField& v, const FluidParams& params) {
  SpectralField out = spectral::laplacian(v);
  out *= params.mu;
  out.axpy(-params.chi, spectral::curl(spectral::curl(v)));
  if (v.grid().dim() == 3 && params.kappa != 0.0) {
    out.axpy(params.kappa, spectral::gradient(spectral::divergence(v)));
  }
  return out;
}

SpectralField epsilon_tendency(const MicropolarState& z, const FluidParams& params,
                               bool dealias) {
  const SpectralField eps = epsilon_field(z);
  SpectralField out = elliptic_operator(eps, params);
  out.axpy(-4.0 * params.chi, eps);
  out.axpy(params.nu - params.mu, spectral::laplacian(z.w));
  out.axpy(-1.0, dynamics::advect(z.u, eps, dealias));
  out.axpy(1.0, dynamics::vorticity_wedge_source(z.u, dealias));
  return out;
}

ResidualSample epsilon_residual(std::span<const MicropolarState> states,
                                const FluidParams& params, bool dealias) {
  if (states.size() != 3) {
    throw StructuralError("epsilon_residual needs exactly three consecutive states");
  }
  const double h0 = states[1].time - states[0].time;
  const double h1 = states[2].time - states[1].time;
  if (!(h0 > 0.0) || std::abs(h0 - h1) > 1e-9 * std::max(h0, h1)) {
    throw StructuralError("epsilon_residual needs equally spaced increasing times");
  }
  SpectralField eps_t = epsilon_field(states[2]);
  eps_t -= epsilon_field(states[0]);
  eps_t *= 1.0 / (2.0 * h0);
  eps_t -= epsilon_tendency(states[1], params, dealias);
  const SpectralField eps_mid = epsilon_field(states[1]);
  const double h1norm = std::sqrt(spectral::seminorm_squared(eps_mid, 0) +
                                  spectral::seminorm_squared(eps_mid, 1));
  return {states[1].time, std::sqrt(spectral::seminorm_squared(eps_t, 0)), h1norm};
}

ResidualRefinement residual_refinement(const MicropolarState& z0, const FluidParams& params,
                                       double dt, int center_step, const std::vector<int>& strides,
                                       bool dealias) {
  if (strides.empty()) throw StructuralError("residual refinement needs at least one stride");
  const int widest = *std::max_element(strides.begin(), strides.end());
  if (*std::min_element(strides.begin(), strides.end()) < 1 || center_step < widest) {
    throw StructuralError("strides must be positive and fit before the centre step");
  }
  std::map<int, MicropolarState> kept;
  for (int s : strides) {
    kept.emplace(center_step - s, z0);
    kept.emplace(center_step + s, z0);
  }
  kept.emplace(center_step, z0);

  const dynamics::LawsonRK4 integrator(z0.grid(), params, dt, {true, dealias});
  MicropolarState z = z0;
  dynamics::normalize_state(z, dealias);
  const double t0 = z.time;
  for (int i = 0; i <= center_step + widest; ++i) {
    if (i > 0) {
      z = integrator.step(z);
      z.time = t0 + i * dt;
      dynamics::normalize_state(z, dealias);
    }
    auto it = kept.find(i);
    if (it != kept.end()) it->second = z;
  }

  ResidualRefinement out;
  for (int s : strides) {
    const MicropolarState trio[3] = {kept.at(center_step - s), kept.at(center_step),
                                     kept.at(center_step + s)};
    out.strides.push_back(s);
    out.samples.push_back(epsilon_residual(trio, params, dealias));
  }
  for (std::size_t i = 1; i < out.samples.size(); ++i) {
    out.orders.push_back(std::log(out.samples[i - 1].residual / out.samples[i].residual) /
                         std::log(static_cast<double>(out.strides[i - 1]) / out.strides[i]));
  }
  return out;
}

}  // namespace micropolar::diagnostics
