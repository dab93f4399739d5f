#pragma once

#include <span>
#include <vector>

#include "micropolar/fluid.hpp"

namespace micropolar::diagnostics {

/// Synchronization error eps = w - curl(u)/2.
SpectralField epsilon_field(const MicropolarState& z);

/// Elliptic operator L v = mu Lap v + kappa grad(div v) - chi curl curl v.
/// In 2D (scalar v) this is (mu + chi) Lap v.
SpectralField elliptic_operator(const SpectralField& v, const FluidParams& params);

/// Every term of the eps evolution equation except eps_t, i.e.
///   -(u.grad) eps - 4 chi eps + L eps + (nu - mu) Lap w + (1/2) sum_j (grad u_j) ^ (D_j u).
/// Along an exact solution this equals eps_t.
SpectralField epsilon_tendency(const MicropolarState& z, const FluidParams& params,
                               bool dealias = true);

struct ResidualSample {
  double time;
  double residual;      ///< ||eps_t - epsilon_tendency||_{L^2}
  double eps_h1;        ///< ||eps||_{H^1} = sqrt(||eps||^2 + ||D eps||^2) at `time`
};

/// Residual of the eps equation at the middle of three equally spaced states,
/// with eps_t from the centred difference. Throws StructuralError unless
/// exactly three states with equal spacing are given.
ResidualSample epsilon_residual(std::span<const MicropolarState> states,
                                const FluidParams& params, bool dealias = true);

struct ResidualRefinement {
  std::vector<int> strides;             ///< differencing half-width in steps
  std::vector<ResidualSample> samples;  ///< one per stride
  std::vector<double> orders;           ///< log2 ratio between successive strides
};

/// Integrate z0 with step dt (Lawson RK4, nonlinear) and evaluate the residual
/// at step index `center_step` for each stride s, using the states at
/// center_step - s, center_step and center_step + s. Strides should halve in
/// turn so `orders` reads as observed convergence orders.
ResidualRefinement residual_refinement(const MicropolarState& z0, const FluidParams& params,
                                       double dt, int center_step, const std::vector<int>& strides,
                                       bool dealias = true);

}  // namespace micropolar::diagnostics
