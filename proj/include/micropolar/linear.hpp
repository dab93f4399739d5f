#pragma once

#include <array>

#include <Eigen/Dense>

#include "micropolar/fluid.hpp"
#include "micropolar/kernels.hpp"

namespace micropolar::dynamics {

/// Dense per-mode matrix of the linear part, acting on (u_hat, w_hat):
/// 3x3 over (u1, u2, w) in 2D, 6x6 over (u1, u2, u3, w1, w2, w3) in 3D.
struct LinearModeMatrix {
  std::array<double, 3> k{};
  Eigen::MatrixXcd entries;
};

/// Assemble A_k from the viscous, coupling and damping terms. The gyroviscous
/// term only appears in 3D.
LinearModeMatrix linear_mode_matrix(const FluidParams& params, const std::array<double, 3>& k,
                                    int dim);

/// Exact propagator exp(h A_k) for every mode of a grid, in closed form.
///
/// A_k commutes with the split of each field into its k-parallel and transverse
/// parts. The parallel parts decay independently; on the transverse parts the
/// curl C = i k x . satisfies C^2 = |k|^2, so the coupled block reduces to a
/// symmetric 2x2 problem with eigenvalues m +/- delta.
class LinearPropagator {
 public:
  LinearPropagator(const Grid& grid, const FluidParams& params, double h);

  double step() const noexcept { return h_; }
  const kernels::PropagatorCoeffs& coeffs() const noexcept { return coeffs_; }

  /// Apply exp(h A_k) to every mode of (u, w) in place.
  void apply(SpectralField& u, SpectralField& w) const;

 private:
  Grid grid_;
  double h_;
  kernels::PropagatorCoeffs coeffs_;
};

/// Linear part of the velocity tendency, written as (mu + chi) Lap u + 2 chi curl w.
SpectralField momentum_linear_rhs(const MicropolarState& z, const FluidParams& params);

/// The same quantity assembled as mu Lap u + 2 chi curl eps with eps = w - curl(u)/2;
/// equal to momentum_linear_rhs whenever u is divergence free.
SpectralField momentum_linear_rhs_synchronized(const MicropolarState& z,
                                               const FluidParams& params);

/// Full linear tendency A z assembled with spectral operators.
Tendency linear_rhs(const MicropolarState& z, const FluidParams& params);

}  // namespace micropolar::dynamics
