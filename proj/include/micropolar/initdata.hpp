#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "micropolar/fluid.hpp"

namespace micropolar::initdata {

/// Low-wavenumber envelope: every mode with 0 < |k| <= cutoff_kc gets modulus
/// proportional to |k|^exponent_r, modes above the cutoff are zero.
struct SpectrumEnvelope {
  double exponent_r = 0.0;
  double cutoff_kc = 1.0;  ///< physical wavenumber
  double amplitude = 1.0;  ///< L^2 norm of the generated field
  std::uint64_t seed = 0;

  /// Throws DomainError unless 0 < cutoff_kc <= the grid Nyquist wavenumber and amplitude >= 0.
  void validate(const Grid& grid) const;
};

/// Default low-k cutoff used when none is given: half of the dealiased band.
double default_cutoff(const Grid& grid);

/// Initial data with algebraic decay rate alpha under the heat semigroup:
/// u0 solenoidal with envelope exponent r = 2 alpha - dim / 2, w0 = 0,
/// ||u0|| = amplitude. When `rescale_for` is given on a 3D grid the state is
/// shrunk, if needed, so ||z0||^(1/2) ||Dz0||^(1/2) <= 0.9 * 3.182 * gamma.
/// Throws DomainError unless 0 < alpha < 1/2.
MicropolarState decay_character_data(const Grid& grid, double alpha, double amplitude,
                                     std::uint64_t seed, double cutoff_kc = 0.0,
                                     const std::optional<FluidParams>& rescale_for = std::nullopt);

/// u = A (sin(k0 x1) cos(k0 x2), -cos(k0 x1) sin(k0 x2)), w = 0. 2D only
/// (StructuralError otherwise).
MicropolarState taylor_green(const Grid& grid, double amplitude);

/// Random solenoidal u with the given envelope; w, when requested, is drawn
/// independently with the same envelope and scaled to ||w|| = w_amplitude
/// (the envelope amplitude when w_amplitude < 0).
MicropolarState random_solenoidal(const Grid& grid, const SpectrumEnvelope& envelope,
                                  bool with_w, double w_amplitude = -1.0);

/// Random field with the given envelope: `components` components, projected
/// onto divergence-free fields when `solenoidal` is set, Hermitian symmetric,
/// mean and Nyquist free. ||field|| = envelope.amplitude.
SpectralField random_field(const Grid& grid, int components, const SpectrumEnvelope& envelope,
                           bool solenoidal);

/// exp(t A) applied mode by mode with a dense matrix exponential of the
/// assembled per-mode matrix.
MicropolarState linear_oracle_evolve(const MicropolarState& z0, const FluidParams& params,
                                     double t);

/// Dense exp(t A_k) for one wavenumber vector.
Eigen::MatrixXcd oracle_mode_propagator(const FluidParams& params, const std::array<double, 3>& k,
                                        int dim, double t);

}  // namespace micropolar::initdata
