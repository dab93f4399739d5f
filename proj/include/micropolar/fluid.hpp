#pragma once

#include <algorithm>

#include "micropolar/spectral_field.hpp"

namespace micropolar {

/// Viscosity and coupling constants of the micropolar system.
struct FluidParams {
  double mu = 1.0;     ///< kinematic viscosity
  double nu = 1.0;     ///< angular viscosity
  double chi = 1.0;    ///< vortex (micro-rotation) viscosity
  double kappa = 0.0;  ///< gyroviscosity, 3D only

  double gamma() const noexcept { return std::min(mu, nu); }

  /// Throws DomainError unless mu, nu, chi > 0 and kappa >= 0.
  void validate() const;
};

/// z = (u, w) at one time instant. u has dim components; w has 1 (2D) or 3 (3D).
struct MicropolarState {
  double time = 0.0;
  SpectralField u;
  SpectralField w;

  MicropolarState(double t, SpectralField u_field, SpectralField w_field);

  /// Zero state on `grid`.
  static MicropolarState zero(const Grid& grid, double t = 0.0);

  const Grid& grid() const noexcept { return u.grid(); }
};

/// Number of micro-rotation components for a grid dimension.
inline int rotation_components(int dim) noexcept { return dim == 2 ? 1 : 3; }

/// Time derivatives of (u, w).
struct Tendency {
  SpectralField du;
  SpectralField dw;
};

/// ||(u, w)||_{L^2}.
double state_norm(const MicropolarState& z);
/// ||D^m (u, w)||_{L^2}.
double state_seminorm(const MicropolarState& z, int m);

}  // namespace micropolar
