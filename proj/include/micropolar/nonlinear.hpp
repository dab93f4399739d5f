#pragma once

#include "micropolar/fluid.hpp"

namespace micropolar::dynamics {

/// Advection tendencies du = -P[(u.grad) u], dw = -(u.grad) w.
///
/// Products are formed in physical space; with `dealias` set the result is
/// truncated by the 2/3 rule, which makes the products alias-free when the
/// input is itself truncated. The k = 0 and Nyquist modes of the result are
/// zero.
Tendency nonlinear_rhs(const MicropolarState& z, bool dealias = true);

/// (u.grad) v for a divergence-free u and any field v with matching grid.
SpectralField advect(const SpectralField& u, const SpectralField& v, bool dealias = true);

/// (1/2) sum_j (grad u_j) ^ (D_j u): vector wedge in 3D, scalar a1 b2 - a2 b1 in 2D.
SpectralField vorticity_wedge_source(const SpectralField& u, bool dealias = true);

}  // namespace micropolar::dynamics
