#include "micropolar/fluid.hpp"

#include <cmath>
#include <string>

#include "micropolar/errors.hpp"
#include "micropolar/spectral_ops.hpp"

namespace micropolar {

void FluidParams::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(mu)) throw DomainError("mu must be positive");
  if (!positive(nu)) throw DomainError("nu must be positive");
  if (!positive(chi)) throw DomainError("chi must be positive");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be nonnegative");
}

MicropolarState::MicropolarState(double t, SpectralField u_field, SpectralField w_field)
    : time(t), u(std::move(u_field)), w(std::move(w_field)) {
  const Grid& g = u.grid();
  if (u.components() != g.dim()) {
    throw StructuralError("velocity must have " + std::to_string(g.dim()) + " components");
  }
  if (!(w.grid() == g)) throw StructuralError("u and w live on different grids");
  if (w.components() != rotation_components(g.dim())) {
    throw StructuralError("micro-rotation must have " +
                          std::to_string(rotation_components(g.dim())) + " components");
  }
}

MicropolarState MicropolarState::zero(const Grid& grid, double t) {
  return MicropolarState(t, SpectralField(grid, grid.dim()),
                         SpectralField(grid, rotation_components(grid.dim())));
}

double state_norm(const MicropolarState& z) { return state_seminorm(z, 0); }

double state_seminorm(const MicropolarState& z, int m) {
  return std::sqrt(spectral::seminorm_squared(z.u, m) + spectral::seminorm_squared(z.w, m));
}

}  // namespace micropolar
