#include "micropolar/integrator.hpp"

#include "micropolar/errors.hpp"
#include "micropolar/nonlinear.hpp"
#include "micropolar/spectral_ops.hpp"

namespace micropolar::dynamics {

void normalize_state(MicropolarState& z, bool dealias) {
  z.u = spectral::leray_project(z.u);
  spectral::remove_mean_and_nyquist(z.u);
  spectral::remove_mean_and_nyquist(z.w);
  if (dealias) {
    spectral::dealias_in_place(z.u);
    spectral::dealias_in_place(z.w);
  }
}

LawsonRK4::LawsonRK4(const Grid& grid, const FluidParams& params, double dt, StepFlags flags)
    : params_(params), flags_(flags), full_(grid, params, dt), half_(grid, params, 0.5 * dt) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
}

Tendency LawsonRK4::rhs(const MicropolarState& z) const {
  if (!flags_.nonlinear) {
    return {SpectralField(z.grid(), z.u.components()), SpectralField(z.grid(), z.w.components())};
  }
  return nonlinear_rhs(z, flags_.dealias);
}

MicropolarState LawsonRK4::step(const MicropolarState& z) const {
  const double h = dt();
  MicropolarState next = z;
  next.time = z.time + h;

  if (!flags_.nonlinear) {
    full_.apply(next.u, next.w);
  } else {
    // k1 = N(z)
    const Tendency k1 = rhs(z);
    // k2 = N(E2 (z + h/2 k1))
    MicropolarState a = z;
    a.u.axpy(0.5 * h, k1.du);
    a.w.axpy(0.5 * h, k1.dw);
    half_.apply(a.u, a.w);
    const Tendency k2 = rhs(a);
    // k3 = N(E2 z + h/2 k2)
    MicropolarState e2z = z;
    half_.apply(e2z.u, e2z.w);
    MicropolarState b = e2z;
    b.u.axpy(0.5 * h, k2.du);
    b.w.axpy(0.5 * h, k2.dw);
    const Tendency k3 = rhs(b);
    // k4 = N(E z + h E2 k3)
    MicropolarState ez = z;
    full_.apply(ez.u, ez.w);
    Tendency e2k3 = k3;
    half_.apply(e2k3.du, e2k3.dw);
    MicropolarState c = ez;
    c.u.axpy(h, e2k3.du);
    c.w.axpy(h, e2k3.dw);
    const Tendency k4 = rhs(c);
    // z' = E z + h/6 (E k1 + 2 E2 (k2 + k3) + k4)
    Tendency ek1 = k1;
    full_.apply(ek1.du, ek1.dw);
    Tendency mid = k2;
    mid.du += k3.du;
    mid.dw += k3.dw;
    half_.apply(mid.du, mid.dw);
    next.u = ez.u;
    next.w = ez.w;
    next.u.axpy(h / 6.0, ek1.du);
    next.w.axpy(h / 6.0, ek1.dw);
    next.u.axpy(h / 3.0, mid.du);
    next.w.axpy(h / 3.0, mid.dw);
    next.u.axpy(h / 6.0, k4.du);
    next.w.axpy(h / 6.0, k4.dw);
  }

  next.u = spectral::leray_project(next.u);
  if (!next.u.all_finite() || !next.w.all_finite()) {
    throw BlowUpError("non-finite coefficients", next.time);
  }
  return next;
}

MicropolarState step(const MicropolarState& z, const FluidParams& params, double dt,
                     StepFlags flags) {
  return LawsonRK4(z.grid(), params, dt, flags).step(z);
}

}  // namespace micropolar::dynamics
