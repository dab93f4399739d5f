#pragma once

#include "micropolar/fluid.hpp"
#include "micropolar/linear.hpp"

namespace micropolar::dynamics {

struct StepFlags {
  bool nonlinear = true;
  bool dealias = true;
};

/// Lawson (integrating-factor) fourth-order Runge-Kutta scheme.
///
/// The linear part is carried exactly by the per-mode propagators exp(dt A)
/// and exp(dt A / 2), which are built once. With the nonlinear flag off a step
/// is exactly exp(dt A) applied to the coefficients.
class LawsonRK4 {
 public:
  LawsonRK4(const Grid& grid, const FluidParams& params, double dt, StepFlags flags = {});

  double dt() const noexcept { return full_.step(); }
  const StepFlags& flags() const noexcept { return flags_; }

  /// Advance one step. Throws BlowUpError on non-finite coefficients.
  MicropolarState step(const MicropolarState& z) const;

 private:
  Tendency rhs(const MicropolarState& z) const;

  FluidParams params_;
  StepFlags flags_;
  LinearPropagator full_;
  LinearPropagator half_;
};

/// One step with a freshly built integrator.
MicropolarState step(const MicropolarState& z, const FluidParams& params, double dt,
                     StepFlags flags = {});

/// Project u onto divergence-free fields, drop the mean and Nyquist modes and,
/// when requested, apply the 2/3 rule. Used on initial data and after each step.
void normalize_state(MicropolarState& z, bool dealias);

}  // namespace micropolar::dynamics
