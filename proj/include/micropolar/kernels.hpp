#pragma once

#include <array>
#include <span>
#include <vector>

#include "micropolar/grid.hpp"
#include "micropolar/spectral_field.hpp"

/// Inner loops of the solver, in two flavours with identical signatures.
///
/// `serial` is the plain reference implementation kept for testing; `parallel`
/// is the OpenMP version used by the library. Reductions in `parallel` sum a
/// fixed number of contiguous chunks in order, so results do not depend on the
/// thread count.
namespace micropolar::kernels {

/// Per-mode coefficients of the exact linear propagator exp(h A_k).
///
/// Velocity and micro-rotation are split into the part along k and the part
/// across k; the across parts are coupled through the curl (i k x .).
struct PropagatorCoeffs {
  std::vector<double> u_along;   ///< factor on the k-parallel part of u
  std::vector<double> w_along;   ///< factor on the k-parallel part of w (3D)
  std::vector<double> u_across;  ///< factor on the transverse part of u
  std::vector<double> w_across;  ///< factor on the transverse part of w
  std::vector<double> coupling;  ///< factor on the curl of the other field
};

/// View of the dim + (1 or 3) spectral components making up a state.
struct StateSpan {
  std::array<std::span<Complex>, 3> u;
  std::array<std::span<Complex>, 3> w;
  int dim;
};

namespace serial {

/// sum_k weight * |k|^(2 order) * |c_k|^2 over the stored half spectrum.
double weighted_norm2(std::span<const Complex> c, const ModeTable& t, int order);
/// sum_k weight * Re(a_k conj(b_k)).
double weighted_inner(std::span<const Complex> a, std::span<const Complex> b, const ModeTable& t);
/// In-place u <- u - k (k.u)/|k|^2, identity at k = 0.
void leray_project(std::array<std::span<Complex>, 3> u, int dim, const ModeTable& t);
/// out[i] += a[i] * b[i]
void multiply_accumulate(std::span<double> out, std::span<const double> a,
                         std::span<const double> b);
/// Apply the per-mode propagator in place.
void apply_propagator(StateSpan z, const PropagatorCoeffs& p, const ModeTable& t);

}  // namespace serial

namespace parallel {

double weighted_norm2(std::span<const Complex> c, const ModeTable& t, int order);
double weighted_inner(std::span<const Complex> a, std::span<const Complex> b, const ModeTable& t);
void leray_project(std::array<std::span<Complex>, 3> u, int dim, const ModeTable& t);
void multiply_accumulate(std::span<double> out, std::span<const double> a,
                         std::span<const double> b);
void apply_propagator(StateSpan z, const PropagatorCoeffs& p, const ModeTable& t);

}  // namespace parallel

}  // namespace micropolar::kernels
