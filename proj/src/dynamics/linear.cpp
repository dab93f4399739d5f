#include "micropolar/linear.hpp"

#include <cmath>

#include "micropolar/errors.hpp"
#include "micropolar/spectral_ops.hpp"

namespace micropolar::dynamics {

LinearModeMatrix linear_mode_matrix(const FluidParams& params, const std::array<double, 3>& k,
                                    int dim) {
  using C = std::complex<double>;
  constexpr C I{0.0, 1.0};
  const double mu = params.mu, nu = params.nu, chi = params.chi, kappa = params.kappa;
  LinearModeMatrix out;
  out.k = k;
  if (dim == 2) {
    const double k2 = k[0] * k[0] + k[1] * k[1];
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
    a(0, 0) = -(mu + chi) * k2;
    a(1, 1) = -(mu + chi) * k2;
    // curl of scalar w: (D2 w, -D1 w)
    a(0, 2) = 2.0 * chi * I * k[1];
    a(1, 2) = -2.0 * chi * I * k[0];
    // scalar curl of u: D1 u2 - D2 u1
    a(2, 0) = -2.0 * chi * I * k[1];
    a(2, 1) = 2.0 * chi * I * k[0];
    a(2, 2) = -nu * k2 - 4.0 * chi;
    out.entries = a;
    return out;
  }
  if (dim != 3) throw StructuralError("linear_mode_matrix: dim must be 2 or 3");
  const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  // i [k x] : v -> i k x v
  Eigen::Matrix3cd cross;
  cross << 0.0, -k[2], k[1], k[2], 0.0, -k[0], -k[1], k[0], 0.0;
  cross *= I;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(6, 6);
  a.block<3, 3>(0, 0) = Eigen::Matrix3cd::Identity() * (-(mu + chi) * k2);
  a.block<3, 3>(0, 3) = 2.0 * chi * cross;
  a.block<3, 3>(3, 0) = 2.0 * chi * cross;
  Eigen::Matrix3cd ww = Eigen::Matrix3cd::Identity() * (-nu * k2 - 4.0 * chi);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) ww(r, c) -= kappa * k[r] * k[c];
  }
  a.block<3, 3>(3, 3) = ww;
  out.entries = a;
  return out;
}

namespace {

struct ModeFactors {
  double u_along, w_along, u_across, w_across, coupling;
};

ModeFactors mode_factors(const FluidParams& p, double k2, double h, int dim) {
  const double a = -(p.mu + p.chi) * k2;
  const double b = -p.nu * k2 - 4.0 * p.chi;
  const double c = 2.0 * p.chi;
  const double half_gap = 0.5 * (a - b);
  const double mid = 0.5 * (a + b);
  const double s2 = c * c * k2;
  const double delta = std::sqrt(half_gap * half_gap + s2);  // > 0 since chi > 0
  const double e_plus = std::exp(h * (mid + delta));
  const double e_minus = std::exp(h * (mid - delta));
  // weights (1 +/- gap/delta)/2, the small one written without cancellation
  double w_plus, w_minus;
  if (half_gap >= 0.0) {
    w_plus = 0.5 * (1.0 + half_gap / delta);
    w_minus = s2 / (2.0 * delta * (delta + half_gap));
  } else {
    w_minus = 0.5 * (1.0 - half_gap / delta);
    w_plus = s2 / (2.0 * delta * (delta - half_gap));
  }
  ModeFactors f{};
  f.u_across = e_plus * w_plus + e_minus * w_minus;
  f.w_across = e_plus * w_minus + e_minus * w_plus;
  f.coupling = c * e_plus * (-std::expm1(-2.0 * h * delta)) / (2.0 * delta);
  f.u_along = std::exp(h * a);
  f.w_along = dim == 3 ? std::exp(h * (b - p.kappa * k2)) : f.w_across;
  return f;
}

}  // namespace

LinearPropagator::LinearPropagator(const Grid& grid, const FluidParams& params, double h)
    : grid_(grid), h_(h) {
  params.validate();
  const auto& t = grid.modes();
  const std::size_t n = grid.mode_count();
  coeffs_.u_along.resize(n);
  coeffs_.w_along.resize(n);
  coeffs_.u_across.resize(n);
  coeffs_.w_across.resize(n);
  coeffs_.coupling.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ModeFactors f = mode_factors(params, t.k2[i], h, grid.dim());
    coeffs_.u_along[i] = f.u_along;
    coeffs_.w_along[i] = f.w_along;
    coeffs_.u_across[i] = f.u_across;
    coeffs_.w_across[i] = f.w_across;
    coeffs_.coupling[i] = f.coupling;
  }
}

void LinearPropagator::apply(SpectralField& u, SpectralField& w) const {
  kernels::StateSpan z{};
  z.dim = grid_.dim();
  for (int a = 0; a < u.components(); ++a) z.u[a] = u.component(a);
  for (int a = 0; a < w.components(); ++a) z.w[a] = w.component(a);
  kernels::parallel::apply_propagator(z, coeffs_, grid_.modes());
}

SpectralField momentum_linear_rhs(const MicropolarState& z, const FluidParams& params) {
  SpectralField out = spectral::laplacian(z.u);
  out *= params.mu + params.chi;
  out.axpy(2.0 * params.chi, spectral::curl(z.w));
  return out;
}

SpectralField momentum_linear_rhs_synchronized(const MicropolarState& z,
                                               const FluidParams& params) {
  SpectralField eps = z.w;
  eps.axpy(-0.5, spectral::curl(z.u));
  SpectralField out = spectral::laplacian(z.u);
  out *= params.mu;
  out.axpy(2.0 * params.chi, spectral::curl(eps));
  return out;
}

Tendency linear_rhs(const MicropolarState& z, const FluidParams& params) {
  SpectralField dw = spectral::laplacian(z.w);
  dw *= params.nu;
  dw.axpy(-4.0 * params.chi, z.w);
  dw.axpy(2.0 * params.chi, spectral::curl(z.u));
  if (z.grid().dim() == 3 && params.kappa != 0.0) {
    dw.axpy(params.kappa, spectral::gradient(spectral::divergence(z.w)));
  }
  return {momentum_linear_rhs(z, params), std::move(dw)};
}

}  // namespace micropolar::dynamics
