#pragma once

#include <cstddef>

#include "micropolar/kernels.hpp"

namespace micropolar::kernels::detail {

inline double int_pow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

inline void project_mode(std::array<std::span<Complex>, 3>& u, int dim, const ModeTable& t,
                         std::size_t i) {
  const double k2 = t.k2[i];
  if (k2 == 0.0) return;
  Complex kdotu{};
  for (int a = 0; a < dim; ++a) kdotu += t.k[a][i] * u[a][i];
  const Complex s = kdotu / k2;
  for (int a = 0; a < dim; ++a) u[a][i] -= t.k[a][i] * s;
}

inline void propagate_mode(StateSpan& z, const PropagatorCoeffs& p, const ModeTable& t,
                           std::size_t i) {
  constexpr Complex I{0.0, 1.0};
  const double k1 = t.k[0][i];
  const double k2v = t.k[1][i];
  const double kk = t.k2[i];
  if (z.dim == 2) {
    const Complex u1 = z.u[0][i];
    const Complex u2 = z.u[1][i];
    const Complex w = z.w[0][i];
    Complex along1{}, along2{};
    if (kk > 0.0) {
      const Complex s = (k1 * u1 + k2v * u2) / kk;
      along1 = k1 * s;
      along2 = k2v * s;
    }
    const Complex curl_w1 = I * (k2v * w);
    const Complex curl_w2 = -I * (k1 * w);
    const Complex curl_u = I * (k1 * u2 - k2v * u1);
    z.u[0][i] = p.u_along[i] * along1 + p.u_across[i] * (u1 - along1) + p.coupling[i] * curl_w1;
    z.u[1][i] = p.u_along[i] * along2 + p.u_across[i] * (u2 - along2) + p.coupling[i] * curl_w2;
    z.w[0][i] = p.w_across[i] * w + p.coupling[i] * curl_u;
    return;
  }
  const double k3 = t.k[2][i];
  const Complex u[3] = {z.u[0][i], z.u[1][i], z.u[2][i]};
  const Complex w[3] = {z.w[0][i], z.w[1][i], z.w[2][i]};
  Complex ua[3] = {}, wa[3] = {};
  if (kk > 0.0) {
    const Complex su = (k1 * u[0] + k2v * u[1] + k3 * u[2]) / kk;
    const Complex sw = (k1 * w[0] + k2v * w[1] + k3 * w[2]) / kk;
    const double kv[3] = {k1, k2v, k3};
    for (int a = 0; a < 3; ++a) {
      ua[a] = kv[a] * su;
      wa[a] = kv[a] * sw;
    }
  }
  const Complex cu[3] = {I * (k2v * u[2] - k3 * u[1]), I * (k3 * u[0] - k1 * u[2]),
                         I * (k1 * u[1] - k2v * u[0])};
  const Complex cw[3] = {I * (k2v * w[2] - k3 * w[1]), I * (k3 * w[0] - k1 * w[2]),
                         I * (k1 * w[1] - k2v * w[0])};
  for (int a = 0; a < 3; ++a) {
    z.u[a][i] = p.u_along[i] * ua[a] + p.u_across[i] * (u[a] - ua[a]) + p.coupling[i] * cw[a];
    z.w[a][i] = p.w_along[i] * wa[a] + p.w_across[i] * (w[a] - wa[a]) + p.coupling[i] * cu[a];
  }
}

}  // namespace micropolar::kernels::detail
