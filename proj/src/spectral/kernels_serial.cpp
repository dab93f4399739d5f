#include "kernels_detail.hpp"

namespace micropolar::kernels::serial {

double weighted_norm2(std::span<const Complex> c, const ModeTable& t, int order) {
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    sum += t.weight[i] * detail::int_pow(t.k2[i], order) * std::norm(c[i]);
  }
  return sum;
}

double weighted_inner(std::span<const Complex> a, std::span<const Complex> b,
                      const ModeTable& t) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += t.weight[i] * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
  }
  return sum;
}

void leray_project(std::array<std::span<Complex>, 3> u, int dim, const ModeTable& t) {
  const std::size_t n = u[0].size();
  for (std::size_t i = 0; i < n; ++i) detail::project_mode(u, dim, t, i);
}

void multiply_accumulate(std::span<double> out, std::span<const double> a,
                         std::span<const double> b) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a[i] * b[i];
}

void apply_propagator(StateSpan z, const PropagatorCoeffs& p, const ModeTable& t) {
  const std::size_t n = z.u[0].size();
  for (std::size_t i = 0; i < n; ++i) detail::propagate_mode(z, p, t, i);
}

}  // namespace micropolar::kernels::serial
