#include <array>
#include <cstdint>

#include "kernels_detail.hpp"

namespace micropolar::kernels::parallel {

namespace {

// Fixed chunk count keeps the summation order independent of the thread count.
constexpr std::int64_t kChunks = 64;

template <class Term>
double chunked_sum(std::int64_t n, Term term) {
  std::array<double, kChunks> partial{};
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < kChunks; ++c) {
    const std::int64_t begin = n * c / kChunks;
    const std::int64_t end = n * (c + 1) / kChunks;
    double s = 0.0;
    for (std::int64_t i = begin; i < end; ++i) s += term(static_cast<std::size_t>(i));
    partial[c] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace

double weighted_norm2(std::span<const Complex> c, const ModeTable& t, int order) {
  return chunked_sum(static_cast<std::int64_t>(c.size()), [&](std::size_t i) {
    return t.weight[i] * detail::int_pow(t.k2[i], order) * std::norm(c[i]);
  });
}

double weighted_inner(std::span<const Complex> a, std::span<const Complex> b,
                      const ModeTable& t) {
  return chunked_sum(static_cast<std::int64_t>(a.size()), [&](std::size_t i) {
    return t.weight[i] * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
  });
}

void leray_project(std::array<std::span<Complex>, 3> u, int dim, const ModeTable& t) {
  const auto n = static_cast<std::int64_t>(u[0].size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) detail::project_mode(u, dim, t, static_cast<std::size_t>(i));
}

void multiply_accumulate(std::span<double> out, std::span<const double> a,
                         std::span<const double> b) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

void apply_propagator(StateSpan z, const PropagatorCoeffs& p, const ModeTable& t) {
  const auto n = static_cast<std::int64_t>(z.u[0].size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    detail::propagate_mode(z, p, t, static_cast<std::size_t>(i));
  }
}

}  // namespace micropolar::kernels::parallel
