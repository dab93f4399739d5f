#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "micropolar/fft.hpp"
#include "micropolar/fluid.hpp"
#include "micropolar/initdata.hpp"
#include "micropolar/integrator.hpp"
#include "micropolar/spectral_ops.hpp"

namespace testing {

using namespace micropolar;

inline constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

/// Random real field with smooth spectrum on `grid`, mean and Nyquist free.
inline SpectralField random_field(const Grid& grid, int comps, std::uint64_t seed,
                                  bool solenoidal = false, double r = -1.0) {
  initdata::SpectrumEnvelope env;
  env.exponent_r = r;
  env.cutoff_kc = grid.k0() * grid.dealias_cutoff();
  env.amplitude = 1.0;
  env.seed = seed;
  return initdata::random_field(grid, comps, env, solenoidal);
}

/// Random normalized state (solenoidal u, general w).
inline MicropolarState random_state(const Grid& grid, std::uint64_t seed, double amp = 1.0) {
  SpectralField u = random_field(grid, grid.dim(), seed, true);
  SpectralField w = random_field(grid, rotation_components(grid.dim()), seed + 1000);
  u *= amp;
  w *= amp;
  MicropolarState z(0.0, std::move(u), std::move(w));
  dynamics::normalize_state(z, true);
  return z;
}

inline double norm(const SpectralField& f) { return std::sqrt(spectral::seminorm_squared(f, 0)); }

inline double rel_diff(const SpectralField& a, const SpectralField& b) {
  SpectralField d = a;
  d -= b;
  const double s = std::max(norm(a), norm(b));
  return s > 0.0 ? norm(d) / s : norm(d);
}

/// Largest |a - b| over all coefficients.
inline double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  }
  return m;
}

/// Spectral field sampled from a function of physical coordinates.
template <typename F>
SpectralField sample(const Grid& grid, int comps, F&& f) {
  PhysicalField p(grid, comps);
  const int n = grid.points_per_axis();
  const double h = grid.box_length() / n;
  const std::size_t total = grid.physical_size();
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::array<double, 3> x{};
    std::size_t rest = idx;
    for (int a = grid.dim() - 1; a >= 0; --a) {
      x[a] = h * static_cast<double>(rest % n);
      rest /= n;
    }
    for (int c = 0; c < comps; ++c) p.component(c)[idx] = f(x, c);
  }
  return Transform::for_grid(grid)->forward(p);
}

}  // namespace testing
