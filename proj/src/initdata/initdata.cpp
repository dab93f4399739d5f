#include "micropolar/initdata.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "micropolar/errors.hpp"
#include "micropolar/fft.hpp"
#include "micropolar/linear.hpp"
#include "micropolar/spectral_ops.hpp"

namespace micropolar::initdata {

namespace {

/// Standard normal draws from mt19937_64 with a fixed bits-to-double mapping,
/// so sequences do not depend on the standard library's distributions.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double uniform_open() {
    // 53 random bits in (0, 1).
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open()));
    const double theta = 2.0 * std::numbers::pi * uniform_open();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  Complex complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::size_t partner_index(const Grid& g, std::size_t flat) {
  const auto& t = g.modes();
  std::array<int, 3> m{};
  const int d = g.dim();
  for (int a = 0; a < d - 1; ++a) m[a] = -t.m[a][flat];
  m[d - 1] = t.m[d - 1][flat];
  return g.flat_index(m);
}

bool has_nyquist(const Grid& g, std::size_t flat) {
  const int half = g.points_per_axis() / 2;
  for (int a = 0; a < g.dim(); ++a) {
    if (std::abs(g.modes().m[a][flat]) == half) return true;
  }
  return false;
}

bool on_self_conjugate_plane(const Grid& g, std::size_t flat) {
  const int last = g.modes().m[g.dim() - 1][flat];
  return last == 0 || last == g.points_per_axis() / 2;
}

void scale_to_norm(SpectralField& f, double target) {
  const double n = std::sqrt(spectral::seminorm_squared(f, 0));
  if (n > 0.0) f *= target / n;
}

}  // namespace

void SpectrumEnvelope::validate(const Grid& grid) const {
  const double nyquist = grid.k0() * (grid.points_per_axis() / 2);
  if (!(cutoff_kc > 0.0) || cutoff_kc > nyquist) {
    throw DomainError("envelope cutoff must lie in (0, Nyquist wavenumber]");
  }
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw DomainError("envelope amplitude must be finite and nonnegative");
  }
  if (!std::isfinite(exponent_r)) throw DomainError("envelope exponent must be finite");
}

double default_cutoff(const Grid& grid) { return grid.k0() * std::max(1, grid.dealias_cutoff() / 2); }

SpectralField random_field(const Grid& grid, int components, const SpectrumEnvelope& envelope,
                           bool solenoidal) {
  envelope.validate(grid);
  SpectralField out(grid, components);
  if (envelope.amplitude == 0.0) return out;
  const auto& t = grid.modes();
  const int d = grid.dim();
  const double kc2 = envelope.cutoff_kc * envelope.cutoff_kc * (1.0 + 1e-12);
  NormalSource rng(envelope.seed);

  for (std::size_t i = 0; i < grid.mode_count(); ++i) {
    const double k2 = t.k2[i];
    if (k2 == 0.0 || k2 > kc2 || has_nyquist(grid, i)) continue;
    std::size_t partner = i;
    if (on_self_conjugate_plane(grid, i)) {
      partner = partner_index(grid, i);
      if (partner < i) {
        for (int c = 0; c < components; ++c) out.at(c, i) = std::conj(out.at(c, partner));
        continue;
      }
    }
    std::array<Complex, 3> v{};
    for (int c = 0; c < components; ++c) v[c] = rng.complex_normal();
    if (solenoidal) {
      Complex dot = 0.0;
      for (int a = 0; a < d; ++a) dot += t.k[a][i] * v[a];
      for (int a = 0; a < d; ++a) v[a] -= t.k[a][i] * dot / k2;
    }
    double mag2 = 0.0;
    for (int c = 0; c < components; ++c) mag2 += std::norm(v[c]);
    if (!(mag2 > 0.0)) continue;
    const double scale = std::pow(std::sqrt(k2), envelope.exponent_r) / std::sqrt(mag2);
    for (int c = 0; c < components; ++c) out.at(c, i) = scale * v[c];
  }
  scale_to_norm(out, envelope.amplitude);
  return out;
}

MicropolarState random_solenoidal(const Grid& grid, const SpectrumEnvelope& envelope, bool with_w,
                                  double w_amplitude) {
  SpectralField u = random_field(grid, grid.dim(), envelope, true);
  SpectralField w(grid, rotation_components(grid.dim()));
  if (with_w) {
    SpectrumEnvelope we = envelope;
    we.seed = envelope.seed ^ 0x9e3779b97f4a7c15ULL;
    we.amplitude = w_amplitude < 0.0 ? envelope.amplitude : w_amplitude;
    w = random_field(grid, rotation_components(grid.dim()), we, false);
  }
  return MicropolarState(0.0, std::move(u), std::move(w));
}

MicropolarState decay_character_data(const Grid& grid, double alpha, double amplitude,
                                     std::uint64_t seed, double cutoff_kc,
                                     const std::optional<FluidParams>& rescale_for) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("alpha must lie in (0, 1/2)");
  SpectrumEnvelope env;
  env.exponent_r = 2.0 * alpha - 0.5 * grid.dim();
  env.cutoff_kc = cutoff_kc > 0.0 ? cutoff_kc : default_cutoff(grid);
  env.amplitude = amplitude;
  env.seed = seed;
  MicropolarState z = random_solenoidal(grid, env, false);
  if (rescale_for && grid.dim() == 3) {
    const double value = std::sqrt(state_norm(z) * state_seminorm(z, 1));
    const double target = 0.9 * 3.182 * rescale_for->gamma();
    if (value > target) z.u *= target / value;
  }
  return z;
}

MicropolarState taylor_green(const Grid& grid, double amplitude) {
  if (grid.dim() != 2) throw StructuralError("taylor_green is a 2D field");
  const int n = grid.points_per_axis();
  const double h = grid.box_length() / n;
  const double k0 = grid.k0();
  PhysicalField phys(grid, 2);
  auto u1 = phys.component(0);
  auto u2 = phys.component(1);
  for (int i = 0; i < n; ++i) {
    const double x = k0 * h * i;
    for (int j = 0; j < n; ++j) {
      const double y = k0 * h * j;
      const std::size_t p = static_cast<std::size_t>(i) * n + j;
      u1[p] = amplitude * std::sin(x) * std::cos(y);
      u2[p] = -amplitude * std::cos(x) * std::sin(y);
    }
  }
  SpectralField u = Transform::for_grid(grid)->forward(phys);
  return MicropolarState(0.0, std::move(u), SpectralField(grid, 1));
}

Eigen::MatrixXcd oracle_mode_propagator(const FluidParams& params, const std::array<double, 3>& k,
                                        int dim, double t) {
  const Eigen::MatrixXcd a = dynamics::linear_mode_matrix(params, k, dim).entries * t;
  return a.exp();
}

MicropolarState linear_oracle_evolve(const MicropolarState& z0, const FluidParams& params,
                                     double t) {
  if (!(t >= 0.0)) throw DomainError("oracle time must be nonnegative");
  const Grid& grid = z0.grid();
  const int d = grid.dim();
  const int wc = rotation_components(d);
  const auto& tab = grid.modes();
  MicropolarState out = z0;
  out.time = z0.time + t;
  Eigen::VectorXcd v(d + wc);
  for (std::size_t i = 0; i < grid.mode_count(); ++i) {
    const std::array<double, 3> k{tab.k[0][i], tab.k[1][i], tab.k[2][i]};
    const Eigen::MatrixXcd e = oracle_mode_propagator(params, k, d, t);
    for (int a = 0; a < d; ++a) v(a) = z0.u.at(a, i);
    for (int c = 0; c < wc; ++c) v(d + c) = z0.w.at(c, i);
    const Eigen::VectorXcd r = e * v;
    for (int a = 0; a < d; ++a) out.u.at(a, i) = r(a);
    for (int c = 0; c < wc; ++c) out.w.at(c, i) = r(d + c);
  }
  return out;
}

}  // namespace micropolar::initdata
