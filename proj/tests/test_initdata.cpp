#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "micropolar/diagnostics.hpp"
#include "micropolar/epsilon.hpp"
#include "micropolar/errors.hpp"

using namespace micropolar;
using namespace micropolar::initdata;
using testing::kTwoPi;

namespace {

FluidParams params(double mu, double nu, double chi, double kappa = 0.0) {
  FluidParams p;
  p.mu = mu;
  p.nu = nu;
  p.chi = chi;
  p.kappa = kappa;
  return p;
}

double state_diff(const MicropolarState& a, const MicropolarState& b) {
  return std::sqrt(spectral::seminorm_squared(a.u - b.u, 0) + spectral::seminorm_squared(a.w - b.w, 0));
}

SpectrumEnvelope envelope(double r, double kc, double amplitude, std::uint64_t seed) {
  SpectrumEnvelope e;
  e.exponent_r = r;
  e.cutoff_kc = kc;
  e.amplitude = amplitude;
  e.seed = seed;
  return e;
}

/// ||exp(mu Lap t) u|| from the coefficients.
double heat_norm(const SpectralField& u, double mu, double t) {
  const auto& m = u.grid().modes();
  double s = 0.0;
  for (int c = 0; c < u.components(); ++c) {
    for (std::size_t i = 0; i < u.mode_count(); ++i) {
      s += m.weight[i] * std::norm(u.at(c, i)) * std::exp(-2.0 * mu * m.k2[i] * t);
    }
  }
  return std::sqrt(s * u.grid().volume());
}

}  // namespace

TEST_CASE("envelope validation") {
  const Grid g(2, 32, kTwoPi);
  CHECK_NOTHROW(envelope(0, 16, 1, 0).validate(g));
  CHECK_THROWS_AS(envelope(0, 0, 1, 0).validate(g), DomainError);
  CHECK_THROWS_AS(envelope(0, 17, 1, 0).validate(g), DomainError);
  CHECK_THROWS_AS(envelope(0, 4, -1, 0).validate(g), DomainError);
  CHECK_THROWS_AS(envelope(NAN, 4, 1, 0).validate(g), DomainError);
  CHECK(default_cutoff(g) == doctest::Approx(5.0));
}

TEST_CASE("random fields are real, mean free and normalized") {
  for (int dim : {2, 3}) {
    const Grid g(dim, 16, 3.0);
    const SpectralField f = random_field(g, dim, envelope(-0.5, 8.0, 2.5, 9), true);
    CHECK(testing::norm(f) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(spectral::hermitian_defect(f) == 0.0);
    CHECK(testing::rel_diff(spectral::leray_project(f), f) < 1e-15);
    for (int c = 0; c < dim; ++c) CHECK(f.at(c, 0) == Complex(0.0));
    // Nothing above the cutoff.
    const auto& m = g.modes();
    double above = 0.0;
    for (std::size_t i = 0; i < g.mode_count(); ++i) {
      if (std::sqrt(m.k2[i]) > 8.0 * (1 + 1e-12)) above += std::abs(f.at(0, i));
    }
    CHECK(above == 0.0);
  }
}

TEST_CASE("envelope modulus follows the power law") {
  const Grid g(2, 64, kTwoPi);
  const SpectralField f = random_field(g, 1, envelope(0.7, 10.0, 1.0, 4), false);
  const auto& m = g.modes();
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 1; i < g.mode_count(); ++i) {
    const double k = std::sqrt(m.k2[i]);
    if (k > 10.0 || std::abs(m.m[0][i]) == 32) continue;
    const double ratio = std::abs(f.at(0, i)) / std::pow(k, 0.7);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(hi / lo == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random solenoidal data examples") {
  const Grid g(2, 32, kTwoPi);
  SUBCASE("zero amplitude") {
    const auto z = random_solenoidal(g, envelope(0, 4, 0.0, 1), true);
    CHECK(state_norm(z) == 0.0);
  }
  SUBCASE("without micro-rotation") {
    const auto z = random_solenoidal(g, envelope(0, 4, 1.0, 1), false);
    CHECK(testing::norm(z.w) == 0.0);
    CHECK(testing::norm(z.u) == doctest::Approx(1.0));
  }
  SUBCASE("separate micro-rotation amplitude") {
    const auto z = random_solenoidal(g, envelope(0, 4, 1.0, 1), true, 0.25);
    CHECK(testing::norm(z.w) == doctest::Approx(0.25));
  }
  SUBCASE("projection changes nothing") {
    const auto z = random_solenoidal(g, envelope(-1, 6, 1.0, 2), true);
    CHECK(testing::rel_diff(spectral::leray_project(z.u), z.u) < 1e-15);
  }
  SUBCASE("linear in the amplitude") {
    const auto a = random_solenoidal(g, envelope(0, 4, 1.0, 3), true);
    const auto b = random_solenoidal(g, envelope(0, 4, 3.0, 3), true);
    CHECK(testing::rel_diff(3.0 * a.u, b.u) < 1e-15);
    CHECK(testing::rel_diff(3.0 * a.w, b.w) < 1e-15);
  }
  SUBCASE("seeded and deterministic") {
    const auto a = random_solenoidal(g, envelope(0, 4, 1.0, 3), true);
    const auto b = random_solenoidal(g, envelope(0, 4, 1.0, 3), true);
    const auto c = random_solenoidal(g, envelope(0, 4, 1.0, 4), true);
    CHECK(testing::max_abs_diff(a.u, b.u) == 0.0);
    CHECK(testing::max_abs_diff(a.w, b.w) == 0.0);
    CHECK(testing::rel_diff(a.u, c.u) > 0.1);
    CHECK(testing::rel_diff(a.w, c.w) > 0.1);
  }
}

TEST_CASE("decay character data") {
  const Grid g(2, 64, 16.0 * std::numbers::pi);
  SUBCASE("alpha range") {
    CHECK_THROWS_AS(decay_character_data(g, 0.0, 1.0, 1), DomainError);
    CHECK_THROWS_AS(decay_character_data(g, 0.5, 1.0, 1), DomainError);
    CHECK_THROWS_AS(decay_character_data(g, -0.1, 1.0, 1), DomainError);
  }
  SUBCASE("layout") {
    const auto z = decay_character_data(g, 0.25, 2.0, 5);
    CHECK(testing::norm(z.u) == doctest::Approx(2.0));
    CHECK(testing::norm(z.w) == 0.0);
    CHECK(testing::norm(spectral::divergence(z.u)) < 1e-14);
    const auto again = decay_character_data(g, 0.25, 2.0, 5);
    CHECK(testing::max_abs_diff(z.u, again.u) == 0.0);
  }
  SUBCASE("3D data is shrunk into the small-data regime") {
    const Grid g3(3, 16, 4.0 * std::numbers::pi);
    const FluidParams p = params(0.05, 0.05, 1.0);
    const auto z = decay_character_data(g3, 0.25, 10.0, 2, 0.0, p);
    const double h1 = std::sqrt(state_norm(z) * state_seminorm(z, 1));
    CHECK(h1 <= 0.9 * 3.182 * 0.05 * (1 + 1e-12));
    const auto big = decay_character_data(g3, 0.25, 10.0, 2);
    CHECK(testing::norm(big.u) == doctest::Approx(10.0));
  }
}

TEST_CASE("decay character data decays at the prescribed rate under the heat semigroup") {
  const double mu = 1.0;
  for (int dim : {2, 3}) {
    const Grid g(dim, dim == 2 ? 256 : 64, dim == 2 ? 128.0 * std::numbers::pi : 32.0 * std::numbers::pi);
    const double kc = dim == 2 ? 1.0 : 1.5;
    for (double alpha : {0.15, 0.25, 0.4}) {
      const auto z = decay_character_data(g, alpha, 1.0, 13, kc);
      const double t_a = 2.0 / (mu * kc * kc);
      const double t_b = 0.1 * g.box_length() * g.box_length() / (4.0 * std::numbers::pi * std::numbers::pi * mu);
      std::vector<double> t, v;
      double lo = INFINITY, hi = 0.0;
      for (int i = 0; i <= 60; ++i) {
        const double s = t_a * std::pow(t_b / t_a, i / 60.0);
        t.push_back(s);
        v.push_back(heat_norm(z.u, mu, s));
        const double scaled = v.back() * std::pow(1.0 + s, alpha);
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
      }
      const auto fit = diagnostics::fit_power_law(t, v, t_a, t_b);
      INFO("dim " << dim << " alpha " << alpha);
      CHECK(fit.slope == doctest::Approx(-alpha).epsilon(0.05 / alpha));
      CHECK(hi / lo <= 4.0);
    }
  }
}

TEST_CASE("Taylor-Green vortex") {
  const Grid g(2, 32, kTwoPi);
  const auto z = taylor_green(g, 1.0);
  CHECK(testing::norm(spectral::divergence(z.u)) < 1e-14);
  CHECK(testing::norm(z.u) == doctest::Approx(kTwoPi / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(testing::norm(z.u) == doctest::Approx(4.442883).epsilon(1e-6));
  const SpectralField curl = testing::sample(g, 1, [](auto x, int) { return 2.0 * std::sin(x[0]) * std::sin(x[1]); });
  CHECK(testing::max_abs_diff(spectral::curl(z.u), curl) < 1e-14);
  CHECK(testing::norm(z.w) == 0.0);
  const auto z2 = taylor_green(g, 2.0);
  CHECK(testing::norm(z2.u) == doctest::Approx(2.0 * testing::norm(z.u)));
  const auto big = taylor_green(Grid(2, 32, 2.0 * kTwoPi), 1.0);
  CHECK(testing::norm(big.u) == doctest::Approx(2.0 * testing::norm(z.u)));
  CHECK_THROWS_AS(taylor_green(Grid(3, 8, kTwoPi), 1.0), StructuralError);
}

TEST_CASE("linear oracle examples") {
  const Grid g(2, 16, kTwoPi);
  SUBCASE("zero time is the identity") {
    const auto z = testing::random_state(g, 3);
    CHECK(state_diff(linear_oracle_evolve(z, params(0.2, 0.3, 0.4), 0.0), z) == 0.0);
    CHECK((oracle_mode_propagator(params(1, 1, 1), {1, 2, 0}, 2, 0.0) - Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);
    CHECK_THROWS_AS(linear_oracle_evolve(z, params(1, 1, 1), -1.0), DomainError);
  }
  SUBCASE("decoupled heat mode") {
    const auto e = oracle_mode_propagator(params(0.3, 0.5, 0.0), {1.0, 2.0, 0.0}, 2, 1.7);
    CHECK(e(0, 0).real() == doctest::Approx(std::exp(-0.3 * 5.0 * 1.7)).epsilon(1e-13));
    CHECK(e(2, 2).real() == doctest::Approx(std::exp(-0.5 * 5.0 * 1.7)).epsilon(1e-13));
    CHECK(std::abs(e(0, 2)) == 0.0);
  }
  SUBCASE("eps decays faster than w for equal viscosities") {
    const FluidParams p = params(0.2, 0.2, 0.5);
    SpectralField w(g, 1);
    w.at(0, g.flat_index({1, 2, 0})) = 1.0;
    const MicropolarState z0(0.0, SpectralField(g, 2), w);
    double prev_ratio = INFINITY;
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
      const auto z = linear_oracle_evolve(z0, p, t);
      const double ratio = testing::norm(diagnostics::epsilon_field(z)) / testing::norm(z.w);
      CHECK(ratio < prev_ratio);
      prev_ratio = ratio;
    }
  }
  SUBCASE("semigroup property") {
    for (int dim : {2, 3}) {
      const Grid gd(dim, dim == 2 ? 16 : 8, 3.0);
      const FluidParams p = params(0.1, 0.4, 0.7, dim == 3 ? 0.2 : 0.0);
      const auto z = testing::random_state(gd, 5);
      const auto once = linear_oracle_evolve(z, p, 0.9);
      const auto twice = linear_oracle_evolve(linear_oracle_evolve(z, p, 0.4), p, 0.5);
      CHECK(state_diff(once, twice) < 1e-12 * state_norm(z));
      CHECK(once.time == doctest::Approx(0.9));
    }
  }
}

TEST_CASE("generated states satisfy the state invariants") {
  for (int dim : {2, 3}) {
    const Grid g(dim, 16, kTwoPi);
    const auto a = random_solenoidal(g, envelope(0, 4, 1.0, 8), true);
    const auto b = decay_character_data(g, 0.3, 1.0, 8);
    for (const auto* z : {&a, &b}) {
      CHECK(testing::norm(spectral::divergence(z->u)) <= 1e-12 * std::sqrt(spectral::seminorm_squared(z->u, 1)));
      CHECK(spectral::hermitian_defect(z->u) == 0.0);
      CHECK(spectral::hermitian_defect(z->w) == 0.0);
      CHECK(z->time == 0.0);
    }
  }
}
