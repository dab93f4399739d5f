#include "micropolar/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "micropolar/errors.hpp"
#include "micropolar/kernels.hpp"

namespace micropolar::spectral {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_vector(const SpectralField& f, const char* op) {
  if (f.components() != f.grid().dim()) {
    throw StructuralError(std::string(op) + " needs a vector field with " +
                          std::to_string(f.grid().dim()) + " components, got " +
                          std::to_string(f.components()));
  }
}

// Flat index of the mode -k for a stored mode on a self-conjugate plane.
std::size_t conjugate_partner(const Grid& g, std::size_t flat) {
  const auto& t = g.modes();
  std::array<int, 3> m{};
  const int d = g.dim();
  for (int a = 0; a < d - 1; ++a) m[a] = -t.m[a][flat];
  m[d - 1] = t.m[d - 1][flat];
  return g.flat_index(m);
}

bool on_self_conjugate_plane(const Grid& g, std::size_t flat) {
  const int last = g.modes().m[g.dim() - 1][flat];
  return last == 0 || last == g.points_per_axis() / 2;
}

}  // namespace

SpectralField leray_project(const SpectralField& field) {
  require_vector(field, "leray_project");
  SpectralField out = field;
  std::array<std::span<Complex>, 3> u{};
  for (int a = 0; a < out.components(); ++a) u[a] = out.component(a);
  kernels::parallel::leray_project(u, field.grid().dim(), field.grid().modes());
  return out;
}

SpectralField divergence(const SpectralField& field) {
  require_vector(field, "divergence");
  const auto& t = field.grid().modes();
  SpectralField out(field.grid(), 1);
  auto o = out.component(0);
  for (int a = 0; a < field.components(); ++a) {
    auto c = field.component(a);
    const auto& d = t.deriv[a];
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += kI * (d[i] * c[i]);
  }
  return out;
}

SpectralField curl(const SpectralField& field) {
  const Grid& g = field.grid();
  const auto& t = g.modes();
  const std::size_t n = g.mode_count();
  if (g.dim() == 2) {
    const auto& d1 = t.deriv[0];
    const auto& d2 = t.deriv[1];
    if (field.components() == 1) {
      SpectralField out(g, 2);
      auto w = field.component(0);
      auto o1 = out.component(0);
      auto o2 = out.component(1);
      for (std::size_t i = 0; i < n; ++i) {
        o1[i] = kI * (d2[i] * w[i]);
        o2[i] = -kI * (d1[i] * w[i]);
      }
      return out;
    }
    if (field.components() == 2) {
      SpectralField out(g, 1);
      auto u1 = field.component(0);
      auto u2 = field.component(1);
      auto o = out.component(0);
      for (std::size_t i = 0; i < n; ++i) o[i] = kI * (d1[i] * u2[i] - d2[i] * u1[i]);
      return out;
    }
    throw StructuralError("2D curl expects a scalar or a 2-component field");
  }
  if (field.components() != 3) {
    throw StructuralError("3D curl expects a 3-component field, got " +
                          std::to_string(field.components()));
  }
  SpectralField out(g, 3);
  const auto& d1 = t.deriv[0];
  const auto& d2 = t.deriv[1];
  const auto& d3 = t.deriv[2];
  auto u1 = field.component(0);
  auto u2 = field.component(1);
  auto u3 = field.component(2);
  auto o1 = out.component(0);
  auto o2 = out.component(1);
  auto o3 = out.component(2);
  for (std::size_t i = 0; i < n; ++i) {
    o1[i] = kI * (d2[i] * u3[i] - d3[i] * u2[i]);
    o2[i] = kI * (d3[i] * u1[i] - d1[i] * u3[i]);
    o3[i] = kI * (d1[i] * u2[i] - d2[i] * u1[i]);
  }
  return out;
}

SpectralField derivative(const SpectralField& field, int axis) {
  if (axis < 0 || axis >= field.grid().dim()) throw StructuralError("derivative axis out of range");
  const auto& d = field.grid().modes().deriv[axis];
  SpectralField out = field;
  for (int c = 0; c < out.components(); ++c) {
    auto o = out.component(c);
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = kI * (d[i] * o[i]);
  }
  return out;
}

SpectralField gradient(const SpectralField& scalar) {
  if (scalar.components() != 1) throw StructuralError("gradient expects a scalar field");
  const Grid& g = scalar.grid();
  SpectralField out(g, g.dim());
  auto s = scalar.component(0);
  for (int a = 0; a < g.dim(); ++a) {
    const auto& d = g.modes().deriv[a];
    auto o = out.component(a);
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = kI * (d[i] * s[i]);
  }
  return out;
}

SpectralField laplacian(const SpectralField& field) {
  const auto& k2 = field.grid().modes().k2;
  SpectralField out = field;
  for (int c = 0; c < out.components(); ++c) {
    auto o = out.component(c);
    for (std::size_t i = 0; i < o.size(); ++i) o[i] *= -k2[i];
  }
  return out;
}

double seminorm_squared(const SpectralField& field, int m) {
  if (m < 0) throw DomainError("seminorm order must be nonnegative");
  double sum = 0.0;
  for (int c = 0; c < field.components(); ++c) {
    sum += kernels::parallel::weighted_norm2(field.component(c), field.grid().modes(), m);
  }
  return field.grid().volume() * sum;
}

SobolevSeminorm sobolev_seminorm(const SpectralField& field, int m) {
  if (m < 0 || m > field.grid().points_per_axis() / 3) {
    throw DomainError("seminorm order " + std::to_string(m) + " outside [0, N/3]");
  }
  return {m, std::sqrt(seminorm_squared(field, m))};
}

double inner_product(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid()) || f.components() != g.components()) {
    throw StructuralError("inner product of incompatible fields");
  }
  double sum = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    sum += kernels::parallel::weighted_inner(f.component(c), g.component(c), f.grid().modes());
  }
  return f.grid().volume() * sum;
}

void dealias_in_place(SpectralField& field) {
  const auto& keep = field.grid().modes().retained;
  for (int c = 0; c < field.components(); ++c) {
    auto o = field.component(c);
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (!keep[i]) o[i] = Complex{};
    }
  }
}

SpectralField dealias(const SpectralField& field) {
  SpectralField out = field;
  dealias_in_place(out);
  return out;
}

void remove_mean_and_nyquist(SpectralField& field) {
  const Grid& g = field.grid();
  const auto& t = g.modes();
  const int half = g.points_per_axis() / 2;
  for (int c = 0; c < field.components(); ++c) {
    auto o = field.component(c);
    o[0] = Complex{};
    for (std::size_t i = 0; i < o.size(); ++i) {
      for (int a = 0; a < g.dim(); ++a) {
        if (std::abs(t.m[a][i]) == half) {
          o[i] = Complex{};
          break;
        }
      }
    }
  }
}

double hermitian_defect(const SpectralField& field) {
  const Grid& g = field.grid();
  double worst = 0.0;
  for (int c = 0; c < field.components(); ++c) {
    auto o = field.component(c);
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (!on_self_conjugate_plane(g, i)) continue;
      const std::size_t j = conjugate_partner(g, i);
      worst = std::max(worst, std::abs(o[i] - std::conj(o[j])));
    }
  }
  return worst;
}

void enforce_hermitian(SpectralField& field) {
  const Grid& g = field.grid();
  for (int c = 0; c < field.components(); ++c) {
    auto o = field.component(c);
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (!on_self_conjugate_plane(g, i)) continue;
      const std::size_t j = conjugate_partner(g, i);
      if (j < i) continue;
      const Complex avg = 0.5 * (o[i] + std::conj(o[j]));
      o[i] = avg;
      o[j] = std::conj(avg);
    }
  }
}

}  // namespace micropolar::spectral
