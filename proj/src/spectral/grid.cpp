#include "micropolar/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "micropolar/errors.hpp"

namespace micropolar {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::shared_ptr<const ModeTable> build_table(const Grid& g) {
  auto table = std::make_shared<ModeTable>();
  const auto extent = g.spectral_extent();
  const std::size_t count = g.mode_count();
  const int n = g.points_per_axis();
  const double k0 = g.k0();

  for (int a = 0; a < 3; ++a) {
    table->k[a].assign(count, 0.0);
    table->deriv[a].assign(count, 0.0);
    table->m[a].assign(count, 0);
  }
  table->k2.assign(count, 0.0);
  table->weight.assign(count, 0.0);
  table->retained.assign(count, 0);

  const int d = g.dim();
  std::size_t flat = 0;
  for (int i0 = 0; i0 < extent[0]; ++i0) {
    for (int i1 = 0; i1 < extent[1]; ++i1) {
      for (int i2 = 0; i2 < extent[2]; ++i2, ++flat) {
        const std::array<int, 3> idx{i0, i1, i2};
        bool keep = true;
        double k2 = 0.0;
        for (int a = 0; a < d; ++a) {
          const bool last = (a == d - 1);
          const int m = last ? idx[a] : g.wavenumber_index(idx[a]);
          const double k = k0 * m;
          table->m[a][flat] = m;
          table->k[a][flat] = k;
          table->deriv[a][flat] = (std::abs(m) == n / 2) ? 0.0 : k;
          k2 += k * k;
          if (3 * std::abs(m) > n) keep = false;
        }
        const int last_index = idx[d - 1];
        table->k2[flat] = k2;
        table->weight[flat] = (last_index == 0 || last_index == n / 2) ? 1.0 : 2.0;
        table->retained[flat] = keep ? 1 : 0;
      }
    }
  }
  return table;
}

}  // namespace

Grid::Grid(int dim, int points_per_axis, double box_length)
    : dim_(dim), n_(points_per_axis), length_(box_length) {
  if (dim != 2 && dim != 3) {
    throw StructuralError("grid dimension must be 2 or 3, got " + std::to_string(dim));
  }
  if (points_per_axis < 8 || !is_power_of_two(points_per_axis)) {
    throw StructuralError("points_per_axis must be a power of two >= 8, got " +
                          std::to_string(points_per_axis));
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw DomainError("box_length must be positive and finite");
  }
  table_ = build_table(*this);
}

double Grid::k0() const noexcept { return 2.0 * std::numbers::pi / length_; }

std::size_t Grid::physical_size() const noexcept {
  std::size_t s = 1;
  for (int a = 0; a < dim_; ++a) s *= static_cast<std::size_t>(n_);
  return s;
}

std::array<int, 3> Grid::spectral_extent() const noexcept {
  if (dim_ == 2) return {n_, n_ / 2 + 1, 1};
  return {n_, n_, n_ / 2 + 1};
}

std::size_t Grid::mode_count() const noexcept {
  const auto e = spectral_extent();
  return static_cast<std::size_t>(e[0]) * e[1] * e[2];
}

double Grid::volume() const noexcept { return std::pow(length_, dim_); }

std::size_t Grid::flat_index(const std::array<int, 3>& m) const noexcept {
  const auto e = spectral_extent();
  auto wrap = [this](int v) { return v < 0 ? v + n_ : v; };
  if (dim_ == 2) {
    return static_cast<std::size_t>(wrap(m[0])) * e[1] + static_cast<std::size_t>(m[1]);
  }
  return (static_cast<std::size_t>(wrap(m[0])) * e[1] + static_cast<std::size_t>(wrap(m[1]))) *
             e[2] +
         static_cast<std::size_t>(m[2]);
}

}  // namespace micropolar
