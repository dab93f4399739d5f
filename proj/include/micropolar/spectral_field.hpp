#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "micropolar/grid.hpp"

namespace micropolar {

using Complex = std::complex<double>;

/// Real scalar or vector field on a periodic Grid, held as Fourier coefficients.
///
/// Coefficients are normalized so that f(x) = sum_k c_k exp(i k.x); Parseval then
/// reads  integral_{[0,L)^n} |f|^2 dx = L^n sum_k |c_k|^2  over the full spectrum.
/// Storage is component-major over the half-spectrum layout of Grid.
class SpectralField {
 public:
  SpectralField(Grid grid, int components);
  SpectralField(Grid grid, int components, std::vector<Complex> coeffs);

  const Grid& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  std::size_t mode_count() const noexcept { return grid_.mode_count(); }

  std::span<Complex> component(int c) noexcept {
    return {coeffs_.data() + static_cast<std::size_t>(c) * mode_count(), mode_count()};
  }
  std::span<const Complex> component(int c) const noexcept {
    return {coeffs_.data() + static_cast<std::size_t>(c) * mode_count(), mode_count()};
  }

  std::span<Complex> coeffs() noexcept { return coeffs_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  Complex& at(int c, std::size_t mode) noexcept { return coeffs_[c * mode_count() + mode]; }
  const Complex& at(int c, std::size_t mode) const noexcept {
    return coeffs_[c * mode_count() + mode];
  }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s) noexcept;
  /// this += s * other
  SpectralField& axpy(double s, const SpectralField& other);

  /// True when every coefficient is finite.
  bool all_finite() const noexcept;

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  void require_compatible(const SpectralField& other) const;

  Grid grid_;
  int components_;
  std::vector<Complex> coeffs_;
};

/// Real field sampled on the grid points, component-major, x_0 slowest.
struct PhysicalField {
  Grid grid;
  int components;
  std::vector<double> values;

  PhysicalField(Grid g, int comps)
      : grid(std::move(g)), components(comps), values(grid.physical_size() * comps, 0.0) {}

  std::span<double> component(int c) noexcept {
    return {values.data() + c * grid.physical_size(), grid.physical_size()};
  }
  std::span<const double> component(int c) const noexcept {
    return {values.data() + c * grid.physical_size(), grid.physical_size()};
  }
};

}  // namespace micropolar
