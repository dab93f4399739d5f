#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace micropolar {

/// Per-mode lookup tables for the half-spectrum layout of a Grid.
///
/// Modes are stored in FFTW r2c order: every axis but the last runs over the
/// full index range [0, N), the last over [0, N/2]. Index i maps to the integer
/// wavenumber m = i for i <= N/2 and m = i - N otherwise.
struct ModeTable {
  std::array<std::vector<double>, 3> k;      ///< physical wavenumber per axis
  std::array<std::vector<double>, 3> deriv;  ///< derivative multiplier (k with Nyquist zeroed)
  std::array<std::vector<int>, 3> m;         ///< integer wavenumber per axis
  std::vector<double> k2;                    ///< |k|^2
  std::vector<double> weight;                ///< 1 on self-conjugate planes, 2 elsewhere
  std::vector<std::uint8_t> retained;        ///< 1 if every |m_i| <= N/3
};

/// Periodic box [0, L)^dim sampled with N points per axis.
class Grid {
 public:
  Grid(int dim, int points_per_axis, double box_length);

  int dim() const noexcept { return dim_; }
  int points_per_axis() const noexcept { return n_; }
  double box_length() const noexcept { return length_; }

  /// Fundamental wavenumber 2*pi/L.
  double k0() const noexcept;
  /// Number of physical grid points, N^dim.
  std::size_t physical_size() const noexcept;
  /// Number of stored spectral modes (half spectrum).
  std::size_t mode_count() const noexcept;
  /// Spectral array extents, last axis halved.
  std::array<int, 3> spectral_extent() const noexcept;
  /// Volume L^dim.
  double volume() const noexcept;
  /// Largest integer wavenumber kept by the 2/3 rule.
  int dealias_cutoff() const noexcept { return n_ / 3; }

  /// Integer wavenumber for storage index i along a full axis.
  int wavenumber_index(int i) const noexcept { return i <= n_ / 2 ? i : i - n_; }

  /// Flat index of the stored mode holding integer wavenumbers m (last axis m >= 0).
  std::size_t flat_index(const std::array<int, 3>& m) const noexcept;

  const ModeTable& modes() const noexcept { return *table_; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  int dim_;
  int n_;
  double length_;
  std::shared_ptr<const ModeTable> table_;
};

}  // namespace micropolar
