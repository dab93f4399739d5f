#pragma once

#include <memory>

#include "micropolar/spectral_field.hpp"

namespace micropolar {

/// FFTW-backed real transforms for one Grid.
///
/// Plans are built once per grid with FFTW_ESTIMATE (deterministic algorithm
/// choice) and shared; execution uses per-call scratch so a Transform can be
/// used from several threads at once.
class Transform {
 public:
  /// Shared transform for `grid`; planning is serialized internally.
  static std::shared_ptr<const Transform> for_grid(const Grid& grid);

  ~Transform();
  Transform(const Transform&) = delete;
  Transform& operator=(const Transform&) = delete;

  const Grid& grid() const noexcept { return grid_; }

  /// Physical samples -> normalized coefficients (divides by N^dim).
  SpectralField forward(const PhysicalField& f) const;
  /// Coefficients -> physical samples.
  PhysicalField inverse(const SpectralField& f) const;

  /// Single-component versions writing into caller storage.
  void forward(std::span<const double> in, std::span<Complex> out) const;
  void inverse(std::span<const Complex> in, std::span<double> out) const;

 private:
  explicit Transform(const Grid& grid);

  Grid grid_;
  void* r2c_ = nullptr;
  void* c2r_ = nullptr;
};

}  // namespace micropolar
