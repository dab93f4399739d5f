#include "micropolar/spectral_field.hpp"

#include <cmath>
#include <string>

#include "micropolar/errors.hpp"

namespace micropolar {

SpectralField::SpectralField(Grid grid, int components)
    : grid_(std::move(grid)), components_(components) {
  if (components < 1 || components > 3) {
    throw StructuralError("field component count must be 1, 2 or 3");
  }
  coeffs_.assign(static_cast<std::size_t>(components) * grid_.mode_count(), Complex{});
}

SpectralField::SpectralField(Grid grid, int components, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), components_(components), coeffs_(std::move(coeffs)) {
  if (components < 1 || components > 3) {
    throw StructuralError("field component count must be 1, 2 or 3");
  }
  if (coeffs_.size() != static_cast<std::size_t>(components) * grid_.mode_count()) {
    throw StructuralError("coefficient count " + std::to_string(coeffs_.size()) +
                          " does not match grid layout");
  }
}

void SpectralField::require_compatible(const SpectralField& other) const {
  if (!(grid_ == other.grid_) || components_ != other.components_) {
    throw StructuralError("fields live on different grids or have different component counts");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) noexcept {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
  return *this;
}

bool SpectralField::all_finite() const noexcept {
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

}  // namespace micropolar
