#pragma once

#include <filesystem>
#include <iosfwd>

#include "micropolar/spectral_field.hpp"

namespace micropolar {

/// Binary field format, little-endian host layout:
///
///   offset  type       content
///   0       char[4]    "MPSF"
///   4       uint32     format version (1)
///   8       int32      dim
///   12      int32      points per axis N
///   16      float64    box length L
///   24      int32      components
///   28      int32      reserved (0)
///   32      complex128 coefficients, component-major, each component in the
///                      half-spectrum row-major order of Grid (last axis 0..N/2)
void write_field(std::ostream& os, const SpectralField& field);
SpectralField read_field(std::istream& is);

void save_field(const std::filesystem::path& path, const SpectralField& field);
SpectralField load_field(const std::filesystem::path& path);

}  // namespace micropolar
