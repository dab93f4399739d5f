#include "micropolar/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "micropolar/errors.hpp"

namespace micropolar {

namespace {

constexpr char kMagic[4] = {'M', 'P', 'S', 'F'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("truncated field stream");
  return v;
}

}  // namespace

void write_field(std::ostream& os, const SpectralField& field) {
  os.write(kMagic, 4);
  put(os, kVersion);
  put(os, static_cast<std::int32_t>(field.grid().dim()));
  put(os, static_cast<std::int32_t>(field.grid().points_per_axis()));
  put(os, field.grid().box_length());
  put(os, static_cast<std::int32_t>(field.components()));
  put(os, std::int32_t{0});
  const auto c = field.coeffs();
  os.write(reinterpret_cast<const char*>(c.data()),
           static_cast<std::streamsize>(c.size() * sizeof(Complex)));
  if (!os) throw std::runtime_error("failed writing field stream");
}

SpectralField read_field(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("not a field stream");
  const auto version = get<std::uint32_t>(is);
  if (version != kVersion) throw std::runtime_error("unsupported field format version");
  const auto dim = get<std::int32_t>(is);
  const auto n = get<std::int32_t>(is);
  const auto length = get<double>(is);
  const auto comps = get<std::int32_t>(is);
  (void)get<std::int32_t>(is);
  Grid grid(dim, n, length);
  std::vector<Complex> coeffs(static_cast<std::size_t>(comps) * grid.mode_count());
  is.read(reinterpret_cast<char*>(coeffs.data()),
          static_cast<std::streamsize>(coeffs.size() * sizeof(Complex)));
  if (!is) throw std::runtime_error("truncated field stream");
  return SpectralField(grid, comps, std::move(coeffs));
}

void save_field(const std::filesystem::path& path, const SpectralField& field) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_field(os, field);
}

SpectralField load_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return read_field(is);
}

}  // namespace micropolar
