#include "micropolar/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

#include "micropolar/errors.hpp"

namespace micropolar {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
    if (ptr == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  void* ptr;
};

/// Per-thread aligned scratch that only grows, so repeated transforms do not
/// allocate.
struct Scratch {
  FftwBuffer* real = nullptr;
  FftwBuffer* cplx = nullptr;
  std::size_t real_bytes = 0;
  std::size_t cplx_bytes = 0;
  ~Scratch() {
    delete real;
    delete cplx;
  }
};

Scratch& scratch(std::size_t real_bytes, std::size_t cplx_bytes) {
  thread_local Scratch s;
  if (s.real_bytes < real_bytes) {
    delete s.real;
    s.real = nullptr;
    s.real = new FftwBuffer(real_bytes);
    s.real_bytes = real_bytes;
  }
  if (s.cplx_bytes < cplx_bytes) {
    delete s.cplx;
    s.cplx = nullptr;
    s.cplx = new FftwBuffer(cplx_bytes);
    s.cplx_bytes = cplx_bytes;
  }
  return s;
}

}  // namespace

Transform::Transform(const Grid& grid) : grid_(grid) {
  const int n = grid.points_per_axis();
  const int dims[3] = {n, n, n};
  FftwBuffer real(sizeof(double) * grid.physical_size());
  FftwBuffer cplx(sizeof(fftw_complex) * grid.mode_count());
  auto* r = static_cast<double*>(real.ptr);
  auto* c = static_cast<fftw_complex*>(cplx.ptr);
  std::lock_guard lock(planner_mutex());
  r2c_ = fftw_plan_dft_r2c(grid.dim(), dims, r, c, FFTW_ESTIMATE);
  c2r_ = fftw_plan_dft_c2r(grid.dim(), dims, c, r, FFTW_ESTIMATE);
  if (r2c_ == nullptr || c2r_ == nullptr) throw std::runtime_error("FFTW planning failed");
}

Transform::~Transform() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(r2c_));
  fftw_destroy_plan(static_cast<fftw_plan>(c2r_));
}

std::shared_ptr<const Transform> Transform::for_grid(const Grid& grid) {
  // planner mutex must outlive the cache, so construct it first
  planner_mutex();
  static std::mutex cache_mutex;
  static std::map<std::tuple<int, int, double>, std::shared_ptr<const Transform>> cache;
  const auto key = std::make_tuple(grid.dim(), grid.points_per_axis(), grid.box_length());
  std::lock_guard lock(cache_mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const Transform> t(new Transform(grid));
  cache.emplace(key, t);
  return t;
}

void Transform::forward(std::span<const double> in, std::span<Complex> out) const {
  const std::size_t np = grid_.physical_size();
  const std::size_t nm = grid_.mode_count();
  if (in.size() != np || out.size() != nm) throw StructuralError("transform size mismatch");
  Scratch& s = scratch(sizeof(double) * np, sizeof(fftw_complex) * nm);
  std::memcpy(s.real->ptr, in.data(), sizeof(double) * np);
  fftw_execute_dft_r2c(static_cast<fftw_plan>(r2c_), static_cast<double*>(s.real->ptr),
                       static_cast<fftw_complex*>(s.cplx->ptr));
  const double scale = 1.0 / static_cast<double>(np);
  const auto* c = static_cast<const Complex*>(s.cplx->ptr);
  for (std::size_t i = 0; i < nm; ++i) out[i] = c[i] * scale;
}

void Transform::inverse(std::span<const Complex> in, std::span<double> out) const {
  const std::size_t np = grid_.physical_size();
  const std::size_t nm = grid_.mode_count();
  if (out.size() != np || in.size() != nm) throw StructuralError("transform size mismatch");
  Scratch& s = scratch(sizeof(double) * np, sizeof(fftw_complex) * nm);
  // c2r overwrites its input
  std::memcpy(s.cplx->ptr, in.data(), sizeof(Complex) * nm);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(c2r_), static_cast<fftw_complex*>(s.cplx->ptr),
                       static_cast<double*>(s.real->ptr));
  std::memcpy(out.data(), s.real->ptr, sizeof(double) * np);
}

SpectralField Transform::forward(const PhysicalField& f) const {
  if (!(f.grid == grid_)) throw StructuralError("physical field lives on a different grid");
  SpectralField out(grid_, f.components);
  for (int c = 0; c < f.components; ++c) forward(f.component(c), out.component(c));
  return out;
}

PhysicalField Transform::inverse(const SpectralField& f) const {
  if (!(f.grid() == grid_)) throw StructuralError("spectral field lives on a different grid");
  PhysicalField out(grid_, f.components());
  for (int c = 0; c < f.components(); ++c) inverse(f.component(c), out.component(c));
  return out;
}

}  // namespace micropolar
