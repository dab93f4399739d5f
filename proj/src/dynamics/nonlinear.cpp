#include "micropolar/nonlinear.hpp"

#include <vector>

#include "micropolar/errors.hpp"
#include "micropolar/fft.hpp"
#include "micropolar/kernels.hpp"
#include "micropolar/spectral_ops.hpp"

namespace micropolar::dynamics {

namespace {

constexpr Complex kI{0.0, 1.0};

// Physical samples of D_axis of one spectral component.
std::vector<double> physical_derivative(const Transform& fft, std::span<const Complex> c,
                                        const std::vector<double>& deriv) {
  std::vector<Complex> d(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) d[i] = kI * (deriv[i] * c[i]);
  std::vector<double> out(fft.grid().physical_size());
  fft.inverse(d, out);
  return out;
}

SpectralField advect_physical(const Transform& fft, const PhysicalField& u_phys,
                              const SpectralField& v, bool dealias) {
  const Grid& g = v.grid();
  const auto& t = g.modes();
  PhysicalField prod(g, v.components());
  for (int c = 0; c < v.components(); ++c) {
    auto out = prod.component(c);
    for (int j = 0; j < g.dim(); ++j) {
      const auto dv = physical_derivative(fft, v.component(c), t.deriv[j]);
      kernels::parallel::multiply_accumulate(out, u_phys.component(j), dv);
    }
  }
  SpectralField result = fft.forward(prod);
  if (dealias) spectral::dealias_in_place(result);
  spectral::remove_mean_and_nyquist(result);
  return result;
}

}  // namespace

SpectralField advect(const SpectralField& u, const SpectralField& v, bool dealias) {
  if (u.components() != u.grid().dim()) throw StructuralError("advect: u must be a vector field");
  if (!(u.grid() == v.grid())) throw StructuralError("advect: fields on different grids");
  const auto fft = Transform::for_grid(u.grid());
  const PhysicalField u_phys = fft->inverse(u);
  return advect_physical(*fft, u_phys, v, dealias);
}

Tendency nonlinear_rhs(const MicropolarState& z, bool dealias) {
  const auto fft = Transform::for_grid(z.grid());
  const PhysicalField u_phys = fft->inverse(z.u);
  SpectralField du = spectral::leray_project(advect_physical(*fft, u_phys, z.u, dealias));
  du *= -1.0;
  SpectralField dw = advect_physical(*fft, u_phys, z.w, dealias);
  dw *= -1.0;
  return {std::move(du), std::move(dw)};
}

SpectralField vorticity_wedge_source(const SpectralField& u, bool dealias) {
  const Grid& g = u.grid();
  const int d = g.dim();
  if (u.components() != d) throw StructuralError("wedge source needs a vector field");
  const auto fft = Transform::for_grid(g);
  const auto& t = g.modes();
  // grad[l][j] = D_l u_j
  std::vector<std::vector<std::vector<double>>> grad(d, std::vector<std::vector<double>>(d));
  for (int l = 0; l < d; ++l) {
    for (int j = 0; j < d; ++j) grad[l][j] = physical_derivative(*fft, u.component(j), t.deriv[l]);
  }
  const std::size_t np = g.physical_size();
  const int out_comps = d == 2 ? 1 : 3;
  PhysicalField s(g, out_comps);
  if (d == 2) {
    auto o = s.component(0);
    for (std::size_t x = 0; x < np; ++x) {
      double acc = 0.0;
      for (int j = 0; j < 2; ++j) acc += grad[0][j][x] * grad[j][1][x] - grad[1][j][x] * grad[j][0][x];
      o[x] = 0.5 * acc;
    }
  } else {
    auto o0 = s.component(0);
    auto o1 = s.component(1);
    auto o2 = s.component(2);
    for (std::size_t x = 0; x < np; ++x) {
      double acc[3] = {0.0, 0.0, 0.0};
      for (int j = 0; j < 3; ++j) {
        // a = grad u_j, b = D_j u
        const double a0 = grad[0][j][x], a1 = grad[1][j][x], a2 = grad[2][j][x];
        const double b0 = grad[j][0][x], b1 = grad[j][1][x], b2 = grad[j][2][x];
        acc[0] += a1 * b2 - a2 * b1;
        acc[1] += a2 * b0 - a0 * b2;
        acc[2] += a0 * b1 - a1 * b0;
      }
      o0[x] = 0.5 * acc[0];
      o1[x] = 0.5 * acc[1];
      o2[x] = 0.5 * acc[2];
    }
  }
  SpectralField result = fft->forward(s);
  if (dealias) spectral::dealias_in_place(result);
  spectral::remove_mean_and_nyquist(result);
  return result;
}

}  // namespace micropolar::dynamics
