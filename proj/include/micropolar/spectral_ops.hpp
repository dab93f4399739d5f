#pragma once

#include "micropolar/spectral_field.hpp"

/// Fourier-exact differential operators and norms on SpectralField.
///
/// First derivatives use the multiplier i*k_j with the Nyquist row (|m_j| = N/2)
/// set to zero, since i*k_j times a Nyquist coefficient is not the transform of
/// a real field. Norms use the true |k|.
namespace micropolar::spectral {

/// Homogeneous Sobolev seminorm ||D^m v||_{L^2}, summed over all index tuples.
struct SobolevSeminorm {
  int order_m;
  double value;
};

/// u - k (k.u)/|k|^2 per mode; identity at k = 0. Requires components == dim.
SpectralField leray_project(const SpectralField& field);

/// i k . u. Requires components == dim; returns a scalar field.
SpectralField divergence(const SpectralField& field);

/// 2D scalar w -> (D2 w, -D1 w); 2D vector u -> D1 u2 - D2 u1; 3D vector -> curl.
SpectralField curl(const SpectralField& field);

/// Spectral derivative D_axis of every component.
SpectralField derivative(const SpectralField& field, int axis);

/// Gradient of a scalar field (dim components).
SpectralField gradient(const SpectralField& scalar);

/// Laplacian of every component (multiplier -|k|^2).
SpectralField laplacian(const SpectralField& field);

/// ||D^m f|| via Parseval. Requires m <= points_per_axis / 3.
SobolevSeminorm sobolev_seminorm(const SpectralField& field, int m);

/// Square of sobolev_seminorm without the precondition (used for budgets).
double seminorm_squared(const SpectralField& field, int m);

/// Physical L^2 inner product integral_{[0,L)^n} f.g dx.
double inner_product(const SpectralField& f, const SpectralField& g);

/// Zero every mode with some |m_i| > N/3.
SpectralField dealias(const SpectralField& field);
void dealias_in_place(SpectralField& field);

/// Zero the k = 0 mode and every mode with some |m_i| = N/2.
void remove_mean_and_nyquist(SpectralField& field);

/// Largest violation of coeff(-k) = conj(coeff(k)) on the self-conjugate planes.
double hermitian_defect(const SpectralField& field);

/// Restore Hermitian symmetry on the self-conjugate planes by averaging pairs.
void enforce_hermitian(SpectralField& field);

}  // namespace micropolar::spectral
