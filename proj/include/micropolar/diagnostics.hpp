#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "micropolar/fluid.hpp"
#include "micropolar/norm_series.hpp"

namespace micropolar::diagnostics {

/// One pass/fail line of a report.
struct CheckRecord {
  std::string check;
  double predicted = 0.0;
  double measured = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool required = true;
  std::string note;
};

/// True when every required record passes.
bool all_required_pass(const std::vector<CheckRecord>& records);

/// Decay hypothesis on the data: upper rate alpha, lower rate eta >= alpha,
/// constants c0 <= C0, and the times after which the bounds hold.
struct DecayHypothesis {
  double alpha = 0.0;
  double eta = 0.0;
  double C0 = 1.0;
  double c0 = 1.0;
  double T0 = 0.0;
  double t0 = 0.0;

  /// Throws DomainError unless alpha >= 0, eta >= alpha, 0 < c0 <= C0, T0, t0 >= 0.
  void validate() const;
  /// eta / alpha; DomainError when alpha == 0.
  double q() const;
};

/// Explicit constants of the smallness and monotonicity bounds.
struct BoundConstants {
  /// 12^(1/8) / sqrt(6 pi).
  static inline const double K_smallness = std::pow(12.0, 0.125) / std::sqrt(6.0 * std::numbers::pi);
  static constexpr double t_doublestar_coeff_3d = 0.005;
  static constexpr double smallness_coeff_2d = 2.0;
  static constexpr double h1_initdata_threshold = 3.182;
  static constexpr double H_1_2 = 0.5;
  static constexpr double Hprime_1_n = 1.0;
  static constexpr double p_n(int dim) noexcept { return (dim - 2) / 4.0; }
};

// ---------------------------------------------------------------- energy

struct EnergyCheck {
  double lhs = 0.0;    ///< ||z(t)||^2 + 2 int_s^t (mu ||Du||^2 + nu ||Dw||^2)
  double rhs = 0.0;    ///< ||z(s)||^2
  double slack = 0.0;  ///< rhs - lhs
  bool pass = false;   ///< slack >= -tol_rel * rhs
};

/// Energy inequality between recorded times s < t (trapezoidal quadrature over
/// the records, linear interpolation when s or t falls between records).
/// Uses the "energy", "dissip_u" and "dissip_w" columns; when the dissipation
/// columns are absent they are rebuilt from "u:m=1", "w:m=1" and the params.
EnergyCheck energy_check(const NormSeries& series, const FluidParams& params, double s,
                         double t, double tol_rel = 1e-6);

/// Smallest relative slack (rhs - lhs) / max(rhs, tiny) over every recorded pair s < t.
struct EnergySweep {
  double worst_relative_slack = 0.0;
  double worst_s = 0.0;
  double worst_t = 0.0;
};
EnergySweep energy_check_all_pairs(const NormSeries& series, const FluidParams& params);

// ----------------------------------------------------------- decay fits

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  std::size_t samples = 0;
  /// Difference between the slopes fitted on the two log-time halves.
  double curvature = 0.0;
  /// False when |curvature| exceeds the power-law threshold.
  bool power_law = true;
};

inline constexpr double kCurvatureThreshold = 0.05;

/// Least-squares slope of log(value) against log(t) over samples with
/// t in [t_a, t_b]. Throws DomainError for nonpositive times or values in
/// the window and StructuralError for fewer than 10 samples or a missing label.
DecayFit fit_decay_exponent(const NormSeries& series, const std::string& label, double t_a,
                            double t_b);

/// Same fit on raw arrays.
DecayFit fit_power_law(const std::vector<double>& t, const std::vector<double>& v, double t_a,
                       double t_b);

/// Earliest recorded time after which the labelled series never increases by
/// more than rel_tol (relative); nullopt when there is none or when fewer than
/// three samples are recorded.
std::optional<double> monotonicity_onset(const NormSeries& series, const std::string& label,
                                         double rel_tol = 1e-10);

// ---------------------------------------------------------------- bounds

/// 0.005 gamma^-5 ||z0||^4.
double t_doublestar_bound_3d(const FluidParams& params, double z0_norm);

struct SmallnessMargin {
  double value = 0.0;
  double threshold = 0.0;
  bool satisfied = false;
  /// ||z||^(1/2) ||Dz||^(1/2) against 3.182 min(mu, nu).
  double h1_value = 0.0;
  double h1_threshold = 0.0;
  bool h1_satisfied = false;
};

/// 3D: K ||z||^(1/2) ||Dz||^(1/2) against gamma. 2D: ||z|| against 2 gamma.
SmallnessMargin smallness_margin(const MicropolarState& state, const FluidParams& params);

// ------------------------------------------------------- validity window

struct ValidityWindow {
  double t_min = 0.0;
  double t_max = 0.0;
  bool empty() const noexcept { return !(t_max > t_min); }
  /// t_max / t_min, the number of decades is log10 of this.
  double span_ratio() const noexcept { return t_min > 0.0 ? t_max / t_min : 0.0; }
};

/// Algebraic-decay window. t_max = 0.1 L^2 / (4 pi^2 gamma), clipped to the
/// last record. t_min is the latest of: the first local maximum of ||Dz||;
/// 2 / (gamma kc^2) with kc the physical cutoff wavenumber of the data (skipped
/// when kc <= 0); 10 / (4 chi), the relaxation time of the synchronization error.
ValidityWindow validity_window(const NormSeries& series, const Grid& grid,
                               const FluidParams& params, double kc_physical = 0.0);

// ----------------------------------------------------------- sync report

/// Relative size ||eps|| / ||w|| below which eps is treated as unresolved
/// roundoff; eps fits stop at the first record under it.
inline constexpr double kEpsilonResolutionFloor = 1e-10;

struct SyncOptions {
  double slope_tol = 0.2;
  double gap_tol = 0.2;
  /// Orders whose ||D^m u|| t^(alpha + m/2) band is checked against C0 / c0.
  std::vector<int> sandwich_orders{1};
  /// Include the absolute-slope checks for eps (the gap checks are always emitted).
  bool eps_absolute = true;
};

/// Predicted slopes.
double predicted_u_slope(double alpha, int m);
double predicted_w_slope(double alpha, int m);
double predicted_eps_slope(double alpha, int m, int dim, bool equal_viscosities);
double predicted_divw_slope(double alpha, bool equal_viscosities);

/// Last time of `window` before ||eps:m|| / ||w:m|| first falls under the
/// resolution floor (the window end when it never does).
double epsilon_resolved_until(const NormSeries& series, int m, const ValidityWindow& window);

/// Compare fitted slopes on `window` with the closed-form predictions. Fits
/// involving eps use the part of the window where eps is resolved.
/// Throws StructuralError when a needed label is missing.
std::vector<CheckRecord> sync_report(const NormSeries& series, const DecayHypothesis& hyp,
                                     const FluidParams& params, int dim,
                                     const std::vector<int>& orders, const ValidityWindow& window,
                                     const SyncOptions& options = {});

}  // namespace micropolar::diagnostics
