#include <cmath>

#include "micropolar/diagnostics.hpp"
#include "micropolar/errors.hpp"

namespace micropolar::diagnostics {

namespace {

struct Line {
  double slope;
  double intercept;
  double stderr_slope;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit window has no spread in time");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    sse += r * r;
  }
  const double stderr_slope = x.size() > 2 ? std::sqrt(sse / (n - 2.0) / sxx) : 0.0;
  return {slope, intercept, stderr_slope};
}

}  // namespace

DecayFit fit_power_law(const std::vector<double>& t, const std::vector<double>& v, double t_a,
                       double t_b) {
  if (t.size() != v.size()) throw StructuralError("time and value arrays differ in length");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_a || t[i] > t_b) continue;
    if (!(t[i] > 0.0)) throw DomainError("fit window contains a nonpositive time");
    if (!(v[i] > 0.0)) throw DomainError("fit window contains a nonpositive value");
    x.push_back(std::log(t[i]));
    y.push_back(std::log(v[i]));
  }
  if (x.size() < 10) throw StructuralError("fit window holds fewer than 10 samples");

  const Line all = least_squares(x, y);
  DecayFit out;
  out.slope = all.slope;
  out.intercept = all.intercept;
  out.stderr_slope = all.stderr_slope;
  out.samples = x.size();

  // Split at the log-time midpoint; fall back to a sample split when one half is thin.
  const double mid = 0.5 * (x.front() + x.back());
  std::vector<double> x0, y0, x1, y1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    (x[i] <= mid ? x0 : x1).push_back(x[i]);
    (x[i] <= mid ? y0 : y1).push_back(y[i]);
  }
  if (x0.size() < 3 || x1.size() < 3) {
    const std::size_t h = x.size() / 2;
    x0.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(h));
    y0.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(h));
    x1.assign(x.begin() + static_cast<std::ptrdiff_t>(h), x.end());
    y1.assign(y.begin() + static_cast<std::ptrdiff_t>(h), y.end());
  }
  out.curvature = least_squares(x1, y1).slope - least_squares(x0, y0).slope;
  out.power_law = std::abs(out.curvature) <= kCurvatureThreshold;
  return out;
}

DecayFit fit_decay_exponent(const NormSeries& series, const std::string& label, double t_a,
                            double t_b) {
  return fit_power_law(series.times(), series.column(label), t_a, t_b);
}

std::optional<double> monotonicity_onset(const NormSeries& series, const std::string& label,
                                         double rel_tol) {
  const auto& v = series.column(label);
  const auto& t = series.times();
  if (v.size() < 3) return std::nullopt;
  auto rises = [&](std::size_t i) { return v[i + 1] > v[i] + rel_tol * std::abs(v[i]); };
  std::size_t j = v.size() - 1;
  if (rises(j - 1)) return std::nullopt;
  while (j > 0 && !rises(j - 1)) --j;
  return t[j];
}

}  // namespace micropolar::diagnostics
