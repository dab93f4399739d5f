#include <algorithm>
#include <cmath>
#include <limits>

#include "micropolar/diagnostics.hpp"
#include "micropolar/errors.hpp"

namespace micropolar::diagnostics {

namespace {

std::vector<double> dissipation(const NormSeries& series, const FluidParams& params) {
  std::vector<double> out(series.size(), 0.0);
  if (series.has("dissip_u") && series.has("dissip_w")) {
    const auto& du = series.column("dissip_u");
    const auto& dw = series.column("dissip_w");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = du[i] + dw[i];
    return out;
  }
  const auto& u1 = series.column(NormSeries::label("u", 1));
  const auto& w1 = series.column(NormSeries::label("w", 1));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = params.mu * u1[i] * u1[i] + params.nu * w1[i] * w1[i];
  }
  return out;
}

std::vector<double> energy(const NormSeries& series) {
  if (series.has("energy")) return series.column("energy");
  const auto& u0 = series.column(NormSeries::label("u", 0));
  const auto& w0 = series.column(NormSeries::label("w", 0));
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = u0[i] * u0[i] + w0[i] * w0[i];
  return out;
}

std::vector<double> cumulative(const std::vector<double>& t, const std::vector<double>& d) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (d[i] + d[i - 1]);
  }
  return out;
}

struct Sample {
  double energy;
  double integral;
};

Sample sample_at(const std::vector<double>& t, const std::vector<double>& e,
                 const std::vector<double>& d, const std::vector<double>& cum, double tau) {
  auto it = std::upper_bound(t.begin(), t.end(), tau);
  std::size_t j = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
  if (j + 1 >= t.size()) return {e.back(), cum.back()};
  const double frac = (tau - t[j]) / (t[j + 1] - t[j]);
  const double d_tau = d[j] + frac * (d[j + 1] - d[j]);
  return {e[j] + frac * (e[j + 1] - e[j]), cum[j] + 0.5 * (tau - t[j]) * (d[j] + d_tau)};
}

}  // namespace

EnergyCheck energy_check(const NormSeries& series, const FluidParams& params, double s,
                         double t, double tol_rel) {
  if (series.empty()) throw StructuralError("energy_check needs a nonempty series");
  const auto& times = series.times();
  if (!(s < t)) throw DomainError("energy_check needs s < t");
  if (s < times.front() || t > times.back()) {
    throw DomainError("energy_check times fall outside the recorded range");
  }
  const auto e = energy(series);
  const auto d = dissipation(series, params);
  const auto cum = cumulative(times, d);
  const Sample a = sample_at(times, e, d, cum, s);
  const Sample b = sample_at(times, e, d, cum, t);
  EnergyCheck out;
  out.rhs = a.energy;
  out.lhs = b.energy + 2.0 * (b.integral - a.integral);
  out.slack = out.rhs - out.lhs;
  out.pass = out.slack >= -tol_rel * out.rhs;
  return out;
}

EnergySweep energy_check_all_pairs(const NormSeries& series, const FluidParams& params) {
  if (series.size() < 2) throw StructuralError("energy sweep needs at least two records");
  const auto& times = series.times();
  const auto e = energy(series);
  const auto cum = cumulative(times, dissipation(series, params));
  // slack(s, t) = F(s) - F(t) with F = energy + 2 * cumulative dissipation.
  std::vector<double> f(times.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = e[i] + 2.0 * cum[i];

  EnergySweep out{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double scale = std::max(e[i], std::numeric_limits<double>::min());
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const double rel = (f[i] - f[j]) / scale;
      if (rel < out.worst_relative_slack) out = {rel, times[i], times[j]};
    }
  }
  return out;
}

}  // namespace micropolar::diagnostics
