#include <algorithm>
#include <cmath>
#include <sstream>

#include "micropolar/diagnostics.hpp"
#include "micropolar/errors.hpp"

namespace micropolar::diagnostics {

double predicted_u_slope(double alpha, int m) { return -alpha - 0.5 * m; }

double predicted_w_slope(double alpha, int m) { return -alpha - 0.5 * (m + 1); }

double predicted_eps_slope(double alpha, int m, int dim, bool equal_viscosities) {
  if (equal_viscosities) return -2.0 * alpha - 0.5 * (m + 3) - BoundConstants::p_n(dim);
  return -alpha - 0.5 * (m + 3);
}

double predicted_divw_slope(double alpha, bool equal_viscosities) {
  return equal_viscosities ? -2.0 * alpha - 2.25 : -alpha - 2.0;
}

namespace {

CheckRecord two_sided(std::string name, double predicted, double measured, double tol) {
  CheckRecord r;
  r.check = std::move(name);
  r.predicted = predicted;
  r.measured = measured;
  r.tol = tol;
  r.pass = std::abs(measured - predicted) <= tol;
  return r;
}

CheckRecord at_most(std::string name, double bound, double measured, double tol) {
  CheckRecord r;
  r.check = std::move(name);
  r.predicted = bound;
  r.measured = measured;
  r.tol = tol;
  r.pass = measured <= bound + tol;
  r.note = "upper bound";
  return r;
}

void require(const NormSeries& series, const std::string& label) {
  if (!series.has(label)) throw StructuralError("sync report needs series label '" + label + "'");
}

}  // namespace

double epsilon_resolved_until(const NormSeries& series, int m, const ValidityWindow& window) {
  const std::string e = NormSeries::label("eps", m);
  const std::string w = NormSeries::label("w", m);
  require(series, e);
  require(series, w);
  const auto& t = series.times();
  const auto& ev = series.column(e);
  const auto& wv = series.column(w);
  double last = window.t_min;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window.t_min) continue;
    if (t[i] > window.t_max) break;
    if (!(ev[i] > kEpsilonResolutionFloor * wv[i])) break;
    last = t[i];
  }
  return last;
}

std::vector<CheckRecord> sync_report(const NormSeries& series, const DecayHypothesis& hyp,
                                     const FluidParams& params, int dim,
                                     const std::vector<int>& orders, const ValidityWindow& window,
                                     const SyncOptions& options) {
  hyp.validate();
  if (window.empty()) throw DomainError("sync report needs a nonempty validity window");
  const double alpha = hyp.alpha;
  const bool equal = params.mu == params.nu;
  const double a = window.t_min;
  const double b = window.t_max;
  auto slope_on = [&](const std::string& label, double lo, double hi) {
    require(series, label);
    return fit_decay_exponent(series, label, lo, hi).slope;
  };
  auto slope = [&](const std::string& label) { return slope_on(label, a, b); };

  std::vector<CheckRecord> out;
  for (int m : orders) {
    const std::string u = NormSeries::label("u", m);
    const std::string w = NormSeries::label("w", m);
    const std::string e = NormSeries::label("eps", m);
    const double su = slope(u);
    const double sw = slope(w);
    out.push_back(two_sided("slope:" + u, predicted_u_slope(alpha, m), su, options.slope_tol));
    out.push_back(two_sided("slope:" + w, predicted_w_slope(alpha, m), sw, options.slope_tol));
    out.push_back(two_sided("gap:" + w + "-" + u, -0.5, sw - su, options.gap_tol));

    // eps may fall to roundoff inside the window (it decays exponentially in
    // 2D when mu = nu); compare with w over the resolved part only.
    const double resolved = epsilon_resolved_until(series, m, window);
    std::string span_note = "fit on [" + std::to_string(a) + ", " + std::to_string(resolved) + "]";
    try {
      const double se = slope_on(e, a, resolved);
      const double sw_r = slope_on(w, a, resolved);
      if (options.eps_absolute) {
        // A bound: eps may decay faster than predicted.
        CheckRecord r = at_most("slope:" + e, predicted_eps_slope(alpha, m, dim, equal), se,
                                options.slope_tol);
        r.note += "; " + span_note;
        out.push_back(r);
      }
      CheckRecord g = at_most("gap:" + e + "-" + w, -1.0, se - sw_r, options.gap_tol);
      g.note += "; " + span_note;
      out.push_back(g);
    } catch (const StructuralError& ex) {
      CheckRecord g;
      g.check = "gap:" + e + "-" + w;
      g.predicted = -1.0;
      g.tol = options.gap_tol;
      g.note = std::string("eps unresolved: ") + ex.what() + "; " + span_note;
      out.push_back(g);
    }
    const std::string u_next = NormSeries::label("u", m + 1);
    if (series.has(u_next)) {
      out.push_back(two_sided("gap:" + u_next + "-" + u, -0.5, slope(u_next) - su, options.gap_tol));
    }
  }

  if (dim == 3) {
    const std::string dw = NormSeries::label("divw", 0);
    const std::string cw = NormSeries::label("curlw", 0);
    const double sd = slope(dw);
    out.push_back(two_sided("slope:" + dw, predicted_divw_slope(alpha, equal), sd, options.slope_tol));
    out.push_back(at_most("gap:" + dw + "-" + cw, -1.0, sd - slope(cw), options.gap_tol));
  }

  // Ratio ||eps|| / ||w|| over the last decade of the resolved window: it
  // must shrink at every record and end below where it started.
  {
    const double resolved = epsilon_resolved_until(series, 0, window);
    const std::string e0 = NormSeries::label("eps", 0);
    const std::string w0 = NormSeries::label("w", 0);
    require(series, e0);
    require(series, w0);
    const auto& t = series.times();
    const auto& ev = series.column(e0);
    const auto& wv = series.column(w0);
    const double start = std::max(a, resolved / 10.0);
    std::vector<double> ratio;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] >= start && t[i] <= resolved && wv[i] > 0.0) ratio.push_back(ev[i] / wv[i]);
    }
    CheckRecord r;
    r.check = "ratio:eps/w:trend";
    r.tol = 0.0;
    r.note = "ratio at start vs end of the last decade of [" + std::to_string(a) + ", " +
             std::to_string(resolved) + "]; pass when it shrinks at every record";
    if (ratio.size() >= 2) {
      bool monotone = true;
      for (std::size_t i = 0; i + 1 < ratio.size(); ++i) {
        if (ratio[i + 1] > ratio[i] * (1.0 + 1e-9)) monotone = false;
      }
      r.predicted = ratio.front();
      r.measured = ratio.back();
      r.pass = monotone && ratio.back() < ratio.front();
    }
    out.push_back(r);
  }

  for (int m : options.sandwich_orders) {
    const std::string u = NormSeries::label("u", m);
    require(series, u);
    const auto& t = series.times();
    const auto& v = series.column(u);
    const double rate = alpha + 0.5 * m;
    const double lo_t = std::max({a, hyp.T0, hyp.t0});
    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] < lo_t || t[i] > b) continue;
      const double scaled = v[i] * std::pow(t[i], rate);
      lo = std::min(lo, scaled);
      hi = std::max(hi, scaled);
    }
    CheckRecord r;
    r.check = "sandwich:" + u;
    r.predicted = hyp.C0 / hyp.c0;
    r.measured = hi > 0.0 && lo > 0.0 ? hi / lo : INFINITY;
    r.tol = 0.0;
    r.pass = r.measured <= r.predicted;
    std::ostringstream note;
    note.precision(6);
    note << "band of value*t^" << rate << " is [" << lo << ", " << hi << "]";
    r.note = note.str();
    out.push_back(r);
  }
  return out;
}

}  // namespace micropolar::diagnostics
