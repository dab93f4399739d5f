#include "micropolar/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "micropolar/epsilon.hpp"
#include "micropolar/fft.hpp"
#include "micropolar/integrator.hpp"
#include "micropolar/spectral_ops.hpp"

namespace micropolar::dynamics {

namespace {

double seminorm(const SpectralField& f, int m) {
  return std::sqrt(spectral::seminorm_squared(f, m));
}

double max_speed(const SpectralField& u) {
  const PhysicalField phys = Transform::for_grid(u.grid())->inverse(u);
  const std::size_t n = u.grid().physical_size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int c = 0; c < phys.components; ++c) {
      const double v = phys.component(c)[i];
      s += v * v;
    }
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

}  // namespace

std::vector<int> recorded_orders(const std::vector<int>& requested) {
  std::vector<int> out = requested;
  out.push_back(0);
  out.push_back(1);
  for (int m : out) {
    if (m < 0) throw DomainError("seminorm orders must be nonnegative");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::map<std::string, double> state_norms(const MicropolarState& z, const FluidParams& params,
                                          const std::vector<int>& orders) {
  const SpectralField eps = diagnostics::epsilon_field(z);
  const bool three_d = z.grid().dim() == 3;
  std::optional<SpectralField> divw;
  std::optional<SpectralField> curlw;
  if (three_d) {
    divw = spectral::divergence(z.w);
    curlw = spectral::curl(z.w);
  }

  std::map<std::string, double> out;
  for (int m : orders) {
    out[NormSeries::label("u", m)] = seminorm(z.u, m);
    out[NormSeries::label("w", m)] = seminorm(z.w, m);
    out[NormSeries::label("eps", m)] = seminorm(eps, m);
    out[NormSeries::label("z", m)] = state_seminorm(z, m);
    if (three_d) {
      out[NormSeries::label("divw", m)] = seminorm(*divw, m);
      out[NormSeries::label("curlw", m)] = seminorm(*curlw, m);
    }
  }
  out[NormSeries::label("divu", 0)] = seminorm(spectral::divergence(z.u), 0);
  out["energy"] = spectral::seminorm_squared(z.u, 0) + spectral::seminorm_squared(z.w, 0);
  out["dissip_u"] = params.mu * spectral::seminorm_squared(z.u, 1);
  out["dissip_w"] = params.nu * spectral::seminorm_squared(z.w, 1);
  return out;
}

SimulationResult simulate(const SimConfig& config, const MicropolarState& z0,
                          const SimulateOptions& options) {
  config.params.validate();
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
    throw DomainError("dt must be positive and finite");
  }
  if (!(config.t_end >= z0.time)) throw DomainError("t_end precedes the initial time");
  if (config.record_stride < 1) throw DomainError("record_stride must be at least 1");
  if (!(config.blowup_factor > 1.0)) throw DomainError("blowup_factor must exceed 1");
  if (!(z0.grid() == config.grid)) throw StructuralError("initial state is on a different grid");

  const std::vector<int> orders = recorded_orders(config.seminorm_orders);
  const StepFlags flags{config.nonlinear, config.dealias};
  const LawsonRK4 integrator(config.grid, config.params, config.dt, flags);

  MicropolarState z = z0;
  normalize_state(z, config.dealias);
  const double t0 = z.time;
  const double span = config.t_end - t0;
  auto full_steps = static_cast<long long>(std::floor(span / config.dt * (1.0 + 1e-12)));
  const double remainder = span - static_cast<double>(full_steps) * config.dt;
  const bool partial_step = remainder > 1e-9 * config.dt;
  const long long total_steps = full_steps + (partial_step ? 1 : 0);

  const double ceiling = config.blowup_factor * std::max(state_norm(z), 1e-300);
  const double k_max = config.grid.k0() * config.grid.dealias_cutoff();

  SimulationResult result{NormSeries{}, {}, z, 0.0};
  double integral = 0.0;
  double prev_time = 0.0;
  double prev_dissip = 0.0;
  long long record_count = 0;

  auto record = [&](const MicropolarState& s) {
    auto norms = state_norms(s, config.params, orders);
    const double dissip = norms["dissip_u"] + norms["dissip_w"];
    if (record_count > 0) integral += 0.5 * (s.time - prev_time) * (dissip + prev_dissip);
    prev_time = s.time;
    prev_dissip = dissip;
    norms["energy_lhs"] = norms["energy"] + 2.0 * integral;
    result.series.append(s.time, norms);
    result.max_cfl = std::max(result.max_cfl, max_speed(s.u) * config.dt * k_max);
    if (options.on_record) options.on_record(s);
    if (options.snapshot_every > 0 && record_count % options.snapshot_every == 0) {
      result.snapshots.push_back(s);
    }
    ++record_count;
  };

  try {
    record(z);
    for (long long i = 1; i <= total_steps; ++i) {
      const bool last = i == total_steps;
      if (last && partial_step) {
        z = LawsonRK4(config.grid, config.params, remainder, flags).step(z);
        z.time = config.t_end;
      } else {
        z = integrator.step(z);
        z.time = last ? config.t_end : t0 + static_cast<double>(i) * config.dt;
      }
      normalize_state(z, config.dealias);
      if (state_norm(z) > ceiling) throw BlowUpError("state norm exceeded the blow-up ceiling", z.time);
      if (last || i % config.record_stride == 0) record(z);
    }
  } catch (const BlowUpError& e) {
    throw SimulationAborted(e, result.series);
  }
  result.final_state = std::move(z);
  return result;
}

}  // namespace micropolar::dynamics
