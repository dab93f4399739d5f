// Serial reference kernels against their OpenMP counterparts.
//
// Each benchmark takes the grid size as its argument: 2D grids of N^2 points
// for the spectral kernels, N^2 doubles for multiply_accumulate.

#include <cmath>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "micropolar/initdata.hpp"
#include "micropolar/kernels.hpp"
#include "micropolar/linear.hpp"
#include "micropolar/runtime.hpp"

using namespace micropolar;

namespace {

MicropolarState bench_state(int n) {
  const Grid g(2, n, 2.0 * std::numbers::pi);
  initdata::SpectrumEnvelope env;
  env.cutoff_kc = initdata::default_cutoff(g);
  env.seed = 1;
  return initdata::random_solenoidal(g, env, true);
}

kernels::StateSpan span_of(MicropolarState& z) {
  kernels::StateSpan s{};
  s.dim = z.u.grid().dim();
  for (int a = 0; a < z.u.components(); ++a) s.u[a] = z.u.component(a);
  for (int a = 0; a < z.w.components(); ++a) s.w[a] = z.w.component(a);
  return s;
}

template <bool Parallel>
void BM_weighted_norm2(benchmark::State& st) {
  const MicropolarState z = bench_state(static_cast<int>(st.range(0)));
  const auto& t = z.u.grid().modes();
  for (auto _ : st) {
    double v = Parallel ? kernels::parallel::weighted_norm2(z.u.component(0), t, 1)
                        : kernels::serial::weighted_norm2(z.u.component(0), t, 1);
    benchmark::DoNotOptimize(v);
  }
}

template <bool Parallel>
void BM_leray_project(benchmark::State& st) {
  MicropolarState z = bench_state(static_cast<int>(st.range(0)));
  const auto& t = z.u.grid().modes();
  std::array<std::span<Complex>, 3> u{z.u.component(0), z.u.component(1), {}};
  for (auto _ : st) {
    if (Parallel) {
      kernels::parallel::leray_project(u, 2, t);
    } else {
      kernels::serial::leray_project(u, 2, t);
    }
    benchmark::ClobberMemory();
  }
}

template <bool Parallel>
void BM_apply_propagator(benchmark::State& st) {
  MicropolarState z = bench_state(static_cast<int>(st.range(0)));
  const Grid& g = z.u.grid();
  FluidParams p;
  p.mu = 0.1;
  p.nu = 0.2;
  p.chi = 0.3;
  // A tiny step keeps the coefficients from decaying to zero over many iterations.
  const dynamics::LinearPropagator prop(g, p, 1e-9);
  const kernels::StateSpan s = span_of(z);
  for (auto _ : st) {
    if (Parallel) {
      kernels::parallel::apply_propagator(s, prop.coeffs(), g.modes());
    } else {
      kernels::serial::apply_propagator(s, prop.coeffs(), g.modes());
    }
    benchmark::ClobberMemory();
  }
}

template <bool Parallel>
void BM_multiply_accumulate(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0) * st.range(0));
  std::vector<double> a(n), b(n), out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = std::sin(0.001 * static_cast<double>(i));
    b[i] = 1e-9;
  }
  for (auto _ : st) {
    if (Parallel) {
      kernels::parallel::multiply_accumulate(out, a, b);
    } else {
      kernels::serial::multiply_accumulate(out, a, b);
    }
    benchmark::ClobberMemory();
  }
}

}  // namespace

BENCHMARK(BM_weighted_norm2<false>)->Name("weighted_norm2/serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_weighted_norm2<true>)->Name("weighted_norm2/parallel")->Arg(256)->Arg(1024);
BENCHMARK(BM_leray_project<false>)->Name("leray_project/serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_leray_project<true>)->Name("leray_project/parallel")->Arg(256)->Arg(1024);
BENCHMARK(BM_apply_propagator<false>)->Name("apply_propagator/serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_apply_propagator<true>)->Name("apply_propagator/parallel")->Arg(256)->Arg(1024);
BENCHMARK(BM_multiply_accumulate<false>)->Name("multiply_accumulate/serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_multiply_accumulate<true>)->Name("multiply_accumulate/parallel")->Arg(256)->Arg(1024);

int main(int argc, char** argv) {
  tune_allocator();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
