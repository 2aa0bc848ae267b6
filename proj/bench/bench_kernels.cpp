#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bsq/kernels.hpp"
#include "bsq/operators.hpp"

namespace k = bsq::kernels;

namespace {

std::vector<double> randv(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

template <void (*Mul)(const double*, const double*, double*, std::size_t)>
void BM_mul(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = randv(n, 1), b = randv(n, 2);
  std::vector<double> out(n);
  for (auto _ : st) {
    Mul(a.data(), b.data(), out.data(), n);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetBytesProcessed(static_cast<int64_t>(st.iterations() * 3 * n * sizeof(double)));
}

template <void (*Lin)(double, const double*, double, const double*, double*, std::size_t)>
void BM_lincomb(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = randv(n, 3), b = randv(n, 4);
  std::vector<double> out(n);
  for (auto _ : st) {
    Lin(0.5, a.data(), -1.5, b.data(), out.data(), n);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetBytesProcessed(static_cast<int64_t>(st.iterations() * 3 * n * sizeof(double)));
}

template <void (*Scale)(k::cplx*, const k::cplx*, std::size_t)>
void BM_scale_spectrum(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto re = randv(n, 5);
  std::vector<k::cplx> s(n, k::cplx(1.0, 0.0)), m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = {1.0, 1e-9 * re[i]};
  for (auto _ : st) {
    Scale(s.data(), m.data(), n);
    benchmark::DoNotOptimize(s.data());
  }
  st.SetBytesProcessed(static_cast<int64_t>(st.iterations() * 3 * n * sizeof(k::cplx)));
}

// one full right-hand side on a 2D grid, dominated by FFTs and the kernels above
void BM_rhs_2d(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto g = bsq::make_grid_2d(n, 6.283185307179586, n, 6.283185307179586);
  bsq::BathymetrySpec sp;
  sp.kind = bsq::BathyKind::Slow;
  sp.epsilon = 0.1;
  sp.modes = {bsq::BathyMode{1, 1, 1.0, 0.0}};
  const auto c = bsq::coefficients_from_bbm(bsq::find_bbm_for_regime(bsq::RegimeTag::Slow2d));
  const bsq::Model m(bsq::make_bathymetry(g, sp), c, 0.1, bsq::RegimeTag::Slow2d);
  std::mt19937_64 rng(6);
  bsq::State s = bsq::State::zero(g);
  s.V[0] = bsq::random_field(g, 2.0, rng);
  s.V[1] = bsq::random_field(g, 2.0, rng);
  s.eta = bsq::random_field(g, 2.0, rng);
  for (auto _ : st) benchmark::DoNotOptimize(m.rhs(s));
}

}  // namespace

BENCHMARK(BM_mul<k::serial::mul>)->Name("mul/serial")->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_mul<k::omp::mul>)->Name("mul/omp")->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->UseRealTime();
BENCHMARK(BM_lincomb<k::serial::lincomb>)->Name("lincomb/serial")->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_lincomb<k::omp::lincomb>)->Name("lincomb/omp")->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->UseRealTime();
BENCHMARK(BM_scale_spectrum<k::serial::scale_spectrum>)->Name("scale_spectrum/serial")->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_scale_spectrum<k::omp::scale_spectrum>)->Name("scale_spectrum/omp")->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->UseRealTime();
BENCHMARK(BM_rhs_2d)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
