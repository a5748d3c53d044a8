#include <benchmark/benchmark.h>

#include <random>

#include "nulllag/micropolar.hpp"
#include "nulllag/quasicrystal.hpp"
#include "nulllag/rund.hpp"

using namespace nulllag;

namespace {

Tensor4 random4(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Tensor4 t;
  for (std::size_t n = 0; n < Tensor4::size; ++n) t[n] = u(rng);
  return t;
}

MicropolarModuli random_micropolar(std::mt19937_64& rng) {
  return MicropolarModuli::create(sym4::major().project(random4(rng)), sym4::major().project(random4(rng)), random4(rng));
}

}  // namespace

static void BM_SymmetryProjection(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto cls = qc_e_null_class();
  const Tensor4 t = random4(rng);
  for (auto _ : state) benchmark::DoNotOptimize(cls.project(t));
}
BENCHMARK(BM_SymmetryProjection);

static void BM_Claim1Projection(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Tensor4 t = random4(rng);
  (void)project_claim1_set1(t);
  for (auto _ : state) benchmark::DoNotOptimize(project_claim1_set1(t));
}
BENCHMARK(BM_Claim1Projection);

static void BM_EulerResidual(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto lag = micropolar_lagrangian(random_micropolar(rng));
  const auto y = random_field(rng, 6, 3);
  const Point3 x{0.3, 0.5, 0.7};
  const auto path = state.range(0) == 0 ? ResidualPath::closed_form : ResidualPath::finite_difference;
  for (auto _ : state) benchmark::DoNotOptimize(euler_residual_detail(lag, y, x, path));
}
BENCHMARK(BM_EulerResidual)->Arg(0)->Arg(1);

static void BM_ActionIntegral(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto lag = micropolar_lagrangian(random_micropolar(rng));
  const auto y = random_field(rng, 6, 3);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(action_integral(lag, y, order));
}
BENCHMARK(BM_ActionIntegral)->Arg(4)->Arg(8);

static void BM_RundCoefficients(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto g = random_generator_set(rng, 6, 2);
  const std::vector<double> y{0.1, -0.2, 0.3, 0.4, -0.5, 0.6};
  for (auto _ : state) benchmark::DoNotOptimize(rund_coefficients(g, {0.2, 0.4, 0.6}, y));
}
BENCHMARK(BM_RundCoefficients);

static void BM_CertifyMicropolarTilde(benchmark::State& state) {
  std::mt19937_64 rng(6);
  const auto s = split_B(sym4::major().project(random4(rng)));
  const auto lag = micropolar_lagrangian(MicropolarModuli::create(Tensor4{}, s.b_tilde, Tensor4{}));
  CertifyOptions o;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(certify_null(lag, 16, 3, 42, o));
}
BENCHMARK(BM_CertifyMicropolarTilde)->Unit(benchmark::kMillisecond);

static void BM_CertifyRund(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto lag = build_null_lagrangian(random_generator_set(rng, 6, 2));
  CertifyOptions o;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(certify_null(lag, 16, 2, 42, o));
}
BENCHMARK(BM_CertifyRund)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
