// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <vector>

#include "ian/constants.hpp"
#include "ian/node.hpp"
#include "ian/trunc.hpp"

namespace {

using namespace ian;

// Dense bivariate operands with nontrivial rational coefficients.
Trunc<Rational> operand(int N, int salt) {
  Trunc<Rational> t(2, N);
  for (int d = 0; d <= N; ++d) {
    for (int i = 0; i <= d; ++i) {
      t.terms.emplace(MultiIndex{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(d - i)},
                      Rational(i + salt, d + 2 + salt));
    }
  }
  return t;
}

Trunc<Ball> ball_operand(int N, int salt, long prec) { return kernels::to_balls(operand(N, salt), prec, N); }

void BM_MulExactSerial(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  auto a = operand(N, 1), b = operand(N, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mul_serial(ExactField{}, a, b, N));
}

void BM_MulExactParallel(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  auto a = operand(N, 1), b = operand(N, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mul_parallel(ExactField{}, a, b, N));
}

void BM_MulBallSerial(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const BallField f{256};
  auto a = ball_operand(N, 1, 256), b = ball_operand(N, 2, 256);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mul_serial(f, a, b, N));
}

void BM_MulBallParallel(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const BallField f{256};
  auto a = ball_operand(N, 1, 256), b = ball_operand(N, 2, 256);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mul_parallel(f, a, b, N));
}

void BM_PartialSumSerial(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const BallField f{512};
  auto s = ball_operand(N, 3, 512);
  const std::vector<Rational> x{Rational(1, 3), Rational(-1, 5)};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::partial_sum_serial(f, s, x, N));
}

void BM_PartialSumParallel(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const BallField f{512};
  auto s = ball_operand(N, 3, 512);
  const std::vector<Rational> x{Rational(1, 3), Rational(-1, 5)};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::partial_sum_parallel(f, s, x, N));
}

void BM_MachinPi(benchmark::State& state) {
  const int digits = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(machin_pi(digits));
}

}  // namespace

BENCHMARK(BM_MulExactSerial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MulExactParallel)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MulBallSerial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MulBallParallel)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PartialSumSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PartialSumParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MachinPi)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
