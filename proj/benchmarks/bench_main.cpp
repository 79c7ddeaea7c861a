#include <benchmark/benchmark.h>

#include "charvar/kernel.hpp"
#include "charvar/orbits.hpp"
#include "charvar/trigdioph.hpp"
#include "charvar/twists.hpp"

using namespace charvar;

namespace {

void BM_TwistExact(benchmark::State& state) {
  const auto b = parse_traces("1/2,1/3,-2/5,3/7", Mode::Exact);
  const auto k = b.coeffs<Rational>();
  kernel::Point3<Rational> p{Rational(1, 3), Rational(-1, 2), Rational(2, 5)};
  for (auto _ : state) {
    auto q = p;
    kernel::twist(k, q, Axis::X, 1);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_TwistExact);

void BM_TwistFloat(benchmark::State& state) {
  const auto b = parse_traces("1/2,1/3,-2/5,3/7", Mode::Float);
  const auto k = b.coeffs<double>();
  kernel::Point3<double> p{0.3, -0.5, 0.4};
  for (auto _ : state) {
    kernel::twist(k, p, Axis::Y, 1);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_TwistFloat);

void BM_KappaExact(benchmark::State& state) {
  const auto k = parse_traces("1/2,1/3,-2/5,3/7", Mode::Exact).coeffs<Rational>();
  const kernel::Point3<Rational> p{Rational(1, 3), Rational(-1, 2), Rational(2, 5)};
  for (auto _ : state) benchmark::DoNotOptimize(kernel::kappa(k, p));
}
BENCHMARK(BM_KappaExact);

void BM_OrbitFloat(benchmark::State& state) {
  const auto b = parse_traces("1/2,1/2,1/2,1/3", Mode::Float);
  const TracePoint p0 = surface_sample(b, 4, 4).front();
  const auto budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_orbit(b, p0, budget).points.size());
}
BENCHMARK(BM_OrbitFloat)->Arg(1000)->Arg(10000);

void BM_EvalExactIdentity(benchmark::State& state) {
  const auto rel = fixed_identities()[8].relation;
  for (auto _ : state) benchmark::DoNotOptimize(eval_exact(rel).is_zero());
}
BENCHMARK(BM_EvalExactIdentity);

void BM_BoundedSearch(benchmark::State& state) {
  SearchOptions opt;
  opt.max_q = static_cast<int>(state.range(0));
  opt.coeffs = {Rational(1), Rational(-1)};
  for (auto _ : state) benchmark::DoNotOptimize(bounded_search(opt).size());
}
BENCHMARK(BM_BoundedSearch)->Arg(7)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
