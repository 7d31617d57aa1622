// Serial reference vs OpenMP for the kernels behind the numeric referee.
#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "pdm/kernels.hpp"
#include "pdm/numeric.hpp"
#include "pdm/opcheck.hpp"
#include "pdm/problems.hpp"

namespace {

using pdm::kernels::Execution;

pdm::GeneralizedProblem example1_matrix(int points) {
  const pdm::SpectralProblem p =
      pdm::example1_problem({}, pdm::catalog(pdm::OrderingName::weyl), 1.0, 5);
  const pdm::DiscreteSpec s = p.discrete_spec();
  return pdm::discretize(s.mass, s.potential, s.hbar,
                         pdm::Grid1D::make(s.domain.lo, s.domain.hi, points), s.form, s.left,
                         s.right, Execution::serial);
}

void bisect(benchmark::State& state, Execution exec) {
  const auto gp = example1_matrix(static_cast<int>(state.range(0)));
  const pdm::ReducedProblem r = pdm::reduce(gp);
  for (auto _ : state) {
    auto b = pdm::kernels::bisect(r.diag, r.off, 16, 1e-12, exec);
    benchmark::DoNotOptimize(b.eigenvalues.data());
  }
  state.SetItemsProcessed(state.iterations() * 16);
}
void BM_BisectSerial(benchmark::State& s) { bisect(s, Execution::serial); }
void BM_BisectParallel(benchmark::State& s) { bisect(s, Execution::parallel); }

void evaluate(benchmark::State& state, Execution exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const pdm::SmoothFn mass = pdm::SmoothFn::exponential(1.0);
  const pdm::SmoothFn u = pdm::effective_potential(pdm::catalog(pdm::OrderingName::zhu_kroemer),
                                                   mass, mass, 1.0);
  std::vector<double> x(n), out(n);
  std::vector<unsigned char> ok(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -5.0 + 10.0 * static_cast<double>(i) / n;
  for (auto _ : state) {
    pdm::kernels::evaluate(u, x, out, ok, exec);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
void BM_EvaluateSerial(benchmark::State& s) { evaluate(s, Execution::serial); }
void BM_EvaluateParallel(benchmark::State& s) { evaluate(s, Execution::parallel); }

void sweep(benchmark::State& state, Execution exec) {
  const auto ords = pdm::opcheck::random_orderings(static_cast<int>(state.range(0)), 1);
  const auto masses = pdm::opcheck::default_masses();
  const auto& suite = pdm::opcheck::default_suite();
  for (auto _ : state)
    benchmark::DoNotOptimize(pdm::opcheck::canonical_sweep(ords, masses, suite, 1.0, exec));
}
void BM_CanonicalSweepSerial(benchmark::State& s) { sweep(s, Execution::serial); }
void BM_CanonicalSweepParallel(benchmark::State& s) { sweep(s, Execution::parallel); }

} // namespace

BENCHMARK(BM_BisectSerial)->Arg(800)->Arg(3203)->Arg(12815)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BisectParallel)->Arg(800)->Arg(3203)->Arg(12815)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateSerial)->Arg(4096)->Arg(65536)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EvaluateParallel)->Arg(4096)->Arg(65536)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CanonicalSweepSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CanonicalSweepParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
