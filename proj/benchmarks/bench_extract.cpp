#include <benchmark/benchmark.h>

#include "sumdiff/analysis.hpp"
#include "sumdiff/choi.hpp"
#include "sumdiff/random.hpp"

using namespace sumdiff;

namespace {

const TwoQubitAdCoeffs kCoeffs = ad2_coefficients({1.0, 0.3, 2.0, 10.0, 0.7});

void BM_Ad2Coefficients(benchmark::State& state) {
  const TwoQubitAdParams p{1.0, 0.3, 2.0, 10.0, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(ad2_coefficients(p));
}
BENCHMARK(BM_Ad2Coefficients);

void BM_ExtractAd2(benchmark::State& state) {
  const auto kind = static_cast<PartitionKind>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_signed_kraus(partition_2ad(kCoeffs, kind)));
  }
}
BENCHMARK(BM_ExtractAd2)
    ->Arg(static_cast<int>(PartitionKind::DiagPlusPairs))
    ->Arg(static_cast<int>(PartitionKind::SplitRealImag))
    ->Arg(static_cast<int>(PartitionKind::FullSpectral));

void BM_ExtractGad(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_signed_kraus(gad_printed_partition({0.3, 0.6})));
  }
}
BENCHMARK(BM_ExtractGad);

void BM_Jacobi(benchmark::State& state) {
  Rng rng(1);
  const ComplexMatrix h = random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h));
}
BENCHMARK(BM_Jacobi)->Arg(4)->Arg(16);

void BM_Concurrence(benchmark::State& state) {
  Rng rng(2);
  const DensityMatrix rho = random_density_matrix(4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_Concurrence);

void BM_EbReport(benchmark::State& state) {
  const ChoiMatrix b = choi_2ad(kCoeffs);
  for (auto _ : state) benchmark::DoNotOptimize(eb_report(b));
}
BENCHMARK(BM_EbReport);

}  // namespace

BENCHMARK_MAIN();
