#include "abch/cohomology.hpp"
#include "abch/covering.hpp"
#include "abch/spectrum.hpp"

#include <benchmark/benchmark.h>

#include <string>

using namespace abch;

namespace {

std::string model_path(const std::string& name) { return std::string(ABCH_MODELS_DIR) + "/" + name + ".cplx"; }

const ComplexModel& iwasawa() {
  static const ComplexModel m = load_model(model_path("iwasawa"));
  return m;
}

const ExactEngine& iwasawa_engine() {
  static const ExactEngine e = [] {
    const ExactComplex c = build_complex(iwasawa());
    return ExactEngine(c, build_metric(c, *diagonal_metric(3, 2).exact));
  }();
  return e;
}

void BM_BuildComplex(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_complex(iwasawa()));
}
BENCHMARK(BM_BuildComplex)->Unit(benchmark::kMillisecond);

void BM_BuildEngine(benchmark::State& state) {
  const ExactComplex c = build_complex(iwasawa());
  const ExactMatrix H = *diagonal_metric(3, 2).exact;
  for (auto _ : state) benchmark::DoNotOptimize(ExactEngine(c, build_metric(c, H)));
}
BENCHMARK(BM_BuildEngine)->Unit(benchmark::kMillisecond);

void BM_CohomologyTable(benchmark::State& state) {
  const auto theory = static_cast<Theory>(state.range(0));
  const ExactComplex c = build_complex(iwasawa());
  for (auto _ : state) benchmark::DoNotOptimize(cohomology(theory, c));
  state.SetLabel(std::string(to_string(theory)));
}
BENCHMARK(BM_CohomologyTable)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_HarmonicSpace(benchmark::State& state) {
  const auto kind = static_cast<LaplacianKind>(state.range(0));
  const ExactEngine& e = iwasawa_engine();
  for (auto _ : state) benchmark::DoNotOptimize(harmonic_space(e, kind, {1, 1}));
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_HarmonicSpace)->DenseRange(1, 8)->Unit(benchmark::kMillisecond);

void BM_NumericSpectrum(benchmark::State& state) {
  const ExactEngine& e = iwasawa_engine();
  const Sectors s = e.basis().bidegrees_of_degree(static_cast<int>(state.range(0)));
  const NumericMatrix A = to_numeric(e.block(e.global(LaplacianKind::D), s, s));
  const NumericMatrix G = to_numeric(e.metric().gram(s));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(A, G));
  state.counters["dim"] = static_cast<double>(A.rows());
}
BENCHMARK(BM_NumericSpectrum)->DenseRange(0, 6)->Unit(benchmark::kMicrosecond);

void BM_InequalityReport(benchmark::State& state) {
  const ExactEngine& e = iwasawa_engine();
  for (auto _ : state) benchmark::DoNotOptimize(inequality_report(e));
}
BENCHMARK(BM_InequalityReport)->Unit(benchmark::kMillisecond);

void BM_CoverGammaTables(benchmark::State& state) {
  CoverSpec spec = load_cover(std::string(ABCH_MODELS_DIR) + "/index2.cover");
  spec.radius = static_cast<double>(state.range(0));
  const ComplexModel torus = load_model(model_path("torus1"));
  const ExactMatrix H = *identity_metric(1).exact;
  for (auto _ : state) {
    const FourierCover cover = build_cover(spec, torus, H);
    benchmark::DoNotOptimize(gamma_tables(cover));
    state.counters["modes"] = static_cast<double>(cover.modes().size());
  }
}
BENCHMARK(BM_CoverGammaTables)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
