// Serial reference against the OpenMP kernels. Arg 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "nec/metrics.hpp"
#include "nec/randomized.hpp"
#include "nec/topology.hpp"
#include "nec/variable_rate.hpp"

using namespace nec;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

const std::shared_ptr<const Network>& combination() {
    static const auto net = std::make_shared<const Network>(combination_network(6, 4));
    return net;
}

const NecCode& combination_code() {
    static const NecCode code = construct_mds(combination(), 2, PrimeField(1009), 11, 64);
    return code;
}

void BM_EnumerateRt(benchmark::State& state) {
    const auto& n = *combination();
    std::map<NodeId, std::size_t> deltas;
    for (NodeId t : n.sinks()) deltas[t] = 3;
    for (auto _ : state) benchmark::DoNotOptimize(rt_sum(n, deltas, {}, mode(state)));
}

void BM_VerifyMds(benchmark::State& state) {
    const auto& code = combination_code();
    for (auto _ : state) benchmark::DoNotOptimize(verify_mds(code, mode(state)).is_mds);
}

void BM_ForbiddenHyperplanes(benchmark::State& state) {
    const auto& code = combination_code();
    for (auto _ : state) benchmark::DoNotOptimize(forbidden_hyperplanes(code, mode(state)).size());
}

void BM_EstimateSuccess(benchmark::State& state) {
    const TrialConfig cfg{combination(), PrimeField(1009), 2, 64, 7};
    for (auto _ : state) benchmark::DoNotOptimize(estimate_success(cfg, Target::joint_family, mode(state)).successes);
}

}  // namespace

BENCHMARK(BM_EnumerateRt)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_VerifyMds)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ForbiddenHyperplanes)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EstimateSuccess)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    benchmark::AddCustomContext("omp_max_threads", std::to_string(omp_get_max_threads()));
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
