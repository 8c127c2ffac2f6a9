#include "iohoem/hierarchy.hpp"
#include "iohoem/markovian.hpp"
#include "iohoem/scenarios.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace iohoem;

namespace {

Hierarchy rabi_hierarchy(int nmax)
{
    HierarchySpec sp;
    sp.system = {cplx{0.5} * pauli::z(), {pauli::x()}};
    sp.bath = single_coupling_table(ExponentialSeries{{cplx{0.25}, cplx{1.0, 1.0}}});
    sp.max_tier = nmax;
    return Hierarchy(sp);
}

std::vector<cplx> random_state(std::size_t n)
{
    std::mt19937 rng(1);
    std::normal_distribution<double> d;
    std::vector<cplx> x(n);
    for (auto& v : x)
        v = {d(rng), d(rng)};
    return x;
}

void BM_rhs_parallel(benchmark::State& st)
{
    const Hierarchy h = rabi_hierarchy(static_cast<int>(st.range(0)));
    const auto x = random_state(h.state_size());
    std::vector<cplx> y(x.size());
    for (auto _ : st) {
        h.rhs(0.3, x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
    }
    st.counters["adms"] = static_cast<double>(h.space().size());
}

void BM_rhs_serial(benchmark::State& st)
{
    const Hierarchy h = rabi_hierarchy(static_cast<int>(st.range(0)));
    const auto x = random_state(h.state_size());
    std::vector<cplx> y(x.size());
    for (auto _ : st) {
        h.rhs_serial(0.3, x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
    }
    st.counters["adms"] = static_cast<double>(h.space().size());
}

void BM_markov_grid(benchmark::State& st)
{
    const auto cfg = reference_scattering_config();
    std::vector<double> xs;
    for (int i = 0; i < 21; ++i)
        xs.push_back(-2.0 + 0.2 * i);
    for (auto _ : st)
        benchmark::DoNotOptimize(markov_density_grid(cfg, pauli::ground_projector(), {1.0, 2.0}, xs));
}

void BM_markov_grid_serial(benchmark::State& st)
{
    const auto cfg = reference_scattering_config();
    std::vector<double> xs;
    for (int i = 0; i < 21; ++i)
        xs.push_back(-2.0 + 0.2 * i);
    for (auto _ : st)
        benchmark::DoNotOptimize(markov_density_grid_serial(cfg, pauli::ground_projector(), {1.0, 2.0}, xs));
}

}  // namespace

BENCHMARK(BM_rhs_parallel)->Arg(6)->Arg(10)->Arg(14);
BENCHMARK(BM_rhs_serial)->Arg(6)->Arg(10)->Arg(14);
BENCHMARK(BM_markov_grid)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_markov_grid_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
