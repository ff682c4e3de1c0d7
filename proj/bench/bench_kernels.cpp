// Serial reference versus OpenMP kernels on random games.

#include <benchmark/benchmark.h>

#include <random>

#include "wlg/limit.hpp"
#include "wlg/oracle.hpp"

using namespace wlg;

namespace {

ProductArena make_product(std::size_t n, std::size_t s, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    const std::vector<Color> colors{Color{"a"}, Color{"b"}, Color{"c"}};
    std::vector<VertexRecord> vertices;
    std::vector<EdgeRecord> edges;
    for (std::size_t v = 0; v < n; ++v) {
        vertices.push_back({"v" + std::to_string(v), uniform(0, 1) == 0 ? Player::zero : Player::one,
                            colors[uniform(0, 2)]});
        std::vector<std::size_t> targets;
        for (std::size_t k = uniform(1, 3); targets.size() < k;) {
            const std::size_t t = uniform(0, n - 1);
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
                targets.push_back(t);
            }
        }
        for (std::size_t t : targets) {
            edges.push_back({v, t, static_cast<std::int64_t>(uniform(0, 5))});
        }
    }
    std::vector<std::string> states;
    std::vector<StateIndex> accepting;
    for (std::size_t q = 0; q < s; ++q) {
        states.push_back("q" + std::to_string(q));
        if (q > 0 && uniform(0, 3) == 0) {
            accepting.push_back(q);
        }
    }
    Dfa d(states, colors, 0, accepting);
    for (std::size_t q = 0; q < s; ++q) {
        for (std::size_t c = 0; c < colors.size(); ++c) {
            d.set_transition(q, c, uniform(0, s - 1));
        }
    }
    return build_product(Arena(std::move(vertices), std::move(edges)), d);
}

Exec exec_of(const benchmark::State& state) { return state.range(1) == 0 ? Exec::serial : Exec::parallel; }

void BM_ReachStep(benchmark::State& state) {
    const ProductArena p = make_product(static_cast<std::size_t>(state.range(0)), 10, 1);
    const Ranking r = reach_fixpoint(p, p.goal(), Exec::serial).ranks;
    Ranking out;
    for (auto _ : state) {
        const bool ok = exec_of(state) == Exec::serial ? kernels::reach_step_serial(p.graph(), p.goal(), r, out)
                                                       : kernels::reach_step_omp(p.graph(), p.goal(), r, out);
        benchmark::DoNotOptimize(ok);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.num_vertices()));
}

void BM_LimitFixpoint(benchmark::State& state) {
    const ProductArena p = make_product(static_cast<std::size_t>(state.range(0)), 10, 2);
    for (auto _ : state) {
        LimitSolution sol = limit_fixpoint(p, exec_of(state));
        benchmark::DoNotOptimize(sol.ranks.data());
    }
}

void BM_OracleLimit(benchmark::State& state) {
    const ProductArena p = make_product(static_cast<std::size_t>(state.range(0)), 3, 3);
    for (auto _ : state) {
        Ranking r = oracle_limit_value(p, exec_of(state));
        benchmark::DoNotOptimize(r.data());
    }
}

} // namespace

BENCHMARK(BM_ReachStep)->ArgsProduct({{200, 2000, 20000}, {0, 1}})->ArgNames({"n", "omp"});
BENCHMARK(BM_LimitFixpoint)->ArgsProduct({{50, 200}, {0, 1}})->ArgNames({"n", "omp"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleLimit)->ArgsProduct({{8, 16}, {0, 1}})->ArgNames({"n", "omp"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
