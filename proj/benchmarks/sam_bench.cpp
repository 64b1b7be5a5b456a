#include <benchmark/benchmark.h>

#include <numeric>

#include "lsqca/sam_engine.hpp"

using namespace lsqca;

namespace {

Layout layout_for(SamKind kind, std::uint32_t qubits) {
    LayoutConfig cfg;
    cfg.sam_kind = kind;
    cfg.banks = 1;
    cfg.factories = 1;
    return build_layout(cfg, qubits);
}

std::vector<std::uint32_t> vars(std::uint32_t n) {
    std::vector<std::uint32_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

static void BM_PointLoadFarCell(benchmark::State& state) {
    auto n = static_cast<std::uint32_t>(state.range(0));
    Layout l = layout_for(SamKind::Point, n);
    QubitMap m = assign_initial(l, vars(n));
    SamEngine eng(l, m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eng.peek_load_cost(n - 1));
    }
}
BENCHMARK(BM_PointLoadFarCell)->Arg(64)->Arg(256)->Arg(1024);

static void BM_PointLoadStoreCycle(benchmark::State& state) {
    auto n = static_cast<std::uint32_t>(state.range(0));
    Layout l = layout_for(SamKind::Point, n);
    SamEngine eng(l, assign_initial(l, vars(n)));
    std::uint32_t v = n - 1;
    for (auto _ : state) {
        eng.load(v);
        eng.store(v, StorePolicy::LocalityAware);
    }
}
BENCHMARK(BM_PointLoadStoreCycle)->Arg(64)->Arg(256);

static void BM_LineLoadStoreCycle(benchmark::State& state) {
    auto n = static_cast<std::uint32_t>(state.range(0));
    Layout l = layout_for(SamKind::Line, n);
    SamEngine eng(l, assign_initial(l, vars(n)));
    std::uint32_t v = n - 1;
    for (auto _ : state) {
        eng.load(v);
        eng.store(v, StorePolicy::LocalityAware);
    }
}
BENCHMARK(BM_LineLoadStoreCycle)->Arg(64)->Arg(400);
