#include <benchmark/benchmark.h>

#include "lsqca/compile.hpp"
#include "lsqca/generators.hpp"
#include "lsqca/lower.hpp"
#include "lsqca/sim.hpp"

using namespace lsqca;

namespace {

RunResult run_on(const Program& p, SamKind kind, int banks, int factories) {
    LayoutConfig cfg;
    cfg.sam_kind = kind;
    cfg.banks = banks;
    cfg.factories = factories;
    Layout l = build_layout(cfg, p.qubit_count);
    QubitMap m = assign_initial(l, program_variables(p));
    return run(p, l, m, {});
}

}  // namespace

static void BM_CompileAdder(benchmark::State& state) {
    GateCircuit c = gen_builtin(BuiltinKind::Adder, static_cast<std::uint32_t>(state.range(0)));
    for (auto _ : state) {
        Program p = compile_to_lsqca(lower_to_clifford_t(c));
        benchmark::DoNotOptimize(p.instructions.size());
    }
}
BENCHMARK(BM_CompileAdder)->Arg(8)->Arg(32);

static void BM_SimulateAdderPoint(benchmark::State& state) {
    Program p = compile_to_lsqca(
        lower_to_clifford_t(gen_builtin(BuiltinKind::Adder, static_cast<std::uint32_t>(state.range(0)))));
    for (auto _ : state) {
        RunResult r = run_on(p, SamKind::Point, 1, 1);
        benchmark::DoNotOptimize(r.total_beats);
    }
}
BENCHMARK(BM_SimulateAdderPoint)->Arg(4)->Arg(8);

static void BM_SimulateSelectLine(benchmark::State& state) {
    Program p = compile_to_lsqca(
        lower_to_clifford_t(gen_select(static_cast<std::uint32_t>(state.range(0)))));
    for (auto _ : state) {
        RunResult r = run_on(p, SamKind::Line, 1, 1);
        benchmark::DoNotOptimize(r.total_beats);
    }
}
BENCHMARK(BM_SimulateSelectLine)->Arg(2)->Arg(3);

static void BM_ParseProgram(benchmark::State& state) {
    Program p = compile_to_lsqca(lower_to_clifford_t(gen_builtin(BuiltinKind::Adder, 16)));
    std::string text = render_program(p);
    for (auto _ : state) {
        Program q = parse_program(text);
        benchmark::DoNotOptimize(q.instructions.size());
    }
}
BENCHMARK(BM_ParseProgram);
