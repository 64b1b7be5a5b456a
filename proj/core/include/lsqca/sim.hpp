#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lsqca/floorplan.hpp"
#include "lsqca/isa.hpp"
#include "lsqca/msf.hpp"
#include "lsqca/sam_engine.hpp"

namespace lsqca {

struct SimOptions {
    StorePolicy store_policy = StorePolicy::LocalityAware;
    beat_t cx_baseline_beats = 2;  // CX price on the conventional floorplan
    beat_t decoder_beats = 0;      // outcome readiness after measurement retire
    bool warm_msf = false;         // start with a full magic-state buffer
    bool unlimited_msf = false;    // profiling mode: PM always granted
    bool line_batching = true;     // co-row HD/PH window sharing on line SAM
};

struct TraceEvent {
    std::uint32_t index = 0;
    beat_t issue = 0;
    beat_t retire = 0;
    std::string cells;
};

struct RunResult {
    beat_t total_beats = 0;
    std::uint64_t instruction_count = 0;
    bool cpi_defined = false;
    double cpi = 0.0;
    double cpi_nonzero_only = 0.0;
    std::uint64_t pm_count = 0;
    double density = 0.0;
    std::vector<TraceEvent> trace;
    std::map<std::uint32_t, std::vector<beat_t>> per_qubit_refs;
    std::vector<beat_t> magic_demand_beats;
};

struct DeadlockError : std::runtime_error {
    explicit DeadlockError(const std::string& what) : std::runtime_error(what) {}
};

struct RunError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Beat-accurate execution on a layout. Issue is dataflow with program-order
// priority; per-operand order is preserved, banks serve one movement at a
// time, SK always takes the longer path, measurement outcomes are known at
// retire. Deterministic.
RunResult run(const Program& p, const Layout& l, const QubitMap& map,
              const SimOptions& opts = {});

// Optimistic conventional-floorplan executor: loads and stores are free,
// everything else at its fixed price, parallelism limited only by operand
// order and magic-state grants. 50% density by construction.
RunResult run_baseline(const Program& p, int factories, long long buffer_capacity = -1,
                       const SimOptions& opts = {});

// line-delimited `issue retire opcode operands cells`
std::string render_trace(const Program& p, const RunResult& r);
std::string render_summary(const RunResult& r);

std::vector<std::uint32_t> program_variables(const Program& p);

}  // namespace lsqca
