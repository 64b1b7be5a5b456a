#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lsqca/sim.hpp"

namespace lsqca {

struct ReferenceTrace {
    std::map<std::uint32_t, std::vector<beat_t>> refs;   // sorted issue beats per variable
    std::vector<beat_t> magic_demand;                    // PM issue beats

    std::vector<beat_t> periods(std::uint32_t var) const;
    std::vector<beat_t> all_periods() const;
    double mean_magic_interval() const;  // 0 when fewer than two demands
};

ReferenceTrace reference_trace(const RunResult& r);

// empirical CDF as (period, cumulative fraction) step points
std::vector<std::pair<beat_t, double>> period_cdf(const std::vector<beat_t>& periods);

// descending reference count, ties by ascending variable id
std::vector<std::uint32_t> hotness_rank(const ReferenceTrace& t);

// median over `vars` of each qubit's mean inter-reference period
double median_period(const ReferenceTrace& t, const std::vector<std::uint32_t>& vars);

struct SweepPoint {
    double f = 0.0;
    double density = 0.0;
    double overhead = 0.0;  // beats / baseline beats - 1
    beat_t beats = 0;
    bool failed = false;
    std::string error;
};

struct SweepCurve {
    std::vector<SweepPoint> points;  // f = 0, 0.05, ..., 1.0
    beat_t baseline_beats = 0;
};

// Rebuilds the layout per grid point, assigns by baseline-profiled hotness,
// runs, and records (f, density, overhead). Failed points are marked and the
// sweep continues. `threads` > 1 evaluates points concurrently.
// `qubit_count` sizes the layouts; 0 derives it from the program's variables
SweepCurve sweep_hybrid(const Program& p, const LayoutConfig& base_cfg, const SimOptions& opts,
                        int threads = 1, std::uint32_t qubit_count = 0);

double geomean_overhead(const std::vector<double>& overheads);

std::string sweep_csv(const SweepCurve& c);
std::string refs_csv(const ReferenceTrace& t);
std::string cdf_csv(const std::vector<std::pair<beat_t, double>>& cdf);

}  // namespace lsqca
