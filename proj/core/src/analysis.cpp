#include "lsqca/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lsqca {

std::vector<beat_t> ReferenceTrace::periods(std::uint32_t var) const {
    auto it = refs.find(var);
    if (it == refs.end() || it->second.size() < 2) return {};
    std::vector<beat_t> out;
    out.reserve(it->second.size() - 1);
    // references in the same beat are one reference; periods stay positive
    for (std::size_t i = 1; i < it->second.size(); i++) {
        beat_t d = it->second[i] - it->second[i - 1];
        if (d > 0) out.push_back(d);
    }
    return out;
}

std::vector<beat_t> ReferenceTrace::all_periods() const {
    std::vector<beat_t> out;
    for (const auto& [var, beats] : refs) {
        auto p = periods(var);
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

double ReferenceTrace::mean_magic_interval() const {
    if (magic_demand.size() < 2) return 0.0;
    double total = static_cast<double>(magic_demand.back() - magic_demand.front());
    return total / static_cast<double>(magic_demand.size() - 1);
}

ReferenceTrace reference_trace(const RunResult& r) {
    ReferenceTrace t;
    t.refs = r.per_qubit_refs;
    for (auto& [var, beats] : t.refs) std::sort(beats.begin(), beats.end());
    t.magic_demand = r.magic_demand_beats;
    std::sort(t.magic_demand.begin(), t.magic_demand.end());
    return t;
}

std::vector<std::pair<beat_t, double>> period_cdf(const std::vector<beat_t>& periods) {
    std::vector<beat_t> sorted = periods;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<beat_t, double>> cdf;
    std::size_t n = sorted.size();
    for (std::size_t i = 0; i < n; i++) {
        if (i + 1 < n && sorted[i + 1] == sorted[i]) continue;
        cdf.emplace_back(sorted[i], static_cast<double>(i + 1) / static_cast<double>(n));
    }
    return cdf;
}

std::vector<std::uint32_t> hotness_rank(const ReferenceTrace& t) {
    std::vector<std::pair<std::uint32_t, std::size_t>> counts;
    for (const auto& [var, beats] : t.refs) counts.emplace_back(var, beats.size());
    std::stable_sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::uint32_t> out;
    out.reserve(counts.size());
    for (auto& [var, cnt] : counts) out.push_back(var);
    return out;
}

// median over the qubits of each qubit's mean inter-reference period: a
// qubit's revisit interval, robust against short bursts inside one episode
double median_period(const ReferenceTrace& t, const std::vector<std::uint32_t>& vars) {
    std::vector<double> per_qubit;
    for (std::uint32_t v : vars) {
        auto p = t.periods(v);
        if (p.empty()) continue;
        double sum = 0.0;
        for (beat_t d : p) sum += static_cast<double>(d);
        per_qubit.push_back(sum / static_cast<double>(p.size()));
    }
    if (per_qubit.empty()) return 0.0;
    std::sort(per_qubit.begin(), per_qubit.end());
    std::size_t n = per_qubit.size();
    if (n % 2 == 1) return per_qubit[n / 2];
    return (per_qubit[n / 2 - 1] + per_qubit[n / 2]) / 2.0;
}

namespace {

SweepPoint sweep_point(const Program& p, const LayoutConfig& base_cfg, const SimOptions& opts,
                       double f, beat_t baseline_beats, std::uint32_t qubit_count,
                       const std::vector<std::uint32_t>& hotness) {
    SweepPoint pt;
    pt.f = f;
    try {
        LayoutConfig cfg = base_cfg;
        cfg.hybrid_fraction = f;
        std::vector<std::uint32_t> vars(qubit_count);
        std::iota(vars.begin(), vars.end(), 0);
        Layout l = build_layout(cfg, qubit_count);
        QubitMap map = assign_initial(l, vars, &hotness);
        RunResult r = run(p, l, map, opts);
        pt.beats = r.total_beats;
        pt.density = r.density;
        pt.overhead = baseline_beats > 0 ? static_cast<double>(r.total_beats) /
                                                   static_cast<double>(baseline_beats) -
                                               1.0
                                         : 0.0;
    } catch (const std::exception& e) {
        pt.failed = true;
        pt.error = e.what();
    }
    return pt;
}

}  // namespace

SweepCurve sweep_hybrid(const Program& p, const LayoutConfig& base_cfg, const SimOptions& opts,
                        int threads, std::uint32_t qubit_count) {
    SweepCurve curve;
    if (qubit_count == 0) {
        auto vars = program_variables(p);
        qubit_count = vars.empty() ? 0 : vars.back() + 1;
    }

    // hotness profile from the baseline executor: layout independent
    SimOptions profile_opts = opts;
    profile_opts.unlimited_msf = true;
    RunResult profile = run_baseline(p, base_cfg.factories, -1, profile_opts);
    std::vector<std::uint32_t> hotness = hotness_rank(reference_trace(profile));

    RunResult baseline = run_baseline(p, base_cfg.factories, base_cfg.buffer_capacity, opts);
    curve.baseline_beats = baseline.total_beats;

    std::vector<double> grid;
    for (int i = 0; i <= 20; i++) grid.push_back(static_cast<double>(i) * 0.05);

    curve.points.resize(grid.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < grid.size(); i++)
            curve.points[i] = sweep_point(p, base_cfg, opts, grid[i], curve.baseline_beats,
                                          qubit_count, hotness);
    } else {
        std::vector<std::future<SweepPoint>> futures;
        for (std::size_t i = 0; i < grid.size(); i++)
            futures.push_back(std::async(std::launch::async, sweep_point, std::cref(p),
                                         std::cref(base_cfg), std::cref(opts), grid[i],
                                         curve.baseline_beats, qubit_count, std::cref(hotness)));
        for (std::size_t i = 0; i < grid.size(); i++) curve.points[i] = futures[i].get();
    }
    return curve;
}

double geomean_overhead(const std::vector<double>& overheads) {
    if (overheads.empty()) throw std::invalid_argument("geomean of an empty set");
    double log_sum = 0.0;
    for (double o : overheads) {
        if (o <= -1.0) throw std::invalid_argument("overhead must be > -1");
        log_sum += std::log1p(o);
    }
    return std::expm1(log_sum / static_cast<double>(overheads.size()));
}

std::string sweep_csv(const SweepCurve& c) {
    std::ostringstream out;
    out << "f,density,overhead\n";
    for (const SweepPoint& pt : c.points) {
        if (pt.failed) continue;
        out << pt.f << "," << pt.density << "," << pt.overhead << "\n";
    }
    return out.str();
}

std::string refs_csv(const ReferenceTrace& t) {
    std::ostringstream out;
    out << "qubit,beat\n";
    for (const auto& [var, beats] : t.refs)
        for (beat_t b : beats) out << var << "," << b << "\n";
    return out.str();
}

std::string cdf_csv(const std::vector<std::pair<beat_t, double>>& cdf) {
    std::ostringstream out;
    out << "period,cdf\n";
    for (const auto& [period, frac] : cdf) out << period << "," << frac << "\n";
    return out.str();
}

}  // namespace lsqca
