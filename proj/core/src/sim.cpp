#include "lsqca/sim.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

namespace lsqca {

std::vector<std::uint32_t> program_variables(const Program& p) {
    std::set<std::uint32_t> vars;
    for (const Instruction& i : p.instructions)
        for (const Operand& o : i.operands)
            if (o.kind == OperandKind::Memory) vars.insert(o.index);
    return {vars.begin(), vars.end()};
}

namespace {

constexpr beat_t kNoBeat = std::numeric_limits<beat_t>::max();

std::uint64_t operand_key(const Operand& o) {
    return (static_cast<std::uint64_t>(o.kind) << 32) | o.index;
}

std::string cell_str(int bank, CellCoord c) {
    return "B" + std::to_string(bank) + "(" + std::to_string(c.row) + "," +
           std::to_string(c.col) + ")";
}

struct IssueOutcome {
    beat_t cost = 0;
    std::vector<std::pair<int, beat_t>> bank_busy;  // bank -> beats of movement lock
    std::string cells = "-";
    bool joined_batch = false;
};

// Scoreboarded dataflow scheduler shared by the SAM executor and the
// conventional baseline; `engine == nullptr` selects the baseline cost model.
class Scheduler {
  public:
    Scheduler(const Program& p, const SimOptions& opts, SamEngine* engine, const Layout* layout,
              Msf& msf)
        : prog_(p), opts_(opts), engine_(engine), msf_(msf) { (void)layout; }

    RunResult execute() {
        build_queues();
        RunResult res;
        res.instruction_count = prog_.instructions.size();
        res.trace.resize(prog_.instructions.size());
        const std::size_t n = prog_.instructions.size();
        std::size_t retired = 0;

        refresh_candidates();
        while (retired < n) {
            waiting_on_msf_ = false;
            value_wake_ = kNoBeat;
            bool progress = true;
            while (progress) {
                progress = false;
                // oldest-ready-first among issuable instructions
                for (auto it = candidates_.begin(); it != candidates_.end();) {
                    std::uint32_t idx = *it;
                    auto outcome = try_issue(idx);
                    if (!outcome) {
                        ++it;
                        continue;
                    }
                    it = candidates_.erase(it);
                    beat_t retire = now_ + outcome->cost;
                    res.trace[idx] = {idx, now_, retire, outcome->cells};
                    note_references(res, idx);
                    for (auto& [b, busy] : outcome->bank_busy) reserve_bank(b, now_ + busy);
                    if (retire == now_) {
                        finish(idx, retire);
                        retired++;
                        progress = true;
                        it = candidates_.begin();  // heads changed; rescan from the oldest
                    } else {
                        in_flight_.emplace(retire, idx);
                        progress = true;
                    }
                }
            }
            if (retired == n) break;

            beat_t next = in_flight_.empty() ? kNoBeat : in_flight_.begin()->first;
            if (!candidates_.empty() && waiting_on_msf_ && msf_.can_ever_produce())
                next = std::min(next, msf_.next_production_beat(now_));
            if (value_wake_ != kNoBeat) next = std::min(next, value_wake_);
            if (next == kNoBeat) throw DeadlockError(deadlock_report(retired));

            for (beat_t b = now_; b < next; b++) msf_.tick();
            now_ = next;
            while (!in_flight_.empty() && in_flight_.begin()->first == now_) {
                auto [beat, idx] = *in_flight_.begin();
                in_flight_.erase(in_flight_.begin());
                finish(idx, beat);
                retired++;
            }
        }

        res.total_beats = now_;
        res.pm_count = static_cast<std::uint64_t>(
            std::count_if(prog_.instructions.begin(), prog_.instructions.end(),
                          [](const Instruction& i) { return i.opcode == Opcode::PM; }));
        if (res.instruction_count > 0) {
            res.cpi_defined = true;
            res.cpi = static_cast<double>(res.total_beats) /
                      static_cast<double>(res.instruction_count);
            std::uint64_t nonzero = static_cast<std::uint64_t>(
                std::count_if(res.trace.begin(), res.trace.end(),
                              [](const TraceEvent& e) { return e.retire > e.issue; }));
            res.cpi_nonzero_only =
                nonzero ? static_cast<double>(res.total_beats) / static_cast<double>(nonzero) : 0.0;
        }
        return res;
    }

  private:
    void build_queues() {
        for (std::uint32_t i = 0; i < prog_.instructions.size(); i++) {
            std::set<std::uint64_t> keys;
            for (const Operand& o : prog_.instructions[i].operands) keys.insert(operand_key(o));
            for (std::uint64_t k : keys) queues_[k].push_back(i);
            if (i > 0 && prog_.instructions[i - 1].opcode == Opcode::SK)
                guard_of_[i] = i - 1;
        }
    }

    bool at_heads(std::uint32_t idx) const {
        const Instruction& inst = prog_.instructions[idx];
        for (const Operand& o : inst.operands) {
            auto it = queues_.find(operand_key(o));
            if (it == queues_.end() || it->second.empty() || it->second.front() != idx)
                return false;
        }
        if (auto g = guard_of_.find(idx); g != guard_of_.end() && !retired_.count(g->second))
            return false;
        return true;
    }

    void refresh_candidates() {
        for (std::uint32_t i = 0; i < prog_.instructions.size(); i++)
            if (!retired_.count(i) && !issued_.count(i) && at_heads(i)) candidates_.insert(i);
    }

    void finish(std::uint32_t idx, beat_t retire_beat) {
        retired_.insert(idx);
        const Instruction& inst = prog_.instructions[idx];
        for (const Operand& o : inst.operands) {
            auto& q = queues_[operand_key(o)];
            if (!q.empty() && q.front() == idx) q.pop_front();
        }
        if (writes_value(inst.opcode))
            value_ready_[inst.operands.back().index] = retire_beat + opts_.decoder_beats;
        // successors at new queue heads become candidates
        for (const Operand& o : inst.operands) {
            auto& q = queues_[operand_key(o)];
            if (!q.empty()) {
                std::uint32_t h = q.front();
                if (!issued_.count(h) && at_heads(h)) candidates_.insert(h);
            }
        }
        if (idx + 1 < prog_.instructions.size() && inst.opcode == Opcode::SK) {
            std::uint32_t h = idx + 1;
            if (!issued_.count(h) && !retired_.count(h) && at_heads(h)) candidates_.insert(h);
        }
    }

    void reserve_bank(int b, beat_t until) {
        auto& free_at = bank_free_[b];
        free_at = std::max(free_at, until);
    }

    bool bank_free(int b) const {
        auto it = bank_free_.find(b);
        return it == bank_free_.end() || it->second <= now_;
    }

    void note_references(RunResult& res, std::uint32_t idx) {
        const Instruction& inst = prog_.instructions[idx];
        for (const Operand& o : inst.operands)
            if (o.kind == OperandKind::Memory) res.per_qubit_refs[o.index].push_back(now_);
        if (inst.opcode == Opcode::PM) res.magic_demand_beats.push_back(now_);
    }

    // std::nullopt means "not issuable this beat"
    std::optional<IssueOutcome> try_issue(std::uint32_t idx) {
        const Instruction& inst = prog_.instructions[idx];

        // classical value readiness (SK reads)
        if (inst.opcode == Opcode::SK) {
            auto it = value_ready_.find(inst.operands[0].index);
            if (it == value_ready_.end()) return std::nullopt;
            if (it->second > now_) {
                value_wake_ = std::min(value_wake_, it->second);
                return std::nullopt;
            }
        }

        std::optional<IssueOutcome> out;
        if (engine_)
            out = try_issue_sam(idx, inst);
        else
            out = try_issue_baseline(inst);
        if (out) issued_.insert(idx);
        return out;
    }

    std::optional<IssueOutcome> try_issue_baseline(const Instruction& inst) {
        IssueOutcome out;
        switch (inst.opcode) {
            case Opcode::LD:
            case Opcode::ST:
            case Opcode::SK:
            case Opcode::PZ_C:
            case Opcode::PP_C:
            case Opcode::PZ_M:
            case Opcode::PP_M:
            case Opcode::MX_C:
            case Opcode::MZ_C:
            case Opcode::MX_M:
            case Opcode::MZ_M:
                out.cost = 0;
                break;
            case Opcode::HD_C:
            case Opcode::HD_M:
                out.cost = 3;
                break;
            case Opcode::PH_C:
            case Opcode::PH_M:
                out.cost = 2;
                break;
            case Opcode::MXX_C:
            case Opcode::MZZ_C:
            case Opcode::MXX_M:
            case Opcode::MZZ_M:
                out.cost = 1;
                break;
            case Opcode::PM:
                if (!opts_.unlimited_msf && !msf_.try_take()) {
                    waiting_on_msf_ = true;
                    return std::nullopt;
                }
                out.cost = 1;
                break;
            case Opcode::CX:
                out.cost = opts_.cx_baseline_beats;
                break;
        }
        return out;
    }

    std::optional<IssueOutcome> try_issue_sam(std::uint32_t idx, const Instruction& inst) {
        IssueOutcome out;
        auto mvar = [&](std::size_t k) { return inst.operands[k].index; };

        auto need_bank = [&](std::uint32_t var) -> std::optional<int> {
            if (engine_->conventional(var)) return std::nullopt;
            return engine_->bank_of(var);
        };

        switch (inst.opcode) {
            case Opcode::PZ_C:
            case Opcode::PP_C:
            case Opcode::SK:
                out.cost = 0;
                out.cells = "CR" + std::to_string(inst.operands.empty() ? 0u : inst.operands[0].index);
                if (inst.opcode == Opcode::SK) out.cells = "-";
                break;

            case Opcode::HD_C:
            case Opcode::PH_C:
            case Opcode::MX_C:
            case Opcode::MZ_C:
            case Opcode::MXX_C:
            case Opcode::MZZ_C: {
                out.cost = nominal_latency(inst.opcode).beats;
                out.cells = "CR" + std::to_string(inst.operands[0].index);
                if (inst.opcode == Opcode::MXX_C || inst.opcode == Opcode::MZZ_C)
                    out.cells += ",CR" + std::to_string(inst.operands[1].index);
                break;
            }

            case Opcode::PM:
                if (!opts_.unlimited_msf && !msf_.try_take()) {
                    waiting_on_msf_ = true;
                    return std::nullopt;
                }
                out.cost = 1;
                out.cells = "MSF->CR" + std::to_string(inst.operands[0].index);
                break;

            case Opcode::PZ_M:
            case Opcode::PP_M:
            case Opcode::MX_M:
            case Opcode::MZ_M: {
                std::uint32_t var = mvar(0);
                out.cost = 0;
                out.cells = engine_->conventional(var)
                                ? "CONV"
                                : cell_str(engine_->bank_of(var), engine_->cell_of(var));
                break;
            }

            case Opcode::HD_M:
            case Opcode::PH_M: {
                std::uint32_t var = mvar(0);
                beat_t latency = inst.opcode == Opcode::HD_M ? 3 : 2;
                if (engine_->conventional(var)) {
                    out.cost = latency;
                    out.cells = "CONV";
                    break;
                }
                int bank = engine_->bank_of(var);
                // join an open co-row window on line SAM
                if (opts_.line_batching && batch_.open && batch_.index + 1 == idx &&
                    batch_.opcode == inst.opcode && batch_.bank == bank &&
                    engine_->bank(bank).geom.kind == SamKind::Line &&
                    engine_->current_row(var) == batch_.row && now_ < batch_.retire) {
                    out.cost = batch_.retire - now_;
                    out.cells = cell_str(bank, engine_->cell_of(var)) + "+batch";
                    out.joined_batch = true;
                    batch_.index = idx;
                    return out;
                }
                if (!bank_free(bank)) return std::nullopt;
                MoveCost mc =
                    engine_->in_memory(var, inst.opcode == Opcode::HD_M ? InMemoryOp::HD
                                                                        : InMemoryOp::PH);
                out.cost = mc.beats;
                out.bank_busy.emplace_back(bank, mc.beats);
                out.cells = cell_str(bank, engine_->cell_of(var));
                if (engine_->bank(bank).geom.kind == SamKind::Line) {
                    batch_ = {true, idx, inst.opcode, bank, engine_->current_row(var),
                              now_ + mc.beats};
                }
                break;
            }

            case Opcode::MXX_M:
            case Opcode::MZZ_M: {
                std::uint32_t var = mvar(1);
                if (engine_->conventional(var)) {
                    out.cost = 1;
                    out.cells = "CR" + std::to_string(inst.operands[0].index) + ",CONV";
                    break;
                }
                int bank = engine_->bank_of(var);
                if (!bank_free(bank)) return std::nullopt;
                MoveCost mc = engine_->in_memory(
                    var, inst.opcode == Opcode::MXX_M ? InMemoryOp::MXX : InMemoryOp::MZZ);
                out.cost = mc.beats;
                out.bank_busy.emplace_back(bank, mc.beats);
                out.cells = "CR" + std::to_string(inst.operands[0].index) + "," +
                            cell_str(bank, engine_->cell_of(var));
                break;
            }

            case Opcode::LD: {
                std::uint32_t var = mvar(0);
                if (engine_->conventional(var)) {
                    out.cost = 0;
                    out.cells = "CONV->CR" + std::to_string(inst.operands[1].index);
                    break;
                }
                auto bank = need_bank(var);
                if (bank && !bank_free(*bank)) return std::nullopt;
                std::string src = cell_str(*bank, engine_->cell_of(var));
                MoveCost mc = engine_->load(var);
                out.cost = mc.beats;
                out.bank_busy.emplace_back(*bank, mc.beats);
                out.cells = src + "->CR" + std::to_string(inst.operands[1].index);
                break;
            }

            case Opcode::ST: {
                std::uint32_t var = mvar(1);
                if (engine_->conventional(var)) {
                    out.cost = 0;
                    out.cells = "CR" + std::to_string(inst.operands[0].index) + "->CONV";
                    break;
                }
                int bank = engine_->bank_of(var);
                if (!bank_free(bank)) return std::nullopt;
                MoveCost mc = engine_->store(var, opts_.store_policy);
                out.cost = mc.beats;
                out.bank_busy.emplace_back(bank, mc.beats);
                out.cells = "CR" + std::to_string(inst.operands[0].index) + "->" +
                            cell_str(bank, engine_->cell_of(var));
                break;
            }

            case Opcode::CX: {
                std::uint32_t a = mvar(0), b = mvar(1);
                bool conv_a = engine_->conventional(a), conv_b = engine_->conventional(b);
                std::optional<int> bank_a = need_bank(a), bank_b = need_bank(b);
                if (bank_a && !bank_free(*bank_a)) return std::nullopt;
                if (bank_b && !bank_free(*bank_b)) return std::nullopt;

                beat_t la = conv_a ? 0 : engine_->peek_load_cost(a);
                beat_t lb = conv_b ? 0 : engine_->peek_load_cost(b);
                std::uint32_t loaded = la <= lb ? a : b;
                std::uint32_t other = loaded == a ? b : a;
                bool conv_loaded = loaded == a ? conv_a : conv_b;
                bool conv_other = loaded == a ? conv_b : conv_a;

                std::string lcell = conv_loaded ? "CONV" : "";
                std::string ocell = conv_other ? "CONV" : "";
                beat_t load_beats = 0;
                if (!conv_loaded) {
                    lcell = cell_str(engine_->bank_of(loaded), engine_->cell_of(loaded));
                    load_beats = engine_->load(loaded).beats;
                }
                beat_t pos_beats = 0;
                if (!conv_other) {
                    ocell = cell_str(engine_->bank_of(other), engine_->cell_of(other));
                    // in_memory charges positioning + 1 beat of lattice surgery
                    pos_beats = engine_->in_memory(other, InMemoryOp::MXX).beats - 1;
                }
                // the load and the scan positioning overlap across distinct
                // banks; in one bank the scan resource serializes them
                bool distinct_banks = (!bank_a || !bank_b) || (*bank_a != *bank_b);
                beat_t cost = distinct_banks ? std::max(load_beats, pos_beats)
                                             : load_beats + pos_beats;
                cost += 1;  // ZZ merge with a CR auxiliary cell
                cost += 1;  // XX lattice surgery with the in-memory operand
                // ancilla measurement is free; store the loaded operand back.
                // Only one qubit returns to memory here, so the two-vacancy
                // co-row alignment does not apply; a co-row vacancy is still
                // taken when one is already open.
                if (!conv_loaded) {
                    std::optional<CellCoord> hint;
                    if (!conv_other && engine_->bank_of(other) == engine_->bank_of(loaded) &&
                        engine_->bank(engine_->bank_of(other)).geom.kind == SamKind::Line &&
                        engine_->hole_in_row(engine_->bank_of(other),
                                             engine_->current_row(other)))
                        hint = engine_->cell_of(other);
                    cost += engine_->store(loaded, opts_.store_policy, hint).beats;
                }
                out.cost = cost;
                std::optional<int> bank_loaded = loaded == a ? bank_a : bank_b;
                std::optional<int> bank_other = loaded == a ? bank_b : bank_a;
                if (bank_loaded) out.bank_busy.emplace_back(*bank_loaded, cost);
                if (bank_other && (!bank_loaded || *bank_other != *bank_loaded)) {
                    // the partner bank is done once its lattice surgery fires
                    beat_t other_busy = std::max(load_beats, pos_beats) + 2;
                    out.bank_busy.emplace_back(*bank_other, other_busy);
                }
                out.cells = (loaded == a ? lcell + "," + ocell : ocell + "," + lcell);
                break;
            }
        }
        return out;
    }

    std::string deadlock_report(std::size_t retired) const {
        std::ostringstream out;
        out << "deadlock at beat " << now_ << ": " << retired << "/"
            << prog_.instructions.size() << " instructions retired, nothing issuable\n";
        int shown = 0;
        for (std::uint32_t idx : candidates_) {
            const Instruction& inst = prog_.instructions[idx];
            out << "  blocked #" << idx << " " << render_instruction(inst);
            if (inst.opcode == Opcode::PM)
                out << " (waiting for magic state; factories=" << msf_.factories()
                    << " stock=" << msf_.stock() << ")";
            if (inst.opcode == Opcode::SK) out << " (classical value not ready)";
            out << "\n";
            if (++shown >= 5) break;
        }
        return out.str();
    }

    const Program& prog_;
    const SimOptions& opts_;
    SamEngine* engine_;
    Msf& msf_;

    beat_t now_ = 0;
    std::map<std::uint64_t, std::deque<std::uint32_t>> queues_;
    std::map<std::uint32_t, std::uint32_t> guard_of_;  // instruction -> guarding SK
    std::set<std::uint32_t> candidates_;
    std::set<std::uint32_t> issued_;
    std::set<std::uint32_t> retired_;
    std::multimap<beat_t, std::uint32_t> in_flight_;
    std::map<int, beat_t> bank_free_;
    std::map<std::uint32_t, beat_t> value_ready_;
    bool waiting_on_msf_ = false;
    beat_t value_wake_ = kNoBeat;

    struct BatchWindow {
        bool open = false;
        std::uint32_t index = 0;
        Opcode opcode = Opcode::HD_M;
        int bank = -1;
        int row = -1;
        beat_t retire = 0;
    } batch_;
};

}  // namespace

RunResult run(const Program& p, const Layout& l, const QubitMap& map, const SimOptions& opts) {
    long long register_capacity = l.cr_register_cells + l.conventional_data;
    if (p.register_count > register_capacity)
        throw RunError("program needs " + std::to_string(p.register_count) +
                       " register cells, layout provides " + std::to_string(register_capacity));
    auto vars = program_variables(p);
    for (std::uint32_t v : vars)
        if (!map.find(v)) throw RunError("variable M" + std::to_string(v) + " is not mapped");

    SamEngine engine(l, map);
    Msf msf(l.config.factories, l.config.buffer_capacity, opts.warm_msf);
    Scheduler sched(p, opts, &engine, &l, msf);
    RunResult res = sched.execute();
    res.density = memory_density(l, static_cast<std::uint32_t>(map.variables.size()));
    engine.check_consistency();
    return res;
}

RunResult run_baseline(const Program& p, int factories, long long buffer_capacity,
                       const SimOptions& opts) {
    Msf msf(factories, buffer_capacity < 0 ? 2LL * factories : buffer_capacity, opts.warm_msf);
    Scheduler sched(p, opts, nullptr, nullptr, msf);
    RunResult res = sched.execute();
    res.density = 0.5;
    return res;
}

std::string render_trace(const Program& p, const RunResult& r) {
    std::ostringstream out;
    for (const TraceEvent& e : r.trace) {
        const Instruction& inst = p.instructions[e.index];
        out << e.issue << " " << e.retire << " " << render_instruction(inst) << " " << e.cells
            << "\n";
    }
    return out.str();
}

std::string render_summary(const RunResult& r) {
    std::ostringstream out;
    out << "total_beats " << r.total_beats << "\n";
    out << "instruction_count " << r.instruction_count << "\n";
    out << "cpi " << (r.cpi_defined ? r.cpi : 0.0) << (r.cpi_defined ? "" : " undefined") << "\n";
    out << "cpi_nonzero_only " << r.cpi_nonzero_only << "\n";
    out << "pm_count " << r.pm_count << "\n";
    out << "density " << r.density << "\n";
    return out.str();
}

}  // namespace lsqca
