#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "lsqca/floorplan.hpp"

namespace lsqca {

enum class StorePolicy { Reverse, LocalityAware };

enum class InMemoryOp { HD, PH, MZZ, MXX, MX, MZ, PZ, PP };

// One primitive patch slide: the patch at `from` moves into the hole at
// `to`, which takes one beat; slides on disjoint cell pairs may share a
// beat. The port-to-register transfer is recorded with from == to == port.
struct MoveStep {
    CellCoord from;
    CellCoord to;
    beat_t beat;
    bool operator==(const MoveStep&) const = default;
};

struct MoveCost {
    beat_t beats = 0;
    std::vector<MoveStep> path;
};

struct SamError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mutable occupancy of one bank. Point banks track hole positions implicitly
// through `occ`; line banks additionally track the auxiliary row position
// and which row group is docked for repeated same-line access.
struct BankRuntime {
    BankGeometry geom;
    // occ[r][c]: variable id, or -1 for a hole; index past row_len is invalid
    std::vector<std::vector<std::int64_t>> occ;
    int aux_pos = -1;     // line: current all-auxiliary row position
    int docked_pos = -1;  // line: row position holding the most recently docked row

    std::vector<CellCoord> holes() const;
    std::int64_t at(CellCoord c) const { return occ[static_cast<std::size_t>(c.row)][static_cast<std::size_t>(c.col)]; }
    std::int64_t& at(CellCoord c) { return occ[static_cast<std::size_t>(c.row)][static_cast<std::size_t>(c.col)]; }
};

/*
 * Load/store engine for point and line scan-access memory.
 *
 * Point-SAM cost model (the canonical dance): the target walks a monotone
 * staircase to the port, diagonal component first (vertical-major when the
 * horizontal distance dominates), clipped around missing cells of a reduced
 * bottom row. Before each unit move the serving hole is routed by BFS to the
 * move's destination cell, avoiding every cell the target occupies until the
 * route completes; swap k executes at beat max(swap_{k-1}, arrival_k) + 1.
 * With one hole this yields 6 beats per diagonal and 5 per straight step in
 * the interior; with two holes assignments alternate eagerly (a freed hole
 * immediately heads for the next unassigned front), which pipelines straight
 * runs to two moves per 6 beats. The final port-to-register transfer costs
 * one beat.
 *
 * Line-SAM: the auxiliary row migrates by whole-row shifts at one beat per
 * row; docking the target's row into the auxiliary row and the lateral
 * transport into the register column cost one beat each, and repeated access
 * to the docked row costs only the transport beat.
 */
class SamEngine {
  public:
    SamEngine(const Layout& layout, const QubitMap& map);

    bool resident(std::uint32_t var) const;       // currently in a SAM bank
    bool conventional(std::uint32_t var) const;   // pinned in the conventional region
    bool loaded_out(std::uint32_t var) const;     // in the CR
    int bank_of(std::uint32_t var) const;
    CellCoord cell_of(std::uint32_t var) const;
    int current_row(std::uint32_t var) const;

    // cost of loading without touching state (CX operand resolution)
    beat_t peek_load_cost(std::uint32_t var) const;

    MoveCost load(std::uint32_t var);
    // `partner` is the cell of a multi-qubit-operation partner still in the
    // bank; the line locality-aware store then aligns onto its row
    MoveCost store(std::uint32_t var, StorePolicy policy,
                   std::optional<CellCoord> partner = std::nullopt);
    // positioning plus the operation itself; MX/MZ/PZ/PP cost 0
    MoveCost in_memory(std::uint32_t var, InMemoryOp op);

    int hole_count(int bank) const;
    bool hole_in_row(int bank, int row) const;  // line banks: open vacancy in a row
    std::size_t bank_count() const { return banks_.size(); }
    const BankRuntime& bank(int b) const { return banks_[static_cast<std::size_t>(b)]; }

    void check_consistency() const;

  private:
    struct VarState {
        bool conv = false;
        bool out = false;       // loaded into the CR
        int bank = -1;
        CellCoord cell;         // current cell when resident
        CellCoord home;         // cell at load time, for reverse store
        beat_t load_cost = 0;   // recorded for reverse store
        std::vector<MoveStep> load_moves;  // replayed backwards by reverse store
        int pre_aux = -1;       // line bank state before the load
        int pre_docked = -1;
        int post_aux = -1;      // line bank state right after it; replay is
        int post_docked = -1;   // valid only while this still holds
    };

    void apply_moves(BankRuntime& b, const std::vector<MoveStep>& moves);
    MoveCost line_shift_to(BankRuntime& b, int row);  // shifts until aux adjacent to row

    std::vector<BankRuntime> banks_;
    std::map<std::uint32_t, VarState> vars_;
};

struct PointPlan {
    beat_t beats = 0;
    std::vector<MoveStep> moves;
};

// Arithmetic planner for the canonical point-SAM load dance on an arbitrary
// bank state; the engine applies its moves, tests compare its cost against
// the beat-level oracle.
PointPlan plan_point_load(const BankRuntime& b, CellCoord target);

// line-SAM load cost on an arbitrary bank state
beat_t line_load_cost(const BankRuntime& b, CellCoord target);

// Canonical staircase of the target from `t` to the bank port (positions
// after each unit move); exposed for the oracle and tests.
std::vector<CellCoord> point_target_path(const BankGeometry& g, CellCoord t);

// BFS shortest path avoiding `obstacles`; neighbor preference is horizontal
// first, then up, then down; returns the cells after `from`, empty when
// from == to, nullopt when unreachable.
std::optional<std::vector<CellCoord>> bank_bfs(const BankGeometry& g, CellCoord from, CellCoord to,
                                               const std::set<CellCoord>& obstacles);

}  // namespace lsqca
