#include "lsqca/sam_engine.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace lsqca {

std::vector<CellCoord> BankRuntime::holes() const {
    std::vector<CellCoord> hs;
    for (int r = 0; r < geom.rows; r++) {
        if (geom.kind == SamKind::Line && r == aux_pos) continue;
        for (int c = 0; c < geom.row_len[static_cast<std::size_t>(r)]; c++) {
            if (occ[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] < 0)
                hs.push_back({r, c});
        }
    }
    return hs;
}

std::optional<std::vector<CellCoord>> bank_bfs(const BankGeometry& g, CellCoord from, CellCoord to,
                                               const std::set<CellCoord>& obstacles) {
    if (from == to) return std::vector<CellCoord>{};
    if (obstacles.count(to)) return std::nullopt;
    // horizontal first, then up, then down
    const int dr[4] = {0, 0, -1, 1};
    const int dc[4] = {-1, 1, 0, 0};
    std::map<CellCoord, CellCoord> parent;
    std::deque<CellCoord> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
        CellCoord cur = queue.front();
        queue.pop_front();
        if (cur == to) break;
        for (int k = 0; k < 4; k++) {
            CellCoord nxt{cur.row + dr[k], cur.col + dc[k]};
            if (!g.cell_exists(nxt.row, nxt.col)) continue;
            if (obstacles.count(nxt) || parent.count(nxt)) continue;
            parent[nxt] = cur;
            queue.push_back(nxt);
        }
    }
    if (!parent.count(to)) return std::nullopt;
    std::vector<CellCoord> path;
    for (CellCoord c = to; c != from; c = parent[c]) path.push_back(c);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<CellCoord> point_target_path(const BankGeometry& g, CellCoord t) {
    CellCoord port = g.port;
    int w = std::abs(t.col - port.col);
    int h = std::abs(t.row - port.row);
    int dh = port.col == t.col ? 0 : (port.col < t.col ? -1 : 1);
    int dv = port.row == t.row ? 0 : (port.row < t.row ? -1 : 1);

    std::vector<char> moves;
    int diag = std::min(w, h);
    for (int k = 0; k < diag; k++) {
        if (w >= h) {
            moves.push_back('V');
            moves.push_back('H');
        } else {
            moves.push_back('H');
            moves.push_back('V');
        }
    }
    for (int k = 0; k < w - diag; k++) moves.push_back('H');
    for (int k = 0; k < h - diag; k++) moves.push_back('V');

    std::vector<CellCoord> path;
    CellCoord pos = t;
    while (!moves.empty()) {
        std::size_t pick = moves.size();
        for (std::size_t i = 0; i < moves.size(); i++) {
            CellCoord dst = moves[i] == 'H' ? CellCoord{pos.row, pos.col + dh}
                                            : CellCoord{pos.row + dv, pos.col};
            if (g.cell_exists(dst.row, dst.col)) {
                pick = i;
                break;
            }
        }
        if (pick == moves.size()) throw SamError("target path blocked; bank geometry invalid");
        CellCoord dst = moves[pick] == 'H' ? CellCoord{pos.row, pos.col + dh}
                                           : CellCoord{pos.row + dv, pos.col};
        moves.erase(moves.begin() + static_cast<std::ptrdiff_t>(pick));
        path.push_back(dst);
        pos = dst;
    }
    return path;
}

SamEngine::SamEngine(const Layout& layout, const QubitMap& map) {
    banks_.reserve(layout.banks.size());
    for (const auto& g : layout.banks) {
        BankRuntime b;
        b.geom = g;
        b.occ.resize(static_cast<std::size_t>(g.rows));
        for (int r = 0; r < g.rows; r++)
            b.occ[static_cast<std::size_t>(r)].assign(
                static_cast<std::size_t>(g.row_len[static_cast<std::size_t>(r)]), -1);
        if (g.kind == SamKind::Line) b.aux_pos = g.aux_row;
        banks_.push_back(std::move(b));
    }
    for (std::size_t i = 0; i < map.variables.size(); i++) {
        std::uint32_t var = map.variables[i];
        const Placement& p = map.placements[i];
        VarState vs;
        if (p.conventional) {
            vs.conv = true;
        } else {
            vs.bank = p.bank;
            vs.cell = p.cell;
            banks_[static_cast<std::size_t>(p.bank)].at(p.cell) = var;
        }
        vars_[var] = vs;
    }
}

bool SamEngine::resident(std::uint32_t var) const {
    auto it = vars_.find(var);
    return it != vars_.end() && !it->second.conv && !it->second.out;
}

bool SamEngine::conventional(std::uint32_t var) const {
    auto it = vars_.find(var);
    return it != vars_.end() && it->second.conv;
}

bool SamEngine::loaded_out(std::uint32_t var) const {
    auto it = vars_.find(var);
    return it != vars_.end() && it->second.out;
}

int SamEngine::bank_of(std::uint32_t var) const {
    auto it = vars_.find(var);
    if (it == vars_.end()) throw SamError("unknown variable M" + std::to_string(var));
    return it->second.bank;
}

CellCoord SamEngine::cell_of(std::uint32_t var) const {
    auto it = vars_.find(var);
    if (it == vars_.end() || it->second.conv || it->second.out)
        throw SamError("variable M" + std::to_string(var) + " is not resident");
    return it->second.cell;
}

int SamEngine::current_row(std::uint32_t var) const { return cell_of(var).row; }

PointPlan plan_point_load(const BankRuntime& b, CellCoord target) {
    const BankGeometry& g = b.geom;
    PointPlan plan;
    if (target == g.port) {
        plan.beats = 1;
        plan.moves.push_back({g.port, g.port, 1});
        return plan;
    }

    std::vector<CellCoord> path = point_target_path(g, target);
    const std::size_t n = path.size();

    std::vector<CellCoord> holes = b.holes();
    if (holes.empty()) throw SamError("bank has no scan hole");

    auto dist_to = [&](CellCoord from, CellCoord to, const std::set<CellCoord>& obst)
        -> std::optional<std::size_t> {
        auto p = bank_bfs(g, from, to, obst);
        if (!p) return std::nullopt;
        return p->size();
    };

    // first serving hole: nearest to the first front
    std::size_t h1 = holes.size();
    std::size_t best = 0;
    for (std::size_t i = 0; i < holes.size(); i++) {
        auto d = dist_to(holes[i], path[0], {target});
        if (!d) continue;
        if (h1 == holes.size() || *d < best) {
            h1 = i;
            best = *d;
        }
    }
    if (h1 == holes.size()) throw SamError("first front unreachable");

    // second hole joins only if it reaches the second front no later than
    // the first hole could after its opening swap
    std::size_t h2 = holes.size();
    if (n >= 2 && holes.size() >= 2) {
        std::set<CellCoord> obst{target, path[0]};
        std::size_t best2 = 0;
        for (std::size_t i = 0; i < holes.size(); i++) {
            if (i == h1) continue;
            auto d = dist_to(holes[i], path[1], obst);
            if (!d) continue;
            if (h2 == holes.size() || *d < best2) {
                h2 = i;
                best2 = *d;
            }
        }
        if (h2 != holes.size()) {
            beat_t swap1 = static_cast<beat_t>(best) + 1;
            auto solo = dist_to(path[0], path[1], {target});
            beat_t solo_arrival = solo ? swap1 + *solo : ~beat_t{0};
            if (static_cast<beat_t>(best2) > solo_arrival) h2 = holes.size();
        }
    }

    struct ServingHole {
        CellCoord pos;
        beat_t avail = 0;
    };
    std::vector<ServingHole> serving{{holes[h1], 0}};
    if (h2 != holes.size()) serving.push_back({holes[h2], 0});
    const std::size_t nh = serving.size();

    beat_t prev_swap = 0;
    CellCoord tpos = target;
    std::set<CellCoord> prev_route_cells;
    beat_t prev_route_arrival = 0;
    for (std::size_t f = 0; f < n; f++) {
        ServingHole& h = serving[f % nh];
        // cells the target occupies between this hole's launch and the swap
        std::set<CellCoord> window;
        if (f < nh) {
            window.insert(target);
            for (std::size_t j = 0; j < f; j++) window.insert(path[j]);
        } else {
            for (std::size_t j = f - nh; j < f; j++) window.insert(path[j]);
        }

        beat_t launch = h.avail;
        std::optional<std::vector<CellCoord>> route;
        // keep concurrent hole routes spatially disjoint: while the previous
        // front's route is still in flight, steer around its cells; when no
        // such route exists, wait it out, then fall back to the settled target
        if (launch < prev_route_arrival && !prev_route_cells.empty()) {
            std::set<CellCoord> obst = window;
            obst.insert(prev_route_cells.begin(), prev_route_cells.end());
            route = bank_bfs(g, h.pos, path[f], obst);
        } else {
            route = bank_bfs(g, h.pos, path[f], window);
        }
        if (!route) {
            launch = std::max(launch, prev_route_arrival);
            route = bank_bfs(g, h.pos, path[f], window);
        }
        if (!route) {
            launch = std::max(launch, prev_swap);
            route = bank_bfs(g, h.pos, path[f], {tpos});
            if (!route) throw SamError("front unreachable from scan hole");
        }
        CellCoord hp = h.pos;
        for (std::size_t i = 0; i < route->size(); i++) {
            plan.moves.push_back({(*route)[i], hp, launch + 1 + static_cast<beat_t>(i)});
            hp = (*route)[i];
        }
        beat_t arrival = launch + static_cast<beat_t>(route->size());
        prev_route_cells = {route->begin(), route->end()};
        prev_route_cells.insert(h.pos);
        prev_route_arrival = arrival;

        beat_t swap_beat = std::max(prev_swap, arrival) + 1;
        plan.moves.push_back({tpos, path[f], swap_beat});
        h.pos = tpos;
        h.avail = swap_beat;
        tpos = path[f];
        prev_swap = swap_beat;
    }
    plan.beats = prev_swap + 1;
    plan.moves.push_back({g.port, g.port, plan.beats});
    return plan;
}

void SamEngine::apply_moves(BankRuntime& b, const std::vector<MoveStep>& moves) {
    std::vector<MoveStep> ordered = moves;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const MoveStep& a, const MoveStep& m) { return a.beat < m.beat; });
    for (const MoveStep& m : ordered) {
        if (m.from == m.to) {
            // port transfer out of the bank
            std::int64_t id = b.at(m.from);
            b.at(m.from) = -1;
            if (id >= 0) vars_[static_cast<std::uint32_t>(id)].out = true;
            continue;
        }
        std::int64_t id = b.at(m.from);
        b.at(m.to) = id;
        b.at(m.from) = -1;
        if (id >= 0) vars_[static_cast<std::uint32_t>(id)].cell = m.to;
    }
}

beat_t line_load_cost(const BankRuntime& b, CellCoord target) {
    if (target.row == b.docked_pos) return 1;
    return static_cast<beat_t>(std::abs(b.aux_pos - target.row)) + 1;
}

beat_t SamEngine::peek_load_cost(std::uint32_t var) const {
    auto it = vars_.find(var);
    if (it == vars_.end()) throw SamError("unknown variable M" + std::to_string(var));
    const VarState& vs = it->second;
    if (vs.conv) return 0;
    if (vs.out) throw SamError("variable M" + std::to_string(var) + " already loaded");
    const BankRuntime& b = banks_[static_cast<std::size_t>(vs.bank)];
    if (b.geom.kind == SamKind::Point) return plan_point_load(b, vs.cell).beats;
    return line_load_cost(b, vs.cell);
}

MoveCost SamEngine::line_shift_to(BankRuntime& b, int row) {
    MoveCost cost;
    int dir = row > b.aux_pos ? 1 : -1;
    while (std::abs(b.aux_pos - row) > 1) {
        int moving = b.aux_pos + dir;
        cost.beats += 1;
        for (int c = 0; c < b.geom.row_len[static_cast<std::size_t>(moving)]; c++) {
            CellCoord from{moving, c}, to{b.aux_pos, c};
            cost.path.push_back({from, to, cost.beats});
            std::int64_t id = b.at(from);
            b.at(to) = id;
            b.at(from) = -1;
            if (id >= 0) vars_[static_cast<std::uint32_t>(id)].cell = to;
        }
        if (b.docked_pos == moving) b.docked_pos = b.aux_pos;
        b.aux_pos = moving;
    }
    return cost;
}

MoveCost SamEngine::load(std::uint32_t var) {
    auto it = vars_.find(var);
    if (it == vars_.end()) throw SamError("unknown variable M" + std::to_string(var));
    VarState& vs = it->second;
    if (vs.conv) throw SamError("variable M" + std::to_string(var) + " lives in the conventional region");
    if (vs.out) throw SamError("variable M" + std::to_string(var) + " already loaded");

    BankRuntime& b = banks_[static_cast<std::size_t>(vs.bank)];
    if (b.geom.kind == SamKind::Point) {
        PointPlan plan = plan_point_load(b, vs.cell);
        vs.home = vs.cell;
        apply_moves(b, plan.moves);
        vs.out = true;
        vs.load_cost = plan.beats;
        vs.load_moves = plan.moves;
        return {plan.beats, std::move(plan.moves)};
    }

    // line SAM
    vs.home = vs.cell;
    vs.pre_aux = b.aux_pos;
    vs.pre_docked = b.docked_pos;
    int r = vs.cell.row;
    if (r == b.docked_pos) {
        MoveCost cost;
        cost.beats = 1;
        cost.path.push_back({vs.cell, vs.cell, 1});
        b.at(vs.cell) = -1;
        vs.out = true;
        vs.load_cost = 1;
        vs.load_moves = cost.path;
        vs.post_aux = b.aux_pos;
        vs.post_docked = b.docked_pos;
        return cost;
    }
    MoveCost cost = line_shift_to(b, r);
    // dock: the target's row slides into the auxiliary row
    cost.beats += 1;
    int old_aux = b.aux_pos;
    for (int c = 0; c < b.geom.row_len[static_cast<std::size_t>(r)]; c++) {
        CellCoord from{r, c}, to{old_aux, c};
        cost.path.push_back({from, to, cost.beats});
        std::int64_t id = b.at(from);
        b.at(to) = id;
        b.at(from) = -1;
        if (id >= 0) vars_[static_cast<std::uint32_t>(id)].cell = to;
    }
    b.docked_pos = old_aux;
    b.aux_pos = r;
    // lateral transport out of the docked row
    cost.beats += 1;
    cost.path.push_back({vs.cell, vs.cell, cost.beats});
    b.at(vs.cell) = -1;
    vs.out = true;
    vs.load_cost = cost.beats;
    vs.load_moves = cost.path;
    vs.post_aux = b.aux_pos;
    vs.post_docked = b.docked_pos;
    return cost;
}

namespace {

// can the load's slide sequence be run backwards on the current grid?
bool inverse_replay_applicable(const BankRuntime& b, const std::vector<MoveStep>& fwd) {
    auto occ = b.occ;
    for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) {
        auto& to = occ[static_cast<std::size_t>(it->to.row)][static_cast<std::size_t>(it->to.col)];
        auto& from =
            occ[static_cast<std::size_t>(it->from.row)][static_cast<std::size_t>(it->from.col)];
        if (it->from == it->to) {
            if (to >= 0) return false;  // re-entry cell must be a hole
            to = 1;                     // placeholder for the returning qubit
            continue;
        }
        if (from >= 0) return false;  // forward source must be open again
        from = to;
        to = -1;
    }
    return true;
}

}  // namespace

MoveCost SamEngine::store(std::uint32_t var, StorePolicy policy,
                          std::optional<CellCoord> partner) {
    auto it = vars_.find(var);
    if (it == vars_.end()) throw SamError("unknown variable M" + std::to_string(var));
    VarState& vs = it->second;
    if (vs.conv) throw SamError("variable M" + std::to_string(var) + " lives in the conventional region");
    if (!vs.out) throw SamError("variable M" + std::to_string(var) + " is not in the register");

    BankRuntime& b = banks_[static_cast<std::size_t>(vs.bank)];
    std::vector<CellCoord> holes = b.holes();
    if (holes.empty()) throw SamError("no free cell to store into");

    MoveCost cost;
    if (policy == StorePolicy::Reverse) {
        cost.beats = vs.load_cost;
        bool line_state_intact = b.geom.kind != SamKind::Line ||
                                 (b.aux_pos == vs.post_aux && b.docked_pos == vs.post_docked);
        if (line_state_intact && inverse_replay_applicable(b, vs.load_moves)) {
            beat_t beat = 0;
            for (auto rit = vs.load_moves.rbegin(); rit != vs.load_moves.rend(); ++rit) {
                MoveStep inv{rit->to, rit->from, ++beat};
                if (rit->from == rit->to) {
                    b.at(rit->to) = var;  // re-entry through the port / lateral
                    vars_[var].cell = rit->to;
                } else {
                    std::int64_t id = b.at(inv.from);
                    b.at(inv.to) = id;
                    b.at(inv.from) = -1;
                    if (id >= 0) vars_[static_cast<std::uint32_t>(id)].cell = inv.to;
                }
                cost.path.push_back(inv);
            }
            if (b.geom.kind == SamKind::Line) {
                b.aux_pos = vs.pre_aux;
                b.docked_pos = vs.pre_docked;
            }
            vs.out = false;
            return cost;
        }
        // bank changed since the load; park in the hole nearest the old home
        auto nearest = std::min_element(
            holes.begin(), holes.end(), [&](const CellCoord& a, const CellCoord& c) {
                int da = std::abs(a.row - vs.home.row) + std::abs(a.col - vs.home.col);
                int dc = std::abs(c.row - vs.home.row) + std::abs(c.col - vs.home.col);
                return std::tuple(da, a.row, a.col) < std::tuple(dc, c.row, c.col);
            });
        CellCoord dst = *nearest;
        cost.path.push_back({dst, dst, cost.beats});
        b.at(dst) = var;
        vs.out = false;
        vs.cell = dst;
        return cost;
    }

    if (b.geom.kind == SamKind::Point) {
        // nearest hole to the port, Manhattan metric
        auto nearest = std::min_element(
            holes.begin(), holes.end(), [&](const CellCoord& a, const CellCoord& c) {
                int da = std::abs(a.row - b.geom.port.row) + std::abs(a.col - b.geom.port.col);
                int dc = std::abs(c.row - b.geom.port.row) + std::abs(c.col - b.geom.port.col);
                return std::tuple(da, a.row, a.col) < std::tuple(dc, c.row, c.col);
            });
        CellCoord dst = *nearest;
        int d = std::abs(dst.row - b.geom.port.row) + std::abs(dst.col - b.geom.port.col);
        cost.beats = static_cast<beat_t>(std::max(1, d));
        cost.path.push_back({dst, dst, cost.beats});
        b.at(dst) = var;
        vs.out = false;
        vs.cell = dst;
        return cost;
    }

    // line SAM, locality-aware
    auto hole_in_row = [&](int row) -> std::optional<CellCoord> {
        for (const CellCoord& h : holes)
            if (h.row == row) return h;
        return std::nullopt;
    };

    CellCoord dst{};
    if (partner) {
        int partner_row = partner->row;
        if (auto h = hole_in_row(partner_row)) {
            dst = *h;
        } else {
            // move the nearest vacancy onto the partner's row, into its own
            // column when possible, else the closest other column
            auto v = *std::min_element(
                holes.begin(), holes.end(), [&](const CellCoord& a, const CellCoord& c) {
                    return std::tuple(std::abs(a.row - partner_row), a.row, a.col) <
                           std::tuple(std::abs(c.row - partner_row), c.row, c.col);
                });
            int col = v.col;
            int width = b.geom.row_len[static_cast<std::size_t>(partner_row)];
            if (CellCoord{partner_row, col} == *partner) {
                int best = -1;
                for (int cc = 0; cc < width; cc++) {
                    if (cc == partner->col) continue;
                    if (best < 0 || std::abs(cc - v.col) < std::abs(best - v.col)) best = cc;
                }
                col = best;
            }
            if (col < 0) {
                dst = v;  // single-column bank, nothing to align onto
            } else {
                CellCoord aligned{partner_row, col};
                std::int64_t displaced = b.at(aligned);
                b.at(aligned) = -1;
                b.at(v) = displaced;
                if (displaced >= 0) vars_[static_cast<std::uint32_t>(displaced)].cell = v;
                cost.beats += static_cast<beat_t>(std::abs(v.row - partner_row) +
                                                  std::abs(v.col - col));
                cost.path.push_back({aligned, v, cost.beats});
                dst = aligned;
            }
        }
    } else {
        dst = *std::min_element(
            holes.begin(), holes.end(), [&](const CellCoord& a, const CellCoord& c) {
                return std::tuple(std::abs(a.row - b.aux_pos), a.row, a.col) <
                       std::tuple(std::abs(c.row - b.aux_pos), c.row, c.col);
            });
    }

    if (dst.row == b.docked_pos) {
        cost.beats += 1;
        cost.path.push_back({dst, dst, cost.beats});
    } else {
        MoveCost shifts = line_shift_to(b, dst.row);
        cost.beats += shifts.beats;
        for (auto& m : shifts.path) cost.path.push_back(m);
        // dock the destination row, then transport laterally into it
        cost.beats += 1;
        int old_aux = b.aux_pos;
        for (int c = 0; c < b.geom.row_len[static_cast<std::size_t>(dst.row)]; c++) {
            CellCoord from{dst.row, c}, to{old_aux, c};
            cost.path.push_back({from, to, cost.beats});
            std::int64_t id = b.at(from);
            b.at(to) = id;
            b.at(from) = -1;
            if (id >= 0) vars_[static_cast<std::uint32_t>(id)].cell = to;
        }
        b.docked_pos = old_aux;
        b.aux_pos = dst.row;
        dst = {old_aux, dst.col};
        cost.beats += 1;
        cost.path.push_back({dst, dst, cost.beats});
    }
    b.at(dst) = var;
    vs.out = false;
    vs.cell = dst;
    return cost;
}

MoveCost SamEngine::in_memory(std::uint32_t var, InMemoryOp op) {
    auto it = vars_.find(var);
    if (it == vars_.end()) throw SamError("unknown variable M" + std::to_string(var));
    VarState& vs = it->second;
    if (vs.conv || vs.out)
        throw SamError("variable M" + std::to_string(var) + " is not resident in SAM");

    MoveCost cost;
    if (op == InMemoryOp::MX || op == InMemoryOp::MZ || op == InMemoryOp::PZ ||
        op == InMemoryOp::PP)
        return cost;  // no auxiliary cell needed

    beat_t latency = op == InMemoryOp::HD ? 3 : (op == InMemoryOp::PH ? 2 : 1);
    BankRuntime& b = banks_[static_cast<std::size_t>(vs.bank)];

    if (b.geom.kind == SamKind::Line) {
        if (std::abs(b.aux_pos - vs.cell.row) > 1) {
            MoveCost shifts = line_shift_to(b, vs.cell.row);
            cost.beats += shifts.beats;
            for (auto& m : shifts.path) cost.path.push_back(m);
        }
        cost.beats += latency;
        return cost;
    }

    // point SAM: route the nearest hole adjacent to the target
    std::vector<CellCoord> holes = b.holes();
    if (holes.empty()) throw SamError("bank has no scan hole");
    bool adjacent = false;
    for (const CellCoord& h : holes) {
        if (std::abs(h.row - vs.cell.row) + std::abs(h.col - vs.cell.col) == 1) {
            adjacent = true;
            break;
        }
    }
    if (!adjacent) {
        std::optional<std::vector<CellCoord>> best_route;
        CellCoord best_hole{};
        const int dr[4] = {0, 0, -1, 1};
        const int dc[4] = {-1, 1, 0, 0};
        for (const CellCoord& h : holes) {
            for (int k = 0; k < 4; k++) {
                CellCoord adj{vs.cell.row + dr[k], vs.cell.col + dc[k]};
                if (!b.geom.cell_exists(adj.row, adj.col)) continue;
                auto route = bank_bfs(b.geom, h, adj, {vs.cell});
                if (route && (!best_route || route->size() < best_route->size())) {
                    best_route = route;
                    best_hole = h;
                }
            }
        }
        if (!best_route) throw SamError("no auxiliary path to the target cell");
        std::vector<MoveStep> moves;
        CellCoord cur = best_hole;
        for (std::size_t i = 0; i < best_route->size(); i++) {
            moves.push_back({(*best_route)[i], cur, static_cast<beat_t>(i) + 1});
            cur = (*best_route)[i];
        }
        apply_moves(b, moves);
        cost.beats += static_cast<beat_t>(best_route->size());
        for (auto& m : moves) cost.path.push_back(m);
    }
    cost.beats += latency;
    return cost;
}

int SamEngine::hole_count(int bank) const {
    return static_cast<int>(banks_[static_cast<std::size_t>(bank)].holes().size());
}

bool SamEngine::hole_in_row(int bank, int row) const {
    const BankRuntime& b = banks_[static_cast<std::size_t>(bank)];
    if (row == b.aux_pos) return false;
    for (int c = 0; c < b.geom.row_len[static_cast<std::size_t>(row)]; c++)
        if (b.occ[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] < 0) return true;
    return false;
}

void SamEngine::check_consistency() const {
    for (const auto& [var, vs] : vars_) {
        if (vs.conv || vs.out) continue;
        const BankRuntime& b = banks_[static_cast<std::size_t>(vs.bank)];
        if (!b.geom.cell_exists(vs.cell.row, vs.cell.col))
            throw SamError("variable M" + std::to_string(var) + " mapped to a missing cell");
        if (b.at(vs.cell) != static_cast<std::int64_t>(var))
            throw SamError("occupancy and qubit map disagree at M" + std::to_string(var));
    }
    for (std::size_t bi = 0; bi < banks_.size(); bi++) {
        const BankRuntime& b = banks_[bi];
        long long occupied = 0;
        for (int r = 0; r < b.geom.rows; r++)
            for (int c = 0; c < b.geom.row_len[static_cast<std::size_t>(r)]; c++)
                if (b.occ[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] >= 0) occupied++;
        long long mapped = 0;
        for (const auto& [var, vs] : vars_)
            if (!vs.conv && !vs.out && vs.bank == static_cast<int>(bi)) mapped++;
        if (occupied != mapped) throw SamError("occupancy count mismatch in bank");
        if (b.geom.kind == SamKind::Line) {
            for (int c = 0; c < b.geom.row_len[static_cast<std::size_t>(b.aux_pos)]; c++)
                if (b.occ[static_cast<std::size_t>(b.aux_pos)][static_cast<std::size_t>(c)] >= 0)
                    throw SamError("auxiliary row is not empty");
        }
    }
}

}  // namespace lsqca
