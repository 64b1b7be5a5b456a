#include "lsqca/sam_oracle.hpp"

#include <algorithm>

namespace lsqca {

namespace {

struct Agent {
    CellCoord pos;
    std::vector<CellCoord> route;  // remaining cells to walk
    std::size_t step = 0;
    beat_t free_at = 0;     // busy through this beat
    bool waiting = false;   // deferred replan after the previous swap
};

beat_t oracle_point_load(const BankRuntime& bank0, CellCoord target) {
    BankRuntime b = bank0;
    const BankGeometry& g = b.geom;
    if (target == g.port) return 1;

    const std::vector<CellCoord> path = point_target_path(g, target);
    const std::size_t n = path.size();

    std::vector<CellCoord> holes = b.holes();
    if (holes.empty()) throw SamError("oracle: no hole in bank");

    auto dist = [&](CellCoord from, CellCoord to,
                    const std::set<CellCoord>& obst) -> std::optional<std::size_t> {
        auto p = bank_bfs(g, from, to, obst);
        if (!p) return std::nullopt;
        return p->size();
    };

    // serving-hole selection, same documented rule as the engine
    std::size_t h1 = holes.size(), h2 = holes.size();
    std::size_t d1 = 0;
    for (std::size_t i = 0; i < holes.size(); i++) {
        auto d = dist(holes[i], path[0], {target});
        if (d && (h1 == holes.size() || *d < d1)) {
            h1 = i;
            d1 = *d;
        }
    }
    if (h1 == holes.size()) throw SamError("oracle: first front unreachable");
    if (n >= 2 && holes.size() >= 2) {
        std::size_t d2 = 0;
        for (std::size_t i = 0; i < holes.size(); i++) {
            if (i == h1) continue;
            auto d = dist(holes[i], path[1], {target, path[0]});
            if (d && (h2 == holes.size() || *d < d2)) {
                h2 = i;
                d2 = *d;
            }
        }
        if (h2 != holes.size()) {
            auto solo = dist(path[0], path[1], {target});
            beat_t solo_arrival = solo ? static_cast<beat_t>(d1) + 1 + *solo : ~beat_t{0};
            if (static_cast<beat_t>(d2) > solo_arrival) h2 = holes.size();
        }
    }

    std::vector<Agent> agents;
    agents.push_back({holes[h1], {}, 0, 0, false});
    if (h2 != holes.size()) agents.push_back({holes[h2], {}, 0, 0, false});
    const std::size_t nh = agents.size();

    CellCoord tpos = target;
    std::size_t next_swap = 0;        // index into path
    std::size_t target_index = 0;     // tpos == path[target_index - 1]
    beat_t prev_swap_beat = 0;
    std::set<CellCoord> prev_route_cells;
    beat_t prev_route_arrival = 0;

    // obstacle window for the route to front f planned when the target sits
    // at position index `at` (0 = start cell): the cells the target occupies
    // from then until swap f. Concurrent routes stay spatially disjoint or
    // are serialized, exactly as in the engine's planner.
    auto plan = [&](Agent& a, std::size_t f, std::size_t at, beat_t freed) -> bool {
        std::set<CellCoord> window;
        for (std::size_t j = at; j <= f; j++) window.insert(j == 0 ? target : path[j - 1]);
        beat_t launch = freed;
        std::optional<std::vector<CellCoord>> r;
        if (launch < prev_route_arrival && !prev_route_cells.empty()) {
            std::set<CellCoord> obst = window;
            obst.insert(prev_route_cells.begin(), prev_route_cells.end());
            r = bank_bfs(g, a.pos, path[f], obst);
        } else {
            r = bank_bfs(g, a.pos, path[f], window);
        }
        if (!r) {
            launch = std::max(launch, prev_route_arrival);
            r = bank_bfs(g, a.pos, path[f], window);
        }
        if (!r) return false;
        a.route = *r;
        a.step = 0;
        a.waiting = false;
        a.free_at = launch;
        prev_route_cells = {r->begin(), r->end()};
        prev_route_cells.insert(a.pos);
        prev_route_arrival = launch + static_cast<beat_t>(r->size());
        return true;
    };

    // initial launches
    for (std::size_t i = 0; i < nh; i++) {
        if (i >= n) break;
        if (!plan(agents[i], i, 0, 0)) agents[i].waiting = true;
    }

    auto is_empty = [&](CellCoord c) { return b.at(c) < 0; };

    beat_t beat = 0;
    const beat_t guard = 64 * static_cast<beat_t>(g.rows + g.cols + 4) *
                         static_cast<beat_t>(n + 2);
    while (next_swap < n) {
        beat++;
        if (beat > guard) throw SamError("oracle: dance failed to converge");

        std::vector<std::pair<CellCoord, CellCoord>> touched;  // from,to this beat
        auto disjoint_ok = [&](CellCoord x, CellCoord y) {
            for (auto& [f2, t2] : touched)
                if (f2 == x || f2 == y || t2 == x || t2 == y) return false;
            return true;
        };

        // swap first when the serving agent stands ready
        Agent& server = agents[next_swap % nh];
        if (server.route.empty() && !server.waiting && server.pos == path[next_swap] &&
            server.free_at < beat && prev_swap_beat < beat) {
            CellCoord front = path[next_swap];
            if (!is_empty(front)) throw SamError("oracle: front cell not a hole at swap");
            std::int64_t id = b.at(tpos);
            b.at(front) = id;
            b.at(tpos) = -1;
            touched.emplace_back(tpos, front);
            server.pos = tpos;
            server.free_at = beat;
            prev_swap_beat = beat;
            tpos = front;
            next_swap++;
            target_index++;
            // a deferred agent replans once the swap just before its front
            // has settled, routing around the resting target only; this is
            // front next_swap, so it precedes the server's relaunch
            for (std::size_t ai = 0; ai < nh; ai++) {
                Agent& a = agents[ai];
                if (!a.waiting || next_swap >= n) continue;
                if ((next_swap % nh) != ai) continue;
                auto r = bank_bfs(g, a.pos, path[next_swap], {tpos});
                if (!r) throw SamError("oracle: front unreachable from scan hole");
                a.route = *r;
                a.step = 0;
                a.waiting = false;
                a.free_at = beat;  // first slide lands on the next beat
                prev_route_cells = {r->begin(), r->end()};
                prev_route_cells.insert(a.pos);
                prev_route_arrival = beat + static_cast<beat_t>(r->size());
            }
            // relaunch: the freed agent heads for its next assigned front
            std::size_t mine = next_swap - 1 + nh;
            if (mine < n) {
                if (!plan(server, mine, target_index, beat)) server.waiting = true;
            }
        }

        // route moves, one slide per busy agent
        for (Agent& a : agents) {
            if (a.route.empty() || a.free_at >= beat) continue;
            CellCoord nxt = a.route[a.step];
            if (nxt == tpos) throw SamError("oracle: route crosses the target");
            bool vacuous = is_empty(nxt);
            if (!vacuous && !disjoint_ok(nxt, a.pos))
                throw SamError("oracle: same-beat cell conflict");
            std::int64_t id = b.at(nxt);
            b.at(a.pos) = id;
            b.at(nxt) = -1;
            if (!vacuous) touched.emplace_back(nxt, a.pos);
            a.pos = nxt;
            a.step++;
            if (a.step == a.route.size()) {
                a.route.clear();
                a.step = 0;
            }
        }
    }
    return prev_swap_beat + 1;  // port transfer
}

beat_t oracle_line_load(const BankRuntime& bank0, CellCoord target) {
    BankRuntime b = bank0;
    if (target.row == b.docked_pos) return 1;
    beat_t beats = 0;
    int dir = target.row > b.aux_pos ? 1 : -1;
    while (std::abs(b.aux_pos - target.row) > 1) {
        int moving = b.aux_pos + dir;
        for (int c = 0; c < b.geom.row_len[static_cast<std::size_t>(moving)]; c++) {
            b.occ[static_cast<std::size_t>(b.aux_pos)][static_cast<std::size_t>(c)] =
                b.occ[static_cast<std::size_t>(moving)][static_cast<std::size_t>(c)];
            b.occ[static_cast<std::size_t>(moving)][static_cast<std::size_t>(c)] = -1;
        }
        b.aux_pos = moving;
        beats++;
    }
    beats += 1;  // dock the target's row into the auxiliary row
    beats += 1;  // lateral transport into the register column
    return beats;
}

}  // namespace

beat_t oracle_load_cost(const BankRuntime& bank, CellCoord target) {
    if (bank.at(target) < 0) throw SamError("oracle: target cell is empty");
    return bank.geom.kind == SamKind::Point ? oracle_point_load(bank, target)
                                            : oracle_line_load(bank, target);
}

}  // namespace lsqca
