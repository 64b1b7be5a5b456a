#include "lsqca/floorplan.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace lsqca {

namespace {

BankGeometry make_point_bank(int data_cells) {
    BankGeometry g;
    g.kind = SamKind::Point;
    int cells = data_cells + 1;  // one scan cell
    int side = 1;
    int full_rows = 0;
    int rem = 0;
    // Reduced shapes with a dead-end cell (a single full row over a partial
    // one, or a one-cell bottom line) strand the scan behind the target; pad
    // such banks by a cell until every cell keeps two neighbors.
    for (;;) {
        side = 1;
        while (side * side < cells) side++;
        full_rows = cells / side;
        rem = cells % side;
        bool leaf = (full_rows == 1 && rem > 0) || (rem == 1 && cells > side);
        if (!leaf) break;
        cells++;
    }
    g.cols = side;
    g.rows = full_rows + (rem > 0 ? 1 : 0);
    g.row_len.assign(static_cast<std::size_t>(g.rows), side);
    if (rem > 0) g.row_len.back() = rem;
    int port_row = std::min(side / 2, g.rows - 1);
    if (g.row_len[static_cast<std::size_t>(port_row)] < 1) port_row = g.rows - 1;
    g.port = {port_row, 0};
    g.total_cells = cells;
    g.data_capacity = cells - 1;
    return g;
}

// data block is L columns x R rows with R in {L, L+1}; one extra auxiliary
// row; chosen to minimize bank + CR-column cells for the needed capacity
BankGeometry make_line_bank(int data_cells) {
    BankGeometry g;
    g.kind = SamKind::Line;
    long long best_cost = -1;
    int best_l = 1, best_r = 1;
    for (int l = 1;; l++) {
        bool feasible = false;
        for (int r : {l, l + 1}) {
            if (static_cast<long long>(l) * r < data_cells) continue;
            feasible = true;
            long long cost = static_cast<long long>(l + 2) * (r + 1);
            if (best_cost < 0 || cost < best_cost) {
                best_cost = cost;
                best_l = l;
                best_r = r;
            }
        }
        if (feasible && static_cast<long long>(l) * l >= data_cells * 4) break;
        if (l > data_cells + 2) break;
    }
    g.cols = best_l;
    g.rows = best_r + 1;  // plus the auxiliary row
    g.row_len.assign(static_cast<std::size_t>(g.rows), best_l);
    g.aux_row = g.rows / 2;
    g.total_cells = best_l * g.rows;
    g.data_capacity = best_l * best_r;
    g.port = {g.aux_row, 0};
    return g;
}

}  // namespace

Layout build_layout(const LayoutConfig& cfg, std::uint32_t qubit_count) {
    if (qubit_count < 1) throw LayoutError("layout needs at least one qubit");
    if (cfg.hybrid_fraction < 0.0 || cfg.hybrid_fraction > 1.0)
        throw LayoutError("hybrid fraction must be in [0,1]");

    Layout l;
    l.config = cfg;
    if (l.config.buffer_capacity < 0) l.config.buffer_capacity = 2 * cfg.factories;

    if (cfg.sam_kind == SamKind::Conventional) {
        l.conventional_data = qubit_count;
        l.conventional_cells = 2LL * qubit_count;
        l.total_cells = l.conventional_cells;
        l.data_capacity = qubit_count;
        return l;
    }

    if (cfg.sam_kind == SamKind::Point && (cfg.banks < 1 || cfg.banks > 2))
        throw LayoutError("point SAM supports 1 or 2 banks");
    if (cfg.sam_kind == SamKind::Line &&
        !(cfg.banks == 1 || cfg.banks == 2 || cfg.banks == 4))
        throw LayoutError("line SAM supports 1, 2 or 4 banks");

    auto conv_data = static_cast<long long>(std::llround(cfg.hybrid_fraction * qubit_count));
    conv_data = std::min<long long>(conv_data, qubit_count);
    long long sam_data = qubit_count - conv_data;

    l.conventional_data = conv_data;
    l.conventional_cells = 2 * conv_data;
    l.cr_register_cells = 2;

    if (sam_data > 0) {
        int nb = cfg.banks;
        for (int b = 0; b < nb; b++) {
            int share = static_cast<int>(sam_data / nb + (b < sam_data % nb ? 1 : 0));
            if (share < 1) share = 1;  // degenerate tiny banks still exist
            l.banks.push_back(cfg.sam_kind == SamKind::Point ? make_point_bank(share)
                                                             : make_line_bank(share));
        }
        if (cfg.sam_kind == SamKind::Point) {
            l.cr_cells = 6;  // compact CR, two register cells
        } else {
            int height = 0;
            for (const auto& b : l.banks) height += b.rows;
            l.cr_cells = 2 * height;
        }
    } else {
        // f = 1: conventional region attached to the bare CR
        l.cr_cells = cfg.sam_kind == SamKind::Point ? 6 : 6;
    }

    l.total_cells = l.conventional_cells + l.cr_cells;
    l.data_capacity = l.conventional_data;
    for (const auto& b : l.banks) {
        l.total_cells += b.total_cells;
        l.data_capacity += b.data_capacity;
    }
    if (l.data_capacity < qubit_count) throw LayoutError("layout capacity below qubit count");
    return l;
}

double memory_density(const Layout& l, std::uint32_t used_qubits) {
    if (used_qubits > l.data_capacity) throw LayoutError("used qubits exceed layout capacity");
    if (l.total_cells == 0) return 0.0;
    return static_cast<double>(used_qubits) / static_cast<double>(l.total_cells);
}

std::string dump_layout(const Layout& l) {
    std::ostringstream out;
    auto kind_name = [](SamKind k) {
        switch (k) {
            case SamKind::Point: return "point";
            case SamKind::Line: return "line";
            case SamKind::Conventional: return "conventional";
        }
        return "?";
    };
    out << "layout kind=" << kind_name(l.config.sam_kind) << " banks=" << l.banks.size()
        << " total_cells=" << l.total_cells << " data_capacity=" << l.data_capacity << "\n";
    for (std::size_t i = 0; i < l.banks.size(); i++) {
        const auto& b = l.banks[i];
        out << "  bank " << i << ": " << b.rows << "x" << b.cols << " cells=" << b.total_cells
            << " data=" << b.data_capacity;
        if (b.kind == SamKind::Point)
            out << " port=(" << b.port.row << "," << b.port.col << ")";
        else
            out << " aux_row=" << b.aux_row;
        out << " rows=[";
        for (std::size_t r = 0; r < b.row_len.size(); r++)
            out << (r ? "," : "") << b.row_len[r];
        out << "]\n";
    }
    out << "  cr_cells=" << l.cr_cells << " register_cells=" << l.cr_register_cells << "\n";
    out << "  conventional_data=" << l.conventional_data
        << " conventional_cells=" << l.conventional_cells << "\n";
    return out.str();
}

const Placement* QubitMap::find(std::uint32_t var) const {
    auto it = std::lower_bound(variables.begin(), variables.end(), var);
    if (it == variables.end() || *it != var) return nullptr;
    return &placements[static_cast<std::size_t>(it - variables.begin())];
}

std::vector<CellCoord> bank_fill_order(const BankGeometry& g) {
    std::vector<CellCoord> cells;
    for (int r = 0; r < g.rows; r++) {
        if (g.kind == SamKind::Line && r == g.aux_row) continue;
        for (int c = 0; c < g.row_len[static_cast<std::size_t>(r)]; c++) {
            if (g.kind == SamKind::Point && CellCoord{r, c} == g.port) continue;
            cells.push_back({r, c});
        }
    }
    auto rank = [&](const CellCoord& c) {
        int d = g.kind == SamKind::Point
                    ? std::abs(c.row - g.port.row) + std::abs(c.col - g.port.col)
                    : std::abs(c.row - g.aux_row);
        return std::tuple(d, c.row, c.col);
    };
    std::stable_sort(cells.begin(), cells.end(),
                     [&](const CellCoord& a, const CellCoord& b) { return rank(a) < rank(b); });
    return cells;
}

QubitMap assign_initial(const Layout& l, const std::vector<std::uint32_t>& variables,
                        const std::vector<std::uint32_t>* hotness_order) {
    std::vector<std::uint32_t> vars = variables;
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    if (static_cast<long long>(vars.size()) > l.data_capacity)
        throw LayoutError("more variables than layout capacity");

    QubitMap map;
    map.variables = vars;
    map.placements.assign(vars.size(), Placement{});

    auto index_of = [&](std::uint32_t var) {
        return static_cast<std::size_t>(
            std::lower_bound(vars.begin(), vars.end(), var) - vars.begin());
    };

    // conventional region first: top-nf hottest (or lowest ids without a
    // ranking), then round-robin the rest across banks in index order
    std::vector<bool> in_conv(vars.size(), false);
    long long conv_quota = std::min<long long>(l.conventional_data,
                                               static_cast<long long>(vars.size()));
    if (conv_quota > 0) {
        std::vector<std::uint32_t> ranked;
        if (hotness_order) {
            for (std::uint32_t v : *hotness_order) {
                auto it = std::lower_bound(vars.begin(), vars.end(), v);
                if (it != vars.end() && *it == v) ranked.push_back(v);
            }
        } else {
            ranked = vars;
        }
        long long taken = 0;
        for (std::size_t i = 0; i < ranked.size() && taken < conv_quota; i++) {
            std::size_t k = index_of(ranked[i]);
            if (in_conv[k]) continue;
            in_conv[k] = true;
            map.placements[k].conventional = true;
            taken++;
        }
        for (std::size_t k = 0; k < vars.size() && taken < conv_quota; k++) {
            if (in_conv[k]) continue;
            in_conv[k] = true;
            map.placements[k].conventional = true;
            taken++;
        }
    }

    if (!l.banks.empty()) {
        std::vector<std::vector<CellCoord>> orders;
        orders.reserve(l.banks.size());
        for (const auto& b : l.banks) orders.push_back(bank_fill_order(b));
        std::vector<std::size_t> next(l.banks.size(), 0);

        std::size_t rr = 0;
        for (std::size_t k = 0; k < vars.size(); k++) {
            if (in_conv[k]) continue;
            std::size_t bank = rr % l.banks.size();
            rr++;
            if (next[bank] >= orders[bank].size()) {
                // bank full; spill to the first bank with space
                bool placed = false;
                for (std::size_t b2 = 0; b2 < l.banks.size(); b2++) {
                    if (next[b2] < orders[b2].size()) {
                        bank = b2;
                        placed = true;
                        break;
                    }
                }
                if (!placed) throw LayoutError("bank capacity exceeded during assignment");
            }
            map.placements[k].conventional = false;
            map.placements[k].bank = static_cast<int>(bank);
            map.placements[k].cell = orders[bank][next[bank]++];
        }
    } else {
        for (std::size_t k = 0; k < vars.size(); k++) {
            if (!in_conv[k]) throw LayoutError("no banks available for non-conventional variable");
        }
    }
    return map;
}

}  // namespace lsqca
