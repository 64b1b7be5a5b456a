#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lsqca/isa.hpp"

namespace lsqca {

enum class SamKind { Point, Line, Conventional };

struct LayoutConfig {
    SamKind sam_kind = SamKind::Point;
    int banks = 1;            // point: 1..2, line: 1, 2 or 4
    int factories = 1;
    double hybrid_fraction = 0.0;   // f in [0,1]
    int buffer_capacity = -1;       // -1 -> 2 * factories
};

struct CellCoord {
    int row = 0;
    int col = 0;
    bool operator==(const CellCoord&) const = default;
    auto operator<=>(const CellCoord&) const = default;
};

// A bank is a left-aligned cell grid. Point banks hold m data cells in m+1
// cells of a near-square with the deficit removed from the end of the bottom
// row; the port doubles as the scan cell's initial position. Line banks are
// L columns by R data rows plus one auxiliary row.
struct BankGeometry {
    SamKind kind = SamKind::Point;
    int rows = 0;
    int cols = 0;
    std::vector<int> row_len;  // cells in each row, left-aligned
    CellCoord port;            // point only
    int aux_row = -1;          // line only: initial auxiliary row
    int data_capacity = 0;
    int total_cells = 0;

    bool cell_exists(int r, int c) const {
        return r >= 0 && r < rows && c >= 0 && c < row_len[static_cast<std::size_t>(r)];
    }
};

struct Layout {
    LayoutConfig config;
    std::vector<BankGeometry> banks;
    int cr_cells = 0;
    int cr_register_cells = 0;
    long long conventional_data = 0;
    long long conventional_cells = 0;  // 2x data, 50% density region
    long long total_cells = 0;
    long long data_capacity = 0;
};

struct LayoutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Layout build_layout(const LayoutConfig& cfg, std::uint32_t qubit_count);

// used_qubits / total_cells; factory cells are never part of the layout.
double memory_density(const Layout& l, std::uint32_t used_qubits);

std::string dump_layout(const Layout& l);

struct Placement {
    bool conventional = false;
    int bank = -1;
    CellCoord cell;
    bool operator==(const Placement&) const = default;
};

// variable id -> placement, plus the per-bank fill orders used to build it
struct QubitMap {
    std::vector<std::uint32_t> variables;  // sorted distinct ids
    std::vector<Placement> placements;     // parallel to variables

    const Placement* find(std::uint32_t var) const;
};

// Round-robin across banks in variable-index order, nearest-port-first
// within a bank. With a hotness ranking and f > 0, the top nf variables go
// to the conventional region first.
QubitMap assign_initial(const Layout& l, const std::vector<std::uint32_t>& variables,
                        const std::vector<std::uint32_t>* hotness_order = nullptr);

// deterministic fill order of a bank's cells (excludes the scan/aux cells)
std::vector<CellCoord> bank_fill_order(const BankGeometry& g);

}  // namespace lsqca
