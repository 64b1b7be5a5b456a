#include "lsqca/floorplan.hpp"

#include <numeric>

#include "gtest/gtest.h"

using namespace lsqca;

namespace {

LayoutConfig cfg(SamKind kind, int banks, double f = 0.0) {
    LayoutConfig c;
    c.sam_kind = kind;
    c.banks = banks;
    c.factories = 1;
    c.hybrid_fraction = f;
    return c;
}

std::vector<std::uint32_t> vars(std::uint32_t n) {
    std::vector<std::uint32_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

TEST(floorplan, point_48_qubits_is_55_cells) {
    Layout l = build_layout(cfg(SamKind::Point, 1), 48);
    ASSERT_EQ(l.banks.size(), 1u);
    EXPECT_EQ(l.banks[0].rows, 7);
    EXPECT_EQ(l.banks[0].cols, 7);
    EXPECT_EQ(l.banks[0].total_cells, 49);
    EXPECT_EQ(l.cr_cells, 6);
    EXPECT_EQ(l.total_cells, 55);
}

TEST(floorplan, line_400_qubits_is_462_cells) {
    Layout l = build_layout(cfg(SamKind::Line, 1), 400);
    ASSERT_EQ(l.banks.size(), 1u);
    EXPECT_EQ(l.banks[0].cols, 20);
    EXPECT_EQ(l.banks[0].rows, 21);
    EXPECT_EQ(l.banks[0].total_cells, 420);
    EXPECT_EQ(l.cr_cells, 42);
    EXPECT_EQ(l.total_cells, 462);
    EXPECT_NEAR(memory_density(l, 400), 400.0 / 462.0, 1e-12);
}

TEST(floorplan, conventional_is_half_density) {
    Layout l = build_layout(cfg(SamKind::Conventional, 1), 400);
    EXPECT_EQ(l.total_cells, 800);
    EXPECT_NEAR(memory_density(l, 400), 0.5, 1e-12);
}

TEST(floorplan, point_400_density_matches_geometry_rule) {
    Layout l = build_layout(cfg(SamKind::Point, 1), 400);
    EXPECT_EQ(l.total_cells, 407);  // 401 bank cells + 6 CR
    EXPECT_NEAR(memory_density(l, 400), 400.0 / 407.0, 1e-12);
}

TEST(floorplan, density_zero_when_unused) {
    Layout l = build_layout(cfg(SamKind::Point, 1), 16);
    EXPECT_EQ(memory_density(l, 0), 0.0);
}

TEST(floorplan, point_total_cells_identity_and_asymptote) {
    for (std::uint32_t n : {3u, 8u, 48u, 399u, 1000u}) {
        Layout l = build_layout(cfg(SamKind::Point, 1), n);
        EXPECT_EQ(l.total_cells, static_cast<long long>(n) + 1 + 6) << n;
    }
    Layout big = build_layout(cfg(SamKind::Point, 1), 1000000);
    EXPECT_GT(memory_density(big, 1000000), 0.99);
}

TEST(floorplan, line_square_identity) {
    for (int L = 2; L <= 40; L++) {
        auto n = static_cast<std::uint32_t>(L * L);
        Layout l = build_layout(cfg(SamKind::Line, 1), n);
        EXPECT_EQ(l.total_cells, static_cast<long long>(L + 1) * (L + 2)) << "L=" << L;
    }
}

TEST(floorplan, hybrid_density_non_increasing_in_f) {
    for (SamKind kind : {SamKind::Point, SamKind::Line}) {
        double prev = 1.0;
        for (int i = 0; i <= 20; i++) {
            double f = i * 0.05;
            Layout l = build_layout(cfg(kind, 1, f), 200);
            double d = memory_density(l, 200);
            EXPECT_LE(d, prev + 1e-12) << "f=" << f;
            prev = d;
        }
    }
}

TEST(floorplan, hybrid_f1_puts_everything_in_conventional) {
    Layout l = build_layout(cfg(SamKind::Point, 1, 1.0), 64);
    EXPECT_TRUE(l.banks.empty());
    EXPECT_EQ(l.conventional_data, 64);
    QubitMap m = assign_initial(l, vars(64));
    for (const Placement& p : m.placements) EXPECT_TRUE(p.conventional);
}

TEST(floorplan, bank_count_validation) {
    EXPECT_THROW(build_layout(cfg(SamKind::Point, 3), 16), LayoutError);
    EXPECT_THROW(build_layout(cfg(SamKind::Line, 3), 16), LayoutError);
    EXPECT_NO_THROW(build_layout(cfg(SamKind::Line, 4), 16));
}

TEST(floorplan, round_robin_across_banks) {
    Layout l = build_layout(cfg(SamKind::Point, 2), 4);
    QubitMap m = assign_initial(l, vars(4));
    EXPECT_EQ(m.find(0)->bank, 0);
    EXPECT_EQ(m.find(1)->bank, 1);
    EXPECT_EQ(m.find(2)->bank, 0);
    EXPECT_EQ(m.find(3)->bank, 1);
}

TEST(floorplan, round_robin_property_all_bank_counts) {
    for (int banks : {1, 2, 4}) {
        Layout l = build_layout(cfg(SamKind::Line, banks), 32);
        QubitMap m = assign_initial(l, vars(32));
        for (std::uint32_t v = 0; v < 32; v++)
            EXPECT_EQ(m.find(v)->bank, static_cast<int>(v) % banks) << "banks=" << banks;
    }
}

TEST(floorplan, single_qubit_lands_next_to_port) {
    Layout l = build_layout(cfg(SamKind::Point, 1), 1);
    QubitMap m = assign_initial(l, vars(1));
    const Placement* p = m.find(0);
    ASSERT_NE(p, nullptr);
    const BankGeometry& g = l.banks[0];
    int d = std::abs(p->cell.row - g.port.row) + std::abs(p->cell.col - g.port.col);
    EXPECT_EQ(d, 1);
}

TEST(floorplan, assignment_is_injective) {
    Layout l = build_layout(cfg(SamKind::Line, 2), 50);
    QubitMap m = assign_initial(l, vars(50));
    std::set<std::tuple<int, int, int>> seen;
    for (const Placement& p : m.placements) {
        ASSERT_FALSE(p.conventional);
        auto key = std::tuple(p.bank, p.cell.row, p.cell.col);
        EXPECT_FALSE(seen.count(key));
        seen.insert(key);
    }
}

TEST(floorplan, hotness_pins_top_variables_to_conventional) {
    Layout l = build_layout(cfg(SamKind::Point, 1, 0.25), 16);  // nf = 4
    std::vector<std::uint32_t> hot = {7, 3, 11, 15, 0, 1, 2};
    QubitMap m = assign_initial(l, vars(16), &hot);
    EXPECT_TRUE(m.find(7)->conventional);
    EXPECT_TRUE(m.find(3)->conventional);
    EXPECT_TRUE(m.find(11)->conventional);
    EXPECT_TRUE(m.find(15)->conventional);
    EXPECT_FALSE(m.find(0)->conventional);
}

TEST(floorplan, capacity_errors) {
    Layout l = build_layout(cfg(SamKind::Point, 1), 4);
    EXPECT_THROW(assign_initial(l, vars(9)), LayoutError);
    EXPECT_THROW(memory_density(l, 100), LayoutError);
}

TEST(floorplan, dump_mentions_banks) {
    Layout l = build_layout(cfg(SamKind::Line, 2), 32);
    std::string d = dump_layout(l);
    EXPECT_NE(d.find("bank 0"), std::string::npos);
    EXPECT_NE(d.find("bank 1"), std::string::npos);
    EXPECT_NE(d.find("aux_row"), std::string::npos);
}
