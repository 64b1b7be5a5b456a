#include "lsqca/msf.hpp"

#include <random>

#include "gtest/gtest.h"

using namespace lsqca;

TEST(msf, first_state_lands_at_beat_15) {
    Msf m(1, 2);
    for (int b = 1; b <= 14; b++) {
        m.tick();
        EXPECT_EQ(m.stock(), 0) << "beat " << b;
    }
    m.tick();
    EXPECT_EQ(m.stock(), 1);
}

TEST(msf, buffer_saturates_and_discards) {
    Msf m(2, 4);
    for (int b = 0; b < 300; b++) m.tick();
    EXPECT_EQ(m.stock(), 4);
    EXPECT_GT(m.discarded(), 0);
}

TEST(msf, drain_every_beat_grants_one_per_fifteen) {
    Msf m(1, 2);
    long long grants = 0;
    for (int b = 1; b <= 1500; b++) {
        m.tick();
        if (m.try_take()) grants++;
    }
    EXPECT_GE(grants, 99);
    EXPECT_LE(grants, 101);
}

TEST(msf, conservation_ledger) {
    Msf m(3, 6);
    std::mt19937 rng(7);
    for (int b = 0; b < 5000; b++) {
        m.tick();
        if (rng() % 3 == 0) m.try_take();
    }
    EXPECT_EQ(m.produced(), m.granted() + m.stock());
}

TEST(msf, grant_decrements_stock) {
    Msf m(1, 3, /*warm_start=*/true);
    EXPECT_EQ(m.stock(), 3);
    EXPECT_TRUE(m.try_take());
    EXPECT_EQ(m.stock(), 2);
}

TEST(msf, zero_factories_never_produce) {
    Msf m(0, 0);
    for (int b = 0; b < 100; b++) m.tick();
    EXPECT_FALSE(m.try_take());
    EXPECT_FALSE(m.can_ever_produce());
}

TEST(msf, next_production_beat) {
    Msf m(1, 2);
    EXPECT_EQ(m.next_production_beat(0), 15u);
    for (int b = 1; b <= 7; b++) m.tick();
    EXPECT_EQ(m.next_production_beat(7), 15u);
    for (int b = 8; b <= 15; b++) m.tick();
    EXPECT_EQ(m.next_production_beat(15), 30u);
}
