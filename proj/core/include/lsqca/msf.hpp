#pragma once

#include <cstdint>

#include "lsqca/isa.hpp"

namespace lsqca {

// Magic-state factories as a fixed-rate source behind a pooled buffer: each
// factory yields one state per 15 beats; a wrap with a full buffer discards
// the state and the factory keeps cycling.
class Msf {
  public:
    static constexpr beat_t kPeriod = 15;

    Msf(int factories, long long buffer_capacity, bool warm_start = false)
        : factories_(factories),
          capacity_(buffer_capacity),
          stock_(warm_start ? buffer_capacity : 0) {}

    void tick() {
        phase_ = (phase_ + 1) % kPeriod;
        if (phase_ == 0) {
            for (int f = 0; f < factories_; f++) {
                if (stock_ < capacity_) {
                    stock_++;
                    produced_++;
                } else {
                    discarded_++;
                }
            }
        }
    }

    // grant one state; the caller adds the one-beat port transfer
    bool try_take() {
        if (stock_ <= 0) return false;
        stock_--;
        granted_++;
        return true;
    }

    // next absolute beat (strictly after `now`) at which production can occur;
    // 0 when no factory exists
    beat_t next_production_beat(beat_t now) const {
        if (factories_ == 0) return 0;
        beat_t since_wrap = phase_;
        return now + (kPeriod - since_wrap);
    }

    bool can_ever_produce() const { return factories_ > 0 && capacity_ > 0; }

    long long stock() const { return stock_; }
    long long produced() const { return produced_; }
    long long discarded() const { return discarded_; }
    long long granted() const { return granted_; }
    int factories() const { return factories_; }
    long long capacity() const { return capacity_; }
    beat_t phase() const { return phase_; }

  private:
    int factories_;
    long long capacity_;
    long long stock_;
    beat_t phase_ = 0;
    long long produced_ = 0;
    long long discarded_ = 0;
    long long granted_ = 0;
};

}  // namespace lsqca
