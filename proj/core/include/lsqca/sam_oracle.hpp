#pragma once

#include "lsqca/sam_engine.hpp"

namespace lsqca {

// Beat-by-beat primitive-move simulation of a load, used as ground truth for
// the engine's arithmetic cost planner. Executes the canonical dance on a
// copy of the occupancy grid, one slide per hole per beat, verifying that
// every move lands in a hole and that same-beat moves touch disjoint cells.
// Returns total beats including the port/lateral transfer.
beat_t oracle_load_cost(const BankRuntime& bank, CellCoord target);

}  // namespace lsqca
