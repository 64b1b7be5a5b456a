#pragma once

#include "lsqca/gate_circuit.hpp"

namespace lsqca {

// Rewrites Toffoli gates into the standard 7-T, 6-CNOT, 2-H decomposition;
// everything else passes through unchanged. Output is Clifford+T.
GateCircuit lower_to_clifford_t(const GateCircuit& c);

}  // namespace lsqca
