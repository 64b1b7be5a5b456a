#pragma once

#include "lsqca/gate_circuit.hpp"
#include "lsqca/isa.hpp"

namespace lsqca {

// Translation rules from Clifford+T to the instruction set. Defaults match
// the evaluated configuration: single-qubit gates in memory, T teleportation
// with an in-memory ZZ measurement, CNOT as the optimized CX instruction.
struct CompilePolicy {
    bool in_memory_single_qubit = true;
    bool cx_as_instruction = true;
    bool t_gate_in_memory_zz = true;
};

struct CompileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input must be Clifford+T (run lower_to_clifford_t first). Pauli gates are
// tracked classically and never emitted. Classical values are single static
// assignment; register identifiers come from a two-cell round-robin pool.
Program compile_to_lsqca(const GateCircuit& c, const CompilePolicy& policy = {});

std::uint64_t pm_count(const Program& p);

}  // namespace lsqca
