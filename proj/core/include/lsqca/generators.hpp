#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "lsqca/gate_circuit.hpp"

namespace lsqca {

enum class BuiltinKind { Ghz, Cat, Bv, Adder };

std::optional<BuiltinKind> builtin_from_name(std::string_view name);

// ghz: H + CNOT chain; cat: H + CNOT fan-out; bv: Bernstein-Vazirani with an
// all-ones secret (size = secret length); adder: Cuccaro ripple-carry on
// size-bit operands (2*size Toffoli gates). All end in Z measurements.
GateCircuit gen_builtin(BuiltinKind kind, std::uint32_t size);

// SELECT for the 2D Heisenberg model on a width x width lattice: 3 Pauli
// terms (XX, YY, ZZ) per nearest-neighbor bond, iterated by a unary-iteration
// Toffoli ladder over the control register with shared-prefix cancellation.
// Qubits are tagged control / temporal / system in the register metadata.
GateCircuit gen_select(std::uint32_t lattice_width);

}  // namespace lsqca
