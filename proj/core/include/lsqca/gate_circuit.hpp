#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsqca/isa.hpp"

namespace lsqca {

enum class GateKind : std::uint8_t {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    T,
    Tdg,
    CNOT,
    Toffoli,
    MeasZ,
    MeasX,
    PrepZ,
    PrepX,
    CondS,  // S on qubit conditioned on a classical value
};

struct Gate {
    GateKind kind;
    std::uint32_t q0 = 0;
    std::uint32_t q1 = 0;  // CNOT target / Toffoli second control
    std::uint32_t q2 = 0;  // Toffoli target
    std::uint32_t value = 0;  // classical slot for MeasZ/MeasX/CondS

    bool operator==(const Gate&) const = default;
};

// Register a qubit belongs to in structured circuits; used by hybrid
// placement to pin hot registers into the conventional region.
enum class QubitRegister : std::uint8_t { None, Control, Temporal, System };

struct GateCircuit {
    std::uint32_t qubit_count = 0;
    std::vector<Gate> gates;
    std::vector<QubitRegister> registers;  // empty or size == qubit_count

    QubitRegister register_of(std::uint32_t q) const {
        return q < registers.size() ? registers[q] : QubitRegister::None;
    }
};

std::size_t gate_arity(GateKind k);
std::string_view gate_name(GateKind k);

enum class CircuitFormat { QasmSubset, Native };

// qasm-subset: version header, qreg/creg declarations, and the gates
// h s sdg x y z t tdg cx ccx measure. native: one gate per line, see
// docs in gate_circuit.cpp.
GateCircuit parse_gate_circuit(std::string_view text, CircuitFormat format);

std::string render_native(const GateCircuit& c);

std::uint64_t t_count(const GateCircuit& c);
std::uint64_t toffoli_count(const GateCircuit& c);

}  // namespace lsqca
