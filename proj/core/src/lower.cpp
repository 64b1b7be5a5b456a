#include "lsqca/lower.hpp"

namespace lsqca {

GateCircuit lower_to_clifford_t(const GateCircuit& c) {
    GateCircuit out;
    out.qubit_count = c.qubit_count;
    out.registers = c.registers;
    out.gates.reserve(c.gates.size());

    for (const Gate& g : c.gates) {
        if (g.kind != GateKind::Toffoli) {
            out.gates.push_back(g);
            continue;
        }
        std::uint32_t a = g.q0, b = g.q1, t = g.q2;
        auto emit1 = [&](GateKind k, std::uint32_t q) { out.gates.push_back(Gate{k, q}); };
        auto cnot = [&](std::uint32_t x, std::uint32_t y) {
            out.gates.push_back(Gate{GateKind::CNOT, x, y});
        };
        emit1(GateKind::H, t);
        cnot(b, t);
        emit1(GateKind::Tdg, t);
        cnot(a, t);
        emit1(GateKind::T, t);
        cnot(b, t);
        emit1(GateKind::Tdg, t);
        cnot(a, t);
        emit1(GateKind::T, b);
        emit1(GateKind::T, t);
        cnot(a, b);
        emit1(GateKind::H, t);
        emit1(GateKind::T, a);
        emit1(GateKind::Tdg, b);
        cnot(a, b);
    }
    return out;
}

}  // namespace lsqca
