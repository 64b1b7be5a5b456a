#include "lsqca/compile.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lsqca {

namespace {

constexpr std::uint32_t kRegisterPool = 2;  // compact CR register cells

struct Emitter {
    Program prog;
    std::uint32_t next_value = 0;
    std::uint32_t next_reg = 0;
    std::set<std::uint32_t> live_regs;
    std::map<std::uint32_t, std::uint32_t> value_map;  // circuit slot -> V id
    std::vector<bool> initialized;

    std::uint32_t fresh_value() { return next_value++; }

    std::uint32_t acquire_reg() {
        std::uint32_t r = next_reg;
        next_reg = (next_reg + 1) % kRegisterPool;
        if (live_regs.count(r))
            throw CompileError("register pressure exceeds the two-cell register pool");
        live_regs.insert(r);
        return r;
    }
    void release_reg(std::uint32_t r) { live_regs.erase(r); }

    Operand m(std::uint32_t q) { return {OperandKind::Memory, q}; }
    Operand c(std::uint32_t r) { return {OperandKind::Register, r}; }
    Operand v(std::uint32_t id) { return {OperandKind::Value, id}; }

    void emit(Opcode op, std::vector<Operand> ops) {
        prog.instructions.push_back({op, std::move(ops)});
    }

    void touch(std::uint32_t q, bool is_prep) {
        if (!initialized[q]) {
            initialized[q] = true;
            if (!is_prep) emit(Opcode::PZ_M, {m(q)});
        }
    }
};

}  // namespace

Program compile_to_lsqca(const GateCircuit& circ, const CompilePolicy& policy) {
    Emitter e;
    e.initialized.assign(circ.qubit_count, false);

    auto single_in_memory = [&](Opcode mem_op, Opcode cr_op, std::uint32_t q) {
        if (policy.in_memory_single_qubit) {
            e.emit(mem_op, {e.m(q)});
        } else {
            std::uint32_t r = e.acquire_reg();
            e.emit(Opcode::LD, {e.m(q), e.c(r)});
            e.emit(cr_op, {e.c(r)});
            e.emit(Opcode::ST, {e.c(r), e.m(q)});
            e.release_reg(r);
        }
    };

    for (const Gate& g : circ.gates) {
        if (g.q0 >= circ.qubit_count ||
            (gate_arity(g.kind) >= 2 && g.q1 >= circ.qubit_count) ||
            (gate_arity(g.kind) >= 3 && g.q2 >= circ.qubit_count))
            throw CompileError("gate qubit index out of range");

        switch (g.kind) {
            case GateKind::X:
            case GateKind::Y:
            case GateKind::Z:
                // Pauli frame, tracked classically
                e.touch(g.q0, false);
                break;

            case GateKind::H:
                e.touch(g.q0, false);
                single_in_memory(Opcode::HD_M, Opcode::HD_C, g.q0);
                break;

            case GateKind::S:
            case GateKind::Sdg:
                e.touch(g.q0, false);
                single_in_memory(Opcode::PH_M, Opcode::PH_C, g.q0);
                break;

            case GateKind::T:
            case GateKind::Tdg: {
                e.touch(g.q0, false);
                std::uint32_t magic = e.acquire_reg();
                std::uint32_t vzz = e.fresh_value();
                std::uint32_t vmx = e.fresh_value();
                e.emit(Opcode::PM, {e.c(magic)});
                if (policy.t_gate_in_memory_zz) {
                    e.emit(Opcode::MZZ_M, {e.c(magic), e.m(g.q0), e.v(vzz)});
                    e.emit(Opcode::MX_C, {e.c(magic), e.v(vmx)});
                    e.release_reg(magic);
                    e.emit(Opcode::SK, {e.v(vzz)});
                    e.emit(Opcode::PH_M, {e.m(g.q0)});
                } else {
                    std::uint32_t tgt = e.acquire_reg();
                    e.emit(Opcode::LD, {e.m(g.q0), e.c(tgt)});
                    e.emit(Opcode::MZZ_C, {e.c(magic), e.c(tgt), e.v(vzz)});
                    e.emit(Opcode::MX_C, {e.c(magic), e.v(vmx)});
                    e.release_reg(magic);
                    e.emit(Opcode::SK, {e.v(vzz)});
                    e.emit(Opcode::PH_C, {e.c(tgt)});
                    e.emit(Opcode::ST, {e.c(tgt), e.m(g.q0)});
                    e.release_reg(tgt);
                }
                break;
            }

            case GateKind::CNOT: {
                e.touch(g.q0, false);
                e.touch(g.q1, false);
                if (policy.cx_as_instruction) {
                    e.emit(Opcode::CX, {e.m(g.q0), e.m(g.q1)});
                } else {
                    // measurement-based CNOT through one register ancilla
                    std::uint32_t anc = e.acquire_reg();
                    e.emit(Opcode::PP_C, {e.c(anc)});
                    e.emit(Opcode::MZZ_M, {e.c(anc), e.m(g.q0), e.v(e.fresh_value())});
                    e.emit(Opcode::MXX_M, {e.c(anc), e.m(g.q1), e.v(e.fresh_value())});
                    e.emit(Opcode::MZ_C, {e.c(anc), e.v(e.fresh_value())});
                    e.release_reg(anc);
                }
                break;
            }

            case GateKind::Toffoli:
                throw CompileError("Toffoli reached the backend; run lower_to_clifford_t first");

            case GateKind::MeasZ:
            case GateKind::MeasX: {
                e.touch(g.q0, false);
                std::uint32_t vid = e.fresh_value();
                e.value_map[g.value] = vid;
                e.emit(g.kind == GateKind::MeasZ ? Opcode::MZ_M : Opcode::MX_M,
                       {e.m(g.q0), e.v(vid)});
                break;
            }

            case GateKind::PrepZ:
                e.touch(g.q0, true);
                e.emit(Opcode::PZ_M, {e.m(g.q0)});
                break;
            case GateKind::PrepX:
                e.touch(g.q0, true);
                e.emit(Opcode::PP_M, {e.m(g.q0)});
                break;

            case GateKind::CondS: {
                e.touch(g.q0, false);
                auto it = e.value_map.find(g.value);
                if (it == e.value_map.end())
                    throw CompileError("conditional S reads an unwritten classical slot");
                if (policy.in_memory_single_qubit) {
                    e.emit(Opcode::SK, {e.v(it->second)});
                    e.emit(Opcode::PH_M, {e.m(g.q0)});
                } else {
                    std::uint32_t r = e.acquire_reg();
                    e.emit(Opcode::LD, {e.m(g.q0), e.c(r)});
                    e.emit(Opcode::SK, {e.v(it->second)});
                    e.emit(Opcode::PH_C, {e.c(r)});
                    e.emit(Opcode::ST, {e.c(r), e.m(g.q0)});
                    e.release_reg(r);
                }
                break;
            }
        }
    }

    validate_program(e.prog);
    return e.prog;
}

std::uint64_t pm_count(const Program& p) {
    return std::count_if(p.instructions.begin(), p.instructions.end(),
                         [](const Instruction& i) { return i.opcode == Opcode::PM; });
}

}  // namespace lsqca
