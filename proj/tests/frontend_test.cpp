#include <complex>
#include <map>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "lsqca/compile.hpp"
#include "lsqca/gate_circuit.hpp"
#include "lsqca/generators.hpp"
#include "lsqca/lower.hpp"

using namespace lsqca;

// ---------- parsers ------------------------------------------------------

TEST(frontend, qasm_subset_basics) {
    GateCircuit c = parse_gate_circuit(
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\n"
        "h q[0];\ncx q[0],q[1];\nmeasure q[0] -> c[0];\n",
        CircuitFormat::QasmSubset);
    EXPECT_EQ(c.qubit_count, 2u);
    ASSERT_EQ(c.gates.size(), 3u);
    EXPECT_EQ(c.gates[0].kind, GateKind::H);
    EXPECT_EQ(c.gates[1].kind, GateKind::CNOT);
    EXPECT_EQ(c.gates[1].q0, 0u);
    EXPECT_EQ(c.gates[1].q1, 1u);
    EXPECT_EQ(c.gates[2].kind, GateKind::MeasZ);
}

TEST(frontend, qasm_ccx_and_multiple_registers) {
    GateCircuit c = parse_gate_circuit(
        "qreg a[2];\nqreg b[1];\nccx a[0],a[1],b[0];\n", CircuitFormat::QasmSubset);
    EXPECT_EQ(c.qubit_count, 3u);
    ASSERT_EQ(c.gates.size(), 1u);
    EXPECT_EQ(c.gates[0].kind, GateKind::Toffoli);
    EXPECT_EQ(c.gates[0].q2, 2u);
}

TEST(frontend, qasm_errors) {
    EXPECT_THROW(parse_gate_circuit("qreg q[1];\nrz(0.5) q[0];\n", CircuitFormat::QasmSubset),
                 ParseError);
    EXPECT_THROW(parse_gate_circuit("qreg q[1];\nqreg q[2];\n", CircuitFormat::QasmSubset),
                 ParseError);
    EXPECT_THROW(parse_gate_circuit("qreg q[1];\nh q[3];\n", CircuitFormat::QasmSubset),
                 ParseError);
}

TEST(frontend, native_roundtrip) {
    GateCircuit c = gen_builtin(BuiltinKind::Adder, 3);
    GateCircuit c2 = parse_gate_circuit(render_native(c), CircuitFormat::Native);
    EXPECT_EQ(c.qubit_count, c2.qubit_count);
    ASSERT_EQ(c.gates.size(), c2.gates.size());
    for (std::size_t i = 0; i < c.gates.size(); i++) EXPECT_EQ(c.gates[i], c2.gates[i]);
}

// ---------- builtins -----------------------------------------------------

TEST(frontend, ghz_structure) {
    GateCircuit c = gen_builtin(BuiltinKind::Ghz, 3);
    ASSERT_EQ(c.gates.size(), 6u);  // H, CNOT x2, MeasZ x3
    EXPECT_EQ(c.gates[0].kind, GateKind::H);
    EXPECT_EQ(c.gates[1].kind, GateKind::CNOT);
    EXPECT_EQ(c.gates[1].q0, 0u);
    EXPECT_EQ(c.gates[1].q1, 1u);
    EXPECT_EQ(c.gates[2].q0, 1u);
    EXPECT_EQ(c.gates[2].q1, 2u);
    for (std::size_t i = 3; i < 6; i++) EXPECT_EQ(c.gates[i].kind, GateKind::MeasZ);
    EXPECT_EQ(t_count(c), 0u);
    EXPECT_EQ(toffoli_count(c), 0u);
}

TEST(frontend, bv_all_ones_secret) {
    GateCircuit c = gen_builtin(BuiltinKind::Bv, 4);
    EXPECT_EQ(c.qubit_count, 5u);
    std::size_t cnots_onto_ancilla = 0;
    for (const Gate& g : c.gates)
        if (g.kind == GateKind::CNOT && g.q1 == 4) cnots_onto_ancilla++;
    EXPECT_EQ(cnots_onto_ancilla, 4u);
    EXPECT_EQ(t_count(c), 0u);
}

TEST(frontend, cat_is_clifford) {
    GateCircuit c = gen_builtin(BuiltinKind::Cat, 8);
    EXPECT_EQ(t_count(c), 0u);
    EXPECT_EQ(toffoli_count(c), 0u);
}

TEST(frontend, adder_toffoli_count_and_lowered_t_count) {
    GateCircuit c = gen_builtin(BuiltinKind::Adder, 4);
    EXPECT_EQ(toffoli_count(c), 8u);  // 2n for the ripple-carry construction
    GateCircuit low = lower_to_clifford_t(c);
    EXPECT_EQ(t_count(low), 7u * toffoli_count(c));
    EXPECT_EQ(toffoli_count(low), 0u);
}

TEST(frontend, generator_size_limit) {
    EXPECT_THROW(gen_builtin(BuiltinKind::Ghz, 1u << 20), std::invalid_argument);
    EXPECT_THROW(gen_builtin(BuiltinKind::Ghz, 0), std::invalid_argument);
}

// ---------- SELECT -------------------------------------------------------

TEST(frontend, select_width2_register_split) {
    GateCircuit c = gen_select(2);
    // 4 bonds x 3 Pauli terms = 12 terms -> 4 control bits
    std::size_t control = 0, temporal = 0, system = 0;
    for (std::uint32_t q = 0; q < c.qubit_count; q++) {
        switch (c.register_of(q)) {
            case QubitRegister::Control: control++; break;
            case QubitRegister::Temporal: temporal++; break;
            case QubitRegister::System: system++; break;
            default: break;
        }
    }
    EXPECT_EQ(control, 4u);
    EXPECT_EQ(temporal, 3u);
    EXPECT_EQ(system, 4u);
}

TEST(frontend, select_width11_accounting_near_paper) {
    GateCircuit c = gen_select(11);
    std::size_t system = 0;
    for (std::uint32_t q = 0; q < c.qubit_count; q++)
        if (c.register_of(q) == QubitRegister::System) system++;
    EXPECT_EQ(system, 121u);
    EXPECT_GE(c.qubit_count, 129u);  // within 10% of 143
    EXPECT_LE(c.qubit_count, 157u);
}

TEST(frontend, select_touches_every_system_qubit) {
    GateCircuit c = gen_select(3);
    std::set<std::uint32_t> touched;
    for (const Gate& g : c.gates) {
        if (g.kind == GateKind::MeasZ) continue;
        if (g.kind == GateKind::CNOT && c.register_of(g.q1) == QubitRegister::System)
            touched.insert(g.q1);
        if (gate_arity(g.kind) == 1 && c.register_of(g.q0) == QubitRegister::System)
            touched.insert(g.q0);
    }
    std::size_t system = 0;
    for (std::uint32_t q = 0; q < c.qubit_count; q++)
        if (c.register_of(q) == QubitRegister::System) system++;
    EXPECT_EQ(touched.size(), system);
}

TEST(frontend, select_prefix_sharing_reduces_toffolis) {
    GateCircuit c = gen_select(2);
    // 12 terms, 3 ladder levels each: 72 Toffolis without sharing
    EXPECT_LT(toffoli_count(c), 72u);
    GateCircuit low = lower_to_clifford_t(c);
    EXPECT_EQ(t_count(low), 7 * toffoli_count(c));
}

// ---------- Toffoli decomposition oracle ---------------------------------

namespace {

using cplx = std::complex<double>;
using Mat = std::array<std::array<cplx, 8>, 8>;

Mat identity() {
    Mat m{};
    for (int i = 0; i < 8; i++) m[i][i] = 1.0;
    return m;
}

Mat multiply(const Mat& a, const Mat& b) {
    Mat r{};
    for (int i = 0; i < 8; i++)
        for (int k = 0; k < 8; k++) {
            if (a[i][k] == cplx{0.0, 0.0}) continue;
            for (int j = 0; j < 8; j++) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

int bit_of(int basis, std::uint32_t qubit) { return (basis >> (2 - qubit)) & 1; }
int flip(int basis, std::uint32_t qubit) { return basis ^ (1 << (2 - qubit)); }

Mat single_qubit(std::uint32_t q, const std::array<std::array<cplx, 2>, 2>& u) {
    Mat m{};
    for (int j = 0; j < 8; j++) {
        int b = bit_of(j, q);
        m[(b == 0) ? j : flip(j, q)][j] += u[0][b];
        m[(b == 1) ? j : flip(j, q)][j] += u[1][b];
    }
    return m;
}

Mat gate_matrix(const Gate& g) {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx i{0.0, 1.0};
    const cplx t = std::exp(i * (std::acos(-1.0) / 4.0));
    switch (g.kind) {
        case GateKind::H: return single_qubit(g.q0, {{{s, s}, {s, -s}}});
        case GateKind::T: return single_qubit(g.q0, {{{1.0, 0.0}, {0.0, t}}});
        case GateKind::Tdg: return single_qubit(g.q0, {{{1.0, 0.0}, {0.0, std::conj(t)}}});
        case GateKind::S: return single_qubit(g.q0, {{{1.0, 0.0}, {0.0, i}}});
        case GateKind::Sdg: return single_qubit(g.q0, {{{1.0, 0.0}, {0.0, -i}}});
        case GateKind::CNOT: {
            Mat m{};
            for (int j = 0; j < 8; j++)
                m[bit_of(j, g.q0) ? flip(j, g.q1) : j][j] = 1.0;
            return m;
        }
        default: throw std::runtime_error("oracle: unexpected gate");
    }
}

}  // namespace

TEST(frontend, toffoli_decomposition_unitary_oracle) {
    GateCircuit tof;
    tof.qubit_count = 3;
    tof.gates.push_back(Gate{GateKind::Toffoli, 0, 1, 2});
    GateCircuit low = lower_to_clifford_t(tof);
    EXPECT_EQ(t_count(low), 7u);

    Mat u = identity();
    for (const Gate& g : low.gates) u = multiply(gate_matrix(g), u);

    Mat expected{};
    for (int j = 0; j < 8; j++)
        expected[(bit_of(j, 0) && bit_of(j, 1)) ? flip(j, 2) : j][j] = 1.0;

    for (int a = 0; a < 8; a++)
        for (int b = 0; b < 8; b++)
            EXPECT_NEAR(std::abs(u[a][b] - expected[a][b]), 0.0, 1e-9)
                << "entry (" << a << "," << b << ")";
}

// ---------- compilation --------------------------------------------------

TEST(frontend, compile_single_h_with_prep) {
    GateCircuit c;
    c.qubit_count = 1;
    c.gates.push_back(Gate{GateKind::PrepZ, 0});
    c.gates.push_back(Gate{GateKind::H, 0});
    Program p = compile_to_lsqca(c);
    EXPECT_EQ(render_program(p), "PZ.M M0\nHD.M M0\n");
}

TEST(frontend, compile_single_t_sequence) {
    GateCircuit c;
    c.qubit_count = 1;
    c.gates.push_back(Gate{GateKind::T, 0});
    Program p = compile_to_lsqca(c);
    ASSERT_EQ(p.instructions.size(), 6u);  // auto-prep + the 5-instruction sequence
    EXPECT_EQ(p.instructions[0].opcode, Opcode::PZ_M);
    EXPECT_EQ(p.instructions[1].opcode, Opcode::PM);
    EXPECT_EQ(p.instructions[2].opcode, Opcode::MZZ_M);
    EXPECT_EQ(p.instructions[3].opcode, Opcode::MX_C);
    EXPECT_EQ(p.instructions[4].opcode, Opcode::SK);
    EXPECT_EQ(p.instructions[5].opcode, Opcode::PH_M);
    EXPECT_EQ(pm_count(p), 1u);
    // SK reads the ZZ outcome, not the X measurement
    EXPECT_EQ(p.instructions[4].operands[0].index, p.instructions[2].operands[2].index);
}

TEST(frontend, compile_empty_circuit) {
    GateCircuit c;
    c.qubit_count = 2;
    Program p = compile_to_lsqca(c);
    EXPECT_TRUE(p.instructions.empty());
}

TEST(frontend, pm_count_equals_t_count_property) {
    std::mt19937 rng(0x5eed);
    for (int iter = 0; iter < 30; iter++) {
        GateCircuit c;
        c.qubit_count = 4;
        std::uniform_int_distribution<int> kind(0, 4);
        std::uniform_int_distribution<std::uint32_t> q(0, 3);
        for (int g = 0; g < 40; g++) {
            switch (kind(rng)) {
                case 0: c.gates.push_back(Gate{GateKind::H, q(rng)}); break;
                case 1: c.gates.push_back(Gate{GateKind::T, q(rng)}); break;
                case 2: c.gates.push_back(Gate{GateKind::Tdg, q(rng)}); break;
                case 3: {
                    std::uint32_t a = q(rng), b = q(rng);
                    if (a == b) b = (b + 1) % 4;
                    c.gates.push_back(Gate{GateKind::Toffoli, a, b, (b + 1) % 4 == a
                                                                        ? (b + 2) % 4
                                                                        : (b + 1) % 4});
                    break;
                }
                default: c.gates.push_back(Gate{GateKind::S, q(rng)}); break;
            }
        }
        GateCircuit low = lower_to_clifford_t(c);
        Program p = compile_to_lsqca(low);
        EXPECT_EQ(pm_count(p), t_count(low));
    }
}

TEST(frontend, clifford_builtins_compile_with_zero_pm) {
    for (BuiltinKind k : {BuiltinKind::Ghz, BuiltinKind::Cat, BuiltinKind::Bv}) {
        Program p = compile_to_lsqca(lower_to_clifford_t(gen_builtin(k, 6)));
        EXPECT_EQ(pm_count(p), 0u);
    }
}

TEST(frontend, compilation_is_deterministic) {
    GateCircuit c = lower_to_clifford_t(gen_select(2));
    std::string a = render_program(compile_to_lsqca(c));
    std::string b = render_program(compile_to_lsqca(c));
    EXPECT_EQ(a, b);
}

TEST(frontend, per_qubit_order_preserved) {
    GateCircuit c = lower_to_clifford_t(gen_builtin(BuiltinKind::Adder, 3));
    Program p = compile_to_lsqca(c);

    // per-qubit opcode subsequence from the program
    std::map<std::uint32_t, std::vector<Opcode>> seq;
    for (const Instruction& i : p.instructions)
        for (const Operand& o : i.operands)
            if (o.kind == OperandKind::Memory) seq[o.index].push_back(i.opcode);

    // rebuild the expected subsequence from the gate list
    std::map<std::uint32_t, std::vector<Opcode>> expected;
    std::set<std::uint32_t> prepped;
    auto touch = [&](std::uint32_t q) {
        if (!prepped.count(q)) {
            prepped.insert(q);
            expected[q].push_back(Opcode::PZ_M);
        }
    };
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case GateKind::H: touch(g.q0); expected[g.q0].push_back(Opcode::HD_M); break;
            case GateKind::S:
            case GateKind::Sdg: touch(g.q0); expected[g.q0].push_back(Opcode::PH_M); break;
            case GateKind::T:
            case GateKind::Tdg:
                touch(g.q0);
                expected[g.q0].push_back(Opcode::MZZ_M);
                expected[g.q0].push_back(Opcode::PH_M);
                break;
            case GateKind::CNOT:
                touch(g.q0);
                touch(g.q1);
                expected[g.q0].push_back(Opcode::CX);
                expected[g.q1].push_back(Opcode::CX);
                break;
            case GateKind::MeasZ: touch(g.q0); expected[g.q0].push_back(Opcode::MZ_M); break;
            case GateKind::X:
            case GateKind::Y:
            case GateKind::Z: touch(g.q0); break;
            default: FAIL() << "unexpected gate in lowered adder"; break;
        }
    }
    EXPECT_EQ(seq, expected);
}

TEST(frontend, measurement_values_are_ssa) {
    GateCircuit c = lower_to_clifford_t(gen_builtin(BuiltinKind::Adder, 2));
    Program p = compile_to_lsqca(c);
    std::set<std::uint32_t> written;
    for (const Instruction& i : p.instructions) {
        if (!writes_value(i.opcode)) continue;
        std::uint32_t v = i.operands.back().index;
        EXPECT_FALSE(written.count(v)) << "V" << v << " written twice";
        written.insert(v);
    }
}

TEST(frontend, policy_off_uses_explicit_loads_and_stores) {
    GateCircuit c;
    c.qubit_count = 2;
    c.gates.push_back(Gate{GateKind::H, 0});
    c.gates.push_back(Gate{GateKind::T, 1});
    c.gates.push_back(Gate{GateKind::CNOT, 0, 1});
    CompilePolicy off;
    off.in_memory_single_qubit = false;
    off.cx_as_instruction = false;
    off.t_gate_in_memory_zz = false;
    Program p = compile_to_lsqca(c, off);

    auto count = [&](Opcode op) {
        return std::count_if(p.instructions.begin(), p.instructions.end(),
                             [&](const Instruction& i) { return i.opcode == op; });
    };
    EXPECT_EQ(count(Opcode::LD), 2);    // H target and T target
    EXPECT_EQ(count(Opcode::ST), 2);
    EXPECT_EQ(count(Opcode::HD_C), 1);
    EXPECT_EQ(count(Opcode::MZZ_C), 1);  // register-register teleportation
    EXPECT_EQ(count(Opcode::PP_C), 1);   // measurement-based CNOT ancilla
    EXPECT_EQ(count(Opcode::MXX_M), 1);
    EXPECT_EQ(count(Opcode::CX), 0);
    EXPECT_EQ(count(Opcode::HD_M), 0);
    EXPECT_EQ(pm_count(p), 1u);
}

TEST(frontend, conds_compiles_to_guarded_phase) {
    GateCircuit c;
    c.qubit_count = 1;
    c.gates.push_back(Gate{GateKind::MeasX, 0});
    Gate cs{GateKind::CondS, 0};
    cs.value = 0;
    c.gates.push_back(cs);
    Program p = compile_to_lsqca(c);
    ASSERT_EQ(p.instructions.size(), 4u);  // PZ.M, MX.M, SK, PH.M
    EXPECT_EQ(p.instructions[2].opcode, Opcode::SK);
    EXPECT_EQ(p.instructions[3].opcode, Opcode::PH_M);
    EXPECT_EQ(p.instructions[2].operands[0].index, p.instructions[1].operands[1].index);

    GateCircuit bad;
    bad.qubit_count = 1;
    bad.gates.push_back(cs);  // reads an unwritten slot
    EXPECT_THROW(compile_to_lsqca(bad), CompileError);
}
