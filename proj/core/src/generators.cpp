#include "lsqca/generators.hpp"

#include <cmath>
#include <stdexcept>

namespace lsqca {

namespace {

constexpr std::uint32_t kMaxQubits = 1u << 20;

void check_size(std::uint64_t qubits) {
    if (qubits >= kMaxQubits)
        throw std::invalid_argument("circuit size out of supported range (" +
                                    std::to_string(qubits) + " qubits)");
}

Gate g1(GateKind k, std::uint32_t q) { return Gate{k, q}; }
Gate g2(GateKind k, std::uint32_t a, std::uint32_t b) { return Gate{k, a, b}; }
Gate g3(GateKind k, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    return Gate{k, a, b, c};
}
Gate meas(GateKind k, std::uint32_t q, std::uint32_t v) {
    Gate g{k, q};
    g.value = v;
    return g;
}

GateCircuit gen_ghz(std::uint32_t n) {
    GateCircuit c;
    c.qubit_count = n;
    c.gates.push_back(g1(GateKind::H, 0));
    for (std::uint32_t q = 0; q + 1 < n; q++) c.gates.push_back(g2(GateKind::CNOT, q, q + 1));
    for (std::uint32_t q = 0; q < n; q++) c.gates.push_back(meas(GateKind::MeasZ, q, q));
    return c;
}

GateCircuit gen_cat(std::uint32_t n) {
    GateCircuit c;
    c.qubit_count = n;
    c.gates.push_back(g1(GateKind::H, 0));
    for (std::uint32_t q = 1; q < n; q++) c.gates.push_back(g2(GateKind::CNOT, 0, q));
    for (std::uint32_t q = 0; q < n; q++) c.gates.push_back(meas(GateKind::MeasZ, q, q));
    return c;
}

// secret defaults to all ones: one CNOT per secret bit onto the ancilla.
GateCircuit gen_bv(std::uint32_t n) {
    GateCircuit c;
    c.qubit_count = n + 1;
    std::uint32_t anc = n;
    c.gates.push_back(g1(GateKind::X, anc));
    for (std::uint32_t q = 0; q <= n; q++) c.gates.push_back(g1(GateKind::H, q));
    for (std::uint32_t q = 0; q < n; q++) c.gates.push_back(g2(GateKind::CNOT, q, anc));
    for (std::uint32_t q = 0; q < n; q++) c.gates.push_back(g1(GateKind::H, q));
    for (std::uint32_t q = 0; q < n; q++) c.gates.push_back(meas(GateKind::MeasZ, q, q));
    return c;
}

// Cuccaro ripple-carry adder a + b -> b. Qubits: carry-in, a[n], b[n],
// carry-out. MAJ/UMA blocks give 2n Toffoli gates.
GateCircuit gen_adder(std::uint32_t n) {
    GateCircuit c;
    c.qubit_count = 2 * n + 2;
    std::uint32_t cin = 0;
    auto a = [&](std::uint32_t i) { return 1 + i; };
    auto b = [&](std::uint32_t i) { return 1 + n + i; };
    std::uint32_t cout = 2 * n + 1;

    auto maj = [&](std::uint32_t x, std::uint32_t y, std::uint32_t z) {
        c.gates.push_back(g2(GateKind::CNOT, z, y));
        c.gates.push_back(g2(GateKind::CNOT, z, x));
        c.gates.push_back(g3(GateKind::Toffoli, x, y, z));
    };
    auto uma = [&](std::uint32_t x, std::uint32_t y, std::uint32_t z) {
        c.gates.push_back(g3(GateKind::Toffoli, x, y, z));
        c.gates.push_back(g2(GateKind::CNOT, z, x));
        c.gates.push_back(g2(GateKind::CNOT, x, y));
    };

    maj(cin, b(0), a(0));
    for (std::uint32_t i = 1; i < n; i++) maj(a(i - 1), b(i), a(i));
    c.gates.push_back(g2(GateKind::CNOT, a(n - 1), cout));
    for (std::uint32_t i = n; i-- > 1;) uma(a(i - 1), b(i), a(i));
    uma(cin, b(0), a(0));

    for (std::uint32_t i = 0; i < n; i++) c.gates.push_back(meas(GateKind::MeasZ, b(i), i));
    c.gates.push_back(meas(GateKind::MeasZ, cout, n));
    return c;
}

}  // namespace

std::optional<BuiltinKind> builtin_from_name(std::string_view name) {
    if (name == "ghz") return BuiltinKind::Ghz;
    if (name == "cat") return BuiltinKind::Cat;
    if (name == "bv") return BuiltinKind::Bv;
    if (name == "adder") return BuiltinKind::Adder;
    return std::nullopt;
}

GateCircuit gen_builtin(BuiltinKind kind, std::uint32_t size) {
    if (size < 1) throw std::invalid_argument("builtin circuit size must be >= 1");
    check_size(kind == BuiltinKind::Adder ? 2ull * size + 2 : size + 1ull);
    switch (kind) {
        case BuiltinKind::Ghz: return gen_ghz(size);
        case BuiltinKind::Cat: return gen_cat(size);
        case BuiltinKind::Bv: return gen_bv(size);
        case BuiltinKind::Adder: return gen_adder(size);
    }
    throw std::invalid_argument("unknown builtin kind");
}

namespace {

enum class PauliAxis { X, Y, Z };

struct SelectBuilder {
    GateCircuit c;
    std::uint32_t nc;  // control bits
    std::uint32_t nt;  // ladder ancillas
    std::vector<bool> negated;         // X applied to control q
    std::vector<std::uint32_t> level_bits;  // bit value consumed by each computed level

    std::uint32_t control(std::uint32_t j) const { return j; }
    std::uint32_t temporal(std::uint32_t j) const { return nc + j; }

    void set_negation(std::uint32_t ctrl, bool want) {
        if (negated[ctrl] != want) {
            c.gates.push_back(Gate{GateKind::X, control(ctrl)});
            negated[ctrl] = want;
        }
    }

    // level k ANDs bits 0..k+1 into temporal(k); bit j of index i is taken
    // MSB-first so consecutive indices share their common prefix
    void push_level(std::uint32_t k, std::uint32_t bit_hi, std::uint32_t bit_lo_value) {
        if (k == 0) {
            set_negation(0, bit_hi == 0);
            set_negation(1, bit_lo_value == 0);
            c.gates.push_back(Gate{GateKind::Toffoli, control(0), control(1), temporal(0)});
        } else {
            set_negation(k + 1, bit_lo_value == 0);
            c.gates.push_back(Gate{GateKind::Toffoli, temporal(k - 1), control(k + 1), temporal(k)});
        }
        level_bits.push_back(bit_lo_value);
    }

    void pop_level(std::uint32_t k) {
        if (k == 0) {
            c.gates.push_back(Gate{GateKind::Toffoli, control(0), control(1), temporal(0)});
        } else {
            c.gates.push_back(Gate{GateKind::Toffoli, temporal(k - 1), control(k + 1), temporal(k)});
        }
        level_bits.pop_back();
    }

    std::uint32_t flag() const { return nc >= 2 ? temporal(nt - 1) : control(0); }

    void controlled_pauli(PauliAxis axis, std::uint32_t target) {
        std::uint32_t f = flag();
        switch (axis) {
            case PauliAxis::X:
                c.gates.push_back(Gate{GateKind::CNOT, f, target});
                break;
            case PauliAxis::Y:
                c.gates.push_back(Gate{GateKind::Sdg, target});
                c.gates.push_back(Gate{GateKind::CNOT, f, target});
                c.gates.push_back(Gate{GateKind::S, target});
                break;
            case PauliAxis::Z:
                c.gates.push_back(Gate{GateKind::H, target});
                c.gates.push_back(Gate{GateKind::CNOT, f, target});
                c.gates.push_back(Gate{GateKind::H, target});
                break;
        }
    }
};

}  // namespace

GateCircuit gen_select(std::uint32_t w) {
    if (w < 2) throw std::invalid_argument("SELECT lattice width must be >= 2");

    // bonds of the w x w grid, horizontal then vertical, row-major
    std::vector<std::pair<std::uint32_t, std::uint32_t>> bonds;
    auto site = [&](std::uint32_t r, std::uint32_t col) { return r * w + col; };
    for (std::uint32_t r = 0; r < w; r++)
        for (std::uint32_t col = 0; col + 1 < w; col++)
            bonds.emplace_back(site(r, col), site(r, col + 1));
    for (std::uint32_t r = 0; r + 1 < w; r++)
        for (std::uint32_t col = 0; col < w; col++)
            bonds.emplace_back(site(r, col), site(r + 1, col));

    std::uint64_t terms = 3ull * bonds.size();
    std::uint32_t nc = 1;
    while ((1ull << nc) < terms) nc++;
    std::uint32_t nt = nc >= 2 ? nc - 1 : 0;
    std::uint64_t total = static_cast<std::uint64_t>(nc) + nt + static_cast<std::uint64_t>(w) * w;
    check_size(total);

    SelectBuilder b;
    b.nc = nc;
    b.nt = nt;
    b.c.qubit_count = static_cast<std::uint32_t>(total);
    b.negated.assign(nc, false);
    b.c.registers.assign(b.c.qubit_count, QubitRegister::System);
    for (std::uint32_t j = 0; j < nc; j++) b.c.registers[j] = QubitRegister::Control;
    for (std::uint32_t j = 0; j < nt; j++) b.c.registers[nc + j] = QubitRegister::Temporal;

    std::uint32_t sys_base = nc + nt;
    auto bit_of = [&](std::uint64_t i, std::uint32_t j) -> std::uint32_t {
        // bit 0 is the most significant of the nc-bit index
        return static_cast<std::uint32_t>((i >> (nc - 1 - j)) & 1ull);
    };

    std::int64_t prev = -1;
    for (std::uint64_t i = 0; i < terms; i++) {
        if (nc >= 2) {
            // retain the ladder prefix shared with the previous index
            std::uint32_t common = 0;
            if (prev >= 0) {
                while (common < nc && bit_of(static_cast<std::uint64_t>(prev), common) == bit_of(i, common))
                    common++;
            }
            std::uint32_t keep = common >= 2 ? std::min(common - 1, nt) : 0;
            while (b.level_bits.size() > keep) b.pop_level(static_cast<std::uint32_t>(b.level_bits.size() - 1));
            while (b.level_bits.size() < nt) {
                auto k = static_cast<std::uint32_t>(b.level_bits.size());
                b.push_level(k, bit_of(i, 0), bit_of(i, k + 1));
            }
        } else {
            b.set_negation(0, bit_of(i, 0) == 0);
        }

        auto [qa, qb] = bonds[i / 3];
        auto axis = static_cast<PauliAxis>(i % 3);
        b.controlled_pauli(axis, sys_base + qa);
        b.controlled_pauli(axis, sys_base + qb);
        prev = static_cast<std::int64_t>(i);
    }

    if (nc >= 2)
        while (!b.level_bits.empty()) b.pop_level(static_cast<std::uint32_t>(b.level_bits.size() - 1));
    for (std::uint32_t j = 0; j < nc; j++) b.set_negation(j, false);

    for (std::uint32_t q = 0; q < b.c.qubit_count; q++)
        b.c.gates.push_back(Gate{GateKind::MeasZ, q, 0, 0, q});
    return b.c;
}

}  // namespace lsqca
