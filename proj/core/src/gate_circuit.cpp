#include "lsqca/gate_circuit.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace lsqca {

std::size_t gate_arity(GateKind k) {
    switch (k) {
        case GateKind::CNOT: return 2;
        case GateKind::Toffoli: return 3;
        default: return 1;
    }
}

std::string_view gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "h";
        case GateKind::S: return "s";
        case GateKind::Sdg: return "sdg";
        case GateKind::X: return "x";
        case GateKind::Y: return "y";
        case GateKind::Z: return "z";
        case GateKind::T: return "t";
        case GateKind::Tdg: return "tdg";
        case GateKind::CNOT: return "cx";
        case GateKind::Toffoli: return "ccx";
        case GateKind::MeasZ: return "measz";
        case GateKind::MeasX: return "measx";
        case GateKind::PrepZ: return "prepz";
        case GateKind::PrepX: return "prepx";
        case GateKind::CondS: return "conds";
    }
    return "?";
}

std::uint64_t t_count(const GateCircuit& c) {
    return std::count_if(c.gates.begin(), c.gates.end(), [](const Gate& g) {
        return g.kind == GateKind::T || g.kind == GateKind::Tdg;
    });
}

std::uint64_t toffoli_count(const GateCircuit& c) {
    return std::count_if(c.gates.begin(), c.gates.end(),
                         [](const Gate& g) { return g.kind == GateKind::Toffoli; });
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, eol - pos));
        pos = eol + 1;
    }
    return lines;
}

std::vector<std::string_view> tokenize(std::string_view line, std::string_view separators) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    auto is_sep = [&](char c) { return separators.find(c) != std::string_view::npos; };
    while (i < line.size()) {
        while (i < line.size() && is_sep(line[i])) i++;
        std::size_t start = i;
        while (i < line.size() && !is_sep(line[i])) i++;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

std::uint32_t parse_u32(std::string_view tok, int line_no) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line_no, "malformed integer '" + std::string(tok) + "'");
    return v;
}

// ----- native format ---------------------------------------------------
//
//   qubits <n>
//   h <q> | s <q> | sdg <q> | x|y|z <q> | t <q> | tdg <q>
//   cx <control> <target>
//   ccx <c0> <c1> <target>
//   measz <q> <v> | measx <q> <v>
//   prepz <q> | prepx <q>
//   conds <q> <v>

GateCircuit parse_native(std::string_view text) {
    GateCircuit c;
    bool have_qubits = false;
    int line_no = 0;
    for (std::string_view raw : split_lines(text)) {
        line_no++;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tokens = tokenize(line, " \t\r");
        if (tokens.empty()) continue;

        if (tokens[0] == "qubits") {
            if (have_qubits) throw ParseError(line_no, "duplicate qubits declaration");
            if (tokens.size() != 2) throw ParseError(line_no, "qubits expects one count");
            c.qubit_count = parse_u32(tokens[1], line_no);
            have_qubits = true;
            continue;
        }
        if (!have_qubits) throw ParseError(line_no, "qubits declaration must come first");

        static const std::map<std::string_view, GateKind> names = {
            {"h", GateKind::H},         {"s", GateKind::S},         {"sdg", GateKind::Sdg},
            {"x", GateKind::X},         {"y", GateKind::Y},         {"z", GateKind::Z},
            {"t", GateKind::T},         {"tdg", GateKind::Tdg},     {"cx", GateKind::CNOT},
            {"cnot", GateKind::CNOT},   {"ccx", GateKind::Toffoli}, {"measz", GateKind::MeasZ},
            {"measx", GateKind::MeasX}, {"prepz", GateKind::PrepZ}, {"prepx", GateKind::PrepX},
            {"conds", GateKind::CondS},
        };
        auto it = names.find(tokens[0]);
        if (it == names.end())
            throw ParseError(line_no, "unsupported gate '" + std::string(tokens[0]) + "'");

        GateKind kind = it->second;
        std::size_t qubit_args = gate_arity(kind);
        bool has_value =
            kind == GateKind::MeasZ || kind == GateKind::MeasX || kind == GateKind::CondS;
        if (tokens.size() != 1 + qubit_args + (has_value ? 1 : 0))
            throw ParseError(line_no, "wrong operand count for '" + std::string(tokens[0]) + "'");

        Gate g{kind};
        std::uint32_t* slots[3] = {&g.q0, &g.q1, &g.q2};
        for (std::size_t k = 0; k < qubit_args; k++) {
            *slots[k] = parse_u32(tokens[1 + k], line_no);
            if (*slots[k] >= c.qubit_count)
                throw ParseError(line_no, "qubit index out of range");
        }
        if (has_value) g.value = parse_u32(tokens[1 + qubit_args], line_no);
        c.gates.push_back(g);
    }
    return c;
}

// ----- qasm subset ------------------------------------------------------

struct QasmReg {
    std::uint32_t offset;
    std::uint32_t size;
};

GateCircuit parse_qasm(std::string_view text) {
    GateCircuit c;
    std::map<std::string, QasmReg> qregs;
    std::map<std::string, QasmReg> cregs;
    std::uint32_t next_qubit = 0;
    std::uint32_t next_clbit = 0;

    auto resolve = [&](std::map<std::string, QasmReg>& regs, std::string_view ref, int line_no,
                       std::string_view what) -> std::uint32_t {
        auto lb = ref.find('[');
        auto rb = ref.find(']');
        if (lb == std::string_view::npos || rb == std::string_view::npos || rb < lb)
            throw ParseError(line_no, "expected " + std::string(what) + "[index], got '" +
                                          std::string(ref) + "'");
        std::string name(ref.substr(0, lb));
        std::uint32_t idx = parse_u32(ref.substr(lb + 1, rb - lb - 1), line_no);
        auto it = regs.find(name);
        if (it == regs.end())
            throw ParseError(line_no, "undeclared register '" + name + "'");
        if (idx >= it->second.size) throw ParseError(line_no, "index out of range in '" +
                                                                  std::string(ref) + "'");
        return it->second.offset + idx;
    };

    int line_no = 0;
    for (std::string_view raw : split_lines(text)) {
        line_no++;
        std::string_view line = raw;
        if (auto cmt = line.find("//"); cmt != std::string_view::npos) line = line.substr(0, cmt);

        // statements are `;`-terminated; split within the line
        for (std::string_view stmt_raw : tokenize(line, ";")) {
            auto tokens = tokenize(stmt_raw, " \t\r,");
            if (tokens.empty()) continue;
            std::string_view head = tokens[0];

            if (head == "OPENQASM" || head == "include" || head == "barrier") continue;

            if (head == "qreg" || head == "creg") {
                if (tokens.size() != 2) throw ParseError(line_no, "malformed register declaration");
                std::string_view decl = tokens[1];
                auto lb = decl.find('[');
                auto rb = decl.find(']');
                if (lb == std::string_view::npos || rb == std::string_view::npos)
                    throw ParseError(line_no, "malformed register declaration");
                std::string name(decl.substr(0, lb));
                std::uint32_t size = parse_u32(decl.substr(lb + 1, rb - lb - 1), line_no);
                auto& regs = (head == "qreg") ? qregs : cregs;
                if (regs.count(name))
                    throw ParseError(line_no, "register '" + name + "' re-declared");
                auto& next = (head == "qreg") ? next_qubit : next_clbit;
                regs[name] = {next, size};
                next += size;
                continue;
            }

            if (head == "measure") {
                // measure q[i] -> c[j]
                if (tokens.size() != 4 || tokens[2] != "->")
                    throw ParseError(line_no, "malformed measure statement");
                Gate g{GateKind::MeasZ};
                g.q0 = resolve(qregs, tokens[1], line_no, "qubit");
                g.value = resolve(cregs, tokens[3], line_no, "clbit");
                c.gates.push_back(g);
                continue;
            }

            static const std::map<std::string_view, GateKind> names = {
                {"h", GateKind::H},       {"s", GateKind::S},   {"sdg", GateKind::Sdg},
                {"x", GateKind::X},       {"y", GateKind::Y},   {"z", GateKind::Z},
                {"t", GateKind::T},       {"tdg", GateKind::Tdg}, {"cx", GateKind::CNOT},
                {"ccx", GateKind::Toffoli},
            };
            auto it = names.find(head);
            if (it == names.end())
                throw ParseError(line_no, "unsupported gate '" + std::string(head) + "'");

            GateKind kind = it->second;
            std::size_t arity = gate_arity(kind);
            if (tokens.size() != 1 + arity)
                throw ParseError(line_no, "wrong operand count for '" + std::string(head) + "'");
            Gate g{kind};
            std::uint32_t* slots[3] = {&g.q0, &g.q1, &g.q2};
            for (std::size_t k = 0; k < arity; k++)
                *slots[k] = resolve(qregs, tokens[1 + k], line_no, "qubit");
            c.gates.push_back(g);
        }
    }
    c.qubit_count = next_qubit;
    return c;
}

}  // namespace

GateCircuit parse_gate_circuit(std::string_view text, CircuitFormat format) {
    return format == CircuitFormat::Native ? parse_native(text) : parse_qasm(text);
}

std::string render_native(const GateCircuit& c) {
    std::ostringstream out;
    out << "qubits " << c.qubit_count << "\n";
    for (const Gate& g : c.gates) {
        out << gate_name(g.kind);
        std::size_t arity = gate_arity(g.kind);
        const std::uint32_t* slots[3] = {&g.q0, &g.q1, &g.q2};
        for (std::size_t k = 0; k < arity; k++) out << ' ' << *slots[k];
        if (g.kind == GateKind::MeasZ || g.kind == GateKind::MeasX || g.kind == GateKind::CondS)
            out << ' ' << g.value;
        out << "\n";
    }
    return out.str();
}

}  // namespace lsqca
