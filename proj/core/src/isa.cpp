#include "lsqca/isa.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <set>
#include <sstream>

namespace lsqca {

namespace {

constexpr OperandKind M = OperandKind::Memory;
constexpr OperandKind C = OperandKind::Register;
constexpr OperandKind V = OperandKind::Value;

struct OpInfo {
    std::string_view name;
    std::vector<OperandKind> sig;
    LatencyClass latency;
};

const std::array<OpInfo, kOpcodeCount>& op_table() {
    static const std::array<OpInfo, kOpcodeCount> table = {{
        {"LD", {M, C}, LatencyClass::variable()},
        {"ST", {C, M}, LatencyClass::variable()},
        {"PZ.C", {C}, LatencyClass::fixed(0)},
        {"PP.C", {C}, LatencyClass::fixed(0)},
        {"PM", {C}, LatencyClass::variable()},
        {"HD.C", {C}, LatencyClass::fixed(3)},
        {"PH.C", {C}, LatencyClass::fixed(2)},
        {"MX.C", {C, V}, LatencyClass::fixed(0)},
        {"MZ.C", {C, V}, LatencyClass::fixed(0)},
        {"MXX.C", {C, C, V}, LatencyClass::fixed(1)},
        {"MZZ.C", {C, C, V}, LatencyClass::fixed(1)},
        {"SK", {V}, LatencyClass::variable()},
        {"PZ.M", {M}, LatencyClass::fixed(0)},
        {"PP.M", {M}, LatencyClass::fixed(0)},
        {"HD.M", {M}, LatencyClass::variable()},
        {"PH.M", {M}, LatencyClass::variable()},
        {"MX.M", {M, V}, LatencyClass::fixed(0)},
        {"MZ.M", {M, V}, LatencyClass::fixed(0)},
        {"MXX.M", {C, M, V}, LatencyClass::variable()},
        {"MZZ.M", {C, M, V}, LatencyClass::variable()},
        {"CX", {M, M}, LatencyClass::variable()},
    }};
    return table;
}

char kind_prefix(OperandKind k) {
    switch (k) {
        case OperandKind::Memory: return 'M';
        case OperandKind::Register: return 'C';
        case OperandKind::Value: return 'V';
    }
    return '?';
}

}  // namespace

std::string_view opcode_name(Opcode op) {
    return op_table()[static_cast<std::size_t>(op)].name;
}

std::optional<Opcode> opcode_from_name(std::string_view name) {
    const auto& table = op_table();
    for (std::size_t i = 0; i < table.size(); i++) {
        if (table[i].name == name) return static_cast<Opcode>(i);
    }
    return std::nullopt;
}

std::span<const OperandKind> opcode_signature(Opcode op) {
    return op_table()[static_cast<std::size_t>(op)].sig;
}

LatencyClass nominal_latency(Opcode op) {
    return op_table()[static_cast<std::size_t>(op)].latency;
}

bool writes_value(Opcode op) {
    switch (op) {
        case Opcode::MX_C:
        case Opcode::MZ_C:
        case Opcode::MXX_C:
        case Opcode::MZZ_C:
        case Opcode::MX_M:
        case Opcode::MZ_M:
        case Opcode::MXX_M:
        case Opcode::MZZ_M:
            return true;
        default:
            return false;
    }
}

Program parse_program(std::string_view text) {
    Program p;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        line_no++;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        std::vector<std::string_view> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) i++;
            std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') i++;
            if (i > start) tokens.push_back(line.substr(start, i - start));
        }
        if (tokens.empty()) continue;

        auto op = opcode_from_name(tokens[0]);
        if (!op) throw ParseError(line_no, "unknown opcode '" + std::string(tokens[0]) + "'");

        auto sig = opcode_signature(*op);
        if (tokens.size() - 1 != sig.size()) {
            throw ParseError(line_no, std::string(opcode_name(*op)) + " expects " +
                                          std::to_string(sig.size()) + " operands, got " +
                                          std::to_string(tokens.size() - 1));
        }

        Instruction inst{*op, {}};
        inst.operands.reserve(sig.size());
        for (std::size_t k = 0; k < sig.size(); k++) {
            std::string_view tok = tokens[k + 1];
            if (tok.empty() || tok[0] != kind_prefix(sig[k])) {
                throw ParseError(line_no, "operand " + std::to_string(k + 1) + " of " +
                                              std::string(opcode_name(*op)) + " must be " +
                                              kind_prefix(sig[k]) + std::string("<index>, got '") +
                                              std::string(tok) + "'");
            }
            std::uint32_t idx = 0;
            auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), idx);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
                throw ParseError(line_no, "malformed integer in operand '" + std::string(tok) + "'");
            }
            inst.operands.push_back({sig[k], idx});
        }
        p.instructions.push_back(std::move(inst));
    }
    validate_program(p);
    return p;
}

void validate_program(Program& p) {
    std::set<std::uint32_t> ms, cs, vs;
    std::set<std::uint32_t> written;
    for (std::size_t i = 0; i < p.instructions.size(); i++) {
        const Instruction& inst = p.instructions[i];
        for (const Operand& o : inst.operands) {
            switch (o.kind) {
                case OperandKind::Memory: ms.insert(o.index); break;
                case OperandKind::Register: cs.insert(o.index); break;
                case OperandKind::Value: vs.insert(o.index); break;
            }
        }
        if (inst.opcode == Opcode::SK) {
            if (!written.count(inst.operands[0].index)) {
                throw ParseError(static_cast<int>(i + 1),
                                 "SK reads V" + std::to_string(inst.operands[0].index) +
                                     " before any measurement writes it");
            }
        }
        if (writes_value(inst.opcode)) written.insert(inst.operands.back().index);
    }
    p.qubit_count = static_cast<std::uint32_t>(ms.size());
    p.register_count = static_cast<std::uint32_t>(cs.size());
    p.classical_count = static_cast<std::uint32_t>(vs.size());
}

std::string render_instruction(const Instruction& i) {
    std::string out{opcode_name(i.opcode)};
    for (const Operand& o : i.operands) {
        out += ' ';
        out += kind_prefix(o.kind);
        out += std::to_string(o.index);
    }
    return out;
}

std::string render_program(const Program& p) {
    std::string out;
    for (const Instruction& i : p.instructions) {
        out += render_instruction(i);
        out += '\n';
    }
    return out;
}

}  // namespace lsqca
