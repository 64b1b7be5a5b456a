#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lsqca {

using beat_t = std::uint64_t;

// Instruction set of the load/store machine. `.C` variants act on register
// cells in the computational register, `.M` variants act in place on memory
// cells; CX is the optimized two-qubit unitary resolved at run time.
enum class Opcode : std::uint8_t {
    LD,
    ST,
    PZ_C,
    PP_C,
    PM,
    HD_C,
    PH_C,
    MX_C,
    MZ_C,
    MXX_C,
    MZZ_C,
    SK,
    PZ_M,
    PP_M,
    HD_M,
    PH_M,
    MX_M,
    MZ_M,
    MXX_M,
    MZZ_M,
    CX,
};

constexpr std::size_t kOpcodeCount = 21;

enum class OperandKind : std::uint8_t {
    Memory,     // M: logical variable resolved to a SAM/conventional cell
    Register,   // C: register cell identifier in the CR
    Value,      // V: classical value identifier
};

struct Operand {
    OperandKind kind;
    std::uint32_t index;

    bool operator==(const Operand&) const = default;
};

struct Instruction {
    Opcode opcode;
    std::vector<Operand> operands;

    bool operator==(const Instruction&) const = default;
};

struct Program {
    std::vector<Instruction> instructions;
    std::uint32_t qubit_count = 0;      // distinct M variables
    std::uint32_t register_count = 0;   // distinct C identifiers
    std::uint32_t classical_count = 0;  // distinct V identifiers

    bool operator==(const Program&) const = default;
};

// Static latency class per the instruction table. Fixed latencies are in
// code beats; variable ones are resolved by the simulator from machine state.
struct LatencyClass {
    bool is_fixed;
    beat_t beats;  // meaningful only when is_fixed

    static LatencyClass fixed(beat_t b) { return {true, b}; }
    static LatencyClass variable() { return {false, 0}; }

    bool operator==(const LatencyClass&) const = default;
};

std::string_view opcode_name(Opcode op);
std::optional<Opcode> opcode_from_name(std::string_view name);

// Operand signature of an opcode, e.g. MZZ_M -> {Register, Memory, Value}.
std::span<const OperandKind> opcode_signature(Opcode op);

LatencyClass nominal_latency(Opcode op);
inline LatencyClass nominal_latency(const Instruction& i) { return nominal_latency(i.opcode); }

bool writes_value(Opcode op);  // measurement-type opcodes that define a V

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// Assembly text: one instruction per line, `#` comments, operands written
// as M<idx>, C<idx>, V<idx>. Counts distinct identifiers and validates that
// every V read by SK has a preceding measurement writer.
Program parse_program(std::string_view text);
std::string render_program(const Program& p);

std::string render_instruction(const Instruction& i);

// Re-derives identifier counts and checks SK read-after-write; throws
// ParseError (line = instruction index + 1) on violation.
void validate_program(Program& p);

}  // namespace lsqca
