#pragma once

#include <optional>
#include <string>

#include "lsqca/compile.hpp"
#include "lsqca/floorplan.hpp"
#include "lsqca/generators.hpp"
#include "lsqca/sim.hpp"

namespace lsqca {

// Declarative run description: one circuit source, a layout, compile policy
// and simulator options. Populated from a flat key=value config file and
// overridable key by key from command-line flags.
struct RunConfig {
    // exactly one of these three selects the circuit source
    std::string circuit_file;                 // .qasm / .gc by extension
    std::optional<BuiltinKind> builtin;
    std::uint32_t builtin_size = 0;
    std::uint32_t select_width = 0;

    std::string program_file;                 // pre-compiled .lsq, skips the frontend

    LayoutConfig layout;
    CompilePolicy policy;
    SimOptions sim;
    std::string out_dir = ".";
    int sweep_threads = 1;

    void apply(const std::string& key, const std::string& value);
    void validate_source() const;  // exactly one circuit source
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// `key = value` lines, `#` comments
RunConfig parse_config_file(const std::string& path);
void apply_config_text(RunConfig& cfg, const std::string& text);

struct SourceProgram {
    Program program;
    std::uint32_t qubits = 0;  // declared circuit width (>= touched variables)
};

// Frontend pipeline: source -> lowered Clifford+T -> program. For
// program_file inputs, parses the assembly directly.
Program load_program(const RunConfig& cfg);
SourceProgram load_source_program(const RunConfig& cfg);
GateCircuit load_circuit(const RunConfig& cfg);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lsqca
