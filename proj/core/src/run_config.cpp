#include "lsqca/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lsqca/lower.hpp"

namespace lsqca {

namespace {

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    throw ConfigError("expected a boolean, got '" + v + "'");
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

}  // namespace

void RunConfig::apply(const std::string& key, const std::string& value) {
    try {
        if (key == "circuit") {
            circuit_file = value;
        } else if (key == "program") {
            program_file = value;
        } else if (key == "builtin") {
            auto k = builtin_from_name(value);
            if (!k) throw ConfigError("unknown builtin '" + value + "'");
            builtin = k;
        } else if (key == "size") {
            builtin_size = static_cast<std::uint32_t>(std::stoul(value));
        } else if (key == "select_width") {
            select_width = static_cast<std::uint32_t>(std::stoul(value));
        } else if (key == "sam") {
            if (value == "point")
                layout.sam_kind = SamKind::Point;
            else if (value == "line")
                layout.sam_kind = SamKind::Line;
            else if (value == "conventional")
                layout.sam_kind = SamKind::Conventional;
            else
                throw ConfigError("unknown sam kind '" + value + "'");
        } else if (key == "banks") {
            layout.banks = std::stoi(value);
        } else if (key == "factories") {
            layout.factories = std::stoi(value);
        } else if (key == "buffer") {
            layout.buffer_capacity = std::stoi(value);
        } else if (key == "f") {
            layout.hybrid_fraction = std::stod(value);
            if (layout.hybrid_fraction < 0.0 || layout.hybrid_fraction > 1.0)
                throw ConfigError("f must be in [0,1]");
        } else if (key == "store") {
            if (value == "locality")
                sim.store_policy = StorePolicy::LocalityAware;
            else if (value == "reverse")
                sim.store_policy = StorePolicy::Reverse;
            else
                throw ConfigError("unknown store policy '" + value + "'");
        } else if (key == "warm_msf") {
            sim.warm_msf = parse_bool(value);
        } else if (key == "unlimited_msf") {
            sim.unlimited_msf = parse_bool(value);
        } else if (key == "line_batching") {
            sim.line_batching = parse_bool(value);
        } else if (key == "cx_baseline") {
            sim.cx_baseline_beats = std::stoull(value);
        } else if (key == "decoder_beats") {
            sim.decoder_beats = std::stoull(value);
        } else if (key == "in_memory_single_qubit") {
            policy.in_memory_single_qubit = parse_bool(value);
        } else if (key == "cx_as_instruction") {
            policy.cx_as_instruction = parse_bool(value);
        } else if (key == "t_gate_in_memory_zz") {
            policy.t_gate_in_memory_zz = parse_bool(value);
        } else if (key == "out") {
            out_dir = value;
        } else if (key == "threads") {
            sweep_threads = std::stoi(value);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const std::invalid_argument&) {
        throw ConfigError("malformed value '" + value + "' for key '" + key + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("value out of range for key '" + key + "'");
    }
}

void RunConfig::validate_source() const {
    int sources = 0;
    if (!circuit_file.empty()) sources++;
    if (builtin) sources++;
    if (select_width > 0) sources++;
    if (!program_file.empty()) sources++;
    if (sources != 1) throw ConfigError("exactly one circuit source must be given");
    if (builtin && builtin_size == 0) throw ConfigError("builtin circuits need size=<n>");
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        cfg.apply(trim(trimmed.substr(0, eq)), trim(trimmed.substr(eq + 1)));
    }
}

RunConfig parse_config_file(const std::string& path) {
    RunConfig cfg;
    apply_config_text(cfg, read_file(path));
    return cfg;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << content;
}

GateCircuit load_circuit(const RunConfig& cfg) {
    if (!cfg.circuit_file.empty()) {
        std::string text = read_file(cfg.circuit_file);
        bool qasm = cfg.circuit_file.size() >= 5 &&
                    cfg.circuit_file.substr(cfg.circuit_file.size() - 5) == ".qasm";
        return parse_gate_circuit(text, qasm ? CircuitFormat::QasmSubset : CircuitFormat::Native);
    }
    if (cfg.builtin) return gen_builtin(*cfg.builtin, cfg.builtin_size);
    if (cfg.select_width > 0) return gen_select(cfg.select_width);
    throw ConfigError("no circuit source configured");
}

Program load_program(const RunConfig& cfg) { return load_source_program(cfg).program; }

SourceProgram load_source_program(const RunConfig& cfg) {
    SourceProgram out;
    if (!cfg.program_file.empty()) {
        out.program = parse_program(read_file(cfg.program_file));
        std::uint32_t max_var = 0;
        for (const Instruction& i : out.program.instructions)
            for (const Operand& o : i.operands)
                if (o.kind == OperandKind::Memory) max_var = std::max(max_var, o.index + 1);
        out.qubits = max_var;
        return out;
    }
    GateCircuit c = load_circuit(cfg);
    out.qubits = c.qubit_count;
    out.program = compile_to_lsqca(lower_to_clifford_t(c), cfg.policy);
    return out;
}

}  // namespace lsqca
