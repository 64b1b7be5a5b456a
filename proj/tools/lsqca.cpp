#include <filesystem>
#include <numeric>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lsqca/analysis.hpp"
#include "lsqca/lower.hpp"
#include "lsqca/run_config.hpp"

namespace fs = std::filesystem;
using namespace lsqca;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDeadlock = 3;

struct CommonArgs {
    std::string config_file;
    std::vector<std::string> sets;  // key=value overrides
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-c,--config", args.config_file, "flat key=value config file");
    cmd->add_option("-s,--set", args.sets, "override a config key, e.g. -s factories=4");
    cmd->add_option("-o,--out", args.out_dir, "output directory");
}

RunConfig make_config(const CommonArgs& args) {
    RunConfig cfg;
    if (!args.config_file.empty()) apply_config_text(cfg, read_file(args.config_file));
    for (const std::string& s : args.sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("override must be key=value: '" + s + "'");
        cfg.apply(s.substr(0, eq), s.substr(eq + 1));
    }
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    fs::create_directories(cfg.out_dir);
    return cfg;
}

std::string run_summary_text(const RunResult& r, beat_t baseline_beats) {
    std::ostringstream out;
    out << render_summary(r);
    out << "baseline_beats " << baseline_beats << "\n";
    double overhead = baseline_beats > 0 ? static_cast<double>(r.total_beats) /
                                                   static_cast<double>(baseline_beats) -
                                               1.0
                                         : 0.0;
    out << "overhead " << overhead << "\n";
    return out.str();
}

int cmd_compile(const CommonArgs& args, const std::string& out_file) {
    RunConfig cfg = make_config(args);
    cfg.validate_source();
    if (!cfg.program_file.empty()) throw ConfigError("compile needs a circuit, not a program");

    GateCircuit raw = load_circuit(cfg);
    GateCircuit lowered = lower_to_clifford_t(raw);
    Program p = compile_to_lsqca(lowered, cfg.policy);

    std::string path = out_file.empty() ? cfg.out_dir + "/program.lsq" : out_file;
    write_file(path, render_program(p));

    std::cout << "qubits " << p.qubit_count << "\n"
              << "t_count " << t_count(lowered) << "\n"
              << "pm_count " << pm_count(p) << "\n"
              << "instructions " << p.instructions.size() << "\n"
              << "wrote " << path << "\n";
    return kExitOk;
}

int cmd_simulate(const CommonArgs& args) {
    RunConfig cfg = make_config(args);
    cfg.validate_source();
    auto [p, qubits] = load_source_program(cfg);
    if (qubits == 0) throw ConfigError("program touches no memory qubits");

    std::vector<std::uint32_t> vars(qubits);
    std::iota(vars.begin(), vars.end(), 0);
    Layout layout = build_layout(cfg.layout, qubits);

    const std::vector<std::uint32_t>* hotness_ptr = nullptr;
    std::vector<std::uint32_t> hotness;
    if (cfg.layout.hybrid_fraction > 0.0) {
        SimOptions profile_opts = cfg.sim;
        profile_opts.unlimited_msf = true;
        RunResult profile = run_baseline(p, cfg.layout.factories, -1, profile_opts);
        hotness = hotness_rank(reference_trace(profile));
        hotness_ptr = &hotness;
    }
    QubitMap map = assign_initial(layout, vars, hotness_ptr);

    RunResult r;
    if (cfg.layout.sam_kind == SamKind::Conventional)
        r = run_baseline(p, cfg.layout.factories, cfg.layout.buffer_capacity, cfg.sim);
    else
        r = run(p, layout, map, cfg.sim);
    RunResult base = run_baseline(p, cfg.layout.factories, cfg.layout.buffer_capacity, cfg.sim);

    std::string summary = run_summary_text(r, base.total_beats);
    write_file(cfg.out_dir + "/summary.txt", summary);
    write_file(cfg.out_dir + "/trace.log", render_trace(p, r));
    write_file(cfg.out_dir + "/layout.txt", dump_layout(layout));
    ReferenceTrace refs = reference_trace(r);
    write_file(cfg.out_dir + "/refs.csv", refs_csv(refs));
    write_file(cfg.out_dir + "/period_cdf.csv", cdf_csv(period_cdf(refs.all_periods())));
    std::cout << summary;
    return kExitOk;
}

int cmd_sweep(const CommonArgs& args) {
    RunConfig cfg = make_config(args);
    cfg.validate_source();
    auto [p, qubits] = load_source_program(cfg);

    SweepCurve curve = sweep_hybrid(p, cfg.layout, cfg.sim, cfg.sweep_threads, qubits);
    std::string csv = sweep_csv(curve);
    write_file(cfg.out_dir + "/sweep.csv", csv);
    std::cout << csv;
    for (const SweepPoint& pt : curve.points)
        if (pt.failed) std::cerr << "point f=" << pt.f << " failed: " << pt.error << "\n";
    return kExitOk;
}

int cmd_report(const std::vector<std::string>& files) {
    if (files.empty()) throw ConfigError("report needs at least one summary file");
    std::vector<double> overheads;
    std::ostringstream table;
    table << "benchmark overhead density\n";
    for (const std::string& f : files) {
        std::istringstream in(read_file(f));
        std::string key;
        double overhead = 0.0, density = 0.0;
        bool have = false;
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            ls >> key;
            if (key == "overhead") {
                ls >> overhead;
                have = true;
            } else if (key == "density") {
                ls >> density;
            }
        }
        if (!have) throw ConfigError("no overhead field in '" + f + "'");
        overheads.push_back(overhead);
        table << fs::path(f).parent_path().filename().string() << " " << overhead << " "
              << density << "\n";
    }
    table << "GEOMEAN " << geomean_overhead(overheads) << "\n";
    std::cout << table.str();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"code-beat-accurate simulator and compiler for load/store "
                 "surface-code floorplans"};
    app.require_subcommand(1);

    CommonArgs compile_args, sim_args, sweep_args;
    std::string compile_out;
    std::vector<std::string> report_files;

    CLI::App* compile = app.add_subcommand("compile", "compile a circuit to .lsq assembly");
    add_common(compile, compile_args);
    compile->add_option("--out-file", compile_out, "output .lsq path");

    CLI::App* simulate = app.add_subcommand("simulate", "run a program on a layout");
    add_common(simulate, sim_args);

    CLI::App* sweep = app.add_subcommand("sweep", "hybrid-fraction sweep, f = 0..1 step 0.05");
    add_common(sweep, sweep_args);

    CLI::App* report = app.add_subcommand("report", "aggregate summaries into a GEOMEAN table");
    report->add_option("files", report_files, "summary.txt files from simulate runs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compile->parsed()) return cmd_compile(compile_args, compile_out);
        if (simulate->parsed()) return cmd_simulate(sim_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (report->parsed()) return cmd_report(report_files);
    } catch (const DeadlockError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDeadlock;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
