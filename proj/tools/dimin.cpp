// Command-line front end: grounding, solving, diminution checks, program
// rewritings and the benchmark harness.

#include "dimin/bench.h"
#include "dimin/diminution.h"
#include "dimin/error.h"
#include "dimin/grounder.h"
#include "dimin/semantics.h"
#include "dimin/transform.h"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace dimin;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// A file holding constants, or the constants themselves separated by commas
// or whitespace, optionally wrapped in braces.
ConstantSet parse_domain(const std::string& arg) {
    std::string text = std::filesystem::is_regular_file(arg) ? slurp(arg) : arg;
    for (char& c : text)
        if (c == ',' || c == '{' || c == '}') c = ' ';
    std::istringstream in(text);
    ConstantSet out;
    for (std::string token; in >> token;) out.insert(token);
    return out;
}

SignatureSet parse_signatures(const std::string& arg) {
    SignatureSet out;
    std::istringstream in(arg);
    for (std::string token; std::getline(in, token, ',');)
        if (!token.empty()) out.insert(Signature::parse(token));
    return out;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

GroundProgram ground_with(const Program& program, const std::string& dim) {
    return dim.empty() ? ground(program) : restrict_ground(program, parse_domain(dim));
}

int run_solve(const std::string& file, const std::string& dim, std::size_t max_atoms, std::size_t models) {
    auto program = read_program(file);
    auto grounded = ground_with(program, dim);
    SolveOptions options;
    options.atom_limit = max_atoms;
    options.max_models = models;
    auto sets = answer_sets(grounded, options);
    for (std::size_t i = 0; i < sets.size(); ++i)
        std::cout << "Answer: " << i + 1 << '\n' << format_interpretation(grounded.table(), sets[i]) << '\n';
    std::cout << (sets.empty() ? "UNSATISFIABLE" : "SATISFIABLE") << '\n';
    return sets.empty() ? 20 : 10;
}

void run_check(const std::string& file, const std::string& dim, const std::string& preserve, const std::string& mode) {
    auto program = read_program(file);
    Diminution d{parse_domain(dim), preserve.empty() ? SignatureSet{} : parse_signatures(preserve)};
    DiminutionChecker checker(program, d);
    if (mode == "all") {
        std::cout << checker.classify().to_text();
        return;
    }
    const auto& table = checker.table();
    auto print = [&](const char* key, const Decision& decision) {
        std::cout << key << '=' << (decision.holds ? "true" : "false") << '\n';
        if (decision.witness) std::cout << key << "_witness=" << format_interpretation(table, *decision.witness) << '\n';
    };
    auto print_loop = [&](const char* key, const LoopEvidence& e) {
        std::cout << key << '=' << to_string(e.verdict) << '\n'
                  << key << "_extension=" << to_string(e.extension_condition) << '\n'
                  << key << "_loops=" << to_string(e.loop_condition) << '\n';
        if (e.reduced_answer_set) std::cout << key << "_witness=" << format_interpretation(table, *e.reduced_answer_set) << '\n';
        if (e.loop) std::cout << key << "_loop=" << format_interpretation(table, *e.loop) << '\n';
        if (e.inner_loop) std::cout << key << "_inner_loop=" << format_interpretation(table, *e.inner_loop) << '\n';
    };
    if (mode == "admissible") {
        print("admissible", checker.admissible());
        if (!d.preserved.empty()) print("preserved_admissible", checker.preserved(PreserveMode::admissible));
    } else if (mode == "safe") {
        print("safe", checker.safe());
        if (!d.preserved.empty()) print("preserved_safe", checker.preserved(PreserveMode::safe));
    } else if (mode == "splitting") {
        auto s = checker.splitting_safe();
        std::cout << "splitting_safe=" << to_string(s.status) << '\n';
        if (s.witness_rule) std::cout << "splitting_witness=" << *s.witness_rule << '\n';
    } else if (mode == "loop") {
        print_loop("loop_admissible", checker.loop_admissible());
    } else {
        print_loop("elementary_loop_admissible", checker.elementary_loop_admissible());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diminution-aware grounding and checking for answer set programs"};
    app.require_subcommand(1);

    std::string file, dim, out, preserve, mode = "all", stats_out, family, heuristic;
    std::size_t max_atoms = 4096, models = 0, n = 0;
    std::uint64_t seed = 0;
    std::optional<double> param, budget, density;
    bool solve_bench = false;

    auto* ground_cmd = app.add_subcommand("ground", "Ground a program, optionally over a constant subset");
    ground_cmd->add_option("file", file, "Program file")->required();
    ground_cmd->add_option("--dim", dim, "Constant subset: file or inline list");
    ground_cmd->add_option("--out", out, "Output path");

    auto* solve_cmd = app.add_subcommand("solve", "Compute answer sets (exit 10 if any, 20 if none)");
    solve_cmd->add_option("file", file, "Program file")->required();
    solve_cmd->add_option("--dim", dim, "Constant subset: file or inline list");
    solve_cmd->add_option("--max-atoms", max_atoms, "Unassigned atoms allowed after propagation");
    solve_cmd->add_option("--models", models, "Stop after this many answer sets (0: all)");

    auto* check_cmd = app.add_subcommand("check", "Classify a diminution");
    check_cmd->add_option("file", file, "Program file")->required();
    check_cmd->add_option("--dim", dim, "Constant subset: file or inline list")->required();
    check_cmd->add_option("--preserve", preserve, "Predicates to preserve, e.g. p/2,q/1");
    check_cmd->add_option("--mode", mode, "Property to check")
        ->check(CLI::IsMember({"all", "admissible", "safe", "splitting", "loop", "eloop"}));

    auto* lift_cmd = app.add_subcommand("lift", "Replace constants by guarded variables");
    lift_cmd->add_option("file", file, "Program file")->required();

    auto* guard_cmd = app.add_subcommand("guard", "Emit the dom-guarded program for a constant subset");
    guard_cmd->add_option("file", file, "Program file")->required();
    guard_cmd->add_option("--dim", dim, "Constant subset: file or inline list")->required();

    auto* bench_cmd = app.add_subcommand("bench", "Ground a generated instance fully and under a heuristic diminution");
    bench_cmd->add_option("--family", family, "hc, sm or coloring")->required();
    bench_cmd->add_option("--n", n, "Instance size")->required();
    bench_cmd->add_option("--heuristic", heuristic, "f1, f2 or f3")->required();
    bench_cmd->add_option("--param", param, "Heuristic parameter");
    bench_cmd->add_option("--seed", seed, "Generator seed");
    bench_cmd->add_option("--density", density, "Edge or chord probability");
    bench_cmd->add_option("--budget", budget, "Per-run time limit in seconds");
    bench_cmd->add_option("--stats-out", stats_out, "Write the stats table here");
    bench_cmd->add_flag("--solve", solve_bench, "Also search for one answer set");

    auto* gen_cmd = app.add_subcommand("gen", "Print a generated benchmark instance");
    gen_cmd->add_option("--family", family, "hc, sm or coloring")->required();
    gen_cmd->add_option("--n", n, "Instance size")->required();
    gen_cmd->add_option("--seed", seed, "Generator seed");
    gen_cmd->add_option("--density", density, "Edge or chord probability");
    gen_cmd->add_option("--heuristic", heuristic, "Also write the paired diminution to --dim-out");
    gen_cmd->add_option("--param", param, "Heuristic parameter");
    gen_cmd->add_option("--dim-out", stats_out, "Path for the diminution constants");
    gen_cmd->add_option("--out", out, "Output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ground_cmd) {
            write_output(ground_with(read_program(file), dim).to_text(), out);
        } else if (*solve_cmd) {
            return run_solve(file, dim, max_atoms, models);
        } else if (*check_cmd) {
            run_check(file, dim, preserve, mode);
        } else if (*lift_cmd) {
            std::cout << to_string(dom_lift(read_program(file)).lifted);
        } else if (*guard_cmd) {
            std::cout << to_string(guard(read_program(file), parse_domain(dim)).program);
        } else if (*bench_cmd) {
            InstanceSpec spec{parse_family(family), n, density, seed};
            HeuristicSpec h{parse_heuristic(heuristic), param};
            if (h.mode != paired_heuristic(spec.family))
                throw IncompatibleHeuristicError(heuristic + " does not apply to family " + family);
            BenchOptions options;
            options.budget_s = budget;
            options.solve = solve_bench;
            auto table = to_tsv(run_benchmark({spec}, {h}, options));
            std::cout << table;
            if (!stats_out.empty()) write_output(table, stats_out);
        } else if (*gen_cmd) {
            InstanceSpec spec{parse_family(family), n, density, seed};
            auto program = generate(spec);
            write_output(to_string(program), out);
            if (!stats_out.empty()) {
                HeuristicSpec h{heuristic.empty() ? paired_heuristic(spec.family) : parse_heuristic(heuristic), param};
                std::string text;
                for (const auto& c : build_diminution(program, spec, h).constants) text += c + '\n';
                write_output(text, stats_out);
            }
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
