#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kpvcr/cycle_solver.hpp"
#include "kpvcr/instance_io.hpp"
#include "kpvcr/oracle.hpp"
#include "kpvcr/path_solver.hpp"
#include "kpvcr/reductions.hpp"
#include "kpvcr/tree_solver.hpp"

namespace {

using namespace kpvcr;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnsupported = 2;
constexpr int kExitBudget = 3;

std::uint64_t default_budget() {
    if (const char* env = std::getenv("KPVCR_STATE_BUDGET")) {
        char* end = nullptr;
        unsigned long long value = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && value > 0)
            return value;
        std::cerr << "warning: ignoring malformed KPVCR_STATE_BUDGET='" << env << "'\n";
    }
    return OracleOptions{}.state_budget;
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Instance load_instance(const std::string& path) {
    std::istringstream in(slurp(path));
    return parse_instance(in);
}

SolveOutcome dispatch_solver(const Instance& inst) {
    GraphShape shape = classify(inst.graph);
    switch (shape.kind) {
    case ShapeKind::Path:
        switch (inst.rule.kind) {
        case RuleKind::TS: return solve_path_ts(inst.graph, inst.k, inst.I, inst.J);
        case RuleKind::TJ: return solve_path_tj(inst.graph, inst.k, inst.I, inst.J);
        case RuleKind::TAR: return solve_path_tar(inst.graph, inst.k, inst.I, inst.J, inst.rule.cap);
        }
        break;
    case ShapeKind::Cycle:
        if (inst.rule.kind == RuleKind::TAR)
            return solve_cycle_tar(inst.graph, inst.k, inst.I, inst.J, inst.rule.cap);
        return solve_cycle(inst.graph, inst.k, inst.I, inst.J, inst.rule);
    case ShapeKind::Tree:
        switch (inst.rule.kind) {
        case RuleKind::TS:
            throw UnsupportedError("ts on trees: open problem; use --oracle");
        case RuleKind::TJ: return solve_tree_tj(inst.graph, inst.k, inst.I, inst.J);
        case RuleKind::TAR: return solve_tree_tar(inst.graph, inst.k, inst.I, inst.J, inst.rule.cap);
        }
        break;
    case ShapeKind::General:
        throw UnsupportedError("no polynomial solver for general graphs; use --oracle");
    }
    throw UnsupportedError("unhandled shape/rule combination");
}

int cmd_solve(const std::string& path, bool use_oracle, const OracleOptions& opts) {
    Instance inst = load_instance(path);
    if (use_oracle) {
        auto seq = oracle_sequence(inst.graph, inst.k, inst.rule, inst.I, inst.J, opts);
        if (!seq) {
            std::cout << "NO Unreachable\n";
            return kExitOk;
        }
        std::cout << "YES\n";
        if (inst.I.members == inst.J.members)
            std::cout << "# trivial: I = J\n";
        std::cout << emit_sequence(*seq);
        return kExitOk;
    }
    SolveOutcome outcome = dispatch_solver(inst);
    if (!outcome.yes()) {
        std::cout << "NO " << to_string(*outcome.no_reason) << "\n";
        return kExitOk;
    }
    std::cout << "YES\n";
    if (outcome.trivial)
        std::cout << "# trivial: I = J\n";
    std::cout << emit_sequence(*outcome.sequence);
    return kExitOk;
}

int cmd_verify(const std::string& instance_path, const std::string& sequence_path) {
    Instance inst = load_instance(instance_path);
    std::istringstream in(slurp(sequence_path));
    ReconfSequence seq = parse_sequence(in, inst.k);
    if (!(seq.start.members == inst.I.members)) {
        std::cout << "FAIL: sequence starts at a cover different from I\n";
        return kExitUsage;
    }
    VerifyResult result = verify(inst.graph, inst.k, inst.rule, seq, inst.J);
    if (!result) {
        std::cout << "FAIL";
        if (result.failed_step >= 0)
            std::cout << " at step " << result.failed_step;
        std::cout << ": " << result.message << "\n";
        return kExitUsage;
    }
    std::cout << "OK: sequence verifies (" << seq.length() << " steps)\n";
    return kExitOk;
}

int cmd_oracle(const std::string& path, bool shortest, const std::string& export_path,
               const OracleOptions& opts) {
    Instance inst = load_instance(path);
    ReachResult result = oracle_reachable(inst.graph, inst.k, inst.rule, inst.I, inst.J, opts);
    if (result.reachable) {
        std::cout << "reachable";
        if (shortest)
            std::cout << ", shortest=" << *result.shortest;
        std::cout << "\n";
    } else {
        std::cout << "unreachable\n";
    }
    if (!export_path.empty()) {
        ReconfGraph rg =
            ReconfGraph::build(inst.graph, inst.k, inst.rule, inst.I.size(), opts);
        std::ofstream out(export_path);
        if (!out)
            throw ParseError("cannot open '" + export_path + "' for writing");
        rg.export_edges(out);
    }
    return kExitOk;
}

int cmd_generate(const std::string& kind, int k, const std::string& input,
                 const std::string& output) {
    std::ostringstream out;
    if (kind == "lemma11") {
        TjDetourInstance family = hard_shortest_tj_family(k);
        Instance inst{family.cycle, family.k, family.I, family.J, Rule::tj()};
        out << "# cycle family on 3k-1 vertices: shortest tj sequences exceed |I delta J|/2\n";
        out << emit_instance(inst);
    } else if (kind == "gadget-and" || kind == "gadget-or") {
        NclGadget gadget =
            build_gadget(kind == "gadget-and" ? GadgetKind::And : GadgetKind::Or, k);
        out << "# " << to_string(gadget.kind) << " gadget, main part:";
        for (Vertex v : gadget.main_part)
            out << " " << v;
        out << "\n";
        for (int p = 0; p < 3; ++p) {
            const GadgetPort& port = gadget.ports[p];
            out << "# port " << p << " weight " << port.weight << " vertices "
                << port.vertices.front() << ".." << port.vertices.back() << " center_in "
                << port.center_in << " center_out " << port.center_out << "\n";
        }
        out << emit_graph_file(gadget.graph, k);
    } else if (kind == "pendant") {
        std::istringstream in(slurp(input));
        GraphFile file = parse_graph_file(in);
        int kk = k > 0 ? k : file.k;
        if (kk < 2)
            throw ParseError("pendant: no k given (use --k or a k line in the input)");
        PendantTransform t = pendant_transform(file.graph, kk);
        out << emit_graph_file(t.result, kk, "pendant transform of a graph on " +
                                                  std::to_string(t.base.vertex_count()) +
                                                  " vertices");
    } else {
        throw ParseError("unknown generator '" + kind +
                         "' (expected lemma11|gadget-and|gadget-or|pendant)");
    }
    if (output.empty() || output == "-") {
        std::cout << out.str();
    } else {
        std::ofstream f(output);
        if (!f)
            throw ParseError("cannot open '" + output + "' for writing");
        f << out.str();
    }
    return kExitOk;
}

int cmd_bench(const std::string& op, int n, int k) {
    using clock = std::chrono::steady_clock;
    SolveOutcome outcome;
    auto started = clock::now();
    if (op == "path-tj" || op == "path-ts") {
        if (op == "path-ts")
            n = std::max(k, n / k * k); // full tiling keeps the shifted cover valid
        Graph g = Graph::path(n);
        std::vector<Vertex> left, other;
        for (int v = k - 1; v < n; v += k)
            left.push_back(v);
        if (op == "path-ts") {
            for (Vertex v : left)
                other.push_back(v - 1);
        } else {
            for (Vertex v : left)
                other.push_back(n - 1 - v);
        }
        CoverSet I(left, k), J(other, k);
        started = clock::now();
        outcome = op == "path-ts" ? solve_path_ts(g, k, I, J) : solve_path_tj(g, k, I, J);
    } else if (op == "cycle-tj") {
        if (n % k == 0)
            ++n; // avoid the frozen family
        Graph g = Graph::cycle(n);
        std::vector<Vertex> base, shifted;
        for (int c = 0; c < (n + k - 1) / k; ++c)
            base.push_back(c * k);
        for (Vertex v : base)
            shifted.push_back((v + 1) % n);
        CoverSet I(base, k), J(shifted, k);
        started = clock::now();
        outcome = solve_cycle(g, k, I, J, Rule::tj());
    } else {
        throw ParseError("unknown bench op '" + op + "' (expected path-tj|path-ts|cycle-tj)");
    }
    auto elapsed = std::chrono::duration<double, std::milli>(clock::now() - started).count();
    std::cout << "op=" << op << " n=" << n << " k=" << k << " steps="
              << (outcome.yes() ? outcome.sequence->length() : -1) << " ms=" << elapsed << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-path vertex cover reconfiguration toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // --budget/--jobs may follow the subcommand

    OracleOptions opts;
    opts.state_budget = default_budget();
    app.add_option("--budget", opts.state_budget, "oracle state budget")
        ->check(CLI::PositiveNumber);
    app.add_option("--jobs", opts.jobs, "worker threads for oracle state filtering")
        ->check(CLI::PositiveNumber);

    auto* solve = app.add_subcommand("solve", "decide an instance and print a witness");
    std::string solve_path;
    bool solve_oracle = false;
    solve->add_option("instance", solve_path, "instance file ('-' for stdin)")->required();
    solve->add_flag("--oracle", solve_oracle, "answer by exhaustive search instead of a solver");

    auto* verify_cmd = app.add_subcommand("verify", "check a sequence against an instance");
    std::string verify_instance, verify_sequence;
    verify_cmd->add_option("instance", verify_instance)->required();
    verify_cmd->add_option("sequence", verify_sequence)->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive reachability queries");
    std::string oracle_path, export_path;
    bool oracle_shortest = false;
    oracle_cmd->add_option("instance", oracle_path)->required();
    oracle_cmd->add_flag("--shortest", oracle_shortest, "also print the BFS distance");
    oracle_cmd->add_option("--export", export_path, "write the reconfiguration graph");

    auto* generate = app.add_subcommand("generate", "emit instance families and gadgets");
    std::string gen_kind, gen_input = "-", gen_output;
    int gen_k = 0;
    generate->add_option("kind", gen_kind, "lemma11|gadget-and|gadget-or|pendant")->required();
    generate->add_option("--k", gen_k, "path length parameter");
    generate->add_option("--input", gen_input, "base graph for pendant ('-' for stdin)");
    generate->add_option("--output", gen_output, "output file (default stdout)");

    auto* bench = app.add_subcommand("bench", "time a solver on a generated instance");
    std::string bench_op;
    int bench_n = 1000, bench_k = 3;
    bench->add_option("--op", bench_op, "path-tj|path-ts|cycle-tj")->required();
    bench->add_option("--n", bench_n)->check(CLI::PositiveNumber);
    bench->add_option("--k", bench_k)->check(CLI::Range(2, 1 << 20));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve)
            return cmd_solve(solve_path, solve_oracle, opts);
        if (*verify_cmd)
            return cmd_verify(verify_instance, verify_sequence);
        if (*oracle_cmd)
            return cmd_oracle(oracle_path, oracle_shortest, export_path, opts);
        if (*generate)
            return cmd_generate(gen_kind, gen_k, gen_input, gen_output);
        if (*bench)
            return cmd_bench(bench_op, bench_n, bench_k);
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
