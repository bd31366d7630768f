// Command-line driver: solve / lp / gadget / gen / check.
//
// Exit codes: 0 ok, 1 failed verification checks, 2 parse error,
// 3 infeasible instance, 4 internal invariant violation.

#include "kec/error.hpp"
#include "kec/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace kec;

namespace {

ProblemMode mode_from(const std::string& s) {
    if (s == "ecss") return ProblemMode::Ecss;
    if (s == "ecsm") return ProblemMode::Ecsm;
    if (s == "subset") return ProblemMode::Subset;
    throw ParseError("unknown mode '" + s + "'");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << content;
}

Instance load_instance(const std::string& path, const std::string& mode_override,
                       long k_override) {
    Instance inst = parse_instance_file(path);
    if (!mode_override.empty()) inst.mode = mode_from(mode_override);
    if (k_override > 0) inst.k = k_override;
    return inst;
}

int run(int argc, char** argv) {
    CLI::App app{"exact solvers for k-edge-connected subgraph and multi-subgraph problems"};
    app.require_subcommand(1);

    std::string in_path, out_path, trace_path, mode_s, verify_s, solution_path, tap_path;
    long k = 0;
    int n = 0, extra_percent = 30;
    uint64_t seed = 1;
    std::string gen_type;

    auto* solve = app.add_subcommand("solve", "solve an instance and report the guarantees");
    solve->add_option("--in", in_path, "instance file")->required();
    solve->add_option("--mode", mode_s, "override the file header mode");
    solve->add_option("--k", k, "override the file header k");
    solve->add_option("--out", out_path, "write the solve report json here");
    solve->add_option("--trace", trace_path, "write the run trace json here");
    solve->add_option("--verify", verify_s, "fast|exhaustive re-verification")
        ->check(CLI::IsMember({"fast", "exhaustive"}));

    auto* lp = app.add_subcommand("lp", "print the exact LP value");
    lp->add_option("--in", in_path, "instance file")->required();
    lp->add_option("--mode", mode_s, "override the file header mode");
    lp->add_option("--k", k, "override the file header k");

    auto* gadget = app.add_subcommand("gadget", "emit the k-ECSM instance for a TAP instance");
    gadget->add_option("--tap", tap_path, "tap file")->required();
    gadget->add_option("--k", k, "odd connectivity target")->required();
    gadget->add_option("--out", out_path, "output instance file (default stdout)");

    auto* gen = app.add_subcommand("gen", "generate an instance file");
    gen->add_option("type", gen_type, "cycle|random-multigraph|wheel|tap-random")->required();
    gen->add_option("--n", n, "vertex count")->required();
    gen->add_option("--p", extra_percent, "extra edge percentage (random-multigraph)");
    gen->add_option("--seed", seed, "prng seed (splitmix64)");
    gen->add_option("--k", k, "connectivity target to put in the header");
    gen->add_option("--mode", mode_s, "mode to put in the header");
    gen->add_option("--out", out_path, "output file (default stdout)");

    auto* check = app.add_subcommand("check", "re-verify a stored solution from files alone");
    check->add_option("--in", in_path, "instance file")->required();
    check->add_option("--solution", solution_path, "solve report json")->required();
    check->add_option("--mode", mode_s, "override the file header mode");
    check->add_option("--k", k, "override the file header k");
    check->add_option("--verify", verify_s, "fast|exhaustive")
        ->check(CLI::IsMember({"fast", "exhaustive"}));

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) {
        Instance inst = load_instance(in_path, mode_s, k);
        SolveReport rep;
        switch (inst.mode) {
            case ProblemMode::Ecss: rep = solve_kecss(inst); break;
            case ProblemMode::Ecsm: rep = solve_kecsm(inst); break;
            case ProblemMode::Subset: rep = solve_subset_kecsm(inst); break;
        }
        std::string json = report_to_json(inst, rep);
        if (!out_path.empty())
            write_file(out_path, json);
        else
            std::cout << json << "\n";
        if (!trace_path.empty()) write_file(trace_path, trace_to_json(rep.trace));
        if (!verify_s.empty()) {
            bool exhaustive = verify_s == "exhaustive";
            const EdgeWeights* y0 = rep.y0.empty() ? nullptr : &rep.y0;
            VerificationReport vr =
                verify_solution(inst, rep.solution.z, y0, rep.trace.k_input, exhaustive);
            std::cerr << verification_to_json(vr) << "\n";
            if (!vr.all_pass) throw InvariantError("solve output failed re-verification");
        }
        return 0;
    }
    if (lp->parsed()) {
        Instance inst = load_instance(in_path, mode_s, k);
        Rat value = inst.mode == ProblemMode::Subset
                        ? subset_lp_value(inst.graph, inst.cost, inst.k, inst.terminals)
                        : lp_opt(inst.graph, inst.cost, inst.k, inst.mode).value;
        std::cout << value.str() << "\n";
        return 0;
    }
    if (gadget->parsed()) {
        TapInstance tap = parse_tap_file(tap_path);
        GadgetInstance gi = tap_to_kecsm(tap, k);
        Instance inst;
        inst.mode = ProblemMode::Ecsm;
        inst.k = k;
        inst.graph = gi.graph;
        inst.cost = gi.cost;
        std::ostringstream os;
        emit_instance(os, inst,
                      {"tap gadget: tree vertices " + std::to_string(gi.tree_vertices) +
                       ", tree edges " + std::to_string(gi.tree_edge_count) +
                       ", gadget edges first (4 per tree edge), then links"});
        if (!out_path.empty())
            write_file(out_path, os.str());
        else
            std::cout << os.str();
        return 0;
    }
    if (gen->parsed()) {
        std::ostringstream os;
        if (gen_type == "tap-random") {
            TapInstance tap = gen_tap_random(n, seed);
            emit_tap(os, tap, {"gen tap-random n=" + std::to_string(n) +
                               " seed=" + std::to_string(seed) + " prng=splitmix64"});
        } else {
            long kk = k > 0 ? k : 2;
            ProblemMode mode = mode_s.empty() ? ProblemMode::Ecsm : mode_from(mode_s);
            Instance inst;
            if (gen_type == "cycle")
                inst = gen_cycle(n, kk, mode);
            else if (gen_type == "wheel")
                inst = gen_wheel(n, kk, mode);
            else if (gen_type == "random-multigraph")
                inst = gen_random_multigraph(n, extra_percent, kk, mode, seed);
            else
                throw ParseError("unknown generator '" + gen_type + "'");
            emit_instance(os, inst,
                          {"gen " + gen_type + " n=" + std::to_string(n) + " seed=" +
                           std::to_string(seed) + " prng=splitmix64"});
        }
        if (!out_path.empty())
            write_file(out_path, os.str());
        else
            std::cout << os.str();
        return 0;
    }
    if (check->parsed()) {
        Instance inst = load_instance(in_path, mode_s, k);
        StoredSolution stored = parse_report_json_file(solution_path);
        if (stored.z.size() < static_cast<size_t>(inst.graph.edge_slots()))
            stored.z.resize(inst.graph.edge_slots(), Rat(0));
        EdgeWeights y0;
        if (!stored.y0.empty()) {
            y0.assign(inst.graph.edge_slots(), Rat(0));
            auto live = inst.graph.live_edges();
            if (stored.y0.size() != live.size())
                throw ParseError("stored y0 length does not match the instance");
            for (size_t i = 0; i < live.size(); ++i) y0[live[i]] = stored.y0[i];
        }
        VerificationReport vr = verify_solution(inst, stored.z, y0.empty() ? nullptr : &y0,
                                                stored.rounding_k, verify_s == "exhaustive");
        std::cout << verification_to_json(vr) << "\n";
        return vr.all_pass ? 0 : 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return 2;
    } catch (const InfeasibleError& ex) {
        std::cerr << "infeasible: " << ex.what() << "\n";
        return 3;
    } catch (const InvariantError& ex) {
        std::cerr << "invariant violation: " << ex.what() << "\n";
        return 4;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 4;
    }
}
