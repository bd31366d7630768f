#include "kec/problems.hpp"

#include "kec/error.hpp"

#include <functional>

#include <algorithm>
#include <set>

namespace kec {

namespace {

Rat dot(const EdgeWeights& a, const EdgeWeights& b) {
    Rat out(0);
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) out += a[i] * b[i];
    return out;
}

void enumerate_root_free_cuts(const MultiGraph& g,
                              const std::function<void(const std::vector<VertexId>&)>& fn) {
    std::vector<VertexId> others;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (v != g.root()) others.push_back(v);
    for (uint64_t mask = 1; mask < (1ULL << others.size()); ++mask) {
        std::vector<VertexId> s;
        for (size_t i = 0; i < others.size(); ++i)
            if (mask & (1ULL << i)) s.push_back(others[i]);
        fn(s);
    }
}

Rat min_cut_of(const MultiGraph& g, const EdgeWeights& w, bool exhaustive) {
    if (g.vertex_count() < 2) return Rat(0);
    if (exhaustive && g.vertex_count() <= 16) {
        Rat best(0);
        bool have = false;
        enumerate_root_free_cuts(g, [&](const std::vector<VertexId>& s) {
            Rat v = cut_weight(g, w, s);
            if (!have || v < best) {
                best = v;
                have = true;
            }
        });
        return best;
    }
    return global_min_cut(g, w).value;
}

// minimum over terminal-separating cuts, computed as min t-w0 cuts
Rat min_terminal_cut(const MultiGraph& g, const EdgeWeights& w,
                     const std::vector<VertexId>& terminals) {
    KEC_CHECK(terminals.size() >= 2, "terminal cut needs at least two terminals");
    VertexId w0 = terminals.front();
    Rat best(0);
    bool have = false;
    for (VertexId t : terminals) {
        if (t == w0) continue;
        Rat v = max_flow_min_cut(g, w, {t}, {w0}).value;
        if (!have || v < best) {
            best = v;
            have = true;
        }
    }
    return best;
}

} // namespace

LpOptResult lp_opt(const MultiGraph& g, const EdgeWeights& cost, long level, ProblemMode mode) {
    KEC_CHECK(mode != ProblemMode::Subset, "subset has its own lp routine");
    KEC_CHECK(level >= 1, "lp level must be at least 1");
    Rat cap = (mode == ProblemMode::Ecss) ? Rat(1) : Rat(level + 10);
    EdgeWeights full(g.edge_slots(), Rat(0));
    for (EdgeId e : g.live_edges()) full[e] = cap;
    if (g.vertex_count() >= 2) {
        MinCut mc = global_min_cut(g, full);
        if (mc.value < Rat(level))
            throw InfeasibleError(
                mode == ProblemMode::Ecss
                    ? "ECSS LP infeasible: unit min cut below the connectivity level"
                    : "ECSM LP infeasible: graph is disconnected");
    }
    std::vector<long> ghost(g.edge_slots(), 0);
    RatVec lower(g.edge_slots(), Rat(0));
    std::vector<std::optional<Rat>> upper(g.edge_slots(), cap);
    std::vector<char> relaxed(g.vertex_count(), 0);
    GhostLpView view{&g, level, &ghost, &lower, &upper, &relaxed};
    CutRowPool pool;
    pool.seed_singletons(view);
    GhostLpSolution sol = solve_ghost_lp(view, cost, pool, &full);
    return LpOptResult{sol.objective, sol.y};
}

Rat subset_lp_value(const MultiGraph& g, const EdgeWeights& cost, long k,
                    const std::vector<VertexId>& terminals) {
    KEC_CHECK(k >= 1, "k must be at least 1");
    KEC_CHECK(terminals.size() >= 2, "subset LP needs at least two terminals");
    Rat cap(k + 10);
    EdgeWeights full(g.edge_slots(), Rat(0));
    for (EdgeId e : g.live_edges()) full[e] = cap;
    if (min_terminal_cut(g, full, terminals) < Rat(k))
        throw InfeasibleError("subset LP infeasible: terminals are not connected");

    std::vector<EdgeId> vars = g.live_edges();
    std::vector<int> var_of(g.edge_slots(), -1);
    for (int j = 0; j < static_cast<int>(vars.size()); ++j) var_of[vars[j]] = j;
    std::vector<std::vector<VertexId>> rows;
    VertexId w0 = terminals.front();
    while (true) {
        LpProblem p;
        for (EdgeId e : vars) p.add_var(cost[e], Rat(0), cap);
        for (const auto& s : rows) {
            LpRow row;
            for (EdgeId e : cut_edges(g, s)) row.coeffs.push_back({var_of[e], Rat(1)});
            row.rhs = Rat(k);
            p.rows.push_back(std::move(row));
        }
        RatVec warm;
        for (EdgeId e : vars) warm.push_back(full[e]);
        auto out = solve_vertex(p, warm);
        KEC_CHECK(std::holds_alternative<BasicSolution>(out), "subset lp solve failed");
        auto& bs = std::get<BasicSolution>(out);
        EdgeWeights y(g.edge_slots(), Rat(0));
        for (int j = 0; j < static_cast<int>(vars.size()); ++j) y[vars[j]] = bs.x[j];
        // separate over terminal-separating cuts
        bool violated = false;
        Rat best_slack(0);
        std::vector<VertexId> best_cut;
        for (VertexId t : terminals) {
            if (t == w0) continue;
            MinCut mc = max_flow_min_cut(g, y, {t}, {w0});
            if (mc.value < Rat(k)) {
                Rat slack = Rat(k) - mc.value;
                if (!violated || slack > best_slack ||
                    (slack == best_slack && mc.side < best_cut)) {
                    violated = true;
                    best_slack = slack;
                    best_cut = mc.side;
                }
            }
        }
        if (!violated) return bs.objective;
        KEC_CHECK(std::find(rows.begin(), rows.end(), best_cut) == rows.end(),
                  "subset separation repeated a row");
        rows.push_back(best_cut);
    }
}

SolveReport solve_kecss(const Instance& inst) {
    KEC_CHECK(inst.mode == ProblemMode::Ecss, "wrong mode");
    if (inst.k < 1) throw ParseError("k must be at least 1");
    const MultiGraph& g = inst.graph;
    EdgeWeights unit(g.edge_slots(), Rat(0));
    for (EdgeId e : g.live_edges()) unit[e] = Rat(1);
    if (g.vertex_count() >= 2 && global_min_cut(g, unit).value < Rat(inst.k + 10))
        throw InfeasibleError("graph is not (k+10)-edge-connected; the (k+10)-ECSS LP is infeasible");

    SolveReport rep;
    rep.mode = inst.mode;
    rep.k = inst.k;
    LpOptResult at_k10 = lp_opt(g, inst.cost, inst.k + 10, ProblemMode::Ecss);
    LpOptResult at_k = lp_opt(g, inst.cost, inst.k, ProblemMode::Ecss);
    rep.lp_value_k = at_k.value;
    rep.lp_value_k10 = at_k10.value;
    rep.y0 = at_k10.vertex;
    rep.solution = ghost_round(g, inst.cost, rep.y0, inst.k + 10, &rep.trace);
    for (EdgeId e : g.live_edges())
        KEC_CHECK(rep.solution.z[e] == Rat(0) || rep.solution.z[e] == Rat(1),
                  "ECSS solution must be 0/1");
    rep.achieved_min_cut = min_cut_of(g, rep.solution.z, true);
    KEC_CHECK(rep.achieved_min_cut >= Rat(inst.k), "rounded solution misses k-connectivity");
    KEC_CHECK(rep.solution.cost <= rep.lp_value_k10, "cost above the (k+10) LP optimum");
    return rep;
}

SolveReport solve_kecsm(const Instance& inst) {
    KEC_CHECK(inst.mode == ProblemMode::Ecsm, "wrong mode");
    if (inst.k < 1) throw ParseError("k must be at least 1");
    const MultiGraph& g = inst.graph;

    SolveReport rep;
    rep.mode = inst.mode;
    rep.k = inst.k;
    LpOptResult at_k10 = lp_opt(g, inst.cost, inst.k + 10, ProblemMode::Ecsm);
    LpOptResult at_k = lp_opt(g, inst.cost, inst.k, ProblemMode::Ecsm);
    rep.lp_value_k = at_k.value;
    rep.lp_value_k10 = at_k10.value;
    // the scaling relation between the two LP levels
    KEC_CHECK(rep.lp_value_k10 * Rat(inst.k) <= rep.lp_value_k * Rat(inst.k + 10),
              "LP scaling relation violated");
    rep.y0 = at_k10.vertex;
    rep.solution = ghost_round(g, inst.cost, rep.y0, inst.k + 10, &rep.trace);
    rep.achieved_min_cut = min_cut_of(g, rep.solution.z, true);
    KEC_CHECK(rep.achieved_min_cut >= Rat(inst.k), "rounded solution misses k-connectivity");
    KEC_CHECK(rep.solution.cost <= rep.lp_value_k10, "cost above the (k+10) LP optimum");
    KEC_CHECK(rep.solution.cost * Rat(inst.k) <= rep.lp_value_k * Rat(inst.k + 10),
              "cost above (1+10/k) times the k-ECSM LP optimum");
    return rep;
}

MetricClosure metric_closure(const MultiGraph& g, const EdgeWeights& cost) {
    const int n = g.vertex_count();
    MetricClosure out;
    out.graph = MultiGraph(n, g.root());
    // Dijkstra from every source over the cheapest parallel edge
    for (VertexId src = 0; src < n; ++src) {
        std::vector<std::optional<Rat>> dist(n);
        std::vector<EdgeId> via(n, -1);
        std::vector<bool> done(n, false);
        dist[src] = Rat(0);
        for (int round = 0; round < n; ++round) {
            int best = -1;
            for (int v = 0; v < n; ++v)
                if (!done[v] && dist[v] && (best < 0 || *dist[v] < *dist[best])) best = v;
            if (best < 0) break;
            done[best] = true;
            for (EdgeId e : g.incident(best)) {
                VertexId to = g.edge(e).u == best ? g.edge(e).v : g.edge(e).u;
                Rat nd = *dist[best] + cost[e];
                if (!dist[to] || nd < *dist[to]) {
                    dist[to] = nd;
                    via[to] = e;
                }
            }
        }
        for (VertexId dst = src + 1; dst < n; ++dst) {
            if (!dist[dst]) throw InfeasibleError("metric closure needs a connected graph");
            EdgeId ce = out.graph.add_edge(src, dst);
            out.cost.resize(ce + 1);
            out.cost[ce] = *dist[dst];
            std::vector<OriginalEdgeId> path;
            for (VertexId v = dst; v != src;) {
                EdgeId e = via[v];
                path.push_back(e);
                v = g.edge(e).u == v ? g.edge(e).v : g.edge(e).u;
            }
            std::reverse(path.begin(), path.end());
            out.paths.resize(ce + 1);
            out.paths[ce] = std::move(path);
        }
    }
    return out;
}

SolveReport solve_subset_kecsm(const Instance& inst) {
    KEC_CHECK(inst.mode == ProblemMode::Subset, "wrong mode");
    if (inst.k < 1) throw ParseError("k must be at least 1");
    std::vector<VertexId> terms = inst.terminals;
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    if (terms.size() < 2) throw ParseError("subset mode needs at least two terminals");
    for (VertexId t : terms)
        if (t < 0 || t >= inst.graph.vertex_count()) throw ParseError("terminal out of range");

    const MultiGraph& g = inst.graph;
    {
        EdgeWeights unit(g.edge_slots(), Rat(0));
        for (EdgeId e : g.live_edges()) unit[e] = Rat(1);
        if (min_terminal_cut(g, unit, terms).sgn() == 0)
            throw InfeasibleError("terminals span multiple components");
    }
    MetricClosure closure = metric_closure(g, inst.cost);

    // k-ECSM on the closure restricted to the terminals
    MultiGraph tg(static_cast<int>(terms.size()), 0);
    EdgeWeights tcost;
    std::vector<EdgeId> closure_edge_of;
    for (size_t i = 0; i < terms.size(); ++i)
        for (size_t j = i + 1; j < terms.size(); ++j) {
            // closure edge between terms[i] < terms[j]
            EdgeId found = -1;
            for (EdgeId e : closure.graph.parallel_class(terms[i], terms[j])) found = e;
            KEC_CHECK(found >= 0, "closure is complete");
            tg.add_edge(static_cast<int>(i), static_cast<int>(j));
            tcost.push_back(closure.cost[found]);
            closure_edge_of.push_back(found);
        }
    Instance inner;
    inner.mode = ProblemMode::Ecsm;
    inner.graph = std::move(tg);
    inner.cost = std::move(tcost);
    inner.k = inst.k;
    SolveReport inner_rep = solve_kecsm(inner);

    SolveReport rep;
    rep.mode = ProblemMode::Subset;
    rep.k = inst.k;
    rep.trace = std::move(inner_rep.trace);
    rep.lp_value_k10 = inner_rep.lp_value_k10;
    rep.solution.z.assign(g.edge_slots(), Rat(0));
    for (size_t v = 0; v < closure_edge_of.size(); ++v) {
        const Rat& mult = inner_rep.solution.z[v];
        if (mult.sgn() == 0) continue;
        for (OriginalEdgeId e : closure.paths[closure_edge_of[v]]) rep.solution.z[e] += mult;
    }
    rep.solution.cost = dot(rep.solution.z, inst.cost);
    KEC_CHECK(rep.solution.cost == inner_rep.solution.cost,
              "path expansion must cost exactly the closure solution");

    rep.lp_value_k = subset_lp_value(g, inst.cost, inst.k, terms);
    rep.achieved_min_cut = min_terminal_cut(g, rep.solution.z, terms);
    KEC_CHECK(rep.achieved_min_cut >= Rat(inst.k), "terminals are not k-edge-connected");
    KEC_CHECK(rep.solution.cost * Rat(inst.k) <= rep.lp_value_k * Rat(inst.k + 10),
              "cost above (1+10/k) times the subset LP optimum");
    return rep;
}

void VerificationReport::add(const std::string& name, bool pass, const std::string& detail) {
    checks.push_back(CheckItem{name, pass, detail});
    if (!pass) all_pass = false;
}

VerificationReport verify_solution(const Instance& inst, const std::vector<Rat>& z,
                                   const EdgeWeights* y0, long rounding_k, bool exhaustive) {
    VerificationReport rep;
    const MultiGraph& g = inst.graph;
    if (static_cast<int>(z.size()) < g.edge_slots()) {
        rep.add("shape", false, "solution vector shorter than the edge list");
        return rep;
    }
    bool integral = true, nonneg = true, binary = true;
    for (EdgeId e : g.live_edges()) {
        if (!z[e].is_integer()) integral = false;
        if (z[e].sgn() < 0) nonneg = false;
        if (z[e] > Rat(1)) binary = false;
    }
    rep.add("integral", integral, "every multiplicity is an integer");
    rep.add("nonnegative", nonneg, "every multiplicity is >= 0");
    if (inst.mode == ProblemMode::Ecss)
        rep.add("binary", binary, "ECSS multiplicities are 0/1");

    Rat mc = inst.mode == ProblemMode::Subset ? min_terminal_cut(g, z, inst.terminals)
                                              : min_cut_of(g, z, exhaustive);
    rep.add("feasible", mc >= Rat(inst.k),
            "min cut " + mc.str() + " vs k=" + std::to_string(inst.k));

    Rat zc = dot(z, inst.cost);
    rep.add("cost", true, "exact cost " + zc.str());

    if (y0) {
        bool rounding_ok = true;
        for (EdgeId e : g.live_edges())
            if (z[e] != (*y0)[e].floor() && z[e] != (*y0)[e].ceil()) rounding_ok = false;
        rep.add("integrally-rounded", rounding_ok, "z_e in {floor(y0_e), ceil(y0_e)}");
        Rat yc = dot(*y0, inst.cost);
        rep.add("cost-preserved", zc <= yc, "cost " + zc.str() + " vs input " + yc.str());
        long bound = rounding_k - 9 - (rounding_k % 2 == 0 ? 0 : 1);
        rep.add("highly-connected", mc >= Rat(bound),
                "min cut " + mc.str() + " vs k-9-[k odd]=" + std::to_string(bound));
    }
    return rep;
}

} // namespace kec
