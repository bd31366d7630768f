#include "kec/cut_oracle.hpp"

#include "kec/error.hpp"

#include <algorithm>

namespace kec {

Rat GhostLpView::ghost_on_cut(const std::vector<VertexId>& s) const {
    Rat total(0);
    for (EdgeId e : cut_edges(*graph, s)) total += Rat((*ghost)[e]);
    return total;
}

void GhostLpView::check() const {
    KEC_CHECK(graph && ghost && lower && upper && relaxed, "incomplete lp view");
    KEC_CHECK(k >= 0, "cut lp needs a nonnegative k");
    for (EdgeId e = 0; e < graph->edge_slots(); ++e) {
        if (!graph->alive(e)) continue;
        long g = (*ghost)[e];
        KEC_CHECK(g == 0 || g == 2, "ghost value outside {0,2}");
    }
    KEC_CHECK(!(*relaxed)[graph->root()], "root cannot be a relaxed singleton");
}

Separation separate(const GhostLpView& view, const EdgeWeights& y) {
    const MultiGraph& g = *view.graph;
    EdgeWeights caps(g.edge_slots(), Rat(0));
    for (EdgeId e = 0; e < g.edge_slots(); ++e)
        if (g.alive(e)) caps[e] = y[e] + Rat((*view.ghost)[e]);

    Separation out;
    Rat k(view.k);
    auto offer = [&](MinCut&& mc) {
        if (mc.value >= k) return;
        Rat slack = k - mc.value;
        if (out.all_satisfied || slack > out.slack ||
            (slack == out.slack && (mc.side.size() < out.cut.size() ||
                                    (mc.side.size() == out.cut.size() && mc.side < out.cut)))) {
            out.all_satisfied = false;
            out.cut = std::move(mc.side);
            out.slack = slack;
        }
    };

    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (v == g.root() || (*view.relaxed)[v]) continue;
        offer(max_flow_min_cut(g, caps, {v}, {g.root()}));
    }
    std::vector<VertexId> w;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if ((*view.relaxed)[v]) w.push_back(v);
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = i + 1; j < w.size(); ++j)
            offer(max_flow_min_cut(g, caps, {w[i], w[j]}, {g.root()}));
    return out;
}

bool CutRowPool::contains(const std::vector<VertexId>& s) const {
    return std::find(sets_.begin(), sets_.end(), s) != sets_.end();
}

void CutRowPool::add(std::vector<VertexId> set) {
    std::sort(set.begin(), set.end());
    KEC_CHECK(!contains(set), "duplicate constraint row");
    sets_.push_back(std::move(set));
}

void CutRowPool::seed_singletons(const GhostLpView& view) {
    for (VertexId v = 0; v < view.graph->vertex_count(); ++v) {
        if (v == view.graph->root() || (*view.relaxed)[v]) continue;
        std::vector<VertexId> s{v};
        if (!contains(s)) sets_.push_back(std::move(s));
    }
}

void CutRowPool::remove_set(const std::vector<VertexId>& set) {
    auto it = std::find(sets_.begin(), sets_.end(), set);
    if (it != sets_.end()) sets_.erase(it);
}

void CutRowPool::apply_contraction(const std::vector<VertexId>& s,
                                   const std::vector<VertexId>& vertex_map,
                                   VertexId merged, int new_vertex_count) {
    std::vector<bool> in_s(vertex_map.size(), false);
    for (VertexId v : s) in_s[v] = true;
    std::vector<std::vector<VertexId>> kept;
    for (auto& set : sets_) {
        size_t inside = 0;
        for (VertexId v : set)
            if (in_s[v]) ++inside;
        if (inside == set.size()) continue;            // inside (or equal): dropped
        if (inside > 0 && inside < s.size()) continue; // crossing: no longer a vertex set
        std::vector<VertexId> mapped;
        for (VertexId v : set) mapped.push_back(vertex_map[v]);
        std::sort(mapped.begin(), mapped.end());
        mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
        if (mapped.size() == static_cast<size_t>(new_vertex_count)) continue;
        if (std::find(kept.begin(), kept.end(), mapped) == kept.end())
            kept.push_back(std::move(mapped));
    }
    (void)merged;
    sets_ = std::move(kept);
}

GhostLpSolution solve_ghost_lp(const GhostLpView& view, const EdgeWeights& cost,
                               CutRowPool& pool, const EdgeWeights* warm) {
    view.check();
    const MultiGraph& g = *view.graph;

    std::vector<EdgeId> var_edges = g.live_edges();
    std::vector<int> var_of(g.edge_slots(), -1);
    for (int j = 0; j < static_cast<int>(var_edges.size()); ++j) var_of[var_edges[j]] = j;

    auto build_problem = [&]() {
        LpProblem p;
        for (EdgeId e : var_edges) p.add_var(cost[e], (*view.lower)[e], (*view.upper)[e]);
        for (const auto& s : pool.sets()) {
            LpRow row;
            for (EdgeId e : cut_edges(g, s)) row.coeffs.push_back({var_of[e], Rat(1)});
            row.rhs = Rat(view.k) - view.ghost_on_cut(s);
            p.rows.push_back(std::move(row));
        }
        return p;
    };

    std::optional<RatVec> warm_x;
    if (warm) {
        warm_x = RatVec();
        for (EdgeId e : var_edges) warm_x->push_back((*warm)[e]);
    }

    const long round_limit = 10L * g.vertex_count() * g.vertex_count() + 10;
    GhostLpSolution out;
    out.var_edges = var_edges;
    long rounds = 0;
    while (true) {
        KEC_CHECK(rounds <= round_limit, "separation round tripwire");
        LpProblem p = build_problem();
        LpOutcome lpo = warm_x ? solve_vertex(p, *warm_x) : solve_vertex(p);
        if (std::holds_alternative<LpUnbounded>(lpo))
            throw InvariantError("cut lp unbounded; bounds must be finite");
        if (std::holds_alternative<LpInfeasible>(lpo))
            throw InvariantError("cut lp infeasible; caller must pre-check feasibility");
        out.vertex = std::get<BasicSolution>(std::move(lpo));
        out.y.assign(g.edge_slots(), Rat(0));
        for (int j = 0; j < static_cast<int>(var_edges.size()); ++j)
            out.y[var_edges[j]] = out.vertex.x[j];
        ++rounds;
        Separation sep = separate(view, out.y);
        if (sep.all_satisfied) break;
        KEC_CHECK(!pool.contains(sep.cut), "separated a cut already in the pool");
        pool.add(sep.cut);
    }
    out.rounds = static_cast<int>(rounds);
    out.objective = out.vertex.objective;

    // Post-solve audits. Exhaustive feasibility on small graphs; at most one
    // fractional edge per parallel class always (the solution is a vertex of
    // the full cut LP).
    if (g.vertex_count() <= 8) {
        std::vector<VertexId> others;
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (v != g.root()) others.push_back(v);
        for (uint64_t mask = 1; mask < (1ULL << others.size()); ++mask) {
            std::vector<VertexId> s;
            for (size_t i = 0; i < others.size(); ++i)
                if (mask & (1ULL << i)) s.push_back(others[i]);
            if (s.size() == 1 && (*view.relaxed)[s[0]]) continue;
            Rat lhs(0);
            for (EdgeId e : cut_edges(g, s)) lhs += out.y[e];
            KEC_CHECK(lhs >= Rat(view.k) - view.ghost_on_cut(s),
                      "cut lp audit: constraint violated after solve");
        }
    }
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        for (VertexId v = u + 1; v < g.vertex_count(); ++v) {
            int frac = 0;
            for (EdgeId e : g.parallel_class(u, v))
                if (!out.y[e].is_integer()) ++frac;
            KEC_CHECK(frac <= 1, "parallel class with two fractional edges");
        }
    return out;
}

} // namespace kec
