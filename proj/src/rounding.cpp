#include "kec/rounding.hpp"
#include <functional>

#include "kec/error.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

namespace kec {

GhostLpView GhostState::view() const {
    return GhostLpView{&graph, k, &ghost, &lower, &upper, &relaxed};
}

bool GhostState::y_integral() const {
    for (EdgeId e : graph.live_edges())
        if (!y[e].is_integer()) return false;
    return true;
}

namespace {

std::vector<EdgeId> fractional_edges(const GhostState& st) {
    std::vector<EdgeId> out;
    for (EdgeId e : st.graph.live_edges())
        if (!st.y[e].is_integer()) out.push_back(e);
    return out;
}

EdgeWeights load_caps(const GhostState& st) {
    EdgeWeights caps(st.graph.edge_slots(), Rat(0));
    for (EdgeId e : st.graph.live_edges()) caps[e] = st.y[e] + Rat(st.ghost[e]);
    return caps;
}

std::vector<VertexId> expand_set(const GhostState& st, const std::vector<VertexId>& s) {
    std::vector<VertexId> out;
    for (VertexId v : s)
        for (VertexId o : st.expansion[v]) out.push_back(o);
    std::sort(out.begin(), out.end());
    return out;
}

void enumerate_cuts(int nvertices, VertexId root,
                    const std::function<void(const std::vector<VertexId>&)>& fn) {
    std::vector<VertexId> others;
    for (VertexId v = 0; v < nvertices; ++v)
        if (v != root) others.push_back(v);
    KEC_CHECK(others.size() <= 25, "cut enumeration too large");
    for (uint64_t mask = 1; mask < (1ULL << others.size()); ++mask) {
        std::vector<VertexId> s;
        for (size_t i = 0; i < others.size(); ++i)
            if (mask & (1ULL << i)) s.push_back(others[i]);
        fn(s);
    }
}

// y-tight and currently constrained in the LP
bool tight_live_constraint(const GhostState& st, const EdgeWeights& caps,
                           const std::vector<VertexId>& s) {
    if (s.size() == 1 && st.relaxed[s[0]]) return false;
    return cut_weight(st.graph, caps, s) == Rat(st.k);
}

} // namespace

std::optional<Augmentation> find_ghost_augmentation(const GhostState& st) {
    const MultiGraph& g = st.graph;
    Rat half = Rat(st.k) / Rat(2);
    Rat lo = half - Rat(2);
    // classes keyed by endpoint pair, lowest pair first
    std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> classes;
    for (EdgeId e : g.live_edges()) {
        VertexId a = g.edge(e).u, b = g.edge(e).v;
        if (a > b) std::swap(a, b);
        classes[{a, b}].push_back(e);
    }
    for (auto& [pair, edges] : classes) {
        Rat load(0);
        for (EdgeId e : edges) load += st.y[e] + Rat(st.ghost[e]);
        if (load < lo || load >= half) continue;
        // no member may already carry a ghost value, and the integral load
        // alone must reach k/2 - 2
        Rat int_load(0);
        for (EdgeId e : edges) {
            KEC_CHECK(st.ghost[e] == 0, "ghost augmentation on a class with positive ghost value");
            int_load += st.y[e].floor();
        }
        KEC_CHECK(int_load >= lo, "integral class load below k/2 - 2 at augmentation");
        return Augmentation{pair.first, pair.second, edges.front()};
    }
    return std::nullopt;
}

std::optional<std::vector<VertexId>> find_relaxable_cut(const GhostState& st) {
    const MultiGraph& g = st.graph;
    EdgeWeights caps = load_caps(st);
    std::vector<EdgeId> frac = fractional_edges(st);

    auto frac_on_cut = [&](const std::vector<VertexId>& s) {
        std::set<VertexId> in(s.begin(), s.end());
        int count = 0;
        for (EdgeId e : frac)
            if (in.count(g.edge(e).u) != in.count(g.edge(e).v)) ++count;
        return count;
    };

    // singletons first
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (v == g.root() || st.relaxed[v]) continue;
        std::vector<VertexId> s{v};
        if (cut_weight(g, caps, s) == Rat(st.k) && frac_on_cut(s) <= 3) return s;
    }

    // candidate source sets Z: for every U ⊆ frac(y) with |U| <= 3 and every
    // choice of one endpoint per edge of U, the chosen endpoints padded to
    // size two when needed
    std::vector<VertexId> frac_endpoints;
    {
        std::set<VertexId> fe;
        for (EdgeId e : frac) {
            fe.insert(g.edge(e).u);
            fe.insert(g.edge(e).v);
        }
        frac_endpoints.assign(fe.begin(), fe.end());
    }
    std::vector<std::vector<VertexId>> zs;
    auto push_z = [&](std::vector<VertexId> z) {
        std::sort(z.begin(), z.end());
        z.erase(std::unique(z.begin(), z.end()), z.end());
        for (VertexId v : z)
            if (v == g.root()) return;
        if (z.size() < 2 || z.size() > 3) return;
        if (std::find(zs.begin(), zs.end(), z) == zs.end()) zs.push_back(std::move(z));
    };
    auto pad_and_push = [&](const std::vector<VertexId>& w) {
        if (w.size() >= 2) {
            push_z(w);
            return;
        }
        if (w.size() == 1) {
            for (VertexId z2 = 0; z2 < g.vertex_count(); ++z2)
                if (z2 != g.root() && z2 != w[0]) push_z({w[0], z2});
            return;
        }
        for (VertexId a = 0; a < g.vertex_count(); ++a)
            for (VertexId b = a + 1; b < g.vertex_count(); ++b)
                if (a != g.root() && b != g.root()) push_z({a, b});
    };
    const int fn = static_cast<int>(frac.size());
    std::vector<std::vector<int>> usets{{}};
    for (int i = 0; i < fn; ++i) usets.push_back({i});
    for (int i = 0; i < fn; ++i)
        for (int j = i + 1; j < fn; ++j) usets.push_back({i, j});
    for (int i = 0; i < fn; ++i)
        for (int j = i + 1; j < fn; ++j)
            for (int l = j + 1; l < fn; ++l) usets.push_back({i, j, l});
    for (const auto& u : usets) {
        const int picks = 1 << u.size();
        for (int mask = 0; mask < picks; ++mask) {
            std::vector<VertexId> w;
            bool bad = false;
            for (size_t t = 0; t < u.size(); ++t) {
                const Edge& ed = g.edge(frac[u[t]]);
                VertexId pick = (mask & (1 << t)) ? ed.v : ed.u;
                if (pick == g.root()) { bad = true; break; }
                w.push_back(pick);
            }
            if (bad) continue;
            std::sort(w.begin(), w.end());
            w.erase(std::unique(w.begin(), w.end()), w.end());
            pad_and_push(w);
        }
    }

    struct Cand {
        std::vector<VertexId> set;
        Rat value;
    };
    std::vector<Cand> cands;
    for (const auto& z : zs) {
        std::set<VertexId> zset(z.begin(), z.end());
        std::vector<VertexId> sinks{g.root()};
        for (VertexId v : frac_endpoints)
            if (!zset.count(v)) sinks.push_back(v);
        MinCut mc = max_flow_min_cut(g, caps, z, sinks);
        std::sort(mc.side.begin(), mc.side.end());
        bool dup = false;
        for (const auto& c : cands)
            if (c.set == mc.side) { dup = true; break; }
        if (!dup) cands.push_back(Cand{std::move(mc.side), std::move(mc.value)});
    }
    auto subset_of = [](const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
        return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    for (const auto& c : cands) {
        bool minimal = true;
        for (const auto& o : cands)
            if (subset_of(o.set, c.set)) { minimal = false; break; }
        if (!minimal) continue;
        if (c.value != Rat(st.k)) continue;
        if (frac_on_cut(c.set) > 3) continue;
        // debug verification of subset-minimality on small graphs: no tight
        // live constraint strictly inside
        if (g.vertex_count() <= 13 || st.exhaustive_checks) {
            for (uint64_t mask = 1; mask + 1 < (1ULL << c.set.size()); ++mask) {
                std::vector<VertexId> t;
                for (size_t i = 0; i < c.set.size(); ++i)
                    if (mask & (1ULL << i)) t.push_back(c.set[i]);
                KEC_CHECK(!tight_live_constraint(st, caps, t),
                          "relaxable-cut candidate has a tight subset");
            }
        }
        return c.set;
    }
    return std::nullopt;
}

void apply_relaxation(GhostState& st, const std::vector<VertexId>& s) {
    MultiGraph& g = st.graph;
    EdgeWeights caps = load_caps(st);
    KEC_CHECK(tight_live_constraint(st, caps, s), "relaxation of a non-tight or dropped cut");

    std::set<VertexId> in(s.begin(), s.end());
    KEC_CHECK(!in.count(g.root()), "relaxation set contains the root");
    int frac_boundary = 0;
    for (EdgeId e : g.live_edges()) {
        bool u_in = in.count(g.edge(e).u), v_in = in.count(g.edge(e).v);
        if (u_in != v_in && !st.y[e].is_integer()) ++frac_boundary;
    }
    KEC_CHECK(frac_boundary <= 3, "relaxation set with more than 3 fractional boundary edges");

    std::vector<VertexId> original_set = expand_set(st, s);
    TraceEvent ev;
    ev.kind = TraceEvent::Kind::Relax;
    ev.set = s;
    ev.original_set = original_set;
    st.trace.events.push_back(ev);

    if (s.size() == 1) {
        st.relaxed[s[0]] = true;
        st.pool.remove_set(s);
        return;
    }

    ContractionRecord rec;
    rec.original_set = original_set;
    for (EdgeId e : g.live_edges()) {
        const Edge& ed = g.edge(e);
        if (in.count(ed.u) && in.count(ed.v)) {
            KEC_CHECK(st.y[e].is_integer(), "fractional edge inside a relaxed set");
            KEC_CHECK(!st.partial_z[ed.orig].has_value(), "edge value fixed twice");
            st.partial_z[ed.orig] = st.y[e];
            rec.internal.push_back({ed.orig, st.y[e]});
        } else if (in.count(ed.u) || in.count(ed.v)) {
            rec.boundary.push_back(ed.orig);
        }
    }
    for (const ContractionRecord& prev : st.family) {
        // the family stays laminar: the new set contains whole previous
        // records or misses them entirely
        std::set<VertexId> no(rec.original_set.begin(), rec.original_set.end());
        size_t inside = 0;
        for (VertexId v : prev.original_set) inside += no.count(v);
        KEC_CHECK(inside == 0 || inside == prev.original_set.size(),
                  "contraction family lost laminarity");
    }
    st.family.push_back(rec);

    ContractResult res = contract(g, s);
    // remap vertex-indexed state
    std::vector<char> relaxed2(res.graph.vertex_count(), 0);
    std::vector<std::vector<VertexId>> expansion2(res.graph.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        VertexId nv = res.vertex_map[v];
        if (relaxed2[nv] == 0 && st.relaxed[v]) relaxed2[nv] = 1;
        expansion2[nv].insert(expansion2[nv].end(), st.expansion[v].begin(), st.expansion[v].end());
    }
    relaxed2[res.merged] = 1;
    for (auto& ex : expansion2) std::sort(ex.begin(), ex.end());
    st.pool.apply_contraction(s, res.vertex_map, res.merged, res.graph.vertex_count());
    st.relaxed = std::move(relaxed2);
    st.expansion = std::move(expansion2);
    st.graph = std::move(res.graph);

    TraceEvent cev;
    cev.kind = TraceEvent::Kind::Contract;
    cev.set = s;
    cev.original_set = std::move(original_set);
    st.trace.events.push_back(cev);
}

void freeze_and_delete(GhostState& st) {
    for (EdgeId e : st.graph.live_edges()) {
        if (st.y[e] + Rat(st.ghost[e]) == Rat(0)) {
            st.graph.delete_edge(e);
            st.deleted[st.graph.edge(e).orig] = 1;
            TraceEvent ev;
            ev.kind = TraceEvent::Kind::Delete;
            ev.edge = e;
            st.trace.events.push_back(ev);
        }
    }
    for (EdgeId e : st.graph.live_edges()) {
        if (!st.y[e].is_integer()) continue;
        if (st.lower[e] == st.y[e] && st.upper[e] && *st.upper[e] == st.y[e]) continue;
        KEC_CHECK(st.lower[e] <= st.y[e] && (!st.upper[e] || st.y[e] <= *st.upper[e]),
                  "freeze outside bounds");
        st.lower[e] = st.y[e];
        st.upper[e] = st.y[e];
        TraceEvent ev;
        ev.kind = TraceEvent::Kind::Freeze;
        ev.edge = e;
        ev.value = st.y[e];
        st.trace.events.push_back(ev);
    }
}

RoundedSolution assemble_solution(const GhostState& st) {
    const MultiGraph& g0 = *st.original;
    RoundedSolution out;
    out.z.assign(g0.edge_slots(), Rat(0));
    out.cost = Rat(0);
    std::vector<char> assigned(g0.edge_slots(), 0);
    for (EdgeId e : st.graph.live_edges()) {
        KEC_CHECK(st.y[e].is_integer(), "assembling from a fractional solution");
        out.z[st.graph.edge(e).orig] = st.y[e];
        assigned[st.graph.edge(e).orig] = 1;
    }
    for (OriginalEdgeId e = 0; e < g0.edge_slots(); ++e) {
        if (st.partial_z[e]) {
            KEC_CHECK(!assigned[e], "edge assigned both live and contracted values");
            out.z[e] = *st.partial_z[e];
            assigned[e] = 1;
        }
    }
    for (OriginalEdgeId e = 0; e < g0.edge_slots(); ++e) {
        if (!assigned[e])
            KEC_CHECK(st.deleted[e], "original edge with no assigned value was never deleted");
        KEC_CHECK(out.z[e].is_integer() && out.z[e].sgn() >= 0, "z not a nonnegative integer");
        KEC_CHECK(out.z[e] == st.y0[e].floor() || out.z[e] == st.y0[e].ceil(),
                  "z outside the per-edge rounding interval");
        out.cost += st.cost[e] * out.z[e];
    }
    Rat input_cost(0);
    for (OriginalEdgeId e = 0; e < g0.edge_slots(); ++e) input_cost += st.cost[e] * st.y0[e];
    KEC_CHECK(out.cost <= input_cost, "rounded cost exceeds the input cost");
    return out;
}

namespace {

void solve_and_record(GhostState& st, const EdgeWeights* warm) {
    GhostLpSolution sol = solve_ghost_lp(st.view(), st.cost, st.pool, warm);
    if (st.last_objective)
        KEC_CHECK(sol.objective <= *st.last_objective,
                  "lp value increased after a relaxing event");
    st.last_objective = sol.objective;
    st.y = std::move(sol.y);
    TraceEvent ev;
    ev.kind = TraceEvent::Kind::Solve;
    ev.objective = sol.objective;
    ev.rounds = sol.rounds;
    st.trace.events.push_back(ev);
}

void check_iteration_invariants(const GhostState& st) {
    const MultiGraph& g = st.graph;
    for (EdgeId e : g.live_edges()) {
        KEC_CHECK(st.lower[e] <= st.y[e] && st.upper[e] && st.y[e] <= *st.upper[e],
                  "y outside its bounds");
        KEC_CHECK(st.ghost[e] == 0 || st.ghost[e] == 2, "ghost value outside {0,2}");
    }
    if (g.vertex_count() >= 2) {
        EdgeWeights caps = load_caps(st);
        Rat floor_bound = Rat(st.k) - Rat(2);
        auto check_cut = [&](const std::vector<VertexId>& s, const Rat& val) {
            KEC_CHECK(val >= floor_bound, "(y+g) below k-2 on a cut");
            if (val == floor_bound) {
                for (EdgeId e : cut_edges(g, s))
                    KEC_CHECK(st.y[e].is_integer(), "non-integral boundary on a (k-2)-cut");
            }
        };
        if (g.vertex_count() <= 8 || st.exhaustive_checks) {
            enumerate_cuts(g.vertex_count(), g.root(), [&](const std::vector<VertexId>& s) {
                check_cut(s, cut_weight(g, caps, s));
            });
        } else {
            MinCut mc = global_min_cut(g, caps);
            check_cut(mc.side, mc.value);
        }
    }
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        for (VertexId v = u + 1; v < g.vertex_count(); ++v) {
            int frac = 0;
            for (EdgeId e : g.parallel_class(u, v))
                if (!st.y[e].is_integer()) ++frac;
            KEC_CHECK(frac <= 1, "parallel class with two fractional edges");
        }
}

[[noreturn]] void report_no_progress(const GhostState& st) {
    if (st.graph.vertex_count() <= 13) {
        // distinguish a genuine progress-lemma violation from an incomplete
        // relaxable-cut search
        EdgeWeights caps = load_caps(st);
        std::vector<EdgeId> frac = fractional_edges(st);
        bool exists = false;
        enumerate_cuts(st.graph.vertex_count(), st.graph.root(),
                       [&](const std::vector<VertexId>& s) {
                           if (exists || !tight_live_constraint(st, caps, s)) return;
                           std::set<VertexId> in(s.begin(), s.end());
                           int fb = 0;
                           for (EdgeId e : frac)
                               if (in.count(st.graph.edge(e).u) != in.count(st.graph.edge(e).v)) ++fb;
                           if (fb > 3) return;
                           for (uint64_t m = 1; m + 1 < (1ULL << s.size()); ++m) {
                               std::vector<VertexId> t;
                               for (size_t i = 0; i < s.size(); ++i)
                                   if (m & (1ULL << i)) t.push_back(s[i]);
                               if (tight_live_constraint(st, caps, t)) return;
                           }
                           exists = true;
                       });
        KEC_CHECK(!exists, "relaxable-cut search missed an applicable cut");
    }
    throw InvariantError(
        "invariant: no progress possible (fractional y, no augmentation, no relaxable cut)");
}

} // namespace

RoundedSolution ghost_round(const MultiGraph& g0, const EdgeWeights& cost,
                            const EdgeWeights& y0, long k, RunTrace* trace_out,
                            bool exhaustive_checks) {
    auto t0 = std::chrono::steady_clock::now();
    if (k <= 0) throw ParseError("k must be at least 1");
    KEC_CHECK(static_cast<int>(y0.size()) >= g0.edge_slots() &&
                  static_cast<int>(cost.size()) >= g0.edge_slots(),
              "vector sizes do not match the graph");
    for (EdgeId e : g0.live_edges())
        KEC_CHECK(y0[e].sgn() >= 0 && cost[e].sgn() >= 0, "negative input entries");
    if (g0.vertex_count() >= 2) {
        MinCut mc = global_min_cut(g0, y0);
        if (mc.value < Rat(k))
            throw InfeasibleError("input vector has a cut of value " + mc.value.str() +
                                  " below k=" + std::to_string(k));
    }

    GhostState st;
    st.graph = g0;
    st.original = &g0;
    st.k = (k % 2 == 0) ? k : k - 1;
    st.cost = cost;
    st.y0 = y0;
    st.y = y0;
    st.ghost.assign(g0.edge_slots(), 0);
    st.lower.resize(g0.edge_slots());
    st.upper.resize(g0.edge_slots());
    for (EdgeId e = 0; e < g0.edge_slots(); ++e) {
        st.lower[e] = y0[e].floor();
        st.upper[e] = y0[e].ceil();
    }
    st.relaxed.assign(g0.vertex_count(), 0);
    st.expansion.resize(g0.vertex_count());
    for (VertexId v = 0; v < g0.vertex_count(); ++v) st.expansion[v] = {v};
    st.partial_z.assign(g0.edge_slots(), std::nullopt);
    st.deleted.assign(g0.edge_slots(), 0);
    st.exhaustive_checks = exhaustive_checks;
    st.trace.k_input = k;
    st.trace.k_internal = st.k;
    st.trace.input_vertices = g0.vertex_count();

    st.pool.seed_singletons(st.view());
    solve_and_record(st, &y0);
    freeze_and_delete(st);

    int iter = 0;
    while (!st.y_integral()) {
        ++iter;
        st.trace.iterations = iter;
        KEC_CHECK(iter <= 4 * st.trace.input_vertices, "iteration count above 4|V|");
        check_iteration_invariants(st);
        if (auto aug = find_ghost_augmentation(st)) {
            st.ghost[aug->edge] += 2;
            TraceEvent ev;
            ev.kind = TraceEvent::Kind::Augment;
            ev.u = aug->u;
            ev.v = aug->v;
            ev.edge = aug->edge;
            st.trace.events.push_back(ev);
        } else if (auto s = find_relaxable_cut(st)) {
            apply_relaxation(st, *s);
        } else {
            report_no_progress(st);
        }
        EdgeWeights warm = st.y;
        solve_and_record(st, &warm);
        freeze_and_delete(st);
    }

    RoundedSolution out = assemble_solution(st);

    // end-of-run guarantees over the original graph
    for (const ContractionRecord& rec : st.family) {
        Rat zb(0);
        for (OriginalEdgeId e : rec.boundary) zb += out.z[e];
        KEC_CHECK(zb <= Rat(st.k) + Rat(2), "contracted set with z-boundary above k+2");
    }
    if (g0.vertex_count() >= 2) {
        Rat bound = Rat(st.k) - Rat(9);
        if (g0.vertex_count() <= 16 || exhaustive_checks) {
            enumerate_cuts(g0.vertex_count(), g0.root(), [&](const std::vector<VertexId>& s) {
                KEC_CHECK(cut_weight(g0, out.z, s) >= bound, "z has a cut below k-9");
            });
        } else {
            KEC_CHECK(global_min_cut(g0, out.z).value >= bound, "z has a cut below k-9");
        }
    }

    st.trace.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (trace_out) *trace_out = std::move(st.trace);
    return out;
}

} // namespace kec
