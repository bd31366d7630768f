#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kec/error.hpp"
#include "kec/multigraph.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <set>

using namespace kec;
using kectest::Rng;

namespace {

MultiGraph triangle() {
    MultiGraph g(3, 2); // a=0 b=1 c=2(root)
    g.add_edge(0, 1);   // ab
    g.add_edge(0, 2);   // ac
    g.add_edge(1, 2);   // bc
    return g;
}

EdgeWeights unit_weights(const MultiGraph& g) {
    return EdgeWeights(g.edge_slots(), Rat(1));
}

// brute-force minimum weight cut separating all of A from all of B
std::pair<Rat, std::vector<std::vector<VertexId>>> brute_min_cut(
    const MultiGraph& g, const EdgeWeights& w, const std::vector<VertexId>& A,
    const std::vector<VertexId>& B) {
    Rat best(0);
    bool have = false;
    std::vector<std::vector<VertexId>> mins;
    int n = g.vertex_count();
    for (uint64_t mask = 1; mask + 1 < (1ULL << n); ++mask) {
        bool ok = true;
        for (VertexId a : A)
            if (!(mask & (1ULL << a))) ok = false;
        for (VertexId b : B)
            if (mask & (1ULL << b)) ok = false;
        if (!ok) continue;
        std::vector<VertexId> s;
        for (int v = 0; v < n; ++v)
            if (mask & (1ULL << v)) s.push_back(v);
        Rat val = cut_weight(g, w, s);
        if (!have || val < best) {
            best = val;
            mins.clear();
            have = true;
        }
        if (val == best) mins.push_back(s);
    }
    return {best, mins};
}

} // namespace

TEST_CASE("contract triangle pair") {
    auto res = contract(triangle(), {0, 1});
    CHECK(res.graph.vertex_count() == 2);
    CHECK(res.removed == std::vector<EdgeId>{0});
    // ac and bc now parallel between merged vertex and c
    CHECK(res.graph.alive(1));
    CHECK(res.graph.alive(2));
    auto pc = res.graph.parallel_class(res.merged, res.vertex_map[2]);
    CHECK(pc == std::vector<EdgeId>{1, 2});
    // edge and orig ids unchanged
    CHECK(res.graph.edge(1).orig == 1);
}

TEST_CASE("contract path tail") {
    MultiGraph g(3, 0); // a-b-c
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    auto res = contract(g, {1, 2});
    CHECK(res.graph.vertex_count() == 2);
    CHECK(res.graph.live_edge_count() == 1);
    CHECK(res.removed == std::vector<EdgeId>{1});
    CHECK(res.graph.edge(0).u != res.graph.edge(0).v);
}

TEST_CASE("contract opposite pair of 4-cycle") {
    MultiGraph g(4, 0);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 0);
    auto res = contract(g, {1, 3});
    CHECK(res.graph.vertex_count() == 3);
    CHECK(res.removed.empty());
    // hand oracle: all four edges survive as two parallel classes
    auto c0 = res.graph.parallel_class(res.vertex_map[0], res.merged);
    auto c2 = res.graph.parallel_class(res.vertex_map[2], res.merged);
    CHECK(c0.size() == 2);
    CHECK(c2.size() == 2);
}

TEST_CASE("contract rejects root and tiny sets") {
    CHECK_THROWS_AS(contract(triangle(), {0, 2}), InvariantError);
    CHECK_THROWS_AS(contract(triangle(), {0}), InvariantError);
}

TEST_CASE("parallel_class basics") {
    MultiGraph g(3, 0);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    CHECK(g.parallel_class(0, 1).size() == 2);
    CHECK(g.parallel_class(1, 0).size() == 2);
    CHECK(g.parallel_class(0, 2).empty());
}

TEST_CASE("cut_weight") {
    MultiGraph g(4, 0);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 0);
    auto w = unit_weights(g);
    CHECK(cut_weight(g, w, {1, 2}) == Rat(2));
    CHECK_THROWS_AS(cut_weight(g, w, {}), InvariantError);
    CHECK_THROWS_AS(cut_weight(g, w, {0, 1, 2, 3}), InvariantError);
    MultiGraph iso(3, 0);
    iso.add_edge(0, 1);
    CHECK(cut_weight(iso, unit_weights(iso), {2}) == Rat(0));
}

TEST_CASE("max flow examples") {
    SUBCASE("single edge") {
        MultiGraph g(2, 1);
        g.add_edge(0, 1);
        EdgeWeights cap{Rat(5)};
        auto mc = max_flow_min_cut(g, cap, {0}, {1});
        CHECK(mc.value == Rat(5));
        CHECK(mc.side == std::vector<VertexId>{0});
    }
    SUBCASE("two vertex-disjoint paths") {
        // u=0, v=1, inner vertices 2 and 3
        MultiGraph g(4, 1);
        EdgeWeights cap;
        g.add_edge(0, 2);
        g.add_edge(2, 1);
        g.add_edge(0, 3);
        g.add_edge(3, 1);
        cap = {Rat(2), Rat(2), Rat(3), Rat(3)};
        auto mc = max_flow_min_cut(g, cap, {0}, {1});
        CHECK(mc.value == Rat(5));
        CHECK(mc.side == std::vector<VertexId>{0});
    }
    SUBCASE("bottleneck minimality") {
        // u -5- a -1- b -5- v and the u side also connects directly to b
        // with a large edge; minimal cut must stay near the bottleneck
        MultiGraph g(4, 3); // u=0 a=1 b=2 v=3
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 3);
        EdgeWeights cap{Rat(5), Rat(1), Rat(5)};
        auto mc = max_flow_min_cut(g, cap, {0}, {3});
        CHECK(mc.value == Rat(1));
        // both {0,1} and {0,1,2} are minimum cuts; minimal one is {0,1}
        CHECK(mc.side == std::vector<VertexId>{0, 1});
    }
    SUBCASE("disconnected terminals") {
        MultiGraph g(3, 0);
        g.add_edge(0, 1);
        auto mc = max_flow_min_cut(g, unit_weights(g), {2}, {0});
        CHECK(mc.value == Rat(0));
        CHECK(mc.side == std::vector<VertexId>{2});
    }
}

TEST_CASE("global min cut examples") {
    SUBCASE("unit 4-cycle") {
        MultiGraph g(4, 0);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 3);
        g.add_edge(3, 0);
        CHECK(global_min_cut(g, unit_weights(g)).value == Rat(2));
    }
    SUBCASE("C4 with weight 6 per edge, all cuts oracle") {
        MultiGraph g(4, 0);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 3);
        g.add_edge(3, 0);
        EdgeWeights w(4, Rat(6));
        Rat best(0);
        bool have = false;
        for (auto& s : kectest::all_root_free_cuts(g)) {
            Rat v = cut_weight(g, w, s);
            if (!have || v < best) { best = v; have = true; }
        }
        CHECK(best == Rat(12));
        CHECK(global_min_cut(g, w).value == Rat(12));
    }
    SUBCASE("star with root center") {
        MultiGraph g(5, 0);
        for (int v = 1; v < 5; ++v) g.add_edge(0, v);
        CHECK(global_min_cut(g, unit_weights(g)).value == Rat(1));
    }
}

TEST_CASE("flow equals brute force on random small graphs") {
    Rng rng(20240711);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 3 + static_cast<int>(rng.below(6)); // up to 8
        auto g = kectest::random_connected_graph(rng, n, n);
        EdgeWeights cap(g.edge_slots());
        for (int e = 0; e < g.edge_slots(); ++e) cap[e] = kectest::random_rat(rng);
        VertexId a = static_cast<int>(rng.below(n));
        VertexId b = static_cast<int>(rng.below(n));
        if (a == b) continue;
        auto mc = max_flow_min_cut(g, cap, {a}, {b});
        auto [best, mins] = brute_min_cut(g, cap, {a}, {b});
        CHECK(mc.value == best);
        // the returned cut must be the unique inclusion-minimal minimizer
        std::set<VertexId> got(mc.side.begin(), mc.side.end());
        int n_minimal = 0;
        for (auto& s : mins) {
            std::set<VertexId> cand(s.begin(), s.end());
            bool minimal = true;
            for (auto& t : mins) {
                if (t.size() >= s.size()) continue;
                if (std::includes(cand.begin(), cand.end(), t.begin(), t.end())) minimal = false;
            }
            if (minimal) {
                ++n_minimal;
                CHECK(cand == got);
            }
        }
        CHECK(n_minimal == 1);
    }
}

TEST_CASE("contraction preserves boundary edge sets") {
    Rng rng(77001);
    for (int iter = 0; iter < 40; ++iter) {
        int n = 5 + static_cast<int>(rng.below(3));
        auto g = kectest::random_connected_graph(rng, n, n);
        // contract a random 2-3 element set avoiding the root
        std::vector<VertexId> s;
        while (s.size() < 2 + rng.below(2)) {
            VertexId v = 1 + static_cast<int>(rng.below(n - 1));
            if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
        }
        auto res = contract(g, s);
        // T disjoint from s
        std::vector<VertexId> t_dis;
        for (int v = 0; v < n; ++v)
            if (v != g.root() && std::find(s.begin(), s.end(), v) == s.end()) {
                t_dis.push_back(v);
                if (t_dis.size() == 2) break;
            }
        if (!t_dis.empty()) {
            std::vector<VertexId> mapped;
            for (VertexId v : t_dis) mapped.push_back(res.vertex_map[v]);
            CHECK(cut_edges(g, t_dis) == cut_edges(res.graph, mapped));
        }
        // T containing s
        std::vector<VertexId> t_sup = s;
        for (VertexId v = 0; v < n; ++v)
            if (v != g.root() && std::find(t_sup.begin(), t_sup.end(), v) == t_sup.end()) {
                t_sup.push_back(v);
                break;
            }
        std::set<VertexId> mapped;
        for (VertexId v : t_sup) mapped.insert(res.vertex_map[v]);
        std::vector<VertexId> mv(mapped.begin(), mapped.end());
        if (mv.size() < static_cast<size_t>(res.graph.vertex_count()))
            CHECK(cut_edges(g, t_sup) == cut_edges(res.graph, mv));
    }
}

TEST_CASE("cup cap boundary identity, exhaustive on small graphs") {
    Rng rng(5150);
    for (int iter = 0; iter < 8; ++iter) {
        int n = 4 + static_cast<int>(rng.below(3)); // up to 6
        auto g = kectest::random_connected_graph(rng, n, n);
        auto cuts = kectest::all_root_free_cuts(g);
        auto chi = [&](const std::vector<EdgeId>& es) {
            std::vector<int> v(g.edge_slots(), 0);
            for (EdgeId e : es) v[e] = 1;
            return v;
        };
        for (auto& s : cuts) {
            for (auto& l : cuts) {
                std::set<VertexId> ss(s.begin(), s.end()), ll(l.begin(), l.end());
                std::vector<VertexId> cup, cap_, s_only, l_only;
                for (VertexId v = 0; v < n; ++v) {
                    bool is = ss.count(v), il = ll.count(v);
                    if (is || il) cup.push_back(v);
                    if (is && il) cap_.push_back(v);
                    if (is && !il) s_only.push_back(v);
                    if (!is && il) l_only.push_back(v);
                }
                auto chi_s = chi(cut_edges(g, s));
                auto chi_l = chi(cut_edges(g, l));
                std::vector<int> lhs(g.edge_slots());
                for (int e = 0; e < g.edge_slots(); ++e) lhs[e] = chi_s[e] + chi_l[e];
                std::vector<int> rhs(g.edge_slots(), 0);
                if (!cup.empty() && cup.size() < static_cast<size_t>(n))
                    for (EdgeId e : cut_edges(g, cup)) rhs[e] += 1;
                if (!cap_.empty())
                    for (EdgeId e : cut_edges(g, cap_)) rhs[e] += 1;
                for (EdgeId e = 0; e < g.edge_slots(); ++e) {
                    bool u_in_sonly = std::find(s_only.begin(), s_only.end(), g.edge(e).u) != s_only.end();
                    bool v_in_sonly = std::find(s_only.begin(), s_only.end(), g.edge(e).v) != s_only.end();
                    bool u_in_lonly = std::find(l_only.begin(), l_only.end(), g.edge(e).u) != l_only.end();
                    bool v_in_lonly = std::find(l_only.begin(), l_only.end(), g.edge(e).v) != l_only.end();
                    if ((u_in_sonly && v_in_lonly) || (u_in_lonly && v_in_sonly)) rhs[e] += 2;
                }
                CHECK(lhs == rhs);
            }
        }
    }
}
