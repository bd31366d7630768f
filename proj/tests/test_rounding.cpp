#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kec/error.hpp"
#include "kec/rounding.hpp"
#include "test_util.hpp"

using namespace kec;
using kectest::Rng;

namespace {

MultiGraph c4(VertexId root = 0) {
    MultiGraph g(4, root);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 0);
    return g;
}

// optimal vertex of the k-ECSM style cut LP with variables capped at k+10
EdgeWeights ecsm_vertex(const MultiGraph& g, const EdgeWeights& cost, long k) {
    std::vector<long> ghost(g.edge_slots(), 0);
    RatVec lower(g.edge_slots(), Rat(0));
    std::vector<std::optional<Rat>> upper(g.edge_slots(), Rat(k + 10));
    std::vector<char> relaxed(g.vertex_count(), 0);
    GhostLpView view{&g, k, &ghost, &lower, &upper, &relaxed};
    CutRowPool pool;
    pool.seed_singletons(view);
    EdgeWeights warm(g.edge_slots(), Rat(k + 10));
    return solve_ghost_lp(view, cost, pool, &warm).y;
}

GhostState make_state(MultiGraph g, EdgeWeights y, long k) {
    GhostState st;
    st.graph = std::move(g);
    st.k = k;
    st.y = std::move(y);
    st.y0 = st.y;
    st.cost.assign(st.graph.edge_slots(), Rat(1));
    st.ghost.assign(st.graph.edge_slots(), 0);
    st.lower.resize(st.graph.edge_slots());
    st.upper.resize(st.graph.edge_slots());
    for (EdgeId e = 0; e < st.graph.edge_slots(); ++e) {
        st.lower[e] = st.y[e].floor();
        st.upper[e] = st.y[e].ceil();
    }
    st.relaxed.assign(st.graph.vertex_count(), 0);
    st.expansion.resize(st.graph.vertex_count());
    for (VertexId v = 0; v < st.graph.vertex_count(); ++v) st.expansion[v] = {v};
    st.partial_z.assign(st.graph.edge_slots(), std::nullopt);
    st.deleted.assign(st.graph.edge_slots(), 0);
    st.trace.input_vertices = st.graph.vertex_count();
    return st;
}

void check_rounding_guarantees(const MultiGraph& g, const EdgeWeights& cost,
                               const EdgeWeights& y0, long k, const RoundedSolution& sol) {
    Rat zc(0), yc(0);
    for (EdgeId e = 0; e < g.edge_slots(); ++e) {
        zc += cost[e] * sol.z[e];
        yc += cost[e] * y0[e];
        CHECK(sol.z[e].is_integer());
        bool in_interval = sol.z[e] == y0[e].floor() || sol.z[e] == y0[e].ceil();
        CHECK(in_interval);
    }
    CHECK(zc <= yc);
    CHECK(zc == sol.cost);
    Rat bound = Rat(k - 9 - (k % 2 == 0 ? 0 : 1));
    for (auto& s : kectest::all_root_free_cuts(g))
        CHECK(cut_weight(g, sol.z, s) >= bound);
}

} // namespace

TEST_CASE("integral input is returned unchanged with zero iterations") {
    MultiGraph g = c4();
    EdgeWeights cost(4, Rat(1));
    EdgeWeights y0(4, Rat(6));
    RunTrace trace;
    auto sol = ghost_round(g, cost, y0, 12, &trace);
    for (EdgeId e = 0; e < 4; ++e) CHECK(sol.z[e] == Rat(6));
    CHECK(trace.iterations == 0);
    CHECK(trace.k_internal == 12);
    check_rounding_guarantees(g, cost, y0, 12, sol);
}

TEST_CASE("C4 plus diagonal at k=12 rounds an LP vertex") {
    MultiGraph g = c4();
    g.add_edge(0, 2);
    EdgeWeights cost{Rat(1), Rat(1), Rat(1), Rat(1), Rat(1, 3)};
    EdgeWeights y0 = ecsm_vertex(g, cost, 12);
    Rat mc = global_min_cut(g, y0).value;
    REQUIRE(mc >= Rat(12));
    RunTrace trace;
    auto sol = ghost_round(g, cost, y0, 12, &trace, true);
    check_rounding_guarantees(g, cost, y0, 12, sol);
}

TEST_CASE("odd k runs internally at k-1") {
    MultiGraph g = c4();
    EdgeWeights cost(4, Rat(1));
    EdgeWeights y0 = ecsm_vertex(g, cost, 13);
    RunTrace trace;
    auto sol = ghost_round(g, cost, y0, 13, &trace, true);
    CHECK(trace.k_input == 13);
    CHECK(trace.k_internal == 12);
    check_rounding_guarantees(g, cost, y0, 13, sol);
}

TEST_CASE("input below k on a cut is rejected") {
    MultiGraph g = c4();
    EdgeWeights cost(4, Rat(1));
    EdgeWeights y0(4, Rat(1));
    CHECK_THROWS_AS(ghost_round(g, cost, y0, 12, nullptr), InfeasibleError);
}

TEST_CASE("k below one is rejected; single vertex is trivial") {
    MultiGraph g = c4();
    EdgeWeights cost(4, Rat(1)), y0(4, Rat(6));
    CHECK_THROWS_AS(ghost_round(g, cost, y0, 0, nullptr), ParseError);
    MultiGraph single(1, 0);
    auto sol = ghost_round(single, {}, {}, 5, nullptr);
    CHECK(sol.z.empty());
    CHECK(sol.cost == Rat(0));
}

TEST_CASE("ghost augmentation interval") {
    // u=0 v=1 r=2; parallel class u-v plus heavy side edges
    MultiGraph g(3, 2);
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);

    SUBCASE("class load 4 qualifies at k=12") {
        auto st = make_state(g, {Rat(2), Rat(2), Rat(10), Rat(10)}, 12);
        auto aug = find_ghost_augmentation(st);
        REQUIRE(aug.has_value());
        CHECK(aug->u == 0);
        CHECK(aug->v == 1);
        CHECK(aug->edge == 0); // lowest id in the class
    }
    SUBCASE("class load 6 does not qualify at k=12") {
        auto st = make_state(g, {Rat(3), Rat(3), Rat(10), Rat(10)}, 12);
        CHECK(!find_ghost_augmentation(st).has_value());
    }
    SUBCASE("ghost load counts toward the interval") {
        auto st = make_state(g, {Rat(2), Rat(2), Rat(10), Rat(10)}, 12);
        st.ghost[0] = 2; // load now 6, out of the interval
        CHECK(!find_ghost_augmentation(st).has_value());
    }
}

TEST_CASE("freeze_and_delete literal conditions") {
    MultiGraph g(3, 2);
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    auto st = make_state(g, {Rat(0), Rat(0), Rat(7, 2), Rat(5)}, 4);
    st.ghost[1] = 2; // y=0 but ghost keeps it alive
    st.lower[3] = Rat(0);
    st.upper[3] = Rat(9);
    freeze_and_delete(st);
    CHECK(!st.graph.alive(0)); // y+g = 0
    CHECK(st.graph.alive(1));  // y=0 but g=2
    CHECK(st.graph.alive(2));  // fractional: neither frozen nor deleted
    CHECK(st.lower[2] != st.upper[2]);
    CHECK(st.lower[3] == Rat(5)); // integral: frozen
    CHECK(st.upper[3] == Rat(5));
}

TEST_CASE("apply_relaxation") {
    SUBCASE("singleton joins W without contraction") {
        MultiGraph g(3, 0); // r=0
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 0);
        auto st = make_state(g, {Rat(2), Rat(2), Rat(2)}, 4);
        st.pool.seed_singletons(st.view());
        apply_relaxation(st, {1});
        CHECK(st.relaxed[1] == 1);
        CHECK(st.graph.vertex_count() == 3);
        CHECK(!st.pool.contains({1}));
    }
    SUBCASE("two-element set contracts and fixes the internal edge") {
        MultiGraph g(3, 0); // r=0 a=1 b=2
        EdgeId ab = g.add_edge(1, 2);
        g.add_edge(1, 0);
        g.add_edge(2, 0);
        auto st = make_state(g, {Rat(3), Rat(2), Rat(2)}, 4);
        apply_relaxation(st, {1, 2});
        CHECK(st.graph.vertex_count() == 2);
        REQUIRE(st.partial_z[ab].has_value());
        CHECK(*st.partial_z[ab] == Rat(3));
        CHECK(st.family.size() == 1);
        CHECK(st.family[0].original_set == std::vector<VertexId>{1, 2});
        VertexId merged = -1;
        for (VertexId v = 0; v < 2; ++v)
            if (st.relaxed[v]) merged = v;
        REQUIRE(merged >= 0);
        CHECK(st.expansion[merged] == std::vector<VertexId>{1, 2});
    }
    SUBCASE("non-tight set is rejected") {
        MultiGraph g(3, 0);
        g.add_edge(1, 2);
        g.add_edge(1, 0);
        g.add_edge(2, 0);
        auto st = make_state(g, {Rat(3), Rat(2), Rat(2)}, 6);
        CHECK_THROWS_AS(apply_relaxation(st, {1, 2}), InvariantError);
    }
    SUBCASE("fractional internal edge is rejected") {
        MultiGraph g(3, 0);
        g.add_edge(1, 2);
        g.add_edge(1, 0);
        g.add_edge(2, 0);
        auto st = make_state(g, {Rat(5, 2), Rat(2), Rat(2)}, 4);
        // boundary is y-tight at 4 but the internal edge is fractional
        CHECK_THROWS_AS(apply_relaxation(st, {1, 2}), InvariantError);
    }
}

TEST_CASE("random ECSM vertices round within all guarantees") {
    Rng rng(31337);
    int runs = 0;
    for (int iter = 0; iter < 40; ++iter) {
        int n = 3 + static_cast<int>(rng.below(4));
        auto g = kectest::random_connected_graph(rng, n, n);
        EdgeWeights cost(g.edge_slots());
        for (auto& c : cost) c = kectest::random_rat(rng, 8, 3);
        long ks[] = {2, 4, 6, 13};
        long k = ks[rng.below(4)];
        EdgeWeights y0 = ecsm_vertex(g, cost, k);
        RunTrace trace;
        auto sol = ghost_round(g, cost, y0, k, &trace, true);
        check_rounding_guarantees(g, cost, y0, k, sol);
        CHECK(trace.iterations <= 4 * n);
        ++runs;
    }
    CHECK(runs == 40);
}
