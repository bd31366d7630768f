#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kec/lp.hpp"
#include "lp_oracle.hpp"
#include "test_util.hpp"

#include <variant>

using namespace kec;
using kectest::Rng;

namespace {

LpRow row(std::vector<std::pair<int, Rat>> coeffs, Rat rhs) {
    return LpRow{std::move(coeffs), std::move(rhs)};
}

const BasicSolution& sol(const LpOutcome& o) {
    REQUIRE(std::holds_alternative<BasicSolution>(o));
    return std::get<BasicSolution>(o);
}

} // namespace

TEST_CASE("one variable, one row") {
    LpProblem p;
    p.add_var(Rat(1), Rat(0), Rat(10));
    p.rows.push_back(row({{0, Rat(1)}}, Rat(3)));
    auto s = sol(solve_vertex(p));
    CHECK(s.x[0] == Rat(3));
    CHECK(s.objective == Rat(3));
    CHECK(s.tight_rows == std::vector<int>{0});
    CHECK(certifies_vertex(p, s));
}

TEST_CASE("two variables share a covering row") {
    LpProblem p;
    p.add_var(Rat(1), Rat(0), Rat(4));
    p.add_var(Rat(1), Rat(0), Rat(4));
    p.rows.push_back(row({{0, Rat(1)}, {1, Rat(1)}}, Rat(5)));
    auto s = sol(solve_vertex(p));
    CHECK(s.objective == Rat(5));
    // some bound must be tight at a vertex
    bool bound_tight = s.x[0] == Rat(0) || s.x[0] == Rat(4) || s.x[1] == Rat(0) || s.x[1] == Rat(4);
    CHECK(bound_tight);
    CHECK(certifies_vertex(p, s));
    // matches the enumeration oracle
    auto oracle = kectest::lp_brute_force(p);
    CHECK(oracle.feasible);
    CHECK(oracle.objective == Rat(5));
}

TEST_CASE("unbounded") {
    LpProblem p;
    p.add_var(Rat(-1), Rat(0), std::nullopt);
    auto o = solve_vertex(p);
    REQUIRE(std::holds_alternative<LpUnbounded>(o));
    CHECK(std::get<LpUnbounded>(o).ray[0] > Rat(0));
}

TEST_CASE("infeasible with certificate") {
    LpProblem p;
    p.add_var(Rat(1), Rat(0), Rat(4));
    p.rows.push_back(row({{0, Rat(1)}}, Rat(5)));
    auto o = solve_vertex(p);
    REQUIRE(std::holds_alternative<LpInfeasible>(o));
    auto& cert = std::get<LpInfeasible>(o).farkas;
    REQUIRE(cert.size() == 1);
    CHECK(cert[0] > Rat(0)); // lambda * x >= 5*lambda unreachable on [0,4]
}

TEST_CASE("fixed variables and equality encoded as bounds") {
    LpProblem p;
    p.add_var(Rat(1), Rat(3), Rat(3));
    p.add_var(Rat(2), Rat(0), Rat(5));
    p.rows.push_back(row({{0, Rat(1)}, {1, Rat(1)}}, Rat(4)));
    auto s = sol(solve_vertex(p));
    CHECK(s.x[0] == Rat(3));
    CHECK(s.x[1] == Rat(1));
    CHECK(s.objective == Rat(5));
}

TEST_CASE("warm start agrees with cold start") {
    LpProblem p;
    p.add_var(Rat(2), Rat(0), Rat(9));
    p.add_var(Rat(3), Rat(0), Rat(9));
    p.add_var(Rat(1), Rat(0), Rat(9));
    p.rows.push_back(row({{0, Rat(1)}, {1, Rat(1)}}, Rat(4)));
    p.rows.push_back(row({{1, Rat(1)}, {2, Rat(2)}}, Rat(6)));
    auto cold = sol(solve_vertex(p));
    RatVec start{Rat(9), Rat(9), Rat(9)};
    auto warm = sol(solve_vertex(p, start));
    CHECK(cold.objective == warm.objective);
    CHECK(certifies_vertex(p, warm));
}

TEST_CASE("warm start rejects infeasible point") {
    LpProblem p;
    p.add_var(Rat(1), Rat(0), Rat(1));
    p.rows.push_back(row({{0, Rat(1)}}, Rat(1)));
    CHECK_THROWS(solve_vertex(p, RatVec{Rat(0)}));
}

TEST_CASE("resolve with new rows") {
    LpProblem p;
    p.add_var(Rat(1), Rat(0), Rat(10));
    p.add_var(Rat(1), Rat(0), Rat(10));
    p.rows.push_back(row({{0, Rat(1)}, {1, Rat(1)}}, Rat(4)));
    auto s0 = sol(solve_vertex(p));
    CHECK(s0.objective == Rat(4));

    SUBCASE("appending a slack row returns prev unchanged") {
        LpProblem q = p;
        q.rows.push_back(row({{0, Rat(1)}, {1, Rat(1)}}, Rat(2)));
        auto s1 = sol(resolve_with_new_rows(s0, q));
        CHECK(s1.x == s0.x);
    }
    SUBCASE("appending a violated row matches a scratch solve") {
        LpProblem q = p;
        q.rows.push_back(row({{0, Rat(1)}}, Rat(6)));
        auto s1 = sol(resolve_with_new_rows(s0, q));
        auto s2 = sol(solve_vertex(q));
        CHECK(s1.objective == s2.objective);
        CHECK(s1.objective == Rat(6));
    }
    SUBCASE("appending an impossible row is infeasible") {
        LpProblem q = p;
        q.lower[0] = Rat(2);
        q.upper[0] = Rat(2);
        q.rows.push_back(row({{0, Rat(1)}}, Rat(3)));
        auto o = resolve_with_new_rows(s0, q);
        CHECK(std::holds_alternative<LpInfeasible>(o));
    }
}

TEST_CASE("degenerate problems still terminate (Bland)") {
    // many redundant tight rows through one point
    LpProblem p;
    p.add_var(Rat(1), Rat(0), Rat(10));
    p.add_var(Rat(1), Rat(0), Rat(10));
    for (int i = 0; i < 6; ++i)
        p.rows.push_back(row({{0, Rat(1 + i)}, {1, Rat(1)}}, Rat(0)));
    auto s = sol(solve_vertex(p));
    CHECK(s.objective == Rat(0));
}

TEST_CASE("random problems match the dense enumeration oracle") {
    Rng rng(424242);
    int checked = 0;
    for (int iter = 0; iter < 300; ++iter) {
        int n = 1 + static_cast<int>(rng.below(4));
        int m = static_cast<int>(rng.below(7));
        LpProblem p;
        for (int j = 0; j < n; ++j) {
            Rat c = Rat(static_cast<long>(rng.below(11)) - 5);
            Rat lo = Rat(static_cast<long>(rng.below(4)));
            Rat hi = lo + Rat(static_cast<long>(rng.below(6)));
            p.add_var(c, lo, hi);
        }
        for (int i = 0; i < m; ++i) {
            LpRow r;
            for (int j = 0; j < n; ++j) {
                long c = static_cast<long>(rng.below(7)) - 3;
                if (c != 0) r.coeffs.push_back({j, Rat(c)});
            }
            r.rhs = Rat(static_cast<long>(rng.below(13)) - 4);
            if (!r.coeffs.empty()) p.rows.push_back(r);
        }
        auto oracle = kectest::lp_brute_force(p);
        auto o = solve_vertex(p);
        if (!oracle.feasible) {
            CHECK(std::holds_alternative<LpInfeasible>(o));
            continue;
        }
        REQUIRE(std::holds_alternative<BasicSolution>(o));
        auto& s = std::get<BasicSolution>(o);
        CHECK(s.objective == oracle.objective);
        CHECK(certifies_vertex(p, s));
        ++checked;
    }
    CHECK(checked > 60);
}
