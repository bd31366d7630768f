#pragma once

#include "kec/linalg.hpp"
#include "kec/rational.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace kec {

// One constraint: sum of coeffs · x >= rhs.
struct LpRow {
    std::vector<std::pair<int, Rat>> coeffs;
    Rat rhs;
};

// min objective · x  s.t. rows, lower <= x <= upper (upper may be +inf).
// Rows are append-only within a solve session (row generation).
struct LpProblem {
    int nvars = 0;
    RatVec objective;
    RatVec lower;
    std::vector<std::optional<Rat>> upper;
    std::vector<LpRow> rows;

    int add_var(const Rat& cost, const Rat& lo, std::optional<Rat> hi);
    void validate() const;
};

enum class VarStatus : unsigned char { Basic, AtLower, AtUpper, FixedBound };

// A vertex: feasible, and the tight constraints at x (tight rows plus
// variables at a bound) contain a full-column-rank subsystem of which x is
// the unique solution.
struct BasicSolution {
    RatVec x;
    Rat objective;
    std::vector<VarStatus> status; // per variable
    std::vector<int> tight_rows;   // rows holding with equality at x
};

// Farkas-style certificate: weights >= 0 over rows such that the aggregated
// row cannot be met by any point of the bound box.
struct LpInfeasible {
    RatVec farkas;
};

// Feasible direction of strictly negative cost.
struct LpUnbounded {
    RatVec ray;
};

using LpOutcome = std::variant<BasicSolution, LpInfeasible, LpUnbounded>;

// Bounded-variable primal simplex with Bland's anti-cycling rule, exact
// rationals throughout. The two-argument form crashes the given feasible
// point to a basic feasible point first, so no artificial variables are
// needed; the one-argument form runs a textbook phase 1.
LpOutcome solve_vertex(const LpProblem& p);
LpOutcome solve_vertex(const LpProblem& p, const RatVec& feasible_point);

// p must extend prev's problem by rows only. If prev still satisfies every
// row it is returned unchanged (a vertex of a row-subset polyhedron that is
// feasible for the full LP is a vertex of the full LP); otherwise a fresh
// solve, warm-started when a feasible point is supplied.
LpOutcome resolve_with_new_rows(const BasicSolution& prev, const LpProblem& p,
                                const std::optional<RatVec>& feasible_point = std::nullopt);

bool lp_point_feasible(const LpProblem& p, const RatVec& x);
Rat lp_objective(const LpProblem& p, const RatVec& x);

// Rank check of the vertex certificate: the constraints tight at sol.x must
// span all variables.
bool certifies_vertex(const LpProblem& p, const BasicSolution& sol);

} // namespace kec
