#pragma once

#include "kec/rounding.hpp"

#include <string>
#include <vector>

namespace kec {

enum class ProblemMode { Ecss, Ecsm, Subset };

struct Instance {
    ProblemMode mode = ProblemMode::Ecsm;
    MultiGraph graph;
    EdgeWeights cost;
    long k = 1;
    std::vector<VertexId> terminals; // subset mode only
};

struct LpOptResult {
    Rat value;
    EdgeWeights vertex;
};

// Exact optimum of the cut LP at connectivity `level`: bounds [0,1] for
// ECSS, [0, level+10] for ECSM (a single edge at level+10 satisfies every
// cut through it, so the cap keeps the polytope bounded without cutting off
// any optimal vertex at or below the relevant cost). Throws InfeasibleError
// when the LP is infeasible (ECSS on a graph with unit min cut < level;
// ECSM on a disconnected graph).
LpOptResult lp_opt(const MultiGraph& g, const EdgeWeights& cost, long level, ProblemMode mode);

// Exact optimum of the subset cut LP: x(δ(S)) >= k over sets separating the
// terminal set W, x >= 0 (capped as for ECSM). Reporting aid.
Rat subset_lp_value(const MultiGraph& g, const EdgeWeights& cost, long k,
                    const std::vector<VertexId>& terminals);

struct SolveReport {
    ProblemMode mode = ProblemMode::Ecsm;
    long k = 1;
    RoundedSolution solution;
    EdgeWeights y0;   // the LP vertex handed to the rounding (empty for subset)
    Rat lp_value_k;   // LP at k (subset: subset LP at k)
    Rat lp_value_k10; // LP at k+10 (subset: on the terminal closure)
    Rat achieved_min_cut; // over all cuts; terminal-separating cuts for subset
    RunTrace trace;
};

// k-ECSS via the (k+10)-ECSS LP: z is 0/1, k-edge-connected, of cost at
// most the (k+10)-ECSS LP optimum. Requires unit min cut >= k+10.
SolveReport solve_kecss(const Instance& inst);

// k-ECSM via the (k+10)-ECSM LP: z is k-edge-connected with cost at most
// (1 + 10/k) times the k-ECSM LP optimum. Requires a connected graph.
SolveReport solve_kecsm(const Instance& inst);

struct MetricClosure {
    MultiGraph graph; // complete graph over the same vertices, same root
    EdgeWeights cost; // shortest-path costs; satisfy the triangle inequality
    std::vector<std::vector<OriginalEdgeId>> paths; // per closure edge
};
MetricClosure metric_closure(const MultiGraph& g, const EdgeWeights& cost);

// Subset k-ECSM: k-ECSM on the terminal metric closure, expanded back along
// the stored shortest paths. Cost at most (1 + 10/k) times the subset LP
// optimum at k.
SolveReport solve_subset_kecsm(const Instance& inst);

struct CheckItem {
    std::string name;
    bool pass = false;
    std::string detail;
};
struct VerificationReport {
    bool all_pass = true;
    std::vector<CheckItem> checks;
    void add(const std::string& name, bool pass, const std::string& detail);
};

// Re-derives feasibility, cost, and (when y0 is given) the rounding
// guarantees from the data alone. rounding_k is the connectivity level the
// rounding ran at (k+10 on the solver paths). Never throws on a failed
// check; failures are listed in the report.
VerificationReport verify_solution(const Instance& inst, const std::vector<Rat>& z,
                                   const EdgeWeights* y0, long rounding_k, bool exhaustive);

} // namespace kec
