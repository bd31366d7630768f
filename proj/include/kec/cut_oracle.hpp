#pragma once

#include "kec/lp.hpp"
#include "kec/multigraph.hpp"

#include <optional>
#include <vector>

namespace kec {

// View of the cut LP over the current (possibly contracted) graph:
//
//   min cost.x   s.t.  x(δ(S)) >= k - g(δ(S))   for all S ⊆ V∖{r}, except
//                      singletons {w} with w relaxed,
//                      lower <= x <= upper.
//
// ghost values are even and, in this algorithm, never exceed 2 per edge.
struct GhostLpView {
    const MultiGraph* graph = nullptr;
    long k = 0;
    const std::vector<long>* ghost = nullptr;             // per EdgeId
    const RatVec* lower = nullptr;                        // per EdgeId
    const std::vector<std::optional<Rat>>* upper = nullptr; // per EdgeId
    const std::vector<char>* relaxed = nullptr;           // per VertexId (the set W)

    Rat ghost_on_cut(const std::vector<VertexId>& s) const;
    void check() const;
};

struct Separation {
    bool all_satisfied = true;
    std::vector<VertexId> cut; // most violated; minimal witness of its flow
    Rat slack;                 // k - (y+g)(δ(cut)) when violated
};

// One min v-r cut per vertex outside W∪{r} plus one min {w,w'}-r cut per
// pair in W certifies every active constraint; returns the most violated
// cut (ties: smaller witness, then lexicographic).
Separation separate(const GhostLpView& view, const EdgeWeights& y);

// Constraint rows kept across iterations; each row is a vertex set of the
// current graph, its coefficient vector and right-hand side are derived
// from the graph and ghost values at solve time.
class CutRowPool {
public:
    const std::vector<std::vector<VertexId>>& sets() const { return sets_; }
    bool contains(const std::vector<VertexId>& sorted_set) const;
    void add(std::vector<VertexId> set); // sorts; rejects duplicates
    void seed_singletons(const GhostLpView& view);
    void remove_set(const std::vector<VertexId>& set);
    // Rewrites rows after contracting `s` into `merged`: rows inside or
    // crossing s are dropped, the rest are remapped.
    void apply_contraction(const std::vector<VertexId>& s,
                           const std::vector<VertexId>& vertex_map, VertexId merged,
                           int new_vertex_count);

private:
    std::vector<std::vector<VertexId>> sets_;
};

struct GhostLpSolution {
    EdgeWeights y; // per EdgeId; zero on dead edges
    Rat objective;
    int rounds = 0;             // separation rounds
    BasicSolution vertex;       // over live-edge variables
    std::vector<EdgeId> var_edges; // LP variable -> EdgeId
};

// Optimal vertex of the full cut LP by row generation: solve over the pool,
// separate, append the violated row, re-solve until none is violated. A
// vertex of the row-subset polyhedron that is feasible for the full LP is a
// vertex of the full LP, since the full feasible set is contained in the
// relaxed one. The warm point must be feasible for the full LP (the
// previous iterate always is); without one the solve starts cold.
GhostLpSolution solve_ghost_lp(const GhostLpView& view, const EdgeWeights& cost,
                               CutRowPool& pool, const EdgeWeights* warm);

} // namespace kec
