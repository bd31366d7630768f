#pragma once

#include "kec/cut_oracle.hpp"

#include <optional>
#include <vector>

namespace kec {

struct TraceEvent {
    enum class Kind { Solve, Freeze, Delete, Augment, Relax, Contract };
    Kind kind;
    Rat objective;                      // Solve
    int rounds = 0;                     // Solve: separation rounds used
    EdgeId edge = -1;                   // Freeze / Delete / Augment
    Rat value;                          // Freeze
    VertexId u = -1, v = -1;            // Augment
    std::vector<VertexId> set;          // Relax / Contract, current-graph ids
    std::vector<VertexId> original_set; // same set expanded to input vertices
};

struct RunTrace {
    long k_input = 0;
    long k_internal = 0;
    int iterations = 0;
    int input_vertices = 0;
    std::vector<TraceEvent> events;
    double wall_ms = 0.0;
};

struct ContractionRecord {
    std::vector<VertexId> original_set;                    // R ⊆ V̄∖{r}
    std::vector<std::pair<OriginalEdgeId, Rat>> internal;  // integral values fixed at contraction
    std::vector<OriginalEdgeId> boundary;                  // δ(R) at contraction time
};

struct RoundedSolution {
    std::vector<Rat> z; // per original edge; nonnegative integers
    Rat cost;
};

// Full loop state; exposed so the steps can be driven and inspected in tests.
struct GhostState {
    MultiGraph graph; // working graph, contracted as the run progresses
    const MultiGraph* original = nullptr;
    long k = 0; // internal (even) connectivity target
    EdgeWeights cost;
    EdgeWeights y0; // input vector over original edges
    EdgeWeights y;  // current vertex solution, per EdgeId
    std::vector<long> ghost;
    RatVec lower;
    std::vector<std::optional<Rat>> upper;
    std::vector<char> relaxed;                    // W, per current vertex
    std::vector<std::vector<VertexId>> expansion; // current vertex -> original vertices
    std::vector<ContractionRecord> family;        // the laminar family R
    std::vector<std::optional<Rat>> partial_z;    // per original edge, set at contraction
    std::vector<char> deleted;                    // per original edge
    CutRowPool pool;
    RunTrace trace;
    std::optional<Rat> last_objective;
    bool exhaustive_checks = false; // force exhaustive lemma audits regardless of size

    GhostLpView view() const;
    bool y_integral() const;
};

struct Augmentation {
    VertexId u, v;
    EdgeId edge; // lowest id in E(u,v)
};

// A parallel class with (y+g)-load in [k/2 - 2, k/2), if any; checks that no
// member already carries a ghost value and that the integral load is at
// least k/2 - 2 before reporting it.
std::optional<Augmentation> find_ghost_augmentation(const GhostState& st);

// A y-tight cut constraint with no tight proper sub-constraint and at most 3
// fractional boundary edges: first all singletons outside W∪{r}, then
// minimal minimum Z-cuts seeded from the fractional edges.
std::optional<std::vector<VertexId>> find_relaxable_cut(const GhostState& st);

// Fixes internal edge values into z, drops the constraint, and (for sets of
// 2 or more vertices) contracts the set and marks the new vertex relaxed.
void apply_relaxation(GhostState& st, const std::vector<VertexId>& s);

// Deletes edges with y_e + g_e = 0, then pins every integral y_e via
// matching bounds.
void freeze_and_delete(GhostState& st);

// z over original edges: values fixed at contraction, final live values, 0
// for deleted edges. Ghost values are never added to z.
RoundedSolution assemble_solution(const GhostState& st);

// Rounds y0 (which must satisfy y0(δ(S)) >= k on every cut) to an integral z
// with z_e in {floor(y0_e), ceil(y0_e)}, cost(z) <= cost(y0), and every cut
// of z at least k - 9 - [k odd]. Odd k runs internally at k-1.
RoundedSolution ghost_round(const MultiGraph& g0, const EdgeWeights& cost,
                            const EdgeWeights& y0, long k, RunTrace* trace = nullptr,
                            bool exhaustive_checks = false);

} // namespace kec
