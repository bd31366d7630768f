#pragma once

#include "kec/rational.hpp"

#include <vector>

namespace kec {

using VertexId = int;
using EdgeId = int;
using OriginalEdgeId = int;

// Edge ids are stable for the lifetime of a graph and survive contractions;
// removed edges are tombstoned, never re-indexed.
struct Edge {
    VertexId u = -1, v = -1;
    OriginalEdgeId orig = -1;
    bool alive = false;
};

class MultiGraph;
struct ContractResult;

// Contractible multigraph. Parallel edges are permitted; self-loops are not
// (contraction removes edges that become internal). Cuts are vertex sets
// S ⊆ V∖{root}; the root is never inside a contracted set.
class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(int n, VertexId root = 0);

    EdgeId add_edge(VertexId u, VertexId v, OriginalEdgeId orig = -1);
    void delete_edge(EdgeId e);

    int vertex_count() const { return n_; }
    VertexId root() const { return root_; }
    int edge_slots() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    bool alive(EdgeId e) const { return edges_[e].alive; }
    int live_edge_count() const { return live_; }

    std::vector<EdgeId> live_edges() const;
    std::vector<EdgeId> incident(VertexId v) const;
    // All live edges with endpoint set {u, v}; u != v required.
    std::vector<EdgeId> parallel_class(VertexId u, VertexId v) const;

private:
    friend struct ContractResult;
    friend ContractResult contract(const MultiGraph&, const std::vector<VertexId>&);
    int n_ = 0;
    int live_ = 0;
    VertexId root_ = 0;
    std::vector<Edge> edges_;
};

struct ContractResult {
    MultiGraph graph;                 // vertex ids remapped densely
    std::vector<VertexId> vertex_map; // old id -> new id (members of s map to the merged vertex)
    VertexId merged = -1;             // new id of the contracted set
    std::vector<EdgeId> removed;      // edges internal to s (same EdgeIds in both graphs)
};

// Replaces vertex set s (|s| >= 2, root not in s) by a single vertex. Edge
// ids and orig ids of surviving edges are unchanged.
ContractResult contract(const MultiGraph& g, const std::vector<VertexId>& s);

// ---- exact cut / flow utilities ------------------------------------------

// Weights indexed by EdgeId (size >= edge_slots); dead edges ignored.
using EdgeWeights = std::vector<Rat>;

std::vector<EdgeId> cut_edges(const MultiGraph& g, const std::vector<VertexId>& s);

// Exact sum of w over δ(s). Rejects s empty or s = V.
Rat cut_weight(const MultiGraph& g, const EdgeWeights& w, const std::vector<VertexId>& s);

struct MinCut {
    Rat value;
    std::vector<VertexId> side; // source side; inclusion-minimal minimum cut
};

// Exact max flow between vertex sets (Edmonds–Karp on rational residuals;
// multi-source/sink via a super node). The returned side is the set of
// vertices reachable from the sources in the final residual graph, i.e. the
// unique inclusion-minimal minimum cut.
MinCut max_flow_min_cut(const MultiGraph& g, const EdgeWeights& cap,
                        const std::vector<VertexId>& sources,
                        const std::vector<VertexId>& sinks);

// Minimum of cut_weight over non-empty S ⊆ V∖{root}, via |V|-1 max flows to
// the root. Requires |V| >= 2.
MinCut global_min_cut(const MultiGraph& g, const EdgeWeights& cap);

} // namespace kec
