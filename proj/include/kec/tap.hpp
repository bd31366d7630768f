#pragma once

#include "kec/multigraph.hpp"
#include "kec/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace kec {

// Unweighted tree augmentation: a spanning tree plus candidate links; a
// solution is a link set covering every tree edge's fundamental cut.
struct TapInstance {
    int n = 0;
    std::vector<std::pair<int, int>> tree_edges; // n-1 of them
    std::vector<std::pair<int, int>> links;
    void validate() const; // tree-ness and endpoint ranges
};

// The unit-cost k-ECSM instance built from a TAP instance: every tree edge
// {u,v} becomes two parallel bisected edges through fresh vertices w and w',
// links carry over unchanged.
struct GadgetInstance {
    MultiGraph graph; // H = (W, B); root 0
    EdgeWeights cost; // all ones
    long k = 0;
    int tree_vertices = 0;
    int tree_edge_count = 0;

    VertexId w_vertex(int tree_edge, bool primed) const;
    // side false: the edge at the first endpoint of the tree edge
    EdgeId gadget_edge(int tree_edge, bool primed, bool second_side) const;
    EdgeId link_edge(int link) const;
    std::optional<int> link_of_edge(EdgeId e) const;
};

// Errors on even k (the reduction is stated for odd k only).
GadgetInstance tap_to_kecsm(const TapInstance& tap, long k);

// per tree edge, the links whose tree path contains it
std::vector<std::vector<int>> cov_table(const TapInstance& tap);

// S' = S ∪ {w_e, w'_e : e inside S} for a tree cut S (|δ_tree(S)| = 1)
std::vector<VertexId> corresponding_cut(const TapInstance& tap, const GadgetInstance& gi,
                                        const std::vector<int>& tree_cut);

// Equal-cost feasible rewrite of a feasible integral solution in which each
// gadget vertex has one incident edge at floor(k/2) and one at ceil(k/2);
// per tree edge the lowest covering link absorbs the freed value.
std::vector<Rat> rebalance(const TapInstance& tap, const GadgetInstance& gi,
                           const std::vector<Rat>& zprime);

// links in the support of z
std::vector<int> extract_tap_solution(const GadgetInstance& gi, const std::vector<Rat>& z);

struct TapCheck {
    bool feasible = false;
    int uncovered_edge = -1;
};
TapCheck verify_tap(const TapInstance& tap, const std::vector<int>& link_ids);

} // namespace kec
