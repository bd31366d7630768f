#include "kec/tap.hpp"

#include "kec/error.hpp"

#include <algorithm>
#include <set>

namespace kec {

void TapInstance::validate() const {
    if (n < 1) throw ParseError("tap instance needs at least one vertex");
    if (static_cast<int>(tree_edges.size()) != n - 1)
        throw ParseError("tap tree must have exactly n-1 edges");
    std::vector<int> parent(n, -1), seen(n, 0);
    // union-find-free tree check: build adjacency, BFS from 0
    std::vector<std::vector<int>> adj(n);
    for (auto& [u, v] : tree_edges) {
        if (u < 0 || u >= n || v < 0 || v >= n || u == v) throw ParseError("bad tree edge");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int b : adj[a])
            if (!seen[b]) {
                seen[b] = 1;
                parent[b] = a;
                ++count;
                stack.push_back(b);
            }
    }
    if (count != n) throw ParseError("tap tree is not connected");
    std::set<std::pair<int, int>> uniq;
    for (auto [u, v] : links) {
        if (u < 0 || u >= n || v < 0 || v >= n || u == v) throw ParseError("bad link");
        if (u > v) std::swap(u, v);
        if (!uniq.insert({u, v}).second) throw ParseError("duplicate link");
    }
}

VertexId GadgetInstance::w_vertex(int tree_edge, bool primed) const {
    return tree_vertices + 2 * tree_edge + (primed ? 1 : 0);
}

EdgeId GadgetInstance::gadget_edge(int tree_edge, bool primed, bool second_side) const {
    return 4 * tree_edge + 2 * (primed ? 1 : 0) + (second_side ? 1 : 0);
}

EdgeId GadgetInstance::link_edge(int link) const {
    return 4 * tree_edge_count + link;
}

std::optional<int> GadgetInstance::link_of_edge(EdgeId e) const {
    if (e < 4 * tree_edge_count) return std::nullopt;
    return static_cast<int>(e - 4 * tree_edge_count);
}

GadgetInstance tap_to_kecsm(const TapInstance& tap, long k) {
    tap.validate();
    if (k % 2 == 0) throw ParseError("the gadget is defined for odd k only");
    if (k < 1) throw ParseError("k must be at least 1");
    GadgetInstance gi;
    gi.k = k;
    gi.tree_vertices = tap.n;
    gi.tree_edge_count = static_cast<int>(tap.tree_edges.size());
    gi.graph = MultiGraph(tap.n + 2 * gi.tree_edge_count, 0);
    for (int i = 0; i < gi.tree_edge_count; ++i) {
        auto [u, v] = tap.tree_edges[i];
        for (bool primed : {false, true}) {
            VertexId w = gi.w_vertex(i, primed);
            EdgeId a = gi.graph.add_edge(u, w);
            EdgeId b = gi.graph.add_edge(w, v);
            KEC_CHECK(a == gi.gadget_edge(i, primed, false) && b == gi.gadget_edge(i, primed, true),
                      "gadget edge layout");
        }
    }
    for (int j = 0; j < static_cast<int>(tap.links.size()); ++j) {
        EdgeId e = gi.graph.add_edge(tap.links[j].first, tap.links[j].second);
        KEC_CHECK(e == gi.link_edge(j), "link edge layout");
    }
    gi.cost.assign(gi.graph.edge_slots(), Rat(1));
    return gi;
}

namespace {

// parent array of the tree rooted at 0, plus depth
struct RootedTree {
    std::vector<int> parent, depth, parent_edge;
};

RootedTree root_tree(const TapInstance& tap) {
    RootedTree rt;
    rt.parent.assign(tap.n, -1);
    rt.depth.assign(tap.n, 0);
    rt.parent_edge.assign(tap.n, -1);
    std::vector<std::vector<std::pair<int, int>>> adj(tap.n);
    for (int i = 0; i < static_cast<int>(tap.tree_edges.size()); ++i) {
        auto [u, v] = tap.tree_edges[i];
        adj[u].push_back({v, i});
        adj[v].push_back({u, i});
    }
    std::vector<int> stack{0};
    std::vector<bool> seen(tap.n, false);
    seen[0] = true;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (auto [b, e] : adj[a])
            if (!seen[b]) {
                seen[b] = true;
                rt.parent[b] = a;
                rt.depth[b] = rt.depth[a] + 1;
                rt.parent_edge[b] = e;
                stack.push_back(b);
            }
    }
    return rt;
}

// tree edges on the path between the link's endpoints
std::vector<int> link_path(const RootedTree& rt, int a, int b) {
    std::vector<int> out;
    while (a != b) {
        if (rt.depth[a] < rt.depth[b]) std::swap(a, b);
        out.push_back(rt.parent_edge[a]);
        a = rt.parent[a];
    }
    return out;
}

} // namespace

std::vector<std::vector<int>> cov_table(const TapInstance& tap) {
    RootedTree rt = root_tree(tap);
    std::vector<std::vector<int>> cov(tap.tree_edges.size());
    for (int j = 0; j < static_cast<int>(tap.links.size()); ++j)
        for (int e : link_path(rt, tap.links[j].first, tap.links[j].second))
            cov[e].push_back(j);
    return cov;
}

std::vector<VertexId> corresponding_cut(const TapInstance& tap, const GadgetInstance& gi,
                                        const std::vector<int>& tree_cut) {
    std::set<int> in(tree_cut.begin(), tree_cut.end());
    KEC_CHECK(!in.count(0), "cut side must avoid the root");
    int crossing = 0;
    std::vector<int> internal;
    for (int i = 0; i < static_cast<int>(tap.tree_edges.size()); ++i) {
        auto [u, v] = tap.tree_edges[i];
        int inside = static_cast<int>(in.count(u)) + static_cast<int>(in.count(v));
        if (inside == 1) ++crossing;
        if (inside == 2) internal.push_back(i);
    }
    KEC_CHECK(crossing == 1, "not a tree cut: it must cross exactly one tree edge");
    std::vector<VertexId> out(tree_cut.begin(), tree_cut.end());
    for (int e : internal) {
        out.push_back(gi.w_vertex(e, false));
        out.push_back(gi.w_vertex(e, true));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rat> rebalance(const TapInstance& tap, const GadgetInstance& gi,
                           const std::vector<Rat>& zprime) {
    const MultiGraph& h = gi.graph;
    KEC_CHECK(static_cast<int>(zprime.size()) >= h.edge_slots(), "solution vector too short");
    for (EdgeId e = 0; e < h.edge_slots(); ++e)
        KEC_CHECK(zprime[e].is_integer() && zprime[e].sgn() >= 0,
                  "rebalance needs an integral solution");
    if (h.vertex_count() >= 2)
        KEC_CHECK(global_min_cut(h, zprime).value >= Rat(gi.k),
                  "rebalance needs a feasible solution");

    Rat up = (Rat(gi.k) / Rat(2)).ceil();
    Rat down = (Rat(gi.k) / Rat(2)).floor();
    std::vector<std::vector<int>> cov = cov_table(tap);
    std::vector<Rat> z = zprime;
    for (int i = 0; i < gi.tree_edge_count; ++i) {
        Rat freed(0);
        for (bool primed : {false, true}) {
            EdgeId a = gi.gadget_edge(i, primed, false);
            EdgeId b = gi.gadget_edge(i, primed, true);
            Rat degree = zprime[a] + zprime[b];
            KEC_CHECK(degree >= Rat(gi.k), "gadget vertex below degree k in a feasible solution");
            freed += degree - Rat(gi.k);
            z[a] = up;
            z[b] = down;
        }
        if (freed.sgn() > 0) {
            KEC_CHECK(!cov[i].empty(), "tree edge with surplus but no covering link");
            z[gi.link_edge(cov[i].front())] += freed;
        }
    }
    // equal cost and feasibility are part of the contract
    Rat before(0), after(0);
    for (EdgeId e = 0; e < h.edge_slots(); ++e) {
        before += gi.cost[e] * zprime[e];
        after += gi.cost[e] * z[e];
    }
    KEC_CHECK(before == after, "rebalance changed the cost");
    KEC_CHECK(global_min_cut(h, z).value >= Rat(gi.k), "rebalance broke feasibility");
    return z;
}

std::vector<int> extract_tap_solution(const GadgetInstance& gi, const std::vector<Rat>& z) {
    std::vector<int> links;
    for (EdgeId e = 4 * gi.tree_edge_count; e < gi.graph.edge_slots(); ++e)
        if (z[e].sgn() > 0) links.push_back(*gi.link_of_edge(e));
    if (gi.tree_edge_count > 0)
        KEC_CHECK(!links.empty(),
                  "feasible gadget solution with empty link support breaks the reduction");
    return links;
}

TapCheck verify_tap(const TapInstance& tap, const std::vector<int>& link_ids) {
    RootedTree rt = root_tree(tap);
    std::vector<bool> covered(tap.tree_edges.size(), false);
    for (int j : link_ids) {
        KEC_CHECK(j >= 0 && j < static_cast<int>(tap.links.size()), "link id out of range");
        for (int e : link_path(rt, tap.links[j].first, tap.links[j].second)) covered[e] = true;
    }
    for (int e = 0; e < static_cast<int>(tap.tree_edges.size()); ++e)
        if (!covered[e]) return TapCheck{false, e};
    return TapCheck{true, -1};
}

} // namespace kec
