#include "kec/multigraph.hpp"

#include "kec/error.hpp"

#include <algorithm>
#include <queue>

namespace kec {

MultiGraph::MultiGraph(int n, VertexId root) : n_(n), root_(root) {
    KEC_CHECK(n >= 1, "graph needs at least one vertex");
    KEC_CHECK(root >= 0 && root < n, "root out of range");
}

EdgeId MultiGraph::add_edge(VertexId u, VertexId v, OriginalEdgeId orig) {
    KEC_CHECK(u >= 0 && u < n_ && v >= 0 && v < n_, "edge endpoint out of range");
    KEC_CHECK(u != v, "self-loops are not allowed");
    EdgeId id = static_cast<EdgeId>(edges_.size());
    edges_.push_back(Edge{u, v, orig < 0 ? id : orig, true});
    ++live_;
    return id;
}

void MultiGraph::delete_edge(EdgeId e) {
    KEC_CHECK(e >= 0 && e < edge_slots() && edges_[e].alive, "delete of dead or bad edge");
    edges_[e].alive = false;
    --live_;
}

std::vector<EdgeId> MultiGraph::live_edges() const {
    std::vector<EdgeId> out;
    out.reserve(live_);
    for (EdgeId e = 0; e < edge_slots(); ++e)
        if (edges_[e].alive) out.push_back(e);
    return out;
}

std::vector<EdgeId> MultiGraph::incident(VertexId v) const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < edge_slots(); ++e)
        if (edges_[e].alive && (edges_[e].u == v || edges_[e].v == v)) out.push_back(e);
    return out;
}

std::vector<EdgeId> MultiGraph::parallel_class(VertexId u, VertexId v) const {
    KEC_CHECK(u != v, "parallel_class needs distinct vertices");
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < edge_slots(); ++e) {
        if (!edges_[e].alive) continue;
        if ((edges_[e].u == u && edges_[e].v == v) || (edges_[e].u == v && edges_[e].v == u))
            out.push_back(e);
    }
    return out;
}

ContractResult contract(const MultiGraph& g, const std::vector<VertexId>& s) {
    KEC_CHECK(s.size() >= 2, "contract needs |s| >= 2");
    std::vector<bool> in_s(g.vertex_count(), false);
    for (VertexId v : s) {
        KEC_CHECK(v >= 0 && v < g.vertex_count(), "contract vertex out of range");
        KEC_CHECK(!in_s[v], "contract set has repeated vertex");
        KEC_CHECK(v != g.root(), "contract set may not contain the root");
        in_s[v] = true;
    }
    VertexId lowest = *std::min_element(s.begin(), s.end());

    ContractResult res;
    res.vertex_map.assign(g.vertex_count(), -1);
    int next = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (v == lowest) {
            res.merged = next;
            res.vertex_map[v] = next++;
        } else if (in_s[v]) {
            continue; // mapped below, once merged id is known
        } else {
            res.vertex_map[v] = next++;
        }
    }
    for (VertexId v : s) res.vertex_map[v] = res.merged;

    res.graph = MultiGraph(g.vertex_count() - static_cast<int>(s.size()) + 1,
                           res.vertex_map[g.root()]);
    // Keep the edge array aligned slot by slot so EdgeIds are preserved.
    for (EdgeId e = 0; e < g.edge_slots(); ++e) {
        const Edge& ed = g.edge(e);
        if (!ed.alive) {
            res.graph.edges_.push_back(Edge{});
            continue;
        }
        if (in_s[ed.u] && in_s[ed.v]) {
            res.removed.push_back(e);
            res.graph.edges_.push_back(Edge{});
            continue;
        }
        res.graph.edges_.push_back(
            Edge{res.vertex_map[ed.u], res.vertex_map[ed.v], ed.orig, true});
        ++res.graph.live_;
    }
    return res;
}

std::vector<EdgeId> cut_edges(const MultiGraph& g, const std::vector<VertexId>& s) {
    std::vector<bool> in_s(g.vertex_count(), false);
    for (VertexId v : s) in_s[v] = true;
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < g.edge_slots(); ++e) {
        if (!g.alive(e)) continue;
        if (in_s[g.edge(e).u] != in_s[g.edge(e).v]) out.push_back(e);
    }
    return out;
}

Rat cut_weight(const MultiGraph& g, const EdgeWeights& w, const std::vector<VertexId>& s) {
    KEC_CHECK(!s.empty() && s.size() < static_cast<size_t>(g.vertex_count()),
              "cut must be a non-empty proper vertex subset");
    Rat total(0);
    for (EdgeId e : cut_edges(g, s)) total += w[e];
    return total;
}

namespace {

struct Arc {
    int to;
    Rat cap;  // residual capacity
    int rev;  // index of reverse arc in adj[to]
};

struct FlowNet {
    std::vector<std::vector<Arc>> adj;
    explicit FlowNet(int n) : adj(n) {}
    void add(int a, int b, const Rat& cab, const Rat& cba) {
        adj[a].push_back(Arc{b, cab, static_cast<int>(adj[b].size())});
        adj[b].push_back(Arc{a, cba, static_cast<int>(adj[a].size()) - 1});
    }
};

} // namespace

MinCut max_flow_min_cut(const MultiGraph& g, const EdgeWeights& cap,
                        const std::vector<VertexId>& sources,
                        const std::vector<VertexId>& sinks) {
    KEC_CHECK(!sources.empty() && !sinks.empty(), "flow needs non-empty terminals");
    std::vector<int> role(g.vertex_count(), 0);
    for (VertexId v : sources) role[v] = 1;
    for (VertexId v : sinks) {
        KEC_CHECK(role[v] != 1, "flow terminals must be disjoint");
        role[v] = 2;
    }

    const int n = g.vertex_count();
    const int S = n, T = n + 1;
    FlowNet net(n + 2);
    Rat inf(1); // strictly larger than any real cut: total capacity + 1
    for (EdgeId e = 0; e < g.edge_slots(); ++e) {
        if (!g.alive(e)) continue;
        KEC_CHECK(cap[e].sgn() >= 0, "negative capacity");
        inf += cap[e];
        // undirected edge: both directions at full capacity
        net.add(g.edge(e).u, g.edge(e).v, cap[e], cap[e]);
    }
    for (VertexId v : sources) net.add(S, v, inf, Rat(0));
    for (VertexId v : sinks) net.add(v, T, inf, Rat(0));

    Rat flow(0);
    while (true) {
        // BFS for a shortest augmenting path
        std::vector<std::pair<int, int>> par(net.adj.size(), {-1, -1});
        std::queue<int> q;
        q.push(S);
        par[S] = {S, 0};
        while (!q.empty() && par[T].first < 0) {
            int a = q.front();
            q.pop();
            for (int i = 0; i < static_cast<int>(net.adj[a].size()); ++i) {
                const Arc& arc = net.adj[a][i];
                if (arc.cap.sgn() <= 0 || par[arc.to].first >= 0) continue;
                par[arc.to] = {a, i};
                q.push(arc.to);
            }
        }
        if (par[T].first < 0) break;
        Rat aug = inf;
        for (int v = T; v != S;) {
            auto [pa, pi] = par[v];
            if (net.adj[pa][pi].cap < aug) aug = net.adj[pa][pi].cap;
            v = pa;
        }
        for (int v = T; v != S;) {
            auto [pa, pi] = par[v];
            Arc& fwd = net.adj[pa][pi];
            fwd.cap -= aug;
            net.adj[fwd.to][fwd.rev].cap += aug;
            v = pa;
        }
        flow += aug;
    }

    // residual-reachable set from the sources = inclusion-minimal min cut
    std::vector<bool> seen(net.adj.size(), false);
    std::queue<int> q;
    q.push(S);
    seen[S] = true;
    while (!q.empty()) {
        int a = q.front();
        q.pop();
        for (const Arc& arc : net.adj[a])
            if (arc.cap.sgn() > 0 && !seen[arc.to]) {
                seen[arc.to] = true;
                q.push(arc.to);
            }
    }
    MinCut out;
    out.value = flow;
    for (VertexId v = 0; v < n; ++v)
        if (seen[v]) out.side.push_back(v);
    KEC_CHECK(cut_weight(g, cap, out.side) == flow, "max-flow/min-cut mismatch");
    return out;
}

MinCut global_min_cut(const MultiGraph& g, const EdgeWeights& cap) {
    KEC_CHECK(g.vertex_count() >= 2, "global min cut needs |V| >= 2");
    MinCut best;
    bool have = false;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (v == g.root()) continue;
        MinCut c = max_flow_min_cut(g, cap, {v}, {g.root()});
        if (!have || c.value < best.value) {
            best = std::move(c);
            have = true;
        }
    }
    return best;
}

} // namespace kec
