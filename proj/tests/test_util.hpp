#pragma once

#include "kec/multigraph.hpp"
#include "kec/rational.hpp"

#include <cstdint>
#include <vector>

namespace kectest {

// splitmix64; deterministic across platforms
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return next() % n; }
};

inline kec::Rat random_rat(Rng& rng, int max_num = 12, int max_den = 4) {
    long num = static_cast<long>(rng.below(max_num) + 1);
    long den = static_cast<long>(rng.below(max_den) + 1);
    return kec::Rat(num, den);
}

// connected random multigraph: random spanning tree plus extra edges
inline kec::MultiGraph random_connected_graph(Rng& rng, int n, int extra) {
    kec::MultiGraph g(n, 0);
    for (int v = 1; v < n; ++v)
        g.add_edge(v, static_cast<int>(rng.below(v)));
    for (int i = 0; i < extra; ++i) {
        int u = static_cast<int>(rng.below(n));
        int v = static_cast<int>(rng.below(n));
        if (u == v) continue;
        g.add_edge(u, v);
    }
    return g;
}

// all non-empty S that avoid the root, as vertex lists
inline std::vector<std::vector<kec::VertexId>> all_root_free_cuts(const kec::MultiGraph& g) {
    std::vector<kec::VertexId> others;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (v != g.root()) others.push_back(v);
    std::vector<std::vector<kec::VertexId>> out;
    for (uint64_t mask = 1; mask < (1ULL << others.size()); ++mask) {
        std::vector<kec::VertexId> s;
        for (size_t i = 0; i < others.size(); ++i)
            if (mask & (1ULL << i)) s.push_back(others[i]);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace kectest
