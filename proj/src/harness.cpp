#include "kec/harness.hpp"

#include "kec/error.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace kec {

namespace {

// next non-comment, non-blank line
bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') continue;
        return true;
    }
    return false;
}

std::string mode_name(ProblemMode m) {
    switch (m) {
        case ProblemMode::Ecss: return "ecss";
        case ProblemMode::Ecsm: return "ecsm";
        case ProblemMode::Subset: return "subset";
    }
    return "?";
}

ProblemMode mode_from(const std::string& s) {
    if (s == "ecss") return ProblemMode::Ecss;
    if (s == "ecsm") return ProblemMode::Ecsm;
    if (s == "subset") return ProblemMode::Subset;
    throw ParseError("unknown mode '" + s + "'");
}

} // namespace

Instance parse_instance(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw ParseError("empty instance file");
    std::istringstream hs(line);
    std::string mode_s;
    long n = -1, m = -1, k = -1, root = 0;
    hs >> mode_s >> n >> m >> k;
    if (hs.fail()) throw ParseError("bad header: '" + line + "'");
    hs >> root; // optional
    Instance inst;
    inst.mode = mode_from(mode_s);
    if (n < 1 || m < 0 || k < 1) throw ParseError("bad header values");
    if (root < 0 || root >= n) throw ParseError("root out of range");
    inst.graph = MultiGraph(static_cast<int>(n), static_cast<VertexId>(root));
    inst.k = k;
    if (inst.mode == ProblemMode::Subset) {
        if (!next_line(in, line)) throw ParseError("subset instance needs a terminals line");
        std::istringstream ts(line);
        std::string tag;
        ts >> tag;
        if (tag != "terminals") throw ParseError("expected 'terminals ...'");
        long t;
        while (ts >> t) {
            if (t < 0 || t >= n) throw ParseError("terminal out of range");
            inst.terminals.push_back(static_cast<VertexId>(t));
        }
        if (inst.terminals.size() < 2) throw ParseError("need at least two terminals");
    }
    for (long i = 0; i < m; ++i) {
        if (!next_line(in, line)) throw ParseError("missing edge line");
        std::istringstream es(line);
        long u, v;
        std::string cost_s;
        es >> u >> v >> cost_s;
        if (es.fail()) throw ParseError("bad edge line: '" + line + "'");
        if (u < 0 || u >= n || v < 0 || v >= n || u == v)
            throw ParseError("bad edge endpoints: '" + line + "'");
        Rat c = Rat::parse(cost_s);
        if (c.sgn() < 0) throw ParseError("negative cost: '" + line + "'");
        inst.graph.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
        inst.cost.push_back(c);
    }
    if (next_line(in, line)) throw ParseError("trailing content: '" + line + "'");
    return inst;
}

Instance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_instance(in);
}

void emit_instance(std::ostream& out, const Instance& inst,
                   const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << "\n";
    out << mode_name(inst.mode) << " " << inst.graph.vertex_count() << " "
        << inst.graph.live_edge_count() << " " << inst.k;
    if (inst.graph.root() != 0) out << " " << inst.graph.root();
    out << "\n";
    if (inst.mode == ProblemMode::Subset) {
        out << "terminals";
        for (VertexId t : inst.terminals) out << " " << t;
        out << "\n";
    }
    for (EdgeId e : inst.graph.live_edges())
        out << inst.graph.edge(e).u << " " << inst.graph.edge(e).v << " " << inst.cost[e].str()
            << "\n";
}

TapInstance parse_tap(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw ParseError("empty tap file");
    std::istringstream hs(line);
    std::string tag;
    long n = -1;
    hs >> tag >> n;
    if (tag != "tap" || n < 1) throw ParseError("bad tap header: '" + line + "'");
    TapInstance tap;
    tap.n = static_cast<int>(n);
    for (long i = 0; i + 1 < n; ++i) {
        if (!next_line(in, line)) throw ParseError("missing tree edge line");
        std::istringstream es(line);
        long u, v;
        es >> u >> v;
        if (es.fail()) throw ParseError("bad tree edge: '" + line + "'");
        tap.tree_edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    }
    while (next_line(in, line)) {
        std::istringstream es(line);
        long u, v;
        es >> u >> v;
        if (es.fail()) throw ParseError("bad link line: '" + line + "'");
        tap.links.push_back({static_cast<int>(u), static_cast<int>(v)});
    }
    tap.validate();
    return tap;
}

TapInstance parse_tap_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_tap(in);
}

void emit_tap(std::ostream& out, const TapInstance& tap,
              const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << "\n";
    out << "tap " << tap.n << "\n";
    for (auto& [u, v] : tap.tree_edges) out << u << " " << v << "\n";
    for (auto& [u, v] : tap.links) out << u << " " << v << "\n";
}

uint64_t SplitMix64::next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Instance gen_cycle(int n, long k, ProblemMode mode) {
    if (n < 3) throw ParseError("cycle needs n >= 3");
    Instance inst;
    inst.mode = mode;
    inst.k = k;
    inst.graph = MultiGraph(n, 0);
    for (int i = 0; i < n; ++i) {
        inst.graph.add_edge(i, (i + 1) % n);
        inst.cost.push_back(Rat(1));
    }
    return inst;
}

Instance gen_random_multigraph(int n, int extra_percent, long k, ProblemMode mode,
                               uint64_t seed) {
    if (n < 2) throw ParseError("random multigraph needs n >= 2");
    SplitMix64 rng(seed);
    Instance inst;
    inst.mode = mode;
    inst.k = k;
    inst.graph = MultiGraph(n, 0);
    auto add = [&](int u, int v) {
        int mult = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < mult; ++i) {
            inst.graph.add_edge(u, v);
            long num = 1 + static_cast<long>(rng.below(9));
            long den = 1 + static_cast<long>(rng.below(3));
            inst.cost.push_back(Rat(num, den));
        }
    };
    for (int v = 1; v < n; ++v) add(v, static_cast<int>(rng.below(v)));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.below(100) < static_cast<uint64_t>(extra_percent)) add(u, v);
    return inst;
}

Instance gen_wheel(int n, long k, ProblemMode mode) {
    if (n < 4) throw ParseError("wheel needs n >= 4");
    Instance inst;
    inst.mode = mode;
    inst.k = k;
    int rim = n - 1;
    inst.graph = MultiGraph(n, n - 1); // hub is the root
    for (int i = 0; i < rim; ++i) {
        inst.graph.add_edge(i, (i + 1) % rim);
        inst.cost.push_back(Rat(1));
    }
    for (int i = 0; i < rim; ++i) {
        inst.graph.add_edge(i, n - 1);
        inst.cost.push_back(Rat(0));
    }
    return inst;
}

TapInstance gen_tap_random(int n, uint64_t seed) {
    if (n < 2) throw ParseError("tap needs n >= 2");
    SplitMix64 rng(seed);
    TapInstance tap;
    tap.n = n;
    for (int v = 1; v < n; ++v)
        tap.tree_edges.push_back({v, static_cast<int>(rng.below(v))});
    std::set<std::pair<int, int>> used;
    int want = n; // a few random links
    for (int i = 0; i < want; ++i) {
        int u = static_cast<int>(rng.below(n));
        int v = static_cast<int>(rng.below(n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (used.insert({u, v}).second) tap.links.push_back({u, v});
    }
    // top up coverage: a parallel link for every uncovered tree edge
    while (true) {
        std::vector<int> all(tap.links.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        TapCheck chk = verify_tap(tap, all);
        if (chk.feasible) break;
        auto [u, v] = tap.tree_edges[chk.uncovered_edge];
        if (u > v) std::swap(u, v);
        if (used.insert({u, v}).second) tap.links.push_back({u, v});
    }
    tap.validate();
    return tap;
}

BruteForceResult brute_force_opt(const Instance& inst) {
    const MultiGraph& g = inst.graph;
    if (g.vertex_count() > 7) throw ParseError("brute force limited to n <= 7");
    const int m = g.live_edge_count();
    long cap = inst.mode == ProblemMode::Ecss ? 1 : inst.k;
    double space = 1;
    for (int i = 0; i < m; ++i) space *= static_cast<double>(cap + 1);
    if (space > 5e6) throw ParseError("brute force search space too large");

    std::vector<EdgeId> edges = g.live_edges();
    std::vector<std::vector<VertexId>> cuts;
    {
        std::vector<VertexId> others;
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (v != g.root()) others.push_back(v);
        for (uint64_t mask = 1; mask < (1ULL << others.size()); ++mask) {
            std::vector<VertexId> s;
            for (size_t i = 0; i < others.size(); ++i)
                if (mask & (1ULL << i)) s.push_back(others[i]);
            if (inst.mode == ProblemMode::Subset) {
                bool has = false, misses = false;
                for (VertexId t : inst.terminals) {
                    bool in = std::find(s.begin(), s.end(), t) != s.end();
                    (in ? has : misses) = true;
                }
                if (!has || !misses) continue;
            }
            cuts.push_back(std::move(s));
        }
    }
    std::vector<std::vector<int>> cut_edge_lists(cuts.size());
    for (size_t c = 0; c < cuts.size(); ++c) {
        for (int j = 0; j < m; ++j) {
            std::set<VertexId> in(cuts[c].begin(), cuts[c].end());
            const Edge& ed = g.edge(edges[j]);
            if (in.count(ed.u) != in.count(ed.v)) cut_edge_lists[c].push_back(j);
        }
    }

    BruteForceResult best;
    bool have = false;
    std::vector<long> mult(m, 0);
    Rat running(0);
    auto feasible = [&]() {
        for (size_t c = 0; c < cuts.size(); ++c) {
            long total = 0;
            for (int j : cut_edge_lists[c]) total += mult[j];
            if (total < inst.k) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int j) -> void {
        if (have && running >= best.cost) return; // costs are nonnegative
        if (j == m) {
            if (!feasible()) return;
            if (!have || running < best.cost) {
                have = true;
                best.cost = running;
                best.solution.assign(g.edge_slots(), Rat(0));
                for (int i = 0; i < m; ++i) best.solution[edges[i]] = Rat(mult[i]);
            }
            return;
        }
        for (long v = 0; v <= cap; ++v) {
            mult[j] = v;
            Rat add = inst.cost[edges[j]] * Rat(v);
            running += add;
            self(self, j + 1);
            running -= add;
        }
        mult[j] = 0;
    };
    rec(rec, 0);
    if (!have) throw InfeasibleError("no feasible solution within the multiplicity cap");
    return best;
}

namespace {

using nlohmann::json;

json rat_json(const Rat& r) { return r.str(); }

json trace_json_obj(const RunTrace& t) {
    json ev = json::array();
    for (const TraceEvent& e : t.events) {
        json o;
        switch (e.kind) {
            case TraceEvent::Kind::Solve:
                o["type"] = "solve";
                o["objective"] = rat_json(e.objective);
                o["rounds"] = e.rounds;
                break;
            case TraceEvent::Kind::Freeze:
                o["type"] = "freeze";
                o["edge"] = e.edge;
                o["value"] = rat_json(e.value);
                break;
            case TraceEvent::Kind::Delete:
                o["type"] = "delete";
                o["edge"] = e.edge;
                break;
            case TraceEvent::Kind::Augment:
                o["type"] = "augment";
                o["u"] = e.u;
                o["v"] = e.v;
                o["edge"] = e.edge;
                break;
            case TraceEvent::Kind::Relax:
                o["type"] = "relax";
                o["set"] = e.set;
                o["original_set"] = e.original_set;
                break;
            case TraceEvent::Kind::Contract:
                o["type"] = "contract";
                o["set"] = e.set;
                o["original_set"] = e.original_set;
                break;
        }
        ev.push_back(std::move(o));
    }
    return json{{"k_input", t.k_input},
                {"k_internal", t.k_internal},
                {"iterations", t.iterations},
                {"input_vertices", t.input_vertices},
                {"events", std::move(ev)},
                {"wall_ms", t.wall_ms}};
}

} // namespace

std::string trace_to_json(const RunTrace& trace) { return trace_json_obj(trace).dump(2); }

std::string report_to_json(const Instance& inst, const SolveReport& rep) {
    json o;
    o["mode"] = mode_name(rep.mode);
    o["k"] = rep.k;
    o["rounding_k"] = rep.trace.k_input;
    json sol = json::array();
    for (EdgeId e : inst.graph.live_edges())
        sol.push_back(json{{"edge", e}, {"multiplicity", rat_json(rep.solution.z[e])}});
    o["solution"] = std::move(sol);
    o["cost"] = rat_json(rep.solution.cost);
    o["lp_value_k"] = rat_json(rep.lp_value_k);
    o["lp_value_k_plus_10"] = rat_json(rep.lp_value_k10);
    o["achieved_min_cut"] = rat_json(rep.achieved_min_cut);
    // exact certified ratio bounds
    o["cost_within_lp_k10"] = rep.solution.cost <= rep.lp_value_k10;
    if (rep.lp_value_k.sgn() > 0) {
        o["ratio_bound"] = rat_json(rep.lp_value_k * Rat(rep.k + 10) / Rat(rep.k));
        o["cost_within_ratio_bound"] =
            rep.solution.cost * Rat(rep.k) <= rep.lp_value_k * Rat(rep.k + 10);
    }
    if (!rep.y0.empty()) {
        json y0 = json::array();
        for (EdgeId e : inst.graph.live_edges()) y0.push_back(rat_json(rep.y0[e]));
        o["y0"] = std::move(y0);
    }
    o["trace"] = trace_json_obj(rep.trace);
    return o.dump(2);
}

std::string verification_to_json(const VerificationReport& rep) {
    json checks = json::array();
    for (const CheckItem& c : rep.checks)
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return json{{"all_pass", rep.all_pass}, {"checks", std::move(checks)}}.dump(2);
}

StoredSolution parse_report_json(std::istream& in) {
    json o;
    try {
        in >> o;
    } catch (const std::exception& ex) {
        throw ParseError(std::string("bad report json: ") + ex.what());
    }
    StoredSolution s;
    try {
        s.mode = o.at("mode").get<std::string>();
        s.k = o.at("k").get<long>();
        s.rounding_k = o.value("rounding_k", s.k + 10);
        for (const auto& item : o.at("solution")) {
            EdgeId e = item.at("edge").get<EdgeId>();
            if (static_cast<int>(s.z.size()) <= e) s.z.resize(e + 1, Rat(0));
            s.z[e] = Rat::parse(item.at("multiplicity").get<std::string>());
        }
        if (o.contains("y0"))
            for (const auto& item : o.at("y0")) s.y0.push_back(Rat::parse(item.get<std::string>()));
    } catch (const json::exception& ex) {
        throw ParseError(std::string("bad report json: ") + ex.what());
    }
    return s;
}

StoredSolution parse_report_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_report_json(in);
}

} // namespace kec
