#pragma once

#include "kec/problems.hpp"
#include "kec/tap.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kec {

// Instance text format ('#' starts a comment line):
//   ecss|ecsm|subset n m k [root]
//   terminals t1 t2 ...            (subset only)
//   u v cost                       (m lines; cost integer, decimal or p/q;
//                                   duplicate lines are parallel edges)
Instance parse_instance(std::istream& in);
Instance parse_instance_file(const std::string& path);
void emit_instance(std::ostream& out, const Instance& inst,
                   const std::vector<std::string>& comments = {});

// TAP text format: header "tap n", then n-1 tree edges "u v", then links.
TapInstance parse_tap(std::istream& in);
TapInstance parse_tap_file(const std::string& path);
void emit_tap(std::ostream& out, const TapInstance& tap,
              const std::vector<std::string>& comments = {});

// splitmix64, the documented generator PRNG; seed-deterministic across
// platforms.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next();
    uint64_t below(uint64_t n) { return next() % n; }
};

Instance gen_cycle(int n, long k, ProblemMode mode);
// spanning tree plus extra edges; extra_percent of the remaining pairs get
// an edge, with multiplicity 1..3 and small rational costs
Instance gen_random_multigraph(int n, int extra_percent, long k, ProblemMode mode,
                               uint64_t seed);
// odd-cycle rim with a hub; rim costs 1, spoke costs 0
Instance gen_wheel(int n, long k, ProblemMode mode);
// random tree plus links; every tree edge is covered by at least one link
TapInstance gen_tap_random(int n, uint64_t seed);

struct BruteForceResult {
    Rat cost;
    std::vector<Rat> solution;
};
// Exhaustive optimum for tiny instances: per-edge multiplicities up to k
// (ECSS: 0/1), feasibility by exhaustive cut checks. Throws ParseError when
// the instance is too large (n > 7 or the search space is excessive).
BruteForceResult brute_force_opt(const Instance& inst);

// JSON serialization; rationals are encoded losslessly as "p/q" strings
std::string trace_to_json(const RunTrace& trace);
std::string report_to_json(const Instance& inst, const SolveReport& rep);
std::string verification_to_json(const VerificationReport& rep);

// Reads back what report_to_json wrote (enough of it to re-verify a
// solution from files alone: z, y0, k, mode).
struct StoredSolution {
    std::vector<Rat> z;
    EdgeWeights y0; // may be empty
    long k = 0;
    long rounding_k = 0;
    std::string mode;
};
StoredSolution parse_report_json(std::istream& in);
StoredSolution parse_report_json_file(const std::string& path);

} // namespace kec
