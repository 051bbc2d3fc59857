#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parityforge/errors.hpp"
#include "parityforge/noise.hpp"

namespace pf {

using cplx = std::complex<double>;

// 2x2 unitary, row-major. Canonical global phase: first entry above the
// zero threshold is made real-positive.
struct Unitary2 {
    std::array<cplx, 4> u{cplx(1), cplx(0), cplx(0), cplx(1)};

    Unitary2 operator*(const Unitary2& rhs) const;
    Unitary2 dagger() const;
    Unitary2 canonical() const;
    bool is_unitary(double tol = 1e-12) const;

    static Unitary2 identity() { return {}; }
    static Unitary2 rz(double theta);        // diag(e^{-i theta/2}, e^{i theta/2})
    static Unitary2 z_rotation(unsigned k);  // diag(1, e^{i pi / 2^k})
    static Unitary2 haar(uint64_t key);
};

// Trace distance between unitaries: sqrt(1 - |Tr(V U^dag)|^2 / 4).
double trace_distance(const Unitary2& u, const Unitary2& v);

// Gate costs are exact half-integers (T = 2 halves, sqrt(T) = 5 halves).
struct Gate {
    std::string name;
    Unitary2 matrix;
    int cost_halves = 0;
};

struct GateSet {
    unsigned level = 2;  // highest Z_k in the set
    std::vector<Gate> gates;

    static GateSet make(unsigned level);  // "C2", "C3", ...
    static GateSet parse(const std::string& name);
    std::string name() const { return "C" + std::to_string(level); }

    // all non-Clifford cost sums reachable with gates of this set, <= limit
    std::vector<int> achievable_costs(int limit_halves) const;
};

// All distinct unitaries of one exact non-Clifford cost, each with a witness
// word (gate indices, applied left to right).
struct CostBlock {
    int cost_halves = 0;
    std::vector<Unitary2> matrices;
    std::vector<std::vector<uint16_t>> words;
};

struct BlockTable {
    GateSet set;
    int r_trunc_halves = 16;
    std::vector<CostBlock> blocks;  // ascending cost

    const CostBlock* block(int cost_halves) const;
    std::size_t total_matrices() const;
};

// Breadth-first closure of words up to the truncation cost, deduplicated by
// canonical matrix within each cost.
BlockTable enumerate_blocks(const GateSet& set, int r_trunc_halves);

// Minimal family of chain layouts (part costs summing to the total) such
// that every gate multiset of that total cost splits across some member.
std::vector<std::vector<int>> partitionings(int total_halves, int r_trunc_halves,
                                            const GateSet& set);

struct SequenceResult {
    std::vector<std::string> word;       // gate names, left to right
    std::map<unsigned, std::size_t> counts;  // level k' -> number of Z_k' gates
    double cost = 0;                     // exact from the word
    double eps = 1;                      // exact trace distance of the word
    bool found = false;
};

enum class SynthBackend { Exhaustive, ChainSampler };

struct SynthOptions {
    SynthBackend backend = SynthBackend::ChainSampler;
    double budget = 8;          // total non-Clifford cost R
    std::size_t samples = 2000; // per partitioning
    uint64_t seed = 1;
    int r_trunc_halves = 16;
};

// Minimize trace distance to the target within the cost budget. The
// exhaustive backend scans every stored matrix of cost <= R (requires
// R <= r_trunc); the chain sampler covers one chain per partitioning of
// every achievable total <= R and keeps the best drawn word.
SequenceResult synthesize(const Unitary2& target, const BlockTable& table,
                          const SynthOptions& options);

// One sampling pass shared across a whole budget grid: per achievable total
// the chains are sampled once, and entry i is the best word of cost
// <= budgets[i].
std::vector<SequenceResult> synthesize_curve(const Unitary2& target, const BlockTable& table,
                                             const std::vector<double>& budgets,
                                             const SynthOptions& options);

struct FitResult {
    double a = 0;
    double b = 0;
};

// Least-squares fit of cost against log2(1/eps).
FitResult fit_scaling(const std::vector<std::pair<double, double>>& cost_eps_pairs);

struct RatioStats {
    double median = 0;
    double lo68 = 0;
    double hi68 = 0;
    double fraction_with_higher = 0;  // sequences using at least one higher-level gate
};

// kappa = N_{k+1}/N_k statistics over sequences (sqrt(T) to T for C3).
RatioStats gate_ratio(const std::vector<SequenceResult>& results);

// Information-theoretic floor on the gate count: 3/log2(2(k-1)) * log2(1/eps).
double lower_bound_gates(unsigned k, double eps);

}  // namespace pf
