#pragma once

#include <map>
#include <vector>

#include "parityforge/noise.hpp"

namespace pf {

enum class Connectivity { LongRange, NearestNeighbour };

Connectivity parse_connectivity(const std::string& s);
std::string connectivity_name(Connectivity c);

// Linear fit N_gates(eps) = a * log2(1/eps) + b for the T-count of a
// synthesized sequence.
struct SynthesisFit {
    double a = 3.05;
    double b = -5.97;
    double gates(double eps) const;  // clipped at 0
};

struct CostParams {
    Connectivity connectivity = Connectivity::NearestNeighbour;
    NoiseParams noise;
    SynthesisFit synthesis_fit;
};

// Data qubits of the nearest-neighbour layout: code + target + boundary
// ancilla data. Even k: 2^{k+2} + (k-2) 2^{k/2+1} + 4; odd k sums the two
// per-edge series with exponents h and l separately.
std::size_t n_data(unsigned k);

// Total physical qubits including one measure ancilla per check.
// Long range: 2^{k+3} - k - 3. Nearest neighbour: 2 n_data - k - 3.
std::size_t n_qubits(unsigned k, Connectivity connectivity);

// A level-k factory distills 2^{k-k'} parallel |Z_k'> states.
std::size_t factory_capacity(unsigned k, unsigned k_prime);

struct NativeCost {
    double value;  // sum over the corrective chain
    double bound;  // 2 N_qubits(k) N_attempts(k)
};

// Space-time cost of a deterministic Z_k from direct distillation:
// sum_{2<=j<=k} N_qubits(j) N_attempts(j) / 2^{k-j}.
NativeCost cost_native(unsigned k, const CostParams& params);

struct SynthesizedCost {
    double value;  // N_gates * N_qubits(2) * N_attempts(2)
    double n_gates;
    bool out_of_regime;  // fit clipped at zero gates
};

// Cost of approximating any Z_k with the level-2 set; independent of k.
SynthesizedCost cost_synthesized(double eps, const CostParams& params);

// Break-even level: k_b = 2 + log2(N_gates(eps)).
double break_even(double eps, const CostParams& params);

struct ErrorAndCost {
    double p_logical;  // eps^2 + sum N_k' p_gate(k')
    double r_total;    // sum N_k' R_k'(k')
};

// Combine synthesis error and per-gate counts into the total logical error
// and space-time cost.
ErrorAndCost total_error_and_cost(const std::map<unsigned, double>& gate_counts, double eps,
                                  const CostParams& params);

}  // namespace pf
