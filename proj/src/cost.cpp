#include "parityforge/cost.hpp"

#include <algorithm>
#include <cmath>

namespace pf {

Connectivity parse_connectivity(const std::string& s) {
    if (s == "nn" || s == "nearest-neighbour" || s == "nearest-neighbor")
        return Connectivity::NearestNeighbour;
    if (s == "lr" || s == "long-range") return Connectivity::LongRange;
    throw std::invalid_argument("unknown connectivity: " + s);
}

std::string connectivity_name(Connectivity c) {
    return c == Connectivity::NearestNeighbour ? "nearest-neighbour" : "long-range";
}

double SynthesisFit::gates(double eps) const {
    return std::max(0.0, a * std::log2(1.0 / eps) + b);
}

namespace {

// Boundary ancilla data per side type with row exponent lambda:
// sum_{s=1}^{lambda-1} (2^{lambda-s} - 1) 2^s = (lambda-2) 2^lambda + 2.
std::size_t side_ancilla_data(unsigned lambda) {
    if (lambda < 2) return 0;
    std::size_t total = 0;
    for (unsigned s = 1; s + 1 <= lambda; ++s)
        total += ((1ull << (lambda - s)) - 1) * (1ull << s);
    return total;
}

}  // namespace

std::size_t n_data(unsigned k) {
    if (k < 2) throw std::invalid_argument("n_data: k >= 2");
    const unsigned m = k + 2;
    const unsigned h = m / 2, l = m - h;
    return (1ull << m) + side_ancilla_data(l) + side_ancilla_data(h);
}

std::size_t n_qubits(unsigned k, Connectivity connectivity) {
    if (k < 2) throw std::invalid_argument("n_qubits: k >= 2");
    if (connectivity == Connectivity::LongRange)
        return (1ull << (k + 3)) - k - 3;
    return 2 * n_data(k) - k - 3;
}

std::size_t factory_capacity(unsigned k, unsigned k_prime) {
    if (k_prime > k) throw std::invalid_argument("factory_capacity: k' <= k");
    return 1ull << (k - k_prime);
}

namespace {

double attempts(unsigned k, const CostParams& params) {
    return acceptance_prob(k, n_data(k), params.noise).n_attempts;
}

}  // namespace

NativeCost cost_native(unsigned k, const CostParams& params) {
    if (k < 2) throw std::invalid_argument("cost_native: k >= 2");
    double sum = 0.0;
    for (unsigned j = 2; j <= k; ++j) {
        const double term = static_cast<double>(n_qubits(j, params.connectivity)) * attempts(j, params);
        sum += term / std::pow(2.0, static_cast<double>(k - j));
    }
    NativeCost out;
    out.value = sum;
    out.bound = 2.0 * static_cast<double>(n_qubits(k, params.connectivity)) * attempts(k, params);
    if (out.value > out.bound)
        throw std::logic_error("cost_native exceeded its bound");
    return out;
}

SynthesizedCost cost_synthesized(double eps, const CostParams& params) {
    SynthesizedCost out;
    out.n_gates = params.synthesis_fit.gates(eps);
    out.out_of_regime = out.n_gates <= 0.0;
    out.value = out.n_gates * static_cast<double>(n_qubits(2, params.connectivity)) * attempts(2, params);
    return out;
}

double break_even(double eps, const CostParams& params) {
    const double gates = params.synthesis_fit.gates(eps);
    if (gates <= 0.0) throw OutOfRegime("break_even: synthesis fit gives no gates at this eps");
    return 2.0 + std::log2(gates);
}

ErrorAndCost total_error_and_cost(const std::map<unsigned, double>& gate_counts, double eps,
                                  const CostParams& params) {
    ErrorAndCost out;
    out.p_logical = eps * eps;
    out.r_total = 0.0;
    for (const auto& [level, count] : gate_counts) {
        if (count == 0.0) continue;
        out.p_logical += count * p_gate(level, params.noise).value;
        out.r_total += count * cost_native(level, params).value;
    }
    return out;
}

}  // namespace pf
