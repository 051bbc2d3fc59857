#include "parityforge/noise.hpp"

#include <algorithm>

namespace pf {

NoiseRegime parse_regime(const std::string& s) {
    if (s == "constant") return NoiseRegime::Constant;
    if (s == "scaled") return NoiseRegime::Scaled;
    throw std::invalid_argument("unknown noise regime: " + s);
}

std::string regime_name(NoiseRegime r) {
    return r == NoiseRegime::Constant ? "constant" : "scaled";
}

double q_of_k(unsigned k, const NoiseParams& params) {
    const double base = params.p / 3.0;
    if (params.regime == NoiseRegime::Constant) return base;
    return base * std::pow(2.0, 2.0 - static_cast<double>(k));
}

double p_eff(unsigned k, const NoiseParams& params) {
    const double angle = M_PI / std::pow(2.0, static_cast<double>(k));
    const double s = std::sin(angle);
    const double bias_term = params.infinite_bias() ? 0.0 : params.n_rounds / params.eta;
    return params.p * ((2.0 / 3.0) * s * s + bias_term) + 2.0 * q_of_k(k, params);
}

double undetectable_triples(unsigned k) {
    if (k > 30) {
        const double n = std::pow(2.0, k + 2.0) - 1.0;
        return n * (n - 1.0) / 6.0;
    }
    const double n = static_cast<double>((1ull << (k + 2)) - 1);
    return n * (n - 1.0) / 6.0;
}

double p_dist_from_p_eff(unsigned k, double p_eff_value) {
    return undetectable_triples(k) * p_eff_value * p_eff_value * p_eff_value;
}

double p_dist(unsigned k, const NoiseParams& params) {
    return p_dist_from_p_eff(k, p_eff(k, params));
}

GateError p_gate(unsigned k, const NoiseParams& params) {
    if (k < 2) throw std::invalid_argument("p_gate: k >= 2");
    double sum = 0.0, max_pd = 0.0;
    for (unsigned j = 2; j <= k; ++j) {
        const double pd = p_dist(j, params);
        sum += pd / std::pow(2.0, static_cast<double>(k - j));
        max_pd = std::max(max_pd, pd);
    }
    GateError out;
    out.value = sum;
    out.bound = 2.0 * max_pd;
    out.bound_tight = 2.0 * (1.0 - std::pow(2.0, 1.0 - static_cast<double>(k))) * max_pd;
    if (out.value > out.bound)
        throw std::logic_error("p_gate exceeded its bound");
    return out;
}

double teleport_correction_prob(unsigned k, unsigned k_prime) {
    if (k_prime > k) throw std::invalid_argument("teleport_correction_prob: k' <= k");
    return std::pow(2.0, -static_cast<double>(k - k_prime));
}

AcceptanceEstimate acceptance_from_p_eff(std::size_t n_data, double p_eff_value) {
    const double p_fail = static_cast<double>(n_data) * p_eff_value;
    if (p_fail >= 1.0)
        throw OutOfRegime("acceptance_prob: n_data * p_eff >= 1, leading order invalid");
    AcceptanceEstimate est;
    est.p_success = 1.0 - p_fail;
    est.n_attempts = 1.0 / est.p_success;
    return est;
}

AcceptanceEstimate acceptance_prob(unsigned k, std::size_t n_data, const NoiseParams& params) {
    return acceptance_from_p_eff(n_data, p_eff(k, params));
}

}  // namespace pf
