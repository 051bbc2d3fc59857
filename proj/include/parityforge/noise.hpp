#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pf {

struct OutOfRegime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class NoiseRegime { Constant, Scaled };

NoiseRegime parse_regime(const std::string& s);
std::string regime_name(NoiseRegime r);

// Physical noise parameters. eta = p_Z / (p_X + p_Y); use infinity for pure
// bit-flip noise.
struct NoiseParams {
    double p = 1e-3;
    double eta = 1e5;
    unsigned n_rounds = 10;
    NoiseRegime regime = NoiseRegime::Scaled;

    bool infinite_bias() const { return std::isinf(eta); }
};

// Single-qubit Pauli channel (p_I, p_X, p_Y, p_Z).
struct PauliChannel1 {
    double p_i = 1, p_x = 0, p_y = 0, p_z = 0;

    static PauliChannel1 bit_flip(double p) { return {1 - p, p, 0, 0}; }
    static PauliChannel1 depolarizing(double q) { return {1 - 3 * q, q, q, q}; }
    double error_prob() const { return 1 - p_i; }
};

// Two-qubit Pauli channel; index = 4*P1 + P2 with I,X,Y,Z = 0..3.
struct PauliChannel2 {
    std::array<double, 16> p{};

    // infinite-bias instance: p_IX = p_XI = p_XX = p/3
    static PauliChannel2 bit_flip(double pp) {
        PauliChannel2 c;
        c.p[1] = c.p[4] = c.p[5] = pp / 3;
        c.p[0] = 1 - pp;
        return c;
    }
    double error_prob() const { return 1 - p[0]; }
};

// Non-Clifford gate error amplitude q(k): p/3 in the constant regime,
// (p/3) * 2^{2-k} when the noise scales with the rotation angle.
double q_of_k(unsigned k, const NoiseParams& params);

// Probability of a Z-type fault on one qubit before the final X measurement:
// p * [ (2/3) sin^2(pi/2^k) + n_rounds/eta ] + 2 q(k).
double p_eff(unsigned k, const NoiseParams& params);

// Leading-order distillation failure: (1/3) C(2^{k+2}-1, 2) p_eff^3.
double p_dist(unsigned k, const NoiseParams& params);
double p_dist_from_p_eff(unsigned k, double p_eff_value);
double undetectable_triples(unsigned k);  // C(2^{k+2}-1, 2) / 3

struct GateError {
    double value;  // sum over the corrective-gate chain
    double bound;  // 2 * max_j p_dist(j)
    double bound_tight;  // 2 (1 - 2^{1-k}) max_j p_dist(j)
};

// Error of applying Z_k deterministically: sum_{2<=j<=k} p_dist(j) / 2^{k-j}.
GateError p_gate(unsigned k, const NoiseParams& params);

// Probability that the teleportation chain for Z_k needs level k' <= k.
double teleport_correction_prob(unsigned k, unsigned k_prime);

struct AcceptanceEstimate {
    double p_success;
    double n_attempts;
};

// Leading-order acceptance: P = 1 - n_data * p_eff. Throws OutOfRegime when
// the leading-order expression leaves its validity region.
AcceptanceEstimate acceptance_prob(unsigned k, std::size_t n_data, const NoiseParams& params);
AcceptanceEstimate acceptance_from_p_eff(std::size_t n_data, double p_eff_value);

}  // namespace pf
