#pragma once

#include <cstdint>
#include <vector>

#include "parityforge/circuit.hpp"

namespace pf {

struct ShotOutcome {
    bool accepted = false;
    bool logical_flip = false;  // meaningful only when accepted
};

struct SampleTallies {
    uint64_t shots = 0;
    uint64_t accepted = 0;
    uint64_t flips = 0;  // logical flips among accepted shots

    SampleTallies& operator+=(const SampleTallies& o) {
        shots += o.shots;
        accepted += o.accepted;
        flips += o.flips;
        return *this;
    }
};

// Monte-Carlo frame sampling; identical (seed, shots) give identical tallies
// for any worker count.
SampleTallies sample(const DistillationCircuit& circuit, uint64_t shots, uint64_t seed);

struct EstimateResult {
    uint64_t shots = 0;
    uint64_t accepted = 0;
    uint64_t flips = 0;
    double p_accept = 0;
    double p_logical = 0;
    double ci_low = 0;   // Wilson 95% interval on p_logical
    double ci_high = 0;
};

EstimateResult estimate(const DistillationCircuit& circuit, uint64_t shots, uint64_t seed);

enum class Pauli : uint8_t { X = 1, Z = 2, Y = 3 };

// Deterministic single-shot run with Pauli injections; noise channels are
// ignored (the twirl consumes randomness only where a frame X is present, so
// injected X frames twirl with the given rng stream).
struct Injection {
    std::size_t op_index;  // applied just before this op
    int qubit;
    Pauli pauli;
};

struct SingleShotResult {
    ShotOutcome outcome;
    std::vector<uint8_t> detectors;       // n_checks * n_rounds flip bits
    std::vector<uint8_t> final_x_frame;   // per qubit id: X frame after final measurement
    std::vector<uint8_t> layer_x_frame;   // X frame entering the non-Clifford layer
    std::vector<uint8_t> volume_flips;    // m bits
};

SingleShotResult run_with_injection(const DistillationCircuit& circuit,
                                    const std::vector<Injection>& injections,
                                    uint64_t twirl_seed = 0, bool force_twirl = false);

// index of the final measurement op (injection point for end-of-circuit errors)
std::size_t final_measure_index(const DistillationCircuit& circuit);

// Lower-bound rescaling of a proxy-mode logical error rate: invert the
// leading-order failure law, strip the angle-independent residual, shrink it
// by 2^{k-2} and re-apply.
double rescale_lower_bound(double p_measured, unsigned k, double p);

struct WilsonInterval {
    double low, high;
};
WilsonInterval wilson95(uint64_t successes, uint64_t trials);

}  // namespace pf
