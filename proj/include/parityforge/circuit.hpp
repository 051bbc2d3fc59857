#pragma once

#include <string>
#include <vector>

#include "parityforge/layout.hpp"
#include "parityforge/noise.hpp"

namespace pf {

enum class NcMode { Twirl, ProxyT };

NcMode parse_nc_mode(const std::string& s);

enum class OpKind { ResetPlus, AncillaReset, Cnot, MeasureZAncilla, NonCliffordLayer, FinalMeasureX };

struct CircuitOp {
    OpKind kind;
    std::vector<int> qubits;     // targets; for Cnot: {control, target}
    double noise1 = 0;           // single-qubit X probability (prep/measure)
    double noise2 = 0;           // total CNOT error probability (components IX/XI/XX)
    int check = -1;              // measured check id for MeasureZAncilla
    int round = -1;
};

// Distillation circuit over the layout's data qubits plus one measure
// ancilla per check. Measured checks and observables are fixed at build
// time; the sampler only propagates Pauli frames through it.
struct DistillationCircuit {
    unsigned m = 0;
    unsigned k = 0;
    unsigned n_rounds = 0;
    NcMode nc_mode = NcMode::Twirl;
    NoiseParams noise;

    std::size_t n_qubits = 0;
    std::vector<CircuitOp> ops;

    std::vector<int> check_ancilla;             // check id -> measure ancilla qubit
    std::vector<std::vector<int>> check_support;  // check id -> data qubits (schedule order)
    std::size_t n_checks = 0;

    // observables, all over final-measurement qubits
    std::vector<std::vector<int>> postselect_observables;  // m volume stabilizers
    std::vector<int> logical_observable;                   // label-0 support minus target
    int target_interface = -1;
    std::vector<int> final_measured;  // qubits read out in the final X round

    double twirl_y_probability() const;  // sin^2(pi/2^k) or 1/2 in proxy mode
    double layer_q() const;              // depolarizing amplitude q(k)
    std::vector<int> layer_qubits() const;

    std::size_t detector_count() const { return n_checks * n_rounds; }
};

// Assemble the syndrome-extraction circuit: plus-state reset, ceil(n/2)
// rounds of z-check extraction, the non-Clifford layer on all code qubits
// except the target, floor(n/2) more rounds, final X measurement.
DistillationCircuit build_circuit(const UnfoldedLayout& layout, unsigned k, unsigned n_rounds,
                                  const NoiseParams& noise, NcMode nc_mode);

}  // namespace pf
