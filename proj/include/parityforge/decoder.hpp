#pragma once

#include <cstdint>
#include <vector>

#include "parityforge/circuit.hpp"

namespace pf {

// Decoder over the face-syndrome detector record. Faults are the X-type
// error mechanisms of the circuit (preparation, CNOT components, measurement
// flips, layer noise), collapsed by identical (detector signature, final
// X-frame effect). The correction addresses the X sector only; the volume
// post-selection never depends on it.
class FaceDecoder {
  public:
    enum class Backend { Lookup, BeliefPropagation };

    // Full: all detectors, corrections on the final data frame.
    // PreLayer: detectors of the rounds before the non-Clifford layer,
    // corrections on the frame entering the layer (used for the mid-circuit
    // correction that keeps residual X errors out of the twirl).
    enum class Stage { Full, PreLayer };

    FaceDecoder(const DistillationCircuit& circuit, Backend backend, Stage stage = Stage::Full);
    static Backend default_backend(unsigned m) {
        return m <= 5 ? Backend::Lookup : Backend::BeliefPropagation;
    }

    struct Decoded {
        std::vector<uint8_t> x_correction;  // one flag per qubit id
        bool converged = true;
    };

    // detectors: n_checks * n_rounds flip bits. Never throws on strange
    // syndromes; falls back to the most likely single fault.
    Decoded decode(const std::vector<uint8_t>& detectors) const;

    std::size_t fault_count() const { return prob_.size(); }

  private:
    Decoded decode_lookup(const std::vector<uint64_t>& syndrome) const;
    Decoded decode_bp(const std::vector<uint64_t>& syndrome) const;
    void greedy_peel(std::vector<uint64_t>& residual, std::vector<uint8_t>& correction,
                     bool& converged) const;
    void apply_effect(std::size_t fault, std::vector<uint8_t>& correction) const;

    std::size_t n_detectors_ = 0;
    std::size_t n_qubits_ = 0;
    std::size_t sig_words_ = 0;
    Backend backend_;
    Stage stage_;

    std::vector<std::vector<uint64_t>> signature_;  // per fault
    std::vector<std::vector<int>> effect_;          // qubits flipped at the end
    std::vector<double> prob_;
    std::vector<std::vector<int>> fault_checks_;    // fault -> detector indices
    std::vector<std::vector<int>> check_faults_;    // detector -> fault indices
};

}  // namespace pf
