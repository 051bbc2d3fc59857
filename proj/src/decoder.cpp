#include "parityforge/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "parityforge/sampler.hpp"

namespace pf {

namespace {

std::vector<uint64_t> pack_bits(const std::vector<uint8_t>& bits) {
    std::vector<uint64_t> words((bits.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) words[i / 64] |= 1ull << (i % 64);
    return words;
}

std::size_t weight(const std::vector<uint64_t>& words) {
    std::size_t w = 0;
    for (uint64_t x : words) w += std::popcount(x);
    return w;
}

}  // namespace

FaceDecoder::FaceDecoder(const DistillationCircuit& circuit, Backend backend, Stage stage)
    : n_qubits_(circuit.n_qubits), backend_(backend), stage_(stage) {
    std::size_t layer_index = circuit.ops.size();
    for (std::size_t i = 0; i < circuit.ops.size(); ++i)
        if (circuit.ops[i].kind == OpKind::NonCliffordLayer) layer_index = i;
    const unsigned pre_rounds = (circuit.n_rounds + 1) / 2;
    n_detectors_ = stage == Stage::Full ? circuit.detector_count()
                                        : pre_rounds * circuit.n_checks;
    sig_words_ = (n_detectors_ + 63) / 64;

    struct Site {
        std::size_t op_index;
        std::vector<std::pair<int, Pauli>> paulis;
        double prob;
    };
    std::vector<Site> sites;
    const double p = circuit.noise.p;
    const double q = circuit.layer_q();
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        if (stage == Stage::PreLayer && i >= layer_index) break;
        const auto& op = circuit.ops[i];
        switch (op.kind) {
            case OpKind::ResetPlus:
                for (int qb : op.qubits) sites.push_back({i + 1, {{qb, Pauli::X}}, p});
                break;
            case OpKind::AncillaReset:
                sites.push_back({i + 1, {{op.qubits[0], Pauli::X}}, p});
                break;
            case OpKind::Cnot:
                sites.push_back({i + 1, {{op.qubits[0], Pauli::X}}, p / 3});
                sites.push_back({i + 1, {{op.qubits[1], Pauli::X}}, p / 3});
                sites.push_back({i + 1, {{op.qubits[0], Pauli::X}, {op.qubits[1], Pauli::X}}, p / 3});
                break;
            case OpKind::MeasureZAncilla:
                sites.push_back({i, {{op.qubits[0], Pauli::X}}, p});
                break;
            case OpKind::NonCliffordLayer:
                for (int qb : op.qubits) sites.push_back({i + 1, {{qb, Pauli::X}}, 2 * q});
                break;
            case OpKind::FinalMeasureX:
                break;
        }
    }

    std::map<std::pair<std::vector<uint64_t>, std::vector<int>>, std::size_t> dedup;
    for (const auto& site : sites) {
        std::vector<Injection> inj;
        for (const auto& [qb, pl] : site.paulis) inj.push_back({site.op_index, qb, pl});
        const SingleShotResult res = run_with_injection(circuit, inj);
        std::vector<uint8_t> window(res.detectors.begin(), res.detectors.begin() + n_detectors_);
        const std::vector<uint64_t> sig = pack_bits(window);
        if (weight(sig) == 0) continue;  // undetectable, nothing to learn
        const auto& frame = stage == Stage::Full ? res.final_x_frame : res.layer_x_frame;
        std::vector<int> effect;
        for (std::size_t qb = 0; qb < frame.size(); ++qb)
            if (frame[qb]) effect.push_back(static_cast<int>(qb));

        const auto key = std::make_pair(sig, effect);
        auto it = dedup.find(key);
        if (it == dedup.end()) {
            dedup[key] = signature_.size();
            signature_.push_back(sig);
            effect_.push_back(effect);
            prob_.push_back(site.prob);
        } else {
            prob_[it->second] += site.prob;
        }
    }

    fault_checks_.resize(signature_.size());
    check_faults_.resize(n_detectors_);
    for (std::size_t f = 0; f < signature_.size(); ++f) {
        for (std::size_t d = 0; d < n_detectors_; ++d) {
            if ((signature_[f][d / 64] >> (d % 64)) & 1ull) {
                fault_checks_[f].push_back(static_cast<int>(d));
                check_faults_[d].push_back(static_cast<int>(f));
            }
        }
    }
}

void FaceDecoder::apply_effect(std::size_t fault, std::vector<uint8_t>& correction) const {
    for (int qb : effect_[fault]) correction[static_cast<std::size_t>(qb)] ^= 1;
}

void FaceDecoder::greedy_peel(std::vector<uint64_t>& residual, std::vector<uint8_t>& correction,
                              bool& converged) const {
    // most-likely-single-fault peeling: repeatedly remove the fault whose
    // signature shrinks the residual the most
    while (weight(residual) > 0) {
        std::size_t best = signature_.size();
        long best_gain = 0;
        for (std::size_t f = 0; f < signature_.size(); ++f) {
            long gain = 0;
            for (std::size_t w = 0; w < sig_words_; ++w) {
                gain += std::popcount(residual[w] & signature_[f][w]);
                gain -= std::popcount(~residual[w] & signature_[f][w]);
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = f;
            }
        }
        if (best == signature_.size()) {
            converged = false;
            return;  // leftover syndrome unexplained; never abort the shot
        }
        for (std::size_t w = 0; w < sig_words_; ++w) residual[w] ^= signature_[best][w];
        apply_effect(best, correction);
    }
}

FaceDecoder::Decoded FaceDecoder::decode_lookup(const std::vector<uint64_t>& syndrome) const {
    Decoded out;
    out.x_correction.assign(n_qubits_, 0);
    if (weight(syndrome) == 0) return out;

    for (std::size_t f = 0; f < signature_.size(); ++f) {
        if (signature_[f] == syndrome) {
            apply_effect(f, out.x_correction);
            return out;
        }
    }
    std::vector<uint64_t> residual = syndrome;
    greedy_peel(residual, out.x_correction, out.converged);
    return out;
}

FaceDecoder::Decoded FaceDecoder::decode_bp(const std::vector<uint64_t>& syndrome) const {
    Decoded out;
    out.x_correction.assign(n_qubits_, 0);
    if (weight(syndrome) == 0) return out;

    const std::size_t n_faults = signature_.size();
    std::vector<double> prior(n_faults);
    for (std::size_t f = 0; f < n_faults; ++f) {
        const double p = std::clamp(prob_[f], 1e-12, 0.4999);
        prior[f] = std::log((1 - p) / p);
    }

    // min-sum with message maps keyed by (fault, position in its check list)
    std::vector<std::vector<double>> var_to_check(n_faults), check_to_var(n_faults);
    for (std::size_t f = 0; f < n_faults; ++f) {
        var_to_check[f].assign(fault_checks_[f].size(), prior[f]);
        check_to_var[f].assign(fault_checks_[f].size(), 0.0);
    }
    auto syndrome_bit = [&](int d) {
        return (syndrome[static_cast<std::size_t>(d) / 64] >> (d % 64)) & 1ull;
    };

    std::vector<double> posterior(n_faults);
    std::vector<uint8_t> hard(n_faults, 0);
    bool matched = false;
    for (int iter = 0; iter < 60 && !matched; ++iter) {
        // check update
        for (std::size_t d = 0; d < n_detectors_; ++d) {
            const auto& faults = check_faults_[d];
            if (faults.empty()) continue;
            double min1 = 1e300, min2 = 1e300;
            int sign = syndrome_bit(static_cast<int>(d)) ? -1 : 1;
            std::size_t argmin = 0;
            std::vector<double> incoming(faults.size());
            for (std::size_t i = 0; i < faults.size(); ++i) {
                const int f = faults[i];
                const auto& fc = fault_checks_[f];
                const std::size_t pos = std::lower_bound(fc.begin(), fc.end(), static_cast<int>(d)) - fc.begin();
                const double msg = var_to_check[f][pos];
                incoming[i] = msg;
                const double mag = std::abs(msg);
                if (msg < 0) sign = -sign;
                if (mag < min1) {
                    min2 = min1;
                    min1 = mag;
                    argmin = i;
                } else if (mag < min2) {
                    min2 = mag;
                }
            }
            for (std::size_t i = 0; i < faults.size(); ++i) {
                const int f = faults[i];
                const auto& fc = fault_checks_[f];
                const std::size_t pos = std::lower_bound(fc.begin(), fc.end(), static_cast<int>(d)) - fc.begin();
                double s = sign * (incoming[i] < 0 ? -1 : 1);
                const double mag = i == argmin ? min2 : min1;
                check_to_var[f][pos] = 0.75 * s * mag;
            }
        }
        // variable update
        for (std::size_t f = 0; f < n_faults; ++f) {
            double total = prior[f];
            for (double msg : check_to_var[f]) total += msg;
            posterior[f] = total;
            hard[f] = total < 0;
            for (std::size_t i = 0; i < fault_checks_[f].size(); ++i)
                var_to_check[f][i] = total - check_to_var[f][i];
        }
        // converged when the hard decision reproduces the syndrome
        std::vector<uint64_t> recon(sig_words_, 0);
        for (std::size_t f = 0; f < n_faults; ++f)
            if (hard[f])
                for (std::size_t w = 0; w < sig_words_; ++w) recon[w] ^= signature_[f][w];
        matched = recon == syndrome;
    }

    if (matched) {
        for (std::size_t f = 0; f < n_faults; ++f)
            if (hard[f]) apply_effect(f, out.x_correction);
        return out;
    }

    // ordered-statistics fallback: eliminate in posterior-reliability order
    std::vector<std::size_t> order(n_faults);
    for (std::size_t f = 0; f < n_faults; ++f) order[f] = f;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return posterior[a] < posterior[b];
    });

    BitMatrix h(n_detectors_, n_faults + 1);
    for (std::size_t i = 0; i < n_faults; ++i)
        for (int d : fault_checks_[order[i]]) h.set(static_cast<std::size_t>(d), i, true);
    for (std::size_t d = 0; d < n_detectors_; ++d)
        if (syndrome_bit(static_cast<int>(d))) h.set(d, n_faults, true);

    std::size_t rank = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, column)
    for (std::size_t cidx = 0; cidx < n_faults && rank < n_detectors_; ++cidx) {
        std::size_t pivot = n_detectors_;
        for (std::size_t r = rank; r < n_detectors_; ++r)
            if (h.get(r, cidx)) { pivot = r; break; }
        if (pivot == n_detectors_) continue;
        if (pivot != rank) {
            uint64_t* a = h.row_data(pivot);
            uint64_t* b = h.row_data(rank);
            for (std::size_t w = 0; w < h.words_per_row(); ++w) std::swap(a[w], b[w]);
        }
        for (std::size_t r = 0; r < n_detectors_; ++r)
            if (r != rank && h.get(r, cidx)) h.xor_row(r, rank);
        pivots.emplace_back(rank, cidx);
        ++rank;
    }
    bool solvable = true;
    for (std::size_t r = rank; r < n_detectors_; ++r)
        if (h.get(r, n_faults)) solvable = false;
    if (!solvable) {
        std::vector<uint64_t> residual = syndrome;
        greedy_peel(residual, out.x_correction, out.converged);
        return out;
    }
    for (const auto& [row, cidx] : pivots)
        if (h.get(row, n_faults)) apply_effect(order[cidx], out.x_correction);
    return out;
}

FaceDecoder::Decoded FaceDecoder::decode(const std::vector<uint8_t>& detectors) const {
    std::vector<uint8_t> window(detectors.begin(),
                                detectors.begin() + std::min(detectors.size(), n_detectors_));
    window.resize(n_detectors_, 0);
    const std::vector<uint64_t> syndrome = pack_bits(window);
    return backend_ == Backend::Lookup ? decode_lookup(syndrome) : decode_bp(syndrome);
}

}  // namespace pf
