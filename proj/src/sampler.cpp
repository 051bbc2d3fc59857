#include "parityforge/sampler.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>

#include "parityforge/decoder.hpp"
#include "parityforge/rng.hpp"
#include "parityforge/threads.hpp"

namespace pf {

namespace {

constexpr std::size_t kWordsPerBatch = 4;  // 256 shots per batch
constexpr std::size_t kShotsPerBatch = kWordsPerBatch * 64;

// Frames for one batch: bit-planes indexed [qubit][word].
struct FrameBatch {
    std::size_t n_qubits;
    std::vector<uint64_t> x, z;

    explicit FrameBatch(std::size_t n)
        : n_qubits(n), x(n * kWordsPerBatch, 0), z(n * kWordsPerBatch, 0) {}

    uint64_t* xrow(int q) { return x.data() + static_cast<std::size_t>(q) * kWordsPerBatch; }
    uint64_t* zrow(int q) { return z.data() + static_cast<std::size_t>(q) * kWordsPerBatch; }

    void clear() {
        std::fill(x.begin(), x.end(), 0);
        std::fill(z.begin(), z.end(), 0);
    }
};

// Bernoulli(p) mask over the batch, sampled by geometric jumps between set
// bits; cheap when p is small.
void bernoulli_mask(CounterRng& rng, double p, uint64_t* words, double log1m_p) {
    std::memset(words, 0, kWordsPerBatch * sizeof(uint64_t));
    if (p <= 0) return;
    if (p >= 1) {
        std::memset(words, 0xff, kWordsPerBatch * sizeof(uint64_t));
        return;
    }
    uint64_t pos = rng.next_geometric(log1m_p);
    while (pos < kShotsPerBatch) {
        words[pos / 64] |= 1ull << (pos % 64);
        pos += 1 + rng.next_geometric(log1m_p);
    }
}

struct NoiseCache {
    double p1 = 0, log1m_p1 = 0;
    double p2 = 0, log1m_p2 = 0;
    double twirl = 0, log1m_twirl = 0;
    double q3 = 0, log1m_q3 = 0;  // total depolarizing probability 3q
    double dephase = 0, log1m_dephase = 0;  // per-round Z at finite bias

    explicit NoiseCache(const DistillationCircuit& c) {
        p1 = c.noise.p;
        p2 = c.noise.p;
        twirl = c.twirl_y_probability();
        q3 = 3.0 * c.layer_q();
        if (!c.noise.infinite_bias()) dephase = c.noise.p / c.noise.eta;
        auto lg = [](double v) { return v > 0 && v < 1 ? std::log1p(-v) : 0.0; };
        log1m_p1 = lg(p1);
        log1m_p2 = lg(p2);
        log1m_twirl = lg(twirl);
        log1m_q3 = lg(q3);
        log1m_dephase = lg(dephase);
    }
};

// Memoized mid-circuit decode: before the non-Clifford layer, the pre-layer
// face record is decoded and the inferred X pattern is flipped off the
// frame, so only errors the syndrome cannot see are exposed to the twirl.
struct MidCorrector {
    const FaceDecoder* decoder = nullptr;
    std::size_t n_pre = 0;
    std::map<std::vector<uint64_t>, std::vector<int>> memo;

    const std::vector<int>& correction(const std::vector<uint64_t>& syndrome,
                                       std::size_t n_qubits) {
        auto it = memo.find(syndrome);
        if (it != memo.end()) return it->second;
        std::vector<uint8_t> bits(n_pre, 0);
        for (std::size_t d = 0; d < n_pre; ++d)
            bits[d] = (syndrome[d / 64] >> (d % 64)) & 1ull;
        const auto decoded = decoder->decode(bits);
        std::vector<int> qubits;
        for (std::size_t q = 0; q < n_qubits; ++q)
            if (decoded.x_correction[q]) qubits.push_back(static_cast<int>(q));
        return memo.emplace(syndrome, std::move(qubits)).first->second;
    }
};

// One batch of shots through the circuit; returns per-shot accept and flip
// masks in the batch words.
void run_batch(const DistillationCircuit& c, const NoiseCache& nc, CounterRng& rng,
               FrameBatch& fb, MidCorrector* mid, uint64_t* accept_words, uint64_t* flip_words) {
    fb.clear();
    uint64_t mask[kWordsPerBatch];
    uint64_t pick[kWordsPerBatch];

    const unsigned pre_rounds = (c.n_rounds + 1) / 2;
    const std::size_t n_pre = pre_rounds * c.n_checks;
    std::vector<uint64_t> pre_det;
    std::vector<uint64_t> prev_flip;
    if (mid) {
        pre_det.assign(n_pre * kWordsPerBatch, 0);
        prev_flip.assign(c.n_checks * kWordsPerBatch, 0);
    }

    auto apply_x_noise = [&](int q, double p, double lg) {
        if (p <= 0) return;
        bernoulli_mask(rng, p, mask, lg);
        uint64_t* xr = fb.xrow(q);
        for (std::size_t w = 0; w < kWordsPerBatch; ++w) xr[w] ^= mask[w];
    };

    for (const auto& op : c.ops) {
        switch (op.kind) {
            case OpKind::ResetPlus: {
                // |+> eigenstates: clear frames, then preparation X noise
                for (int q : op.qubits) {
                    std::memset(fb.xrow(q), 0, kWordsPerBatch * 8);
                    std::memset(fb.zrow(q), 0, kWordsPerBatch * 8);
                    apply_x_noise(q, nc.p1, nc.log1m_p1);
                }
                break;
            }
            case OpKind::AncillaReset: {
                const int q = op.qubits[0];
                std::memset(fb.xrow(q), 0, kWordsPerBatch * 8);
                std::memset(fb.zrow(q), 0, kWordsPerBatch * 8);
                apply_x_noise(q, nc.p1, nc.log1m_p1);
                // per-round data dephasing at finite bias, attached to the
                // first check of each round
                if (nc.dephase > 0 && op.check == 0) {
                    for (int dq : c.ops.front().qubits) {
                        bernoulli_mask(rng, nc.dephase, mask, nc.log1m_dephase);
                        uint64_t* zr = fb.zrow(dq);
                        for (std::size_t w = 0; w < kWordsPerBatch; ++w) zr[w] ^= mask[w];
                    }
                }
                break;
            }
            case OpKind::Cnot: {
                const int ctl = op.qubits[0], tgt = op.qubits[1];
                uint64_t* xc = fb.xrow(ctl);
                uint64_t* xt = fb.xrow(tgt);
                uint64_t* zc = fb.zrow(ctl);
                uint64_t* zt = fb.zrow(tgt);
                for (std::size_t w = 0; w < kWordsPerBatch; ++w) {
                    xt[w] ^= xc[w];
                    zc[w] ^= zt[w];
                }
                if (op.noise2 > 0) {
                    // exclusive IX / XI / XX, each a third of the budget
                    bernoulli_mask(rng, op.noise2, mask, nc.log1m_p2);
                    for (std::size_t w = 0; w < kWordsPerBatch; ++w) {
                        uint64_t bits = mask[w];
                        pick[w] = 0;
                        uint64_t xi = 0, ix = 0;
                        while (bits) {
                            const uint64_t bit = bits & (~bits + 1);
                            bits ^= bit;
                            switch (rng.next_below(3)) {
                                case 0: ix |= bit; break;
                                case 1: xi |= bit; break;
                                default: ix |= bit; xi |= bit; break;
                            }
                        }
                        xc[w] ^= xi;
                        xt[w] ^= ix;
                    }
                }
                break;
            }
            case OpKind::MeasureZAncilla: {
                const int q = op.qubits[0];
                apply_x_noise(q, nc.p1, nc.log1m_p1);
                // acceptance only reads the volume observables, but the
                // pre-layer face record feeds the mid-circuit correction
                if (mid && op.round >= 0 && static_cast<unsigned>(op.round) < pre_rounds) {
                    const uint64_t* xr = fb.xrow(q);
                    uint64_t* prev = prev_flip.data() + static_cast<std::size_t>(op.check) * kWordsPerBatch;
                    uint64_t* det = pre_det.data() +
                                    (static_cast<std::size_t>(op.round) * c.n_checks +
                                     static_cast<std::size_t>(op.check)) * kWordsPerBatch;
                    for (std::size_t w = 0; w < kWordsPerBatch; ++w) {
                        det[w] = xr[w] ^ (op.round == 0 ? 0 : prev[w]);
                        prev[w] = xr[w];
                    }
                }
                break;
            }
            case OpKind::NonCliffordLayer: {
                if (mid) {
                    // shots with a fired pre-layer detector get decoded
                    uint64_t fired[kWordsPerBatch] = {0, 0, 0, 0};
                    for (std::size_t d = 0; d < n_pre; ++d)
                        for (std::size_t w = 0; w < kWordsPerBatch; ++w)
                            fired[w] |= pre_det[d * kWordsPerBatch + w];
                    std::vector<uint64_t> syndrome((n_pre + 63) / 64);
                    for (std::size_t w = 0; w < kWordsPerBatch; ++w) {
                        uint64_t bits = fired[w];
                        while (bits) {
                            const int b = std::countr_zero(bits);
                            bits &= bits - 1;
                            std::fill(syndrome.begin(), syndrome.end(), 0);
                            for (std::size_t d = 0; d < n_pre; ++d)
                                if ((pre_det[d * kWordsPerBatch + w] >> b) & 1ull)
                                    syndrome[d / 64] |= 1ull << (d % 64);
                            const uint64_t bit = 1ull << b;
                            for (int q : mid->correction(syndrome, c.n_qubits))
                                fb.xrow(q)[w] ^= bit;
                        }
                    }
                }
                for (int q : op.qubits) {
                    uint64_t* xr = fb.xrow(q);
                    uint64_t* zr = fb.zrow(q);
                    // residual X frames pick up a Z component
                    bernoulli_mask(rng, nc.twirl, mask, nc.log1m_twirl);
                    for (std::size_t w = 0; w < kWordsPerBatch; ++w) zr[w] ^= mask[w] & xr[w];
                    // intrinsic depolarizing noise of the rotation
                    if (nc.q3 > 0) {
                        bernoulli_mask(rng, nc.q3, mask, nc.log1m_q3);
                        for (std::size_t w = 0; w < kWordsPerBatch; ++w) {
                            uint64_t bits = mask[w];
                            while (bits) {
                                const uint64_t bit = bits & (~bits + 1);
                                bits ^= bit;
                                switch (rng.next_below(3)) {
                                    case 0: xr[w] ^= bit; break;
                                    case 1: xr[w] ^= bit; zr[w] ^= bit; break;
                                    default: zr[w] ^= bit; break;
                                }
                            }
                        }
                    }
                }
                break;
            }
            case OpKind::FinalMeasureX:
                break;
        }
    }

    // X-basis readout of qubit q is flipped by its Z frame. Reconstruct the
    // volume stabilizers; any flip rejects the shot.
    uint64_t reject[kWordsPerBatch] = {0, 0, 0, 0};
    uint64_t obs[kWordsPerBatch];
    for (const auto& support : c.postselect_observables) {
        std::memset(obs, 0, sizeof(obs));
        for (int q : support) {
            const uint64_t* zr = fb.zrow(q);
            for (std::size_t w = 0; w < kWordsPerBatch; ++w) obs[w] ^= zr[w];
        }
        for (std::size_t w = 0; w < kWordsPerBatch; ++w) reject[w] |= obs[w];
    }
    std::memset(obs, 0, sizeof(obs));
    for (int q : c.logical_observable) {
        const uint64_t* zr = fb.zrow(q);
        for (std::size_t w = 0; w < kWordsPerBatch; ++w) obs[w] ^= zr[w];
    }
    {
        const uint64_t* zi = fb.zrow(c.target_interface);
        for (std::size_t w = 0; w < kWordsPerBatch; ++w) obs[w] ^= zi[w];
    }
    for (std::size_t w = 0; w < kWordsPerBatch; ++w) {
        accept_words[w] = ~reject[w];
        flip_words[w] = obs[w] & accept_words[w];
    }
}

}  // namespace

SampleTallies sample(const DistillationCircuit& circuit, uint64_t shots, uint64_t seed) {
    const uint64_t n_batches = (shots + kShotsPerBatch - 1) / kShotsPerBatch;
    std::vector<SampleTallies> partial(worker_count());

    std::unique_ptr<FaceDecoder> decoder;
    if (circuit.noise.p > 0)
        decoder = std::make_unique<FaceDecoder>(circuit, FaceDecoder::default_backend(circuit.m),
                                                FaceDecoder::Stage::PreLayer);

    parallel_for_blocks(n_batches, [&](std::size_t lo, std::size_t hi, unsigned worker) {
        FrameBatch fb(circuit.n_qubits);
        NoiseCache nc(circuit);
        MidCorrector mid;
        mid.decoder = decoder.get();
        mid.n_pre = ((circuit.n_rounds + 1) / 2) * circuit.n_checks;
        SampleTallies t;
        uint64_t accept[kWordsPerBatch], flip[kWordsPerBatch];
        for (std::size_t b = lo; b < hi; ++b) {
            CounterRng rng(CounterRng::derive(seed, 0x706172697479ull, b));
            run_batch(circuit, nc, rng, fb, decoder ? &mid : nullptr, accept, flip);
            // trim the tail batch to the requested shot count
            const uint64_t first_shot = b * kShotsPerBatch;
            for (std::size_t w = 0; w < kWordsPerBatch; ++w) {
                const uint64_t base = first_shot + w * 64;
                if (base >= shots) break;
                uint64_t keep = ~0ull;
                if (shots - base < 64) keep = (1ull << (shots - base)) - 1;
                t.shots += std::popcount(keep);
                t.accepted += std::popcount(accept[w] & keep);
                t.flips += std::popcount(flip[w] & keep);
            }
        }
        partial[worker] += t;
    });

    SampleTallies total;
    for (const auto& t : partial) total += t;
    return total;
}

WilsonInterval wilson95(uint64_t successes, uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double denom = 1.0 + z * z / n;
    const double centre = phat + z * z / (2 * n);
    const double spread = z * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n));
    return {(centre - spread) / denom, (centre + spread) / denom};
}

EstimateResult estimate(const DistillationCircuit& circuit, uint64_t shots, uint64_t seed) {
    const SampleTallies t = sample(circuit, shots, seed);
    EstimateResult r;
    r.shots = t.shots;
    r.accepted = t.accepted;
    r.flips = t.flips;
    r.p_accept = t.shots ? static_cast<double>(t.accepted) / t.shots : 0.0;
    r.p_logical = t.accepted ? static_cast<double>(t.flips) / t.accepted : 0.0;
    const WilsonInterval ci = wilson95(t.flips, t.accepted);
    r.ci_low = ci.low;
    r.ci_high = ci.high;
    return r;
}

std::size_t final_measure_index(const DistillationCircuit& circuit) {
    for (std::size_t i = 0; i < circuit.ops.size(); ++i)
        if (circuit.ops[i].kind == OpKind::FinalMeasureX) return i;
    throw std::logic_error("circuit has no final measurement");
}

SingleShotResult run_with_injection(const DistillationCircuit& c,
                                    const std::vector<Injection>& injections,
                                    uint64_t twirl_seed, bool force_twirl) {
    std::vector<uint8_t> x(c.n_qubits, 0), z(c.n_qubits, 0);
    SingleShotResult res;
    res.detectors.assign(c.detector_count(), 0);
    std::vector<uint8_t> prev_flip(c.n_checks, 0);
    CounterRng rng(CounterRng::derive(twirl_seed, 0x74776972ull));

    for (std::size_t i = 0; i < c.ops.size(); ++i) {
        for (const auto& inj : injections) {
            if (inj.op_index != i) continue;
            if (static_cast<uint8_t>(inj.pauli) & 1) x[inj.qubit] ^= 1;
            if (static_cast<uint8_t>(inj.pauli) & 2) z[inj.qubit] ^= 1;
        }
        const auto& op = c.ops[i];
        switch (op.kind) {
            case OpKind::ResetPlus:
                for (int q : op.qubits) x[q] = z[q] = 0;
                break;
            case OpKind::AncillaReset:
                x[op.qubits[0]] = z[op.qubits[0]] = 0;
                break;
            case OpKind::Cnot:
                x[op.qubits[1]] ^= x[op.qubits[0]];
                z[op.qubits[0]] ^= z[op.qubits[1]];
                break;
            case OpKind::MeasureZAncilla: {
                const uint8_t flip = x[op.qubits[0]];
                const std::size_t det = static_cast<std::size_t>(op.round) * c.n_checks +
                                        static_cast<std::size_t>(op.check);
                res.detectors[det] = op.round == 0 ? flip : (flip ^ prev_flip[op.check]);
                prev_flip[op.check] = flip;
                break;
            }
            case OpKind::NonCliffordLayer:
                res.layer_x_frame = x;
                for (int q : op.qubits) {
                    if (!x[q]) continue;
                    if (force_twirl || rng.next_double() < c.twirl_y_probability()) z[q] ^= 1;
                }
                break;
            case OpKind::FinalMeasureX:
                break;
        }
    }

    res.final_x_frame = x;
    res.volume_flips.clear();
    bool rejected = false;
    for (const auto& support : c.postselect_observables) {
        uint8_t v = 0;
        for (int q : support) v ^= z[q];
        res.volume_flips.push_back(v);
        rejected |= v != 0;
    }
    uint8_t flip = z[c.target_interface];
    for (int q : c.logical_observable) flip ^= z[q];
    res.outcome.accepted = !rejected;
    res.outcome.logical_flip = flip != 0;
    return res;
}

double rescale_lower_bound(double p_measured, unsigned k, double p) {
    const double combos = undetectable_triples(k);
    const double p_eff_meas = std::cbrt(p_measured / combos);
    const double angle_floor = (2.0 * p / 3.0) * std::pow(2.0, 2.0 - static_cast<double>(k));
    const double residual = p_eff_meas - angle_floor;
    const double rescaled = residual / std::pow(2.0, static_cast<double>(k) - 2.0) + angle_floor;
    return combos * rescaled * rescaled * rescaled;
}

}  // namespace pf
