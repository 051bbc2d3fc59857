#pragma once

#include <cmath>
#include <cstdint>

namespace pf {

// Counter-based generator: output i of a stream is a pure function of
// (key, i), so independent streams can be handed to workers and replayed in
// any order with identical results.
class CounterRng {
  public:
    explicit CounterRng(uint64_t key) : key_(key) {}

    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Derive a sub-stream key from a tuple of identifiers.
    static uint64_t derive(uint64_t key, uint64_t a) { return mix(key ^ mix(a)); }
    static uint64_t derive(uint64_t key, uint64_t a, uint64_t b) {
        return derive(derive(key, a), b);
    }
    static uint64_t derive(uint64_t key, uint64_t a, uint64_t b, uint64_t c) {
        return derive(derive(key, a, b), c);
    }

    uint64_t next_u64() { return mix(key_ + (++ctr_) * 0xd1342543de82ef95ull); }

    // uniform in [0, 1)
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n)
    uint64_t next_below(uint64_t n) {
        return static_cast<uint64_t>(next_double() * static_cast<double>(n)) % n;
    }

    // Number of failures before the next success of a Bernoulli(p) sequence;
    // used to jump between set bits when sampling sparse noise masks.
    uint64_t next_geometric(double log1m_p) {
        double u = next_double();
        if (u <= 0.0) u = 0x1.0p-53;
        return static_cast<uint64_t>(std::log(u) / log1m_p);
    }

  private:
    uint64_t key_;
    uint64_t ctr_ = 0;
};

}  // namespace pf
