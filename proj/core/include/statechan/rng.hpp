#pragma once

#include <cstdint>
#include <random>

#include "statechan/bytes.hpp"

namespace statechan {

/// Deterministic random source. mt19937_64 output is fixed by the standard,
/// and we avoid std::uniform_int_distribution (implementation-defined), so
/// the same seed gives the same stream on every platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, bound) by rejection sampling; bound > 0.
    uint64_t below(uint64_t bound) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % bound;
    }

    Bytes bytes(size_t n) {
        Bytes out(n);
        size_t i = 0;
        while (i < n) {
            uint64_t v = gen_();
            for (int k = 0; k < 8 && i < n; ++k, ++i) out[i] = static_cast<uint8_t>(v >> (8 * k));
        }
        return out;
    }

    /// Derives an independent child stream; used to give each party its own
    /// randomness without ordering effects between them.
    Rng fork(uint64_t label) { return Rng(gen_() ^ (0x9e3779b97f4a7c15ULL * (label + 1))); }

private:
    std::mt19937_64 gen_;
};

}  // namespace statechan
