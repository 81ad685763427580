#pragma once

#include <cstdint>
#include <string>

#include "embcert/rational.hpp"

namespace embcert {

/// SplitMix64 stream. Hand-rolled so that identical seeds give bit-identical
/// samples on every platform (std::uniform_int_distribution does not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi]; modulo bias is irrelevant for genericity sampling.
    long next_int(long lo, long hi) {
        if (hi < lo) throw DegenerateInputError("empty integer range");
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next_u64() % span);
    }

    /// Gaussian-integer sample from the box {-b..b} + i{-b..b}.
    G next_gaussian_int(long b) { return {Rat(next_int(-b, b)), Rat(next_int(-b, b))}; }

    /// Independent child stream; tag keeps sub-streams of one run distinct.
    Rng fork(const std::string& tag) {
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : tag) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return Rng(next_u64() ^ h);
    }

private:
    std::uint64_t state_;
};

} // namespace embcert
