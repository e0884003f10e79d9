#pragma once

#include <cstdint>

namespace charp {

/*
 * SplitMix64. Hand-rolled so that seeded runs are bit-identical on every
 * platform and standard library.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /* uniform in [0, n) */
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    long mod(long n) { return static_cast<long>(below(static_cast<std::uint64_t>(n))); }

private:
    std::uint64_t s_;
};

}  // namespace charp
