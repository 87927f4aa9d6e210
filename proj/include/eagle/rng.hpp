#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

namespace eagle {

/// SplitMix64 finalizer. Used to derive well-separated seeds for sub-streams.
std::uint64_t mix_seed(std::uint64_t root, std::uint64_t stream) noexcept;

/// Seeded random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. All transforms (uniform reals, integers, normals) are implemented
/// here rather than through <random> distributions, which are
/// implementation-defined, so a seed reproduces the same draws on every
/// conforming toolchain.
///
/// Not thread-safe. Concurrent runs each own an Rng obtained via split().
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01();

    /// Uniform on [lo, hi). Returns lo when lo == hi. Throws if lo > hi.
    double uniform(double lo, double hi);

    /// One draw from N(mu, sigma^2) (Marsaglia polar method). sigma == 0
    /// returns mu exactly. Throws if sigma < 0.
    double normal(double mu, double sigma);

    /// Uniform integer in [0, n), unbiased. Throws if n == 0.
    std::size_t index(std::size_t n);

    /// Independent stream derived from this stream's seed and `stream`.
    /// Does not depend on (or advance) the current state.
    Rng split(std::uint64_t stream) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

} // namespace eagle
