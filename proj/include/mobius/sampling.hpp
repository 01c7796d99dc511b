#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace mobius {

// xoshiro256** with splitmix64 seeding. Self-contained so that seeded runs
// stay bit-identical across platforms and library versions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Unbiased integer in [0, bound), bound >= 1.
    std::uint64_t next_below(std::uint64_t bound);

    // Uniform double in [0, 1) with 53 random bits.
    double next_double();

  private:
    std::uint64_t state_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

// Stable seed derivation: one master seed fans out to named streams, and each
// stream fans out per replicate index. Used to make replicate evaluation
// order-independent.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream, std::uint64_t index = 0);

// Exact Binomial(n, p) draw via two-sided inverse transform started at the
// mode. O(sqrt(n p q)) expected work, no normal approximation.
std::uint64_t sample_binomial(Rng& rng, std::uint64_t n, double p);

// Exact Hypergeometric draw: number of marked items in a uniform sample of
// `draws` items, without replacement, from a population of size `population`
// containing `marked` marked items.
std::uint64_t sample_hypergeometric(Rng& rng, std::uint64_t population, std::uint64_t marked,
                                    std::uint64_t draws);

// Multinomial resample: `total` independent draws from the distribution given
// by `weights` (nonnegative, not all zero), returned as per-cell counts in
// `out`. Uses the sequential conditional-binomial decomposition.
void sample_multinomial(Rng& rng, std::uint64_t total, std::span<const std::uint64_t> weights,
                        std::span<std::uint64_t> out);

// Uniform split without replacement: chooses `draws` of the population shots
// (cell k holds weights[k] identical shots) and reports how many landed in
// each cell. Equivalent to shuffling the expanded shot list and taking a
// prefix. Sequential conditional-hypergeometric decomposition.
void sample_hypergeometric_split(Rng& rng, std::uint64_t draws, std::span<const std::uint64_t> weights,
                                 std::span<std::uint64_t> out);

}  // namespace mobius
