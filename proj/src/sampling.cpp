#include "mobius/sampling.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace mobius {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) {
        word = splitmix64(s);
    }
}

static inline std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl64(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl64(state_[3], 45);
    return result;
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
    // Lemire's multiply-shift with rejection of the biased zone.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = next_u64();
        const unsigned __int128 m = static_cast<unsigned __int128>(r) * bound;
        if (static_cast<std::uint64_t>(m) >= threshold) {
            return static_cast<std::uint64_t>(m >> 64);
        }
    }
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view stream, std::uint64_t index) {
    // FNV-1a over the stream name, then splitmix mixing with the index.
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (const char c : stream) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    std::uint64_t s = master ^ h;
    std::uint64_t mixed = splitmix64(s);
    s = mixed ^ index;
    return splitmix64(s);
}

namespace {

// Log of the binomial pmf at k, evaluated through lgamma so that large n and
// extreme p stay in range.
double log_binomial_pmf(std::uint64_t n, double p, std::uint64_t k) {
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) +
           kd * std::log(p) + (nd - kd) * std::log1p(-p);
}

double log_hypergeometric_pmf(std::uint64_t population, std::uint64_t marked, std::uint64_t draws,
                              std::uint64_t k) {
    auto log_choose = [](std::uint64_t a, std::uint64_t b) {
        return std::lgamma(static_cast<double>(a) + 1.0) - std::lgamma(static_cast<double>(b) + 1.0) -
               std::lgamma(static_cast<double>(a - b) + 1.0);
    };
    return log_choose(marked, k) + log_choose(population - marked, draws - k) -
           log_choose(population, draws);
}

// Shared two-sided walk: starting from the mode, alternately extends downward
// and upward, multiplying the pmf by the one-step ratio, until the cumulative
// mass exceeds u. `ratio_up(k)` is pmf(k+1)/pmf(k), `ratio_down(k)` is
// pmf(k-1)/pmf(k).
template <typename RatioUp, typename RatioDown>
std::uint64_t walk_from_mode(double u, std::uint64_t mode, std::uint64_t lo_limit,
                             std::uint64_t hi_limit, double pmf_mode, RatioUp ratio_up,
                             RatioDown ratio_down) {
    double acc = pmf_mode;
    if (u < acc) {
        return mode;
    }
    std::uint64_t lo = mode;
    std::uint64_t hi = mode;
    double pmf_lo = pmf_mode;
    double pmf_hi = pmf_mode;
    bool lo_open = lo > lo_limit;
    bool hi_open = hi < hi_limit;
    while (lo_open || hi_open) {
        if (lo_open) {
            pmf_lo *= ratio_down(lo);
            --lo;
            acc += pmf_lo;
            if (u < acc) {
                return lo;
            }
            lo_open = lo > lo_limit;
        }
        if (hi_open) {
            pmf_hi *= ratio_up(hi);
            ++hi;
            acc += pmf_hi;
            if (u < acc) {
                return hi;
            }
            hi_open = hi < hi_limit;
        }
    }
    // u fell into the sliver of rounding error beyond the accumulated mass;
    // the nearer tail end is as good as any.
    return u < 0.5 ? lo_limit : hi_limit;
}

}  // namespace

std::uint64_t sample_binomial(Rng& rng, std::uint64_t n, double p) {
    if (n == 0 || p <= 0.0) {
        return 0;
    }
    if (p >= 1.0) {
        return n;
    }
    const std::uint64_t mode =
        static_cast<std::uint64_t>(std::min(static_cast<double>(n), std::floor((static_cast<double>(n) + 1.0) * p)));
    const double pmf_mode = std::exp(log_binomial_pmf(n, p, mode));
    const double odds = p / (1.0 - p);
    const double u = rng.next_double();
    return walk_from_mode(
        u, mode, 0, n, pmf_mode,
        [&](std::uint64_t k) {
            return odds * static_cast<double>(n - k) / static_cast<double>(k + 1);
        },
        [&](std::uint64_t k) {
            return static_cast<double>(k) / (odds * static_cast<double>(n - k + 1));
        });
}

std::uint64_t sample_hypergeometric(Rng& rng, std::uint64_t population, std::uint64_t marked,
                                    std::uint64_t draws) {
    if (marked > population || draws > population) {
        throw std::invalid_argument("sample_hypergeometric: inconsistent parameters");
    }
    const std::uint64_t lo_limit = draws > population - marked ? draws - (population - marked) : 0;
    const std::uint64_t hi_limit = std::min(marked, draws);
    if (lo_limit == hi_limit) {
        return lo_limit;
    }
    std::uint64_t mode = static_cast<std::uint64_t>(
        std::floor(static_cast<double>(draws + 1) * static_cast<double>(marked + 1) /
                   static_cast<double>(population + 2)));
    if (mode < lo_limit) {
        mode = lo_limit;
    }
    if (mode > hi_limit) {
        mode = hi_limit;
    }
    const double pmf_mode = std::exp(log_hypergeometric_pmf(population, marked, draws, mode));
    const double u = rng.next_double();
    // pmf(k+1)/pmf(k) = (marked-k)(draws-k) / ((k+1)(population-marked-draws+k+1))
    return walk_from_mode(
        u, mode, lo_limit, hi_limit, pmf_mode,
        [&](std::uint64_t k) {
            return static_cast<double>(marked - k) * static_cast<double>(draws - k) /
                   (static_cast<double>(k + 1) *
                    static_cast<double>(population - marked - draws + k + 1));
        },
        [&](std::uint64_t k) {
            return static_cast<double>(k) * static_cast<double>(population - marked - draws + k) /
                   (static_cast<double>(marked - k + 1) * static_cast<double>(draws - k + 1));
        });
}

void sample_multinomial(Rng& rng, std::uint64_t total, std::span<const std::uint64_t> weights,
                        std::span<std::uint64_t> out) {
    if (weights.size() != out.size()) {
        throw std::invalid_argument("sample_multinomial: size mismatch");
    }
    std::uint64_t weight_rest = 0;
    for (const std::uint64_t w : weights) {
        weight_rest += w;
    }
    if (total > 0 && weight_rest == 0) {
        throw std::invalid_argument("sample_multinomial: zero total weight");
    }
    std::uint64_t remaining = total;
    for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
        if (remaining == 0 || weight_rest == 0) {
            out[k] = 0;
            weight_rest -= weights[k];
            continue;
        }
        const double p = static_cast<double>(weights[k]) / static_cast<double>(weight_rest);
        const std::uint64_t c = weights[k] == weight_rest ? remaining : sample_binomial(rng, remaining, p);
        out[k] = c;
        remaining -= c;
        weight_rest -= weights[k];
    }
    if (!out.empty()) {
        out[out.size() - 1] = remaining;
    }
}

void sample_hypergeometric_split(Rng& rng, std::uint64_t draws, std::span<const std::uint64_t> weights,
                                 std::span<std::uint64_t> out) {
    if (weights.size() != out.size()) {
        throw std::invalid_argument("sample_hypergeometric_split: size mismatch");
    }
    std::uint64_t population = 0;
    for (const std::uint64_t w : weights) {
        population += w;
    }
    if (draws > population) {
        throw std::invalid_argument("sample_hypergeometric_split: more draws than population");
    }
    std::uint64_t remaining_draws = draws;
    std::uint64_t remaining_pop = population;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (remaining_draws == 0 || weights[k] == 0) {
            out[k] = 0;
            remaining_pop -= weights[k];
            continue;
        }
        if (weights[k] == remaining_pop) {
            out[k] = remaining_draws;
            remaining_draws = 0;
            remaining_pop = 0;
            continue;
        }
        const std::uint64_t c = sample_hypergeometric(rng, remaining_pop, weights[k], remaining_draws);
        out[k] = c;
        remaining_draws -= c;
        remaining_pop -= weights[k];
    }
}

}  // namespace mobius
