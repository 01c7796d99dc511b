#include "mobius/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mobius/sampling.hpp"

namespace mobius {

void NoiseSpec::validate() const {
    if (n < kMinVariables || n > kMaxVariables) {
        throw DataError("invariant: NoiseSpec.n outside [" + std::to_string(kMinVariables) + ", " +
                        std::to_string(kMaxVariables) + "]");
    }
    if (!flip_probs.empty() && static_cast<int>(flip_probs.size()) != n) {
        throw DataError("invariant: flip_probs must list one probability per variable");
    }
    for (const double e : flip_probs) {
        if (!(e >= 0.0 && e <= 1.0)) {
            throw DataError("invariant: flip probability outside [0, 1]");
        }
    }
    for (const auto& [pair, prob] : pair_flips) {
        if (pair.first < 0 || pair.second < 0 || pair.first >= n || pair.second >= n ||
            pair.first == pair.second) {
            throw DataError("invariant: pair_flip indices must name two distinct variables");
        }
        if (!(prob >= 0.0 && prob <= 1.0)) {
            throw DataError("invariant: pair_flip probability outside [0, 1]");
        }
    }
    if (masks.empty()) {
        throw DataError("invariant: NoiseSpec.masks must be nonempty (identity mask allowed)");
    }
    for (const std::uint32_t mask : masks) {
        if (mask >= (std::uint32_t{1} << n)) {
            throw DataError("invariant: twirl mask wider than n variables");
        }
    }
    for (const auto& perm : role_perms) {
        validate_role_perm(perm, n);
    }
    if (shots_per_circuit == 0) {
        throw DataError("invariant: shots_per_circuit must be positive");
    }
}

NoiseSpec NoiseSpec::preset_a1(double eps, std::uint64_t seed) {
    NoiseSpec spec;
    spec.n = 3;
    spec.flip_probs = {eps, eps, eps};
    spec.masks = {0, 1, 2, 3, 4, 5, 6, 7};
    spec.role_perms = {{0, 1, 2}};
    spec.shots_per_circuit = 512;
    spec.seed = seed;
    return spec;
}

NoiseSpec NoiseSpec::preset_a1b(double eps, std::uint64_t seed) {
    NoiseSpec spec = preset_a1(eps, seed);
    spec.role_perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    return spec;
}

namespace {

// One XOR flip channel: with probability prob the outcome is XORed by mask.
struct FlipChannel {
    std::uint32_t mask;
    double prob;
};

std::vector<FlipChannel> collect_channels(const NoiseSpec& spec) {
    std::vector<FlipChannel> channels;
    for (std::size_t i = 0; i < spec.flip_probs.size(); ++i) {
        if (spec.flip_probs[i] > 0.0) {
            channels.push_back({std::uint32_t{1} << i, spec.flip_probs[i]});
        }
    }
    for (const auto& [pair, prob] : spec.pair_flips) {
        if (prob > 0.0) {
            channels.push_back(
                {(std::uint32_t{1} << pair.first) | (std::uint32_t{1} << pair.second), prob});
        }
    }
    return channels;
}

std::vector<double> parity_class_uniform(int n, int target_parity) {
    const std::size_t cells = std::size_t{1} << n;
    // 2^(n-1) strings per parity class; the weight is an exact power of two.
    const double w = std::ldexp(1.0, -(n - 1));
    std::vector<double> p(cells, 0.0);
    for (std::size_t x = 0; x < cells; ++x) {
        if (parity(static_cast<std::uint32_t>(x)) == target_parity) {
            p[x] = w;
        }
    }
    return p;
}

void convolve_channel(std::vector<double>& p, const FlipChannel& channel) {
    const double keep = 1.0 - channel.prob;
    std::vector<double> next(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) {
        next[x] = keep * p[x] + channel.prob * p[x ^ channel.mask];
    }
    p = std::move(next);
}

}  // namespace

ExactJoint exact_joint(const NoiseSpec& spec) {
    spec.validate();
    ExactJoint joint;
    joint.n = spec.n;
    const int p0_parity = spec.invert_parity ? 1 : 0;
    joint.p0 = parity_class_uniform(spec.n, p0_parity);
    joint.p1 = parity_class_uniform(spec.n, 1 - p0_parity);
    for (const FlipChannel& channel : collect_channels(spec)) {
        convolve_channel(joint.p0, channel);
        convolve_channel(joint.p1, channel);
    }
    return joint;
}

Dataset sample_dataset(const NoiseSpec& spec) {
    spec.validate();
    const ExactJoint joint = exact_joint(spec);
    const std::size_t cells = std::size_t{1} << spec.n;

    // Cumulative conditional distributions for per-shot inverse sampling.
    auto cumulative = [&](const std::vector<double>& p) {
        std::vector<double> c(p.size());
        double acc = 0.0;
        for (std::size_t x = 0; x < p.size(); ++x) {
            acc += p[x];
            c[x] = acc;
        }
        c.back() = 1.0;
        return c;
    };
    const std::vector<double> cumulative_by_label[2] = {cumulative(joint.p0), cumulative(joint.p1)};

    const std::vector<std::vector<int>> perms =
        spec.role_perms.empty() ? std::vector<std::vector<int>>{identity_perm(spec.n)} : spec.role_perms;

    Dataset dataset;
    dataset.n = spec.n;
    dataset.provenance = "synthetic parity generator, seed " + std::to_string(spec.seed);
    std::uint64_t record_index = 0;
    for (int label = 0; label < 2; ++label) {
        for (std::size_t pi = 0; pi < perms.size(); ++pi) {
            for (std::size_t mi = 0; mi < spec.masks.size(); ++mi) {
                CircuitRecord record;
                record.label = label;
                record.mask = spec.masks[mi];
                record.role_perm = perms[pi];
                record.shots = spec.shots_per_circuit;
                record.circuit_id = "synth-y" + std::to_string(label) + "-p" + std::to_string(pi) +
                                    "-m" + format_outcome(record.mask, spec.n);
                record.raw_counts.assign(cells, 0);

                Rng rng(derive_seed(spec.seed, "synth-record", record_index));
                const std::vector<double>& cdf = cumulative_by_label[label];
                for (std::uint64_t shot = 0; shot < spec.shots_per_circuit; ++shot) {
                    const double u = rng.next_double();
                    const auto logical = static_cast<std::uint32_t>(
                        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
                    // Physical frame: logical variable i lands at position
                    // role_perm[i], then the twirl mask is XORed on.
                    std::uint32_t physical = 0;
                    for (int i = 0; i < spec.n; ++i) {
                        physical = with_outcome_bit(physical, record.role_perm[static_cast<std::size_t>(i)],
                                                    outcome_bit(logical, i));
                    }
                    physical ^= record.mask;
                    ++record.raw_counts[physical];
                }
                dataset.records.push_back(std::move(record));
                ++record_index;
            }
        }
    }
    return dataset;
}

}  // namespace mobius
