#pragma once

#include <cstdint>
#include <vector>

#include "mobius/records.hpp"

namespace mobius {

// Parameters of the synthetic parity generator. Label y targets full-register
// parity y (XOR'd with invert_parity); independent per-variable flips and
// optional correlated pair flips are applied in the logical frame, then each
// circuit variant rotates roles and XORs its twirl mask on.
struct NoiseSpec {
    int n = 3;
    bool invert_parity = false;
    std::vector<double> flip_probs;              // per-variable, empty = noiseless
    std::vector<std::pair<std::pair<int, int>, double>> pair_flips;  // ((i,j), prob)
    std::vector<std::uint32_t> masks = {0};
    std::vector<std::vector<int>> role_perms;    // empty = identity only
    std::uint64_t shots_per_circuit = 512;
    std::uint64_t seed = 0;

    void validate() const;

    // Paper-style budget presets on three variables: "a1" runs two labels
    // times eight twirl masks (16 circuits, 8192 shots); "a1b" adds the three
    // cyclic role rotations (48 circuits, 24576 shots).
    static NoiseSpec preset_a1(double eps, std::uint64_t seed);
    static NoiseSpec preset_a1b(double eps, std::uint64_t seed);
};

struct ExactJoint {
    int n = 0;
    std::vector<double> p0;
    std::vector<double> p1;
};

// Analytic label-conditional distribution: uniform over parity-consistent
// strings convolved with every configured flip channel. Masks and role
// rotations cancel under correction, so they do not appear here.
ExactJoint exact_joint(const NoiseSpec& spec);

// Draws the full circuit grid (label x role_perm x mask) in the raw hardware
// frame: noise in the logical frame, then role rotation, then twirl mask.
// Deterministic: record r uses an independent stream derived from the seed.
Dataset sample_dataset(const NoiseSpec& spec);

}  // namespace mobius
