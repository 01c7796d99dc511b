#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "mobius/records.hpp"

namespace mobius {

using Statistic = std::function<double(const LabeledCounts&)>;

struct ResampleConfig {
    std::uint64_t bootstrap_replicates = 5000;
    std::uint64_t permutation_shuffles = 10000;
    double ci_level = 0.95;
    std::uint64_t seed = 0;
    int threads = 1;

    void validate() const;
};

struct BootstrapResult {
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct PermutationResult {
    double p_value = 1.0;
    bool p_is_floor = false;
};

struct ResampleReport {
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double p_value = 1.0;
    bool p_is_floor = false;
    std::uint64_t bootstrap_replicates = 0;
    std::uint64_t permutation_shuffles = 0;
    double ci_level = 0.95;
};

// Percentile bootstrap over shots within each label: every replicate redraws
// total0 shots from the label-0 empirical distribution and total1 from the
// label-1 one, independently with replacement. Replicate r consumes the
// stream derive_seed(seed, "bootstrap", r), so any evaluation order or thread
// count produces bit-identical results.
BootstrapResult bootstrap_ci(const LabeledCounts& counts, const Statistic& statistic,
                             const ResampleConfig& config);

// Label-shuffle permutation test: shuffles permute the shot labels uniformly
// while keeping outcomes fixed, and p = (1 + #{stat >= observed}) / (1 + N).
// p_is_floor marks the case where no shuffle reached the observed statistic,
// reported as p <= 1/N.
PermutationResult permutation_test(const LabeledCounts& counts, const Statistic& statistic,
                                   const ResampleConfig& config);

ResampleReport resample_report(const LabeledCounts& counts, const Statistic& statistic,
                               const ResampleConfig& config);

enum class StatKind { F, G };

// Statistic picking one lattice coordinate, e.g. f of the full set (the
// default analysis statistic). Prior semantics match lattice::decompose.
Statistic make_lattice_statistic(StatKind kind, SubsetId subset, PriorMode prior);

// Parses "f:123" / "g:12" selectors (full set spelled "f:full").
std::pair<StatKind, SubsetId> parse_statistic_selector(const std::string& selector, int n);

}  // namespace mobius
