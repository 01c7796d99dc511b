#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mobius/records.hpp"

namespace mobius {

// Nonempty subset of variables, encoded as a bitmask with bit i set when
// variable i participates. 1 <= mask < 2^n.
using SubsetId = std::uint32_t;

enum class PriorMode {
    Empirical,  // label weights proportional to per-label shot totals
    Uniform,    // forced (1/2, 1/2)
};

// Label-conditional distribution in exact form: two probability vectors over
// 2^n outcomes plus the label prior. Every lattice statistic is a function of
// this object; LabeledCounts enters through `normalize`.
struct JointModel {
    int n = 0;
    std::vector<double> p0;
    std::vector<double> p1;
    double w0 = 0.5;
    double w1 = 0.5;
};

JointModel normalize(const LabeledCounts& counts, PriorMode prior = PriorMode::Empirical);

struct LatticeDecomposition {
    int n = 0;
    std::vector<double> g;  // indexed by SubsetId; entry 0 unused (g(empty)=0)
    std::vector<double> f;
    double top_f = 0.0;     // f of the full variable set

    double g_of(SubsetId s) const { return g[s]; }
    double f_of(SubsetId s) const { return f[s]; }
};

struct LowOrderDiagnostics {
    double max_marginal_delta = 0.0;  // max over variables and bit values
    double max_pair_tv = 0.0;
    double max_singleton_mi = 0.0;    // bits
    double max_pair_mi = 0.0;         // bits
};

// Marginalizes one label-conditional vector onto the subset's variables.
// Cell index compresses the subset's bits in place: the k-th lowest subset
// variable lands on bit k of the cell.
std::vector<double> marginalize(std::span<const double> joint, int n, SubsetId subset);

// Per-label conditional distributions over the subset's 2^|S| outcomes.
std::pair<std::vector<double>, std::vector<double>> conditional_distribution(
    const LabeledCounts& counts, SubsetId subset, PriorMode prior = PriorMode::Empirical);

// Plug-in I(Y; X_S) in bits, log base 2, 0*log0 = 0.
double mutual_information(const JointModel& model, SubsetId subset);
double mutual_information(const LabeledCounts& counts, SubsetId subset,
                          PriorMode prior = PriorMode::Empirical);

// In-place subset-lattice transforms over vectors indexed by bitmask.
// zeta: out[S] = sum over T subset of S of in[T].
// mobius: the inverse, out[S] = sum over T of (-1)^{|S|-|T|} in[T].
void zeta_transform(std::span<double> values, int n);
void mobius_transform(std::span<double> values, int n);

// g(S) for every nonempty S, then f by Mobius inversion with g(empty) = 0.
LatticeDecomposition decompose(const JointModel& model);
LatticeDecomposition decompose(const LabeledCounts& counts, PriorMode prior = PriorMode::Empirical);

// Direct inclusion-exclusion for the n=3 triplet term, kept as an
// independent route for cross-checking the generic inversion.
double triplet_term_inclusion_exclusion(std::span<const double> g);

LowOrderDiagnostics diagnostics(const JointModel& model);
LowOrderDiagnostics diagnostics(const LabeledCounts& counts, PriorMode prior = PriorMode::Empirical);

// Shannon entropy of a probability vector, in bits.
double entropy_bits(std::span<const double> p);

// Binary entropy H2(q) in bits.
double binary_entropy(double q);

}  // namespace mobius
