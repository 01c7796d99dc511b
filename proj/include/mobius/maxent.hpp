#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mobius/lattice.hpp"
#include "mobius/records.hpp"

namespace mobius {

enum class FitAlgorithm {
    IterativeProportionalFitting,
    GradientAscent,
};

struct FitConfig {
    double tolerance = 1e-10;       // max absolute marginal mismatch
    std::uint64_t max_iterations = 100000;
    FitAlgorithm algorithm = FitAlgorithm::IterativeProportionalFitting;

    void validate() const;
};

// Exponential-family parameters in the spin convention s_i = 1 - 2 x_i:
// log p(x) = offset + sum_i h[i] s_i + sum_{i<j} J[pair(i,j)] s_i s_j.
// Only recoverable when the fitted joint is strictly positive.
struct IsingParameters {
    std::vector<double> h;
    std::vector<double> coupling;  // upper triangle, row-major (0,1), (0,2), ..., (1,2), ...
    double offset = 0.0;
};

struct LabelFit {
    std::vector<double> joint;             // fitted distribution over 2^n outcomes
    std::optional<IsingParameters> params; // absent when the joint has zero cells
    double residual = 0.0;                 // max marginal mismatch at convergence
    std::uint64_t iterations = 0;
    std::vector<double> kl_trace;          // KL(empirical || fit) after each sweep (IPF only)
};

// Pairwise-only maximum-entropy surrogate, fit per label; the label enters
// only through the prior.
struct MaxEntSurrogate {
    int n = 0;
    LabelFit fit0;
    LabelFit fit1;
    double w0 = 0.5;
    double w1 = 0.5;

    double fit_residual() const { return std::max(fit0.residual, fit1.residual); }
};

inline std::size_t pair_index(int i, int j, int n) {
    // i < j; row-major upper triangle.
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) -
           static_cast<std::size_t>(i) * static_cast<std::size_t>(i + 1) / 2 +
           static_cast<std::size_t>(j - i - 1);
}

// Maximum-entropy distribution matching the target's singleton and pairwise
// marginals. IPF cycles every pair constraint on the exact 2^n state vector;
// gradient ascent maximizes the log-likelihood within the pairwise family.
// Throws ConvergenceError when the residual tolerance is not met in budget.
LabelFit fit_pairwise_maxent(std::span<const double> target, int n, const FitConfig& config);

MaxEntSurrogate fit_surrogate(const LabeledCounts& counts, const FitConfig& config,
                              PriorMode prior = PriorMode::Empirical);

// Exact lattice decomposition implied by the surrogate (no sampling).
LatticeDecomposition surrogate_decomposition(const MaxEntSurrogate& surrogate);

// Accuracy of the optimal decision rule under the given model:
// sum_x max_y prior(y) p(x|y).
double bayes_accuracy(std::span<const double> p0, std::span<const double> p1, double w0, double w1);
double bayes_accuracy(const MaxEntSurrogate& surrogate);

// Rebuilds the joint implied by Ising parameters (normalized); used to verify
// the parameter recovery gauge.
std::vector<double> joint_from_parameters(const IsingParameters& params, int n);

// Max absolute mismatch between the distribution's singleton/pair marginals
// and the target's.
double marginal_residual(std::span<const double> p, std::span<const double> target, int n);

}  // namespace mobius
