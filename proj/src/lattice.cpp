#include "mobius/lattice.hpp"

#include <bit>
#include <cmath>

namespace mobius {

namespace {

void require_subset(SubsetId subset, int n) {
    if (subset == 0 || subset >= (SubsetId{1} << n)) {
        throw DataError("invariant: subset mask " + std::to_string(subset) +
                        " outside [1, 2^n) for n=" + std::to_string(n));
    }
}

std::vector<double> normalized_vector(const std::vector<std::uint64_t>& counts, std::uint64_t total) {
    std::vector<double> p(counts.size());
    const double scale = 1.0 / static_cast<double>(total);
    for (std::size_t x = 0; x < counts.size(); ++x) {
        p[x] = static_cast<double>(counts[x]) * scale;
    }
    return p;
}

}  // namespace

JointModel normalize(const LabeledCounts& counts, PriorMode prior) {
    counts.require_both_labels();
    const std::uint64_t t0 = counts.total0();
    const std::uint64_t t1 = counts.total1();
    JointModel model;
    model.n = counts.n;
    model.p0 = normalized_vector(counts.counts0, t0);
    model.p1 = normalized_vector(counts.counts1, t1);
    if (prior == PriorMode::Empirical) {
        model.w0 = static_cast<double>(t0) / static_cast<double>(t0 + t1);
        model.w1 = static_cast<double>(t1) / static_cast<double>(t0 + t1);
    } else {
        model.w0 = 0.5;
        model.w1 = 0.5;
    }
    return model;
}

std::vector<double> marginalize(std::span<const double> joint, int n, SubsetId subset) {
    require_subset(subset, n);
    // Sum out the free variables one at a time, highest index first. Each
    // stage is a balanced pairwise add, which keeps marginals of symmetric
    // joints exactly symmetric in floating point (label-uniform subsets then
    // report an information of exactly zero).
    std::vector<double> work(joint.begin(), joint.end());
    int m = n;
    for (int i = n - 1; i >= 0; --i) {
        if (subset & (1u << i)) {
            continue;
        }
        const std::size_t stride = std::size_t{1} << i;
        std::vector<double> next(std::size_t{1} << (m - 1));
        for (std::size_t y = 0; y < next.size(); ++y) {
            const std::size_t low = y & (stride - 1);
            const std::size_t high = y >> i;
            const std::size_t src = (high << (i + 1)) | low;
            next[y] = work[src] + work[src | stride];
        }
        work = std::move(next);
        --m;
    }
    return work;
}

std::pair<std::vector<double>, std::vector<double>> conditional_distribution(
    const LabeledCounts& counts, SubsetId subset, PriorMode prior) {
    const JointModel model = normalize(counts, prior);
    return {marginalize(model.p0, model.n, subset), marginalize(model.p1, model.n, subset)};
}

namespace {

double mi_from_marginals(std::span<const double> m0, std::span<const double> m1, double w0,
                         double w1) {
    double info = 0.0;
    for (std::size_t c = 0; c < m0.size(); ++c) {
        const double mix = w0 * m0[c] + w1 * m1[c];
        if (m0[c] > 0.0) {
            info += w0 * m0[c] * std::log2(m0[c] / mix);
        }
        if (m1[c] > 0.0) {
            info += w1 * m1[c] * std::log2(m1[c] / mix);
        }
    }
    // Plug-in MI is nonnegative; wipe the rounding dust so that exactly
    // uninformative subsets report exactly zero.
    if (info < 0.0 && info > -1e-9) {
        info = 0.0;
    }
    return info;
}

}  // namespace

double mutual_information(const JointModel& model, SubsetId subset) {
    const std::vector<double> m0 = marginalize(model.p0, model.n, subset);
    const std::vector<double> m1 = marginalize(model.p1, model.n, subset);
    return mi_from_marginals(m0, m1, model.w0, model.w1);
}

double mutual_information(const LabeledCounts& counts, SubsetId subset, PriorMode prior) {
    return mutual_information(normalize(counts, prior), subset);
}

void zeta_transform(std::span<double> values, int n) {
    for (int i = 0; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t s = 0; s < values.size(); ++s) {
            if (s & bit) {
                values[s] += values[s ^ bit];
            }
        }
    }
}

void mobius_transform(std::span<double> values, int n) {
    for (int i = 0; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t s = 0; s < values.size(); ++s) {
            if (s & bit) {
                values[s] -= values[s ^ bit];
            }
        }
    }
}

LatticeDecomposition decompose(const JointModel& model) {
    const std::size_t subsets = std::size_t{1} << model.n;
    LatticeDecomposition result;
    result.n = model.n;
    result.g.assign(subsets, 0.0);
    for (std::size_t s = 1; s < subsets; ++s) {
        result.g[s] = mutual_information(model, static_cast<SubsetId>(s));
    }
    result.f = result.g;
    mobius_transform(result.f, model.n);
    result.top_f = result.f[subsets - 1];
    return result;
}

LatticeDecomposition decompose(const LabeledCounts& counts, PriorMode prior) {
    return decompose(normalize(counts, prior));
}

double triplet_term_inclusion_exclusion(std::span<const double> g) {
    // g indexed by subset mask over three variables: {1}=0b001, {2}=0b010, ...
    return g[7] - g[3] - g[5] - g[6] + g[1] + g[2] + g[4];
}

LowOrderDiagnostics diagnostics(const JointModel& model) {
    LowOrderDiagnostics d;
    for (int i = 0; i < model.n; ++i) {
        const SubsetId s = SubsetId{1} << i;
        const std::vector<double> m0 = marginalize(model.p0, model.n, s);
        const std::vector<double> m1 = marginalize(model.p1, model.n, s);
        for (std::size_t v = 0; v < m0.size(); ++v) {
            d.max_marginal_delta = std::max(d.max_marginal_delta, std::abs(m0[v] - m1[v]));
        }
        d.max_singleton_mi = std::max(d.max_singleton_mi, mi_from_marginals(m0, m1, model.w0, model.w1));
    }
    for (int i = 0; i < model.n; ++i) {
        for (int j = i + 1; j < model.n; ++j) {
            const SubsetId s = (SubsetId{1} << i) | (SubsetId{1} << j);
            const std::vector<double> m0 = marginalize(model.p0, model.n, s);
            const std::vector<double> m1 = marginalize(model.p1, model.n, s);
            double tv = 0.0;
            for (std::size_t c = 0; c < m0.size(); ++c) {
                tv += std::abs(m0[c] - m1[c]);
            }
            d.max_pair_tv = std::max(d.max_pair_tv, 0.5 * tv);
            d.max_pair_mi = std::max(d.max_pair_mi, mi_from_marginals(m0, m1, model.w0, model.w1));
        }
    }
    return d;
}

LowOrderDiagnostics diagnostics(const LabeledCounts& counts, PriorMode prior) {
    return diagnostics(normalize(counts, prior));
}

double entropy_bits(std::span<const double> p) {
    double h = 0.0;
    for (const double v : p) {
        if (v > 0.0) {
            h -= v * std::log2(v);
        }
    }
    return h;
}

double binary_entropy(double q) {
    double h = 0.0;
    if (q > 0.0) {
        h -= q * std::log2(q);
    }
    if (q < 1.0) {
        h -= (1.0 - q) * std::log2(1.0 - q);
    }
    return h;
}

}  // namespace mobius
