#include "mobius/resample.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "mobius/lattice.hpp"
#include "mobius/sampling.hpp"

namespace mobius {

void ResampleConfig::validate() const {
    if (bootstrap_replicates == 0 || permutation_shuffles == 0) {
        throw DataError("invariant: replicate counts must be >= 1");
    }
    if (!(ci_level > 0.0 && ci_level < 1.0)) {
        throw DataError("invariant: ci_level must lie in (0, 1)");
    }
    if (threads < 1) {
        throw DataError("invariant: thread count must be >= 1");
    }
}

namespace {

// Runs fn(index) for index in [0, total), split into contiguous chunks when
// more than one thread is requested. Each index is self-seeding, so the
// partition never changes results.
void for_each_index(std::uint64_t total, int threads, const std::function<void(std::uint64_t)>& fn) {
    const int workers = static_cast<int>(std::min<std::uint64_t>(total, static_cast<std::uint64_t>(threads)));
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < total; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t begin = total * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(workers);
        const std::uint64_t end = total * static_cast<std::uint64_t>(w + 1) / static_cast<std::uint64_t>(workers);
        pool.emplace_back([&, begin, end, w] {
            try {
                for (std::uint64_t i = begin; i < end; ++i) {
                    fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
}

double percentile(const std::vector<double>& sorted, double level) {
    // Linear interpolation between order statistics (the common "type 7"
    // definition), deterministic and exact at the endpoints.
    const double pos = level * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    if (lo == hi) {
        return sorted[lo];
    }
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

BootstrapResult bootstrap_ci(const LabeledCounts& counts, const Statistic& statistic,
                             const ResampleConfig& config) {
    config.validate();
    counts.require_both_labels();
    const std::uint64_t total0 = counts.total0();
    const std::uint64_t total1 = counts.total1();

    BootstrapResult result;
    result.point = statistic(counts);

    std::vector<double> replicates(config.bootstrap_replicates);
    for_each_index(config.bootstrap_replicates, config.threads, [&](std::uint64_t r) {
        Rng rng(derive_seed(config.seed, "bootstrap", r));
        LabeledCounts replicate(counts.n);
        sample_multinomial(rng, total0, counts.counts0, replicate.counts0);
        sample_multinomial(rng, total1, counts.counts1, replicate.counts1);
        try {
            replicates[r] = statistic(replicate);
        } catch (const std::exception& e) {
            throw DataError("bootstrap replicate " + std::to_string(r) + ": " + e.what());
        }
    });

    std::sort(replicates.begin(), replicates.end());
    const double alpha = (1.0 - config.ci_level) / 2.0;
    result.ci_low = percentile(replicates, alpha);
    result.ci_high = percentile(replicates, 1.0 - alpha);
    return result;
}

PermutationResult permutation_test(const LabeledCounts& counts, const Statistic& statistic,
                                   const ResampleConfig& config) {
    config.validate();
    counts.require_both_labels();
    const std::uint64_t total0 = counts.total0();
    const std::uint64_t total1 = counts.total1();
    if (total0 + total1 < 2) {
        throw DataError("invariant: permutation test needs at least 2 shots");
    }

    const double observed = statistic(counts);

    // Pooled outcome histogram. A uniform label shuffle keeps both multisets
    // fixed, so the per-cell label-0 occupancy is a without-replacement draw
    // of total0 shots from the pool.
    std::vector<std::uint64_t> pooled(counts.counts0.size());
    for (std::size_t x = 0; x < pooled.size(); ++x) {
        pooled[x] = counts.counts0[x] + counts.counts1[x];
    }

    std::vector<std::uint8_t> reached(config.permutation_shuffles, 0);
    for_each_index(config.permutation_shuffles, config.threads, [&](std::uint64_t s) {
        Rng rng(derive_seed(config.seed, "permutation", s));
        LabeledCounts shuffled(counts.n);
        sample_hypergeometric_split(rng, total0, pooled, shuffled.counts0);
        for (std::size_t x = 0; x < pooled.size(); ++x) {
            shuffled.counts1[x] = pooled[x] - shuffled.counts0[x];
        }
        double value;
        try {
            value = statistic(shuffled);
        } catch (const std::exception& e) {
            throw DataError("permutation shuffle " + std::to_string(s) + ": " + e.what());
        }
        reached[s] = value >= observed ? 1 : 0;
    });

    std::uint64_t hits = 0;
    for (const std::uint8_t r : reached) {
        hits += r;
    }
    PermutationResult result;
    result.p_value = static_cast<double>(1 + hits) / static_cast<double>(1 + config.permutation_shuffles);
    result.p_is_floor = hits == 0;
    if (result.p_is_floor) {
        // Reported as p <= 1/shuffles.
        result.p_value = 1.0 / static_cast<double>(config.permutation_shuffles);
    }
    return result;
}

ResampleReport resample_report(const LabeledCounts& counts, const Statistic& statistic,
                               const ResampleConfig& config) {
    const BootstrapResult boot = bootstrap_ci(counts, statistic, config);
    const PermutationResult perm = permutation_test(counts, statistic, config);
    ResampleReport report;
    report.point = boot.point;
    report.ci_low = boot.ci_low;
    report.ci_high = boot.ci_high;
    report.p_value = perm.p_value;
    report.p_is_floor = perm.p_is_floor;
    report.bootstrap_replicates = config.bootstrap_replicates;
    report.permutation_shuffles = config.permutation_shuffles;
    report.ci_level = config.ci_level;
    return report;
}

Statistic make_lattice_statistic(StatKind kind, SubsetId subset, PriorMode prior) {
    return [kind, subset, prior](const LabeledCounts& counts) {
        if (kind == StatKind::G) {
            return mutual_information(counts, subset, prior);
        }
        return decompose(counts, prior).f_of(subset);
    };
}

std::pair<StatKind, SubsetId> parse_statistic_selector(const std::string& selector, int n) {
    const auto colon = selector.find(':');
    if (colon == std::string::npos || colon == 0) {
        throw DataError("parse-error: statistic selector must look like \"f:123\" or \"g:12\"");
    }
    const std::string kind_text = selector.substr(0, colon);
    StatKind kind;
    if (kind_text == "f") {
        kind = StatKind::F;
    } else if (kind_text == "g") {
        kind = StatKind::G;
    } else {
        throw DataError("parse-error: unknown statistic kind \"" + kind_text + "\"");
    }
    const std::string vars = selector.substr(colon + 1);
    if (vars == "full") {
        return {kind, static_cast<SubsetId>((std::uint32_t{1} << n) - 1)};
    }
    SubsetId subset = 0;
    int value = 0;
    bool in_number = false;
    auto flush = [&] {
        if (!in_number) {
            return;
        }
        if (value < 1 || value > n) {
            throw DataError("parse-error: statistic variable " + std::to_string(value) +
                            " outside [1, " + std::to_string(n) + "]");
        }
        subset |= SubsetId{1} << (value - 1);
        value = 0;
        in_number = false;
    };
    for (const char c : vars) {
        if (c >= '0' && c <= '9') {
            // Without separators each digit is one variable; with commas,
            // multi-digit variable indices are allowed.
            if (vars.find(',') == std::string::npos) {
                value = c - '0';
                in_number = true;
                flush();
            } else {
                value = value * 10 + (c - '0');
                in_number = true;
            }
        } else if (c == ',') {
            flush();
        } else {
            throw DataError("parse-error: bad character in statistic selector \"" + selector + "\"");
        }
    }
    flush();
    if (subset == 0) {
        throw DataError("parse-error: statistic selector names no variables");
    }
    return {kind, subset};
}

}  // namespace mobius
