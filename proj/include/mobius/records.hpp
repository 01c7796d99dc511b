#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mobius/bitops.hpp"

namespace mobius {

// Per-label histogram over n-bit outcome words. Histograms are stored dense
// (2^n cells); n is capped at 16 so every exact computation stays desk-scale.
struct LabeledCounts {
    int n = 0;
    std::vector<std::uint64_t> counts0;
    std::vector<std::uint64_t> counts1;

    LabeledCounts() = default;
    explicit LabeledCounts(int n_vars);

    std::uint64_t total0() const;
    std::uint64_t total1() const;

    std::vector<std::uint64_t>& counts(int label) { return label == 0 ? counts0 : counts1; }
    const std::vector<std::uint64_t>& counts(int label) const {
        return label == 0 ? counts0 : counts1;
    }

    // Throws DataError unless both labels have positive totals.
    void require_both_labels() const;
};

// One executed circuit variant: raw counts in the hardware frame, together
// with the twirl mask and role permutation needed to undo that frame.
struct CircuitRecord {
    int label = 0;
    std::uint32_t mask = 0;
    std::vector<int> role_perm;  // role_perm[i] = physical position holding logical variable i
    std::vector<std::uint64_t> raw_counts;  // dense, 2^n cells
    std::string circuit_id;
    std::uint64_t shots = 0;
};

struct Dataset {
    int n = 0;
    std::vector<CircuitRecord> records;
    std::string provenance;
};

bool is_identity_perm(const std::vector<int>& perm);
std::vector<int> identity_perm(int n);

// Throws DataError if perm is not a bijection on {0,...,n-1}.
void validate_role_perm(const std::vector<int>& perm, int n);

// XOR-relabels every outcome key by the record's mask and zeroes the mask.
// Counts are preserved per relabeled key.
CircuitRecord unmask(const CircuitRecord& record, int n);

// Reads logical variable i from physical position role_perm[i] (the inverse
// of the rotation applied at generation time), then sets role_perm to the
// identity.
CircuitRecord unrotate(const CircuitRecord& record, int n);

// unmask + unrotate every record, then sum into per-label histograms.
// Throws DataError when a label is missing or a record width mismatches.
LabeledCounts aggregate(const Dataset& dataset);

// Dataset file I/O. Schema "mobius-falsify/1": UTF-8 JSON with MSB-first
// bitstrings by default; `order` lets callers flip the orientation when a
// source wrote its strings least-significant-variable first.
Dataset load_dataset(const std::string& path, BitOrder order = BitOrder::MsbFirst);
Dataset parse_dataset(const std::string& json_text, BitOrder order = BitOrder::MsbFirst);
void save_dataset(const Dataset& dataset, const std::string& path);
std::string serialize_dataset(const Dataset& dataset);

}  // namespace mobius
