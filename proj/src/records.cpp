#include "mobius/records.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace mobius {

namespace {

constexpr const char* kSchemaId = "mobius-falsify/1";

void require_width(int n) {
    if (n < kMinVariables || n > kMaxVariables) {
        throw DataError("invariant: variable count " + std::to_string(n) + " outside [" +
                        std::to_string(kMinVariables) + ", " + std::to_string(kMaxVariables) + "]");
    }
}

}  // namespace

LabeledCounts::LabeledCounts(int n_vars) : n(n_vars) {
    require_width(n_vars);
    counts0.assign(std::size_t{1} << n_vars, 0);
    counts1.assign(std::size_t{1} << n_vars, 0);
}

std::uint64_t LabeledCounts::total0() const {
    return std::accumulate(counts0.begin(), counts0.end(), std::uint64_t{0});
}

std::uint64_t LabeledCounts::total1() const {
    return std::accumulate(counts1.begin(), counts1.end(), std::uint64_t{0});
}

void LabeledCounts::require_both_labels() const {
    if (total0() == 0 || total1() == 0) {
        throw DataError("invariant: degenerate dataset, both labels must carry shots");
    }
}

bool is_identity_perm(const std::vector<int>& perm) {
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] != static_cast<int>(i)) {
            return false;
        }
    }
    return true;
}

std::vector<int> identity_perm(int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    return perm;
}

void validate_role_perm(const std::vector<int>& perm, int n) {
    if (static_cast<int>(perm.size()) != n) {
        throw DataError("invariant: role_perm has length " + std::to_string(perm.size()) +
                        ", expected " + std::to_string(n));
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const int v : perm) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
            throw DataError("invariant: role_perm is not a bijection on {0,...," +
                            std::to_string(n - 1) + "}");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

CircuitRecord unmask(const CircuitRecord& record, int n) {
    CircuitRecord out = record;
    if (record.mask != 0) {
        const std::size_t cells = std::size_t{1} << n;
        for (std::size_t x = 0; x < cells; ++x) {
            out.raw_counts[x ^ record.mask] = record.raw_counts[x];
        }
        out.mask = 0;
    }
    return out;
}

CircuitRecord unrotate(const CircuitRecord& record, int n) {
    CircuitRecord out = record;
    if (!is_identity_perm(record.role_perm)) {
        const std::size_t cells = std::size_t{1} << n;
        std::fill(out.raw_counts.begin(), out.raw_counts.end(), 0);
        for (std::size_t x = 0; x < cells; ++x) {
            if (record.raw_counts[x] == 0) {
                continue;
            }
            // Logical variable i is read from physical position role_perm[i].
            std::uint32_t logical = 0;
            for (int i = 0; i < n; ++i) {
                const int bit = outcome_bit(static_cast<std::uint32_t>(x),
                                            record.role_perm[static_cast<std::size_t>(i)]);
                logical = with_outcome_bit(logical, i, bit);
            }
            out.raw_counts[logical] += record.raw_counts[x];
        }
        out.role_perm = identity_perm(n);
    }
    return out;
}

LabeledCounts aggregate(const Dataset& dataset) {
    require_width(dataset.n);
    if (dataset.records.empty()) {
        throw DataError("invariant: dataset holds no records");
    }
    LabeledCounts counts(dataset.n);
    const std::size_t cells = std::size_t{1} << dataset.n;
    for (const CircuitRecord& record : dataset.records) {
        if (record.raw_counts.size() != cells) {
            throw DataError("invariant: record " + record.circuit_id + " width mismatches dataset n=" +
                            std::to_string(dataset.n));
        }
        const CircuitRecord corrected = unrotate(unmask(record, dataset.n), dataset.n);
        auto& bucket = counts.counts(record.label);
        for (std::size_t x = 0; x < cells; ++x) {
            bucket[x] += corrected.raw_counts[x];
        }
    }
    counts.require_both_labels();
    return counts;
}

namespace {

using nlohmann::json;

Dataset dataset_from_json(const json& doc, BitOrder order) {
    if (!doc.is_object() || !doc.contains("schema") || !doc["schema"].is_string()) {
        throw DataError("parse-error: dataset file lacks a \"schema\" string");
    }
    if (doc["schema"].get<std::string>() != kSchemaId) {
        throw DataError("schema-version: expected \"" + std::string(kSchemaId) + "\", found \"" +
                        doc["schema"].get<std::string>() + "\"");
    }
    if (!doc.contains("n") || !doc["n"].is_number_integer()) {
        throw DataError("parse-error: dataset file lacks an integer \"n\"");
    }
    Dataset dataset;
    dataset.n = doc["n"].get<int>();
    require_width(dataset.n);
    if (doc.contains("provenance")) {
        dataset.provenance = doc["provenance"].get<std::string>();
    }
    if (!doc.contains("records") || !doc["records"].is_array() || doc["records"].empty()) {
        throw DataError("parse-error: dataset file lacks a nonempty \"records\" array");
    }
    const std::size_t cells = std::size_t{1} << dataset.n;
    bool saw_label[2] = {false, false};
    for (const json& entry : doc["records"]) {
        CircuitRecord record;
        record.raw_counts.assign(cells, 0);
        const int label = entry.at("label").get<int>();
        if (label != 0 && label != 1) {
            throw DataError("invariant: record label must be 0 or 1");
        }
        record.label = label;
        saw_label[label] = true;
        record.mask = entry.contains("mask")
                          ? parse_outcome(entry["mask"].get<std::string>(), dataset.n, order)
                          : 0u;
        if (entry.contains("role_perm")) {
            record.role_perm = entry["role_perm"].get<std::vector<int>>();
            validate_role_perm(record.role_perm, dataset.n);
        } else {
            record.role_perm = identity_perm(dataset.n);
        }
        record.shots = entry.at("shots").get<std::uint64_t>();
        if (record.shots == 0) {
            throw DataError("invariant: record shots must be positive");
        }
        record.circuit_id = entry.contains("circuit_id") ? entry["circuit_id"].get<std::string>() : "";
        std::uint64_t total = 0;
        for (const auto& [key, value] : entry.at("counts").items()) {
            const std::uint32_t outcome = parse_outcome(key, dataset.n, order);
            if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
                throw DataError("invariant: count for outcome \"" + key + "\" must be a nonnegative integer");
            }
            const std::uint64_t c = value.get<std::uint64_t>();
            record.raw_counts[outcome] += c;
            total += c;
        }
        if (total != record.shots) {
            throw DataError("invariant: record " + record.circuit_id + " counts sum to " +
                            std::to_string(total) + " but shots field says " +
                            std::to_string(record.shots));
        }
        dataset.records.push_back(std::move(record));
    }
    if (!saw_label[0] || !saw_label[1]) {
        throw DataError("invariant: dataset must contain records for both labels");
    }
    return dataset;
}

}  // namespace

Dataset parse_dataset(const std::string& json_text, BitOrder order) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("parse-error: ") + e.what());
    }
    return dataset_from_json(doc, order);
}

Dataset load_dataset(const std::string& path, BitOrder order) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("parse-error: cannot open file \"" + path + "\"");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dataset(buffer.str(), order);
}

std::string serialize_dataset(const Dataset& dataset) {
    json doc;
    doc["schema"] = kSchemaId;
    doc["n"] = dataset.n;
    if (!dataset.provenance.empty()) {
        doc["provenance"] = dataset.provenance;
    }
    json records = json::array();
    const std::size_t cells = std::size_t{1} << dataset.n;
    for (const CircuitRecord& record : dataset.records) {
        json entry;
        entry["label"] = record.label;
        entry["mask"] = format_outcome(record.mask, dataset.n);
        entry["role_perm"] = record.role_perm;
        entry["shots"] = record.shots;
        entry["circuit_id"] = record.circuit_id;
        json counts = json::object();
        for (std::size_t x = 0; x < cells; ++x) {
            if (record.raw_counts[x] != 0) {
                counts[format_outcome(static_cast<std::uint32_t>(x), dataset.n)] = record.raw_counts[x];
            }
        }
        entry["counts"] = std::move(counts);
        records.push_back(std::move(entry));
    }
    doc["records"] = std::move(records);
    return doc.dump(2) + "\n";
}

void save_dataset(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("parse-error: cannot open file \"" + path + "\" for writing");
    }
    out << serialize_dataset(dataset);
    if (!out) {
        throw DataError("parse-error: failed writing \"" + path + "\"");
    }
}

}  // namespace mobius
