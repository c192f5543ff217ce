#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "clonescope/classifier/gbdt.hpp"

namespace clonescope::corpus {

enum class Origin { Human, SyntheticTransform, Heuristic };

std::string_view origin_name(Origin o) noexcept;

/// Labeled pair of function texts.
struct PairRecord {
    std::string id;
    std::string source_a;
    std::string source_b;
    int label = 0;
    Origin origin = Origin::Human;

    bool operator==(const PairRecord&) const = default;
};

nlohmann::ordered_json to_json(const PairRecord& r);

/// JSONL, one record per line; blank lines are ignored. Throws SchemaError
/// naming the 1-based line of the first bad record.
std::vector<PairRecord> read_pairs(std::istream& in);
std::vector<PairRecord> load_pairs(const std::filesystem::path& path);
void write_pairs(std::ostream& out, std::span<const PairRecord> records);
void save_pairs(const std::filesystem::path& path, std::span<const PairRecord> records);

/// Feature-level records {"x": [24 numbers], "y": 0|1}.
std::vector<gbdt::LabeledPair> read_labeled(std::istream& in);
std::vector<gbdt::LabeledPair> load_labeled(const std::filesystem::path& path);
void save_labeled(const std::filesystem::path& path, std::span<const gbdt::LabeledPair> data);

}  // namespace clonescope::corpus
