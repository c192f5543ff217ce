#include "clonescope/corpus/pairs_io.hpp"

#include <cmath>
#include <fstream>

#include "clonescope/error.hpp"

namespace clonescope::corpus {

namespace {

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

nlohmann::json parse_line(const std::string& line, std::size_t lineno) {
    try {
        auto j = nlohmann::json::parse(line);
        if (!j.is_object()) throw SchemaError(lineno, "record is not a JSON object");
        return j;
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(lineno, std::string("malformed JSON: ") + e.what());
    }
}

int read_label(const nlohmann::json& j, const char* key, std::size_t lineno) {
    if (!j.contains(key)) throw SchemaError(lineno, std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1))
        throw SchemaError(lineno, std::string("field '") + key + "' must be 0 or 1");
    return v.get<int>();
}

std::string read_string(const nlohmann::json& j, const char* key, std::size_t lineno) {
    if (!j.contains(key)) throw SchemaError(lineno, std::string("missing field '") + key + "'");
    if (!j.at(key).is_string()) throw SchemaError(lineno, std::string("field '") + key + "' must be a string");
    return j.at(key).get<std::string>();
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

}  // namespace

std::string_view origin_name(Origin o) noexcept {
    switch (o) {
        case Origin::Human: return "human";
        case Origin::SyntheticTransform: return "synthetic-transform";
        case Origin::Heuristic: return "heuristic";
    }
    return "human";
}

nlohmann::ordered_json to_json(const PairRecord& r) {
    return {{"id", r.id}, {"source_a", r.source_a}, {"source_b", r.source_b}, {"label", r.label},
            {"origin", origin_name(r.origin)}};
}

std::vector<PairRecord> read_pairs(std::istream& in) {
    std::vector<PairRecord> out;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (blank(line)) continue;
        const auto j = parse_line(line, lineno);
        PairRecord r;
        r.id = read_string(j, "id", lineno);
        r.source_a = read_string(j, "source_a", lineno);
        r.source_b = read_string(j, "source_b", lineno);
        r.label = read_label(j, "label", lineno);
        const auto origin = read_string(j, "origin", lineno);
        if (origin == "human")
            r.origin = Origin::Human;
        else if (origin == "synthetic-transform")
            r.origin = Origin::SyntheticTransform;
        else if (origin == "heuristic")
            r.origin = Origin::Heuristic;
        else
            throw SchemaError(lineno, "unknown origin '" + origin + "'");
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<PairRecord> load_pairs(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_pairs(in);
}

void write_pairs(std::ostream& out, std::span<const PairRecord> records) {
    for (const auto& r : records) out << to_json(r).dump() << "\n";
}

void save_pairs(const std::filesystem::path& path, std::span<const PairRecord> records) {
    auto out = open_out(path);
    write_pairs(out, records);
}

std::vector<gbdt::LabeledPair> read_labeled(std::istream& in) {
    std::vector<gbdt::LabeledPair> out;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (blank(line)) continue;
        const auto j = parse_line(line, lineno);
        if (!j.contains("x") || !j.at("x").is_array()) throw SchemaError(lineno, "missing array field 'x'");
        const auto& x = j.at("x");
        if (x.size() != gbdt::kNumFeatures)
            throw SchemaError(lineno, "'x' must have " + std::to_string(gbdt::kNumFeatures) + " entries");
        gbdt::LabeledPair p;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!x[i].is_number() || !std::isfinite(x[i].get<double>()))
                throw SchemaError(lineno, "'x' entries must be finite numbers");
            p.x[i] = x[i].get<double>();
        }
        p.y = read_label(j, "y", lineno);
        out.push_back(p);
    }
    return out;
}

std::vector<gbdt::LabeledPair> load_labeled(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_labeled(in);
}

void save_labeled(const std::filesystem::path& path, std::span<const gbdt::LabeledPair> data) {
    auto out = open_out(path);
    for (const auto& p : data) out << nlohmann::ordered_json{{"x", p.x}, {"y", p.y}}.dump() << "\n";
}

}  // namespace clonescope::corpus
