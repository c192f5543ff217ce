#include "clonescope/classifier/model_io.hpp"

#include <cstdio>
#include <fstream>

#include "clonescope/error.hpp"
#include "clonescope/frontend/ast_json.hpp"
#include "clonescope/rng.hpp"

namespace clonescope::gbdt {

nlohmann::ordered_json model_to_json(const GbdtModel& m) {
    nlohmann::ordered_json trees = nlohmann::ordered_json::array();
    for (const auto& t : m.trees) {
        nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
        for (const auto& n : t.nodes) {
            if (n.is_leaf())
                nodes.push_back({{"depth", n.depth}, {"value", n.value}});
            else
                nodes.push_back({{"depth", n.depth}, {"feature", n.feature}, {"threshold", n.threshold},
                                 {"left", n.left}, {"right", n.right}});
        }
        trees.push_back({{"nodes", std::move(nodes)}});
    }
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["hyper"] = to_json(m.hyper);
    j["base_score"] = m.base_score;
    j["num_features"] = kNumFeatures;
    j["trees"] = std::move(trees);
    j["split_counts"] = m.split_counts;
    return j;
}

GbdtModel model_from_json(const nlohmann::ordered_json& j) {
    try {
        if (j.value("num_features", kNumFeatures) != kNumFeatures)
            throw DimensionMismatch(kNumFeatures, j.at("num_features").get<std::size_t>());
        GbdtModel m;
        m.hyper = hyper_from_json(j.at("hyper"));
        m.base_score = j.at("base_score").get<double>();
        for (const auto& jt : j.at("trees")) {
            RegressionTree t;
            for (const auto& jn : jt.at("nodes")) {
                TreeNode n;
                n.depth = jn.value("depth", 0);
                if (jn.contains("feature")) {
                    n.feature = jn.at("feature").get<int>();
                    n.threshold = jn.at("threshold").get<double>();
                    n.left = jn.at("left").get<int>();
                    n.right = jn.at("right").get<int>();
                } else {
                    n.value = jn.at("value").get<double>();
                }
                t.nodes.push_back(n);
            }
            const auto count = static_cast<int>(t.nodes.size());
            for (const auto& n : t.nodes)
                if (!n.is_leaf() && (n.feature >= static_cast<int>(kNumFeatures) || n.left <= 0 || n.right <= 0 ||
                                     n.left >= count || n.right >= count))
                    throw Error("malformed tree node in model");
            if (t.nodes.empty()) throw Error("empty tree in model");
            m.trees.push_back(std::move(t));
        }
        m.split_counts = j.at("split_counts").get<std::array<std::uint64_t, kNumFeatures>>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid model JSON: ") + e.what());
    }
}

void save_model(const GbdtModel& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << model_to_json(m).dump(1) << "\n";
}

GbdtModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(path.string() + ": " + e.what());
    }
    return model_from_json(j);
}

std::string model_id(const GbdtModel& m) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(model_to_json(m).dump())));
    return buf;
}

}  // namespace clonescope::gbdt
