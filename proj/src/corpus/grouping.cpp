#include "clonescope/corpus/grouping.hpp"

#include "clonescope/features.hpp"
#include "clonescope/frontend/ast_json.hpp"
#include "clonescope/statement_tree.hpp"

namespace clonescope::corpus {

std::vector<FunctionGroup> group_corpus(std::span<const FunctionAst> functions, const gbdt::GbdtModel& model,
                                        const GroupOptions& options) {
    struct Prepared {
        std::vector<stree::StatementTree> trees;
        std::vector<features::FeatureSet> features;
    };
    std::vector<Prepared> prepared(functions.size());
    for (std::size_t i = 0; i < functions.size(); ++i) {
        prepared[i].trees = stree::decompose(functions[i]);
        for (const auto& t : prepared[i].trees) prepared[i].features.push_back(features::extract_features(t));
    }

    auto is_clone = [&](std::size_t a, std::size_t b) {
        const auto& pa = prepared[a];
        const auto& pb = prepared[b];
        if (pa.trees.empty() || pb.trees.empty()) return pa.trees.empty() && pb.trees.empty();
        const auto m = similarity::compare_trees(pa.trees, pa.features, pb.trees, pb.features, model);
        const auto s = similarity::aggregate(m, options.mode, options.tau);
        return similarity::verdict(s.s_a, s.s_b, options.delta) == similarity::Verdict::Clone;
    };

    std::vector<FunctionGroup> groups;
    for (std::size_t i = 0; i < functions.size(); ++i) {
        bool placed = false;
        for (auto& g : groups) {
            if (is_clone(g.template_index, i)) {
                g.members.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({groups.size(), i, {i}});
    }
    return groups;
}

nlohmann::ordered_json groups_to_json(std::span<const FunctionGroup> groups, std::span<const std::string> names) {
    auto name = [&](std::size_t i) { return i < names.size() ? names[i] : std::to_string(i); };
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& g : groups) {
        nlohmann::ordered_json members = nlohmann::ordered_json::array();
        for (auto m : g.members) members.push_back(name(m));
        list.push_back({{"group_id", g.group_id}, {"template", name(g.template_index)}, {"size", g.members.size()},
                        {"members", std::move(members)}});
    }
    return {{"schema_version", kSchemaVersion}, {"groups", std::move(list)}};
}

}  // namespace clonescope::corpus
