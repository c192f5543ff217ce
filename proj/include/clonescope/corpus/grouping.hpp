#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "clonescope/classifier/gbdt.hpp"
#include "clonescope/frontend/ast.hpp"
#include "clonescope/similarity.hpp"

namespace clonescope::corpus {

struct FunctionGroup {
    std::size_t group_id = 0;
    std::size_t template_index = 0;    ///< index into the input list
    std::vector<std::size_t> members;  ///< ascending, includes template_index
};

struct GroupOptions {
    double delta = similarity::kDefaultDelta;
    double tau = similarity::kDefaultMatchThreshold;
    similarity::AggregationMode mode = similarity::AggregationMode::Proportion;
};

/// Greedy first fit: each function joins the first group whose template it is
/// a clone of, else founds a new group. Functions without statements only
/// group with other empty functions.
std::vector<FunctionGroup> group_corpus(std::span<const FunctionAst> functions, const gbdt::GbdtModel& model,
                                        const GroupOptions& options = {});

nlohmann::ordered_json groups_to_json(std::span<const FunctionGroup> groups, std::span<const std::string> names);

}  // namespace clonescope::corpus
