#include "clonescope/frontend/ast_json.hpp"

#include "clonescope/error.hpp"

namespace clonescope {

ordered_json span_to_json(const SourceSpan& span) {
    ordered_json j;
    j["sl"] = span.start_line;
    j["sc"] = span.start_col;
    j["el"] = span.end_line;
    j["ec"] = span.end_col;
    return j;
}

SourceSpan span_from_json(const ordered_json& j) {
    return {j.at("sl").get<int>(), j.at("sc").get<int>(), j.at("el").get<int>(), j.at("ec").get<int>()};
}

ordered_json ast_to_json(const AstNode& node) {
    ordered_json j;
    j["kind"] = node_kind_name(node.kind);
    j["value"] = node.value ? ordered_json(*node.value) : ordered_json(nullptr);
    j["span"] = span_to_json(node.span);
    ordered_json children = ordered_json::array();
    for (const auto& c : node.children) children.push_back(ast_to_json(c));
    j["children"] = std::move(children);
    return j;
}

AstNode ast_from_json(const ordered_json& j) {
    AstNode node;
    const auto kind_name = j.at("kind").get<std::string>();
    const auto kind = node_kind_from_name(kind_name);
    if (!kind) throw Error("unknown node kind '" + kind_name + "'");
    node.kind = *kind;
    if (!j.at("value").is_null()) node.value = j.at("value").get<std::string>();
    node.span = span_from_json(j.at("span"));
    for (const auto& c : j.at("children")) node.children.push_back(ast_from_json(c));
    return node;
}

}  // namespace clonescope
