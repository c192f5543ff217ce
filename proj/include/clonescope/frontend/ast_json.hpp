#pragma once

#include <json.hpp>

#include "clonescope/frontend/ast.hpp"

namespace clonescope {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

ordered_json span_to_json(const SourceSpan& span);
SourceSpan span_from_json(const ordered_json& j);

/// {kind, value, span:{sl,sc,el,ec}, children:[...]}; value is null when absent.
ordered_json ast_to_json(const AstNode& node);
AstNode ast_from_json(const ordered_json& j);

}  // namespace clonescope
