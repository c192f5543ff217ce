#include "clonescope/corpus/transforms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "clonescope/frontend/parser.hpp"
#include "clonescope/frontend/token.hpp"

namespace clonescope::corpus {

namespace {

using frontend::Token;
using frontend::TokenKind;

constexpr std::array<std::string_view, kTransformCount> kNames = {
    "rename-identifiers", "reorder-independent-statements", "insert-dead-code", "constant-perturbation",
};

const std::set<std::string_view>& builtins() {
    static const std::set<std::string_view> s = {
        "msg",       "block",     "tx",        "this",      "super",  "now",       "require",
        "assert",    "revert",    "keccak256", "sha3",      "sha256", "ripemd160", "ecrecover",
        "addmod",    "mulmod",    "abi",       "selfdestruct", "suicide", "gasleft", "blockhash",
        "_",
    };
    return s;
}

// Rebuilds text with some tokens replaced, keeping every byte in between.
std::string splice(std::string_view source, const std::vector<Token>& tokens,
                   const std::map<std::size_t, std::string>& replacements) {
    std::string out;
    std::size_t pos = 0;
    for (const auto& [index, text] : replacements) {
        const auto& tok = tokens[index];
        out.append(source.substr(pos, tok.offset - pos));
        out.append(text);
        pos = tok.offset + tok.lexeme.size();
    }
    out.append(source.substr(pos));
    return out;
}

std::vector<std::size_t> line_starts(std::string_view s) {
    std::vector<std::size_t> starts{0};
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '\n') starts.push_back(i + 1);
    return starts;
}

struct StatementRange {
    std::size_t begin = 0;  // byte offsets, end exclusive
    std::size_t end = 0;
    const AstNode* node = nullptr;
};

std::vector<StatementRange> statement_ranges(std::string_view source, const FunctionAst& fn) {
    const auto starts = line_starts(source);
    std::vector<StatementRange> out;
    for (const auto& stmt : fn.body.children) {
        const auto& s = stmt.span;
        out.push_back({starts[static_cast<std::size_t>(s.start_line - 1)] + static_cast<std::size_t>(s.start_col - 1),
                       starts[static_cast<std::size_t>(s.end_line - 1)] + static_cast<std::size_t>(s.end_col), &stmt});
    }
    return out;
}

// Base variable written by an assignment target: a in a, a[i], a.b, a[i][j].
const AstNode* target_root(const AstNode& e) {
    const AstNode* n = &e;
    while ((n->kind == NodeKind::IndexAccess || n->kind == NodeKind::MemberAccess) && !n->children.empty())
        n = &n->children.front();
    return n->kind == NodeKind::Identifier ? n : nullptr;
}

struct Effects {
    std::set<std::string> reads;
    std::set<std::string> writes;
    bool movable = true;
};

bool pure_call(const AstNode& call) {
    const auto& callee = call.children.front();
    if (callee.kind == NodeKind::ElementaryTypeName) return true;  // conversion
    if (callee.kind == NodeKind::Identifier) return callee.value == "require" || callee.value == "assert";
    if (callee.kind == NodeKind::MemberAccess) {
        static const std::set<std::string> math = {"add", "sub", "mul", "div", "mod"};
        return callee.value && math.contains(*callee.value);
    }
    return false;
}

void collect(const AstNode& n, Effects& fx) {
    switch (n.kind) {
        case NodeKind::Identifier:
            fx.reads.insert(*n.value);
            return;
        case NodeKind::FunctionCall:
            if (!pure_call(n)) fx.movable = false;
            break;
        case NodeKind::Assignment:
            if (const auto* root = target_root(n.children.front()))
                fx.writes.insert(*root->value);
            else
                fx.movable = false;
            break;
        case NodeKind::UnaryOperation:
            if (n.value == "++" || n.value == "--" || n.value == "delete") {
                const auto& operand = n.children.front().kind == NodeKind::Operator ? n.children.back() : n.children.front();
                if (const auto* root = target_root(operand))
                    fx.writes.insert(*root->value);
                else
                    fx.movable = false;
            }
            break;
        case NodeKind::NewExpression:
        case NodeKind::InlineAssembly:
            fx.movable = false;
            break;
        default:
            break;
    }
    for (const auto& c : n.children) collect(c, fx);
}

Effects effects_of(const AstNode& stmt) {
    Effects fx;
    if (stmt.kind == NodeKind::VariableDeclarationStatement) {
        for (const auto& c : stmt.children) {
            if (c.kind == NodeKind::Identifier && fx.writes.empty())
                fx.writes.insert(*c.value);
            else
                collect(c, fx);
        }
        return fx;
    }
    if (stmt.kind != NodeKind::ExpressionStatement) {
        fx.movable = false;
        return fx;
    }
    collect(stmt, fx);
    return fx;
}

bool intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::any_of(a.begin(), a.end(), [&](const std::string& x) { return b.contains(x); });
}

bool independent(const Effects& a, const Effects& b) {
    if (!a.movable || !b.movable) return false;
    return !intersects(a.writes, b.reads) && !intersects(a.writes, b.writes) && !intersects(b.writes, a.reads);
}

}  // namespace

std::string_view transform_name(Transform t) noexcept { return kNames[static_cast<std::size_t>(t)]; }

std::optional<Transform> transform_from_name(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name) return static_cast<Transform>(i);
    return std::nullopt;
}

std::vector<Transform> all_transforms() {
    return {Transform::RenameIdentifiers, Transform::ReorderIndependentStatements, Transform::InsertDeadCode,
            Transform::ConstantPerturbation};
}

std::string rename_identifiers(std::string_view source) {
    const auto tokens = frontend::tokenize(source);

    // names in type position keep their spelling: `Foo x`, `Foo[] x`, `mapping(Foo => ...)`
    std::set<std::string> type_names;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        if (tokens[i].kind != TokenKind::Identifier) continue;
        const auto& next = tokens[i + 1];
        const bool before_decl = next.kind == TokenKind::Identifier ||
                                 (next.kind == TokenKind::Keyword &&
                                  (next.lexeme == "memory" || next.lexeme == "storage" || next.lexeme == "calldata"));
        const bool array_type = next.is_punct("[") && i + 2 < tokens.size() && tokens[i + 2].is_punct("]");
        if (before_decl || array_type || next.is_punct("=>")) type_names.insert(tokens[i].lexeme);
    }

    std::map<std::string, std::string> names;
    std::map<std::size_t, std::string> replacements;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        if (t.kind != TokenKind::Identifier) continue;
        if (builtins().contains(t.lexeme) || type_names.contains(t.lexeme)) continue;
        if (i > 0 && tokens[i - 1].is_punct(".")) continue;
        auto it = names.find(t.lexeme);
        if (it == names.end()) it = names.emplace(t.lexeme, "a" + std::to_string(names.size())).first;
        replacements.emplace(i, it->second);
    }
    return splice(source, tokens, replacements);
}

std::string reorder_independent_statements(std::string_view function_source, Rng& rng) {
    const auto fn = frontend::parse_function(function_source);
    const auto ranges = statement_ranges(function_source, fn);
    std::vector<Effects> fx;
    for (const auto& r : ranges) fx.push_back(effects_of(*r.node));

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i + 1 < ranges.size(); ++i)
        if (independent(fx[i], fx[i + 1])) candidates.push_back(i);
    if (candidates.empty()) return std::string(function_source);

    const std::size_t i = candidates[rng.index(candidates.size())];
    const auto& a = ranges[i];
    const auto& b = ranges[i + 1];
    std::string out(function_source.substr(0, a.begin));
    out.append(function_source.substr(b.begin, b.end - b.begin));
    out.append(function_source.substr(a.end, b.begin - a.end));
    out.append(function_source.substr(a.begin, a.end - a.begin));
    out.append(function_source.substr(b.end));
    return out;
}

std::string insert_dead_code(std::string_view function_source, Rng& rng, double fraction) {
    const auto fn = frontend::parse_function(function_source);
    const auto ranges = statement_ranges(function_source, fn);
    const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(ranges.size()) + 1e-9));
    if (count == 0) return std::string(function_source);

    // positions before which to insert, one insertion per chosen statement
    std::vector<std::size_t> order(ranges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order.begin(), order.end());
    std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count));
    std::sort(chosen.begin(), chosen.end());

    std::string out;
    std::size_t pos = 0;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        const auto& r = ranges[chosen[k]];
        const std::string decl = "uint __d" + std::to_string(k) + " = 0;";
        const std::size_t line_begin = function_source.rfind('\n', r.begin == 0 ? 0 : r.begin - 1);
        const std::size_t lb = line_begin == std::string_view::npos ? 0 : line_begin + 1;
        const auto indent = function_source.substr(lb, r.begin - lb);
        const bool own_line = indent.find_first_not_of(" \t") == std::string_view::npos;
        out.append(function_source.substr(pos, r.begin - pos));
        if (own_line) {
            out.append(decl).append("\n").append(indent);
        } else {
            out.append(decl).append(" ");
        }
        pos = r.begin;
    }
    out.append(function_source.substr(pos));
    return out;
}

std::string perturb_constants(std::string_view function_source, Rng& rng) {
    const auto tokens = frontend::tokenize(function_source);
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        if (t.kind != TokenKind::Number || t.lexeme.size() > 15) continue;
        if (!std::all_of(t.lexeme.begin(), t.lexeme.end(), [](char c) { return c >= '0' && c <= '9'; })) continue;
        if (std::stoll(t.lexeme) >= 2) eligible.push_back(i);
    }
    if (eligible.empty()) return std::string(function_source);

    std::map<std::size_t, std::string> replacements;
    for (auto i : eligible)
        if (rng.bernoulli(0.5)) replacements.emplace(i, "");
    if (replacements.empty()) replacements.emplace(eligible[rng.index(eligible.size())], "");
    for (auto& [i, text] : replacements) text = std::to_string(std::stoll(tokens[i].lexeme) + rng.uniform_int(1, 9));
    return splice(function_source, tokens, replacements);
}

std::string apply_transform(Transform t, std::string_view function_source, Rng& rng) {
    switch (t) {
        case Transform::RenameIdentifiers: return rename_identifiers(function_source);
        case Transform::ReorderIndependentStatements: return reorder_independent_statements(function_source, rng);
        case Transform::InsertDeadCode: return insert_dead_code(function_source, rng);
        case Transform::ConstantPerturbation: return perturb_constants(function_source, rng);
    }
    return std::string(function_source);
}

}  // namespace clonescope::corpus
