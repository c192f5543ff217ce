// Recursive-descent parser for the supported Solidity subset. Every node's
// span runs from the first to the last token consumed while parsing it, so
// source[span] always re-tokenizes to exactly the node's tokens.

#include "clonescope/frontend/parser.hpp"

#include <array>
#include <utility>

#include "clonescope/error.hpp"
#include "clonescope/frontend/token.hpp"

namespace clonescope::frontend {

namespace {

bool is_data_location(const Token& t) {
    return t.kind == TokenKind::Keyword &&
           (t.lexeme == "memory" || t.lexeme == "storage" || t.lexeme == "calldata");
}

bool is_assignment_op(const Token& t) {
    static constexpr std::array<std::string_view, 12> ops = {
        "=", "+=", "-=", "*=", "/=", "%=", "|=", "&=", "^=", "<<=", ">>=", ">>>="};
    if (t.kind != TokenKind::Punct) return false;
    for (auto op : ops)
        if (t.lexeme == op) return true;
    return false;
}

struct BinaryOp {
    int precedence;
    bool right_assoc;
};

BinaryOp binary_precedence(const Token& t) {
    if (t.kind != TokenKind::Punct) return {0, false};
    const std::string& s = t.lexeme;
    if (s == "||") return {1, false};
    if (s == "&&") return {2, false};
    if (s == "==" || s == "!=") return {3, false};
    if (s == "<" || s == ">" || s == "<=" || s == ">=") return {4, false};
    if (s == "|") return {5, false};
    if (s == "^") return {6, false};
    if (s == "&") return {7, false};
    if (s == "<<" || s == ">>" || s == ">>>") return {8, false};
    if (s == "+" || s == "-") return {9, false};
    if (s == "*" || s == "/" || s == "%") return {10, false};
    if (s == "**") return {11, true};
    return {0, false};
}

// Keywords that begin a construct outside the subset when seen in statement position.
bool is_unsupported_statement_keyword(const Token& t) {
    static constexpr std::array<std::string_view, 14> words = {
        "do",     "try",   "catch", "unchecked", "modifier", "function", "contract",
        "interface", "library", "struct", "enum", "event", "using", "import"};
    if (t.kind != TokenKind::Keyword) return false;
    for (auto w : words)
        if (t.lexeme == w) return true;
    return false;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src), toks_(tokenize(src)) {
        Token eof;
        eof.kind = TokenKind::EndOfFile;
        eof.lexeme = "<eof>";
        eof.offset = src.size();
        if (toks_.empty()) {
            eof.span = {1, 1, 1, 1};
        } else {
            const SourceSpan& last = toks_.back().span;
            eof.span = {last.end_line, last.end_col + 1, last.end_line, last.end_col + 1};
        }
        toks_.push_back(std::move(eof));
    }

    ParseResult run() {
        const std::size_t start = pos_;
        std::vector<AstNode> parts;
        while (!at_eof()) {
            if (at_kw("import")) {
                skip_until_semicolon();
            } else if (at_kw("abstract") || at_kw("contract") || at_kw("interface") || at_kw("library")) {
                parts.push_back(contract_definition());
            } else if (at_kw("function")) {
                contract_.clear();
                parts.push_back(function_definition());
            } else {
                throw ParseError(cur().span, "contract or function definition", cur().lexeme);
            }
        }
        AstNode unit{NodeKind::SourceUnit, std::nullopt, std::move(parts), {}};
        unit.span = toks_.size() > 1 ? SourceSpan::cover(toks_[start].span, toks_[toks_.size() - 2].span)
                                     : SourceSpan{1, 1, 1, 1};
        return {std::move(unit), std::move(functions_)};
    }

private:
    // ---- token cursor -------------------------------------------------------

    const Token& cur() const { return toks_[pos_]; }
    const Token& peek(std::size_t ahead) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    bool at_eof() const { return cur().kind == TokenKind::EndOfFile; }
    bool at_punct(std::string_view p) const { return cur().is_punct(p); }
    bool at_kw(std::string_view k) const { return cur().is_keyword(k); }

    const Token& take() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }

    bool accept_punct(std::string_view p) {
        if (!at_punct(p)) return false;
        take();
        return true;
    }

    const Token& expect_punct(std::string_view p) {
        if (!at_punct(p)) throw ParseError(cur().span, "'" + std::string(p) + "'", cur().lexeme);
        return take();
    }

    const Token& expect_ident(std::string_view what) {
        if (cur().kind != TokenKind::Identifier) throw ParseError(cur().span, std::string(what), cur().lexeme);
        return take();
    }

    SourceSpan span_from(std::size_t start) const {
        return SourceSpan::cover(toks_[start].span, toks_[pos_ - 1].span);
    }

    AstNode node(NodeKind kind, std::size_t start, std::optional<std::string> value = std::nullopt,
                 std::vector<AstNode> children = {}) const {
        return AstNode{kind, std::move(value), std::move(children), span_from(start)};
    }

    AstNode leaf(NodeKind kind, const Token& tok) const {
        return AstNode{kind, tok.lexeme, {}, tok.span};
    }

    void skip_balanced(std::string_view open, std::string_view close) {
        expect_punct(open);
        int depth = 1;
        while (depth > 0) {
            if (at_eof()) throw ParseError(cur().span, "'" + std::string(close) + "'", cur().lexeme);
            if (at_punct(open)) ++depth;
            if (at_punct(close)) --depth;
            take();
        }
    }

    void skip_until_semicolon() {
        while (!at_punct(";")) {
            if (at_eof()) throw ParseError(cur().span, "';'", cur().lexeme);
            if (at_punct("(")) {
                skip_balanced("(", ")");
                continue;
            }
            take();
        }
        take();
    }

    // ---- declarations -------------------------------------------------------

    AstNode contract_definition() {
        const std::size_t start = pos_;
        if (at_kw("abstract")) take();
        take();  // contract | interface | library
        const std::string name = expect_ident("contract name").lexeme;
        std::vector<AstNode> children;
        if (at_kw("is")) {
            take();
            do {
                const std::size_t s = pos_;
                std::string base = expect_ident("base contract name").lexeme;
                while (at_punct(".")) {
                    take();
                    base += "." + expect_ident("identifier").lexeme;
                }
                std::vector<AstNode> args;
                if (at_punct("(")) args.push_back(argument_list());
                children.push_back(node(NodeKind::InheritanceSpecifier, s, base, std::move(args)));
            } while (accept_punct(","));
        }
        expect_punct("{");
        contract_ = name;
        while (!at_punct("}")) {
            if (at_eof()) throw ParseError(cur().span, "'}'", cur().lexeme);
            children.push_back(contract_part());
        }
        take();
        contract_.clear();
        return node(NodeKind::ContractDefinition, start, name, std::move(children));
    }

    AstNode contract_part() {
        if (at_kw("function") || at_kw("constructor") || at_kw("fallback") || at_kw("receive"))
            return function_definition();
        if (at_kw("modifier")) return modifier_definition();
        if (at_kw("event")) return named_skip(NodeKind::EventDefinition, false);
        if (at_kw("struct")) return named_skip(NodeKind::StructDefinition, true);
        if (at_kw("enum")) return named_skip(NodeKind::EnumDefinition, true);
        if (at_kw("using")) {
            const std::size_t start = pos_;
            skip_until_semicolon();
            return node(NodeKind::UsingForDirective, start);
        }
        if (cur().is(TokenKind::Identifier, "error") && peek(1).kind == TokenKind::Identifier)
            return named_skip(NodeKind::EventDefinition, false);
        return state_variable();
    }

    // Declarations kept only as named leaves: the body is not modelled.
    AstNode named_skip(NodeKind kind, bool braces) {
        const std::size_t start = pos_;
        take();
        const std::string name = expect_ident("name").lexeme;
        if (braces)
            skip_balanced("{", "}");
        else
            skip_until_semicolon();
        return node(kind, start, name);
    }

    AstNode state_variable() {
        const std::size_t start = pos_;
        std::vector<AstNode> children;
        children.push_back(type_name());
        while (true) {
            const Token& t = cur();
            const bool keyword_attr =
                t.kind == TokenKind::Keyword &&
                (t.lexeme == "public" || t.lexeme == "private" || t.lexeme == "internal" ||
                 t.lexeme == "constant" || t.lexeme == "override");
            const bool ident_attr = t.kind == TokenKind::Identifier && t.lexeme == "immutable" &&
                                    peek(1).kind == TokenKind::Identifier;
            if (!keyword_attr && !ident_attr) break;
            children.push_back(leaf(NodeKind::FunctionAttribute, take()));
        }
        children.push_back(leaf(NodeKind::Identifier, expect_ident("state variable name")));
        if (accept_punct("=")) children.push_back(expression());
        expect_punct(";");
        return node(NodeKind::StateVariableDeclaration, start, std::nullopt, std::move(children));
    }

    AstNode function_definition() {
        const std::size_t start = pos_;
        const Token& intro = take();
        FunctionKind kind = FunctionKind::Function;
        std::string name;
        if (intro.lexeme == "constructor") {
            kind = FunctionKind::Constructor;
            name = "constructor";
        } else if (intro.lexeme == "fallback" || intro.lexeme == "receive") {
            kind = intro.lexeme == "fallback" ? FunctionKind::Fallback : FunctionKind::Receive;
            name = intro.lexeme;
        } else if (cur().kind == TokenKind::Identifier) {
            name = take().lexeme;
        } else if (at_kw("fallback") || at_kw("receive")) {
            kind = at_kw("fallback") ? FunctionKind::Fallback : FunctionKind::Receive;
            name = take().lexeme;
        } else if (at_punct("(")) {
            kind = FunctionKind::Fallback;  // pre-0.6 unnamed fallback
            name = "fallback";
        } else {
            throw ParseError(cur().span, "function name", cur().lexeme);
        }

        std::vector<AstNode> children;
        children.push_back(parameter_list(std::nullopt));
        function_attributes(children);
        std::optional<AstNode> body;
        if (at_punct("{")) {
            body = block();
        } else if (!accept_punct(";")) {
            throw ParseError(cur().span, "function body or ';'", cur().lexeme);
        }
        if (body) children.push_back(*body);
        AstNode def = node(NodeKind::FunctionDefinition, start, name, std::move(children));
        if (body) record_function(def, name, kind, start, std::move(*body));
        return def;
    }

    AstNode modifier_definition() {
        const std::size_t start = pos_;
        take();
        const std::string name = expect_ident("modifier name").lexeme;
        std::vector<AstNode> children;
        if (at_punct("(")) children.push_back(parameter_list(std::nullopt));
        while (at_kw("virtual") || at_kw("override")) {
            const std::size_t s = pos_;
            const std::string word = take().lexeme;
            if (word == "override" && at_punct("(")) skip_balanced("(", ")");
            children.push_back(node(NodeKind::FunctionAttribute, s, word));
        }
        std::optional<AstNode> body;
        if (at_punct("{")) {
            body = block();
        } else if (!accept_punct(";")) {
            throw ParseError(cur().span, "modifier body or ';'", cur().lexeme);
        }
        if (body) children.push_back(*body);
        AstNode def = node(NodeKind::ModifierDefinition, start, name, std::move(children));
        if (body) record_function(def, name, FunctionKind::Modifier, start, std::move(*body));
        return def;
    }

    void function_attributes(std::vector<AstNode>& out) {
        while (true) {
            const Token& t = cur();
            if (t.kind == TokenKind::Keyword &&
                (t.lexeme == "public" || t.lexeme == "private" || t.lexeme == "internal" ||
                 t.lexeme == "external" || t.lexeme == "pure" || t.lexeme == "view" ||
                 t.lexeme == "payable" || t.lexeme == "constant" || t.lexeme == "virtual")) {
                out.push_back(leaf(NodeKind::FunctionAttribute, take()));
            } else if (t.is_keyword("override")) {
                const std::size_t s = pos_;
                take();
                if (at_punct("(")) skip_balanced("(", ")");
                out.push_back(node(NodeKind::FunctionAttribute, s, "override"));
            } else if (t.is_keyword("returns")) {
                take();
                out.push_back(parameter_list(std::string("returns")));
            } else if (t.kind == TokenKind::Identifier) {
                const std::size_t s = pos_;
                std::string name = take().lexeme;
                while (at_punct(".")) {
                    take();
                    name += "." + expect_ident("identifier").lexeme;
                }
                std::vector<AstNode> args;
                if (at_punct("(")) args.push_back(argument_list());
                out.push_back(node(NodeKind::ModifierInvocation, s, name, std::move(args)));
            } else {
                return;
            }
        }
    }

    AstNode parameter_list(std::optional<std::string> value) {
        const std::size_t start = pos_;
        expect_punct("(");
        std::vector<AstNode> params;
        if (!at_punct(")")) {
            do {
                const std::size_t s = pos_;
                std::vector<AstNode> parts;
                parts.push_back(type_name());
                while (is_data_location(cur()) || at_kw("indexed") || at_kw("payable")) {
                    parts.push_back(leaf(is_data_location(cur()) ? NodeKind::DataLocation
                                                                  : NodeKind::FunctionAttribute,
                                         take()));
                }
                if (cur().kind == TokenKind::Identifier) parts.push_back(leaf(NodeKind::Identifier, take()));
                params.push_back(node(NodeKind::Parameter, s, std::nullopt, std::move(parts)));
            } while (accept_punct(","));
        }
        expect_punct(")");
        // A "returns" list is marked through its value; the span starts at '('.
        AstNode list = node(NodeKind::ParameterList, start, std::move(value), std::move(params));
        return list;
    }

    void record_function(const AstNode& def, const std::string& name, FunctionKind kind,
                         std::size_t start, AstNode body) {
        FunctionAst fn;
        fn.name = name;
        fn.kind = kind;
        fn.contract_name = contract_;
        fn.span = def.span;
        const Token& last = toks_[pos_ - 1];
        const std::size_t begin = toks_[start].offset;
        fn.source = std::string(src_.substr(begin, last.offset + last.lexeme.size() - begin));
        for (const AstNode& child : def.children) {
            if (child.kind != NodeKind::ParameterList || child.value) continue;
            for (const AstNode& param : child.children) {
                std::string pname;
                for (const AstNode& part : param.children)
                    if (part.kind == NodeKind::Identifier) pname = *part.value;
                fn.params.emplace_back(pname, type_text(param.children.front()));
            }
            break;
        }
        fn.body = std::move(body);
        functions_.push_back(std::move(fn));
    }

    static std::string type_text(const AstNode& type) {
        switch (type.kind) {
            case NodeKind::Mapping:
                return "mapping(" + type_text(type.children[0]) + " => " + type_text(type.children[1]) + ")";
            case NodeKind::ArrayTypeName:
                return type_text(type.children[0]) + "[]";
            default:
                return type.value.value_or("");
        }
    }

    AstNode type_name() {
        const std::size_t start = pos_;
        AstNode type;
        if (at_kw("mapping")) {
            take();
            expect_punct("(");
            AstNode key = type_name();
            expect_punct("=>");
            AstNode value = type_name();
            expect_punct(")");
            type = node(NodeKind::Mapping, start, "mapping", {std::move(key), std::move(value)});
        } else if (cur().kind == TokenKind::Keyword && is_elementary_type_keyword(cur().lexeme)) {
            std::string name = take().lexeme;
            if (name == "address" && at_kw("payable")) {
                take();
                name = "address payable";
            }
            type = node(NodeKind::ElementaryTypeName, start, name);
        } else if (cur().kind == TokenKind::Identifier) {
            std::string name = take().lexeme;
            while (at_punct(".")) {
                take();
                name += "." + expect_ident("identifier").lexeme;
            }
            type = node(NodeKind::UserDefinedTypeName, start, name);
        } else if (at_kw("function")) {
            throw UnsupportedConstruct(cur().span, "function type");
        } else {
            throw ParseError(cur().span, "type name", cur().lexeme);
        }
        while (at_punct("[")) {
            take();
            std::vector<AstNode> children{std::move(type)};
            if (!at_punct("]")) children.push_back(expression());
            expect_punct("]");
            type = node(NodeKind::ArrayTypeName, start, "[]", std::move(children));
        }
        return type;
    }

    // ---- statements ---------------------------------------------------------

    AstNode block() {
        const std::size_t start = pos_;
        expect_punct("{");
        std::vector<AstNode> stmts;
        while (!at_punct("}")) {
            if (at_eof()) throw ParseError(cur().span, "'}'", cur().lexeme);
            stmts.push_back(statement());
        }
        take();
        return node(NodeKind::Block, start, std::nullopt, std::move(stmts));
    }

    AstNode statement() {
        const Token& t = cur();
        const std::size_t start = pos_;
        if (t.is_punct("{")) return block();
        if (t.is_keyword("if")) return if_statement();
        if (t.is_keyword("for")) return for_statement();
        if (t.is_keyword("while")) {
            take();
            expect_punct("(");
            AstNode cond = expression();
            expect_punct(")");
            AstNode body = statement();
            return node(NodeKind::WhileStatement, start, "while", {std::move(cond), std::move(body)});
        }
        if (t.is_keyword("return")) {
            take();
            std::vector<AstNode> children;
            if (!at_punct(";")) children.push_back(expression());
            expect_punct(";");
            return node(NodeKind::ReturnStatement, start, "return", std::move(children));
        }
        if (t.is_keyword("emit")) {
            take();
            AstNode call = expression();
            expect_punct(";");
            return node(NodeKind::EmitStatement, start, "emit", {std::move(call)});
        }
        if (t.is(TokenKind::Identifier, "revert") &&
            (peek(1).is_punct("(") || peek(1).kind == TokenKind::Identifier)) {
            take();
            std::vector<AstNode> children;
            if (at_punct("("))
                children.push_back(argument_list());
            else
                children.push_back(expression());
            expect_punct(";");
            return node(NodeKind::RevertStatement, start, "revert", std::move(children));
        }
        if (t.is_keyword("break") || t.is_keyword("continue") || t.is_keyword("throw")) {
            const std::string word = take().lexeme;
            expect_punct(";");
            const NodeKind kind = word == "break"      ? NodeKind::BreakStatement
                                  : word == "continue" ? NodeKind::ContinueStatement
                                                       : NodeKind::ThrowStatement;
            return node(kind, start, word);
        }
        if (t.is(TokenKind::Identifier, "_") && peek(1).is_punct(";")) {
            take();
            take();
            return node(NodeKind::PlaceholderStatement, start, "_");
        }
        if (t.is_keyword("assembly")) return inline_assembly();
        if (is_unsupported_statement_keyword(t)) throw UnsupportedConstruct(t.span, t.lexeme);
        AstNode stmt = simple_statement();
        expect_punct(";");
        stmt.span = span_from(start);
        return stmt;
    }

    AstNode if_statement() {
        const std::size_t start = pos_;
        take();
        expect_punct("(");
        std::vector<AstNode> children;
        children.push_back(expression());
        expect_punct(")");
        children.push_back(statement());
        if (at_kw("else")) {
            take();
            children.push_back(statement());
        }
        return node(NodeKind::IfStatement, start, "if", std::move(children));
    }

    AstNode for_statement() {
        const std::size_t start = pos_;
        take();
        expect_punct("(");
        std::vector<AstNode> children;
        if (!accept_punct(";")) {
            const std::size_t s = pos_;
            AstNode init = simple_statement();
            expect_punct(";");
            init.span = span_from(s);
            children.push_back(std::move(init));
        }
        if (!at_punct(";")) children.push_back(expression());
        expect_punct(";");
        if (!at_punct(")")) children.push_back(expression());
        expect_punct(")");
        children.push_back(statement());
        return node(NodeKind::ForStatement, start, "for", std::move(children));
    }

    // Inline assembly is kept as one opaque leaf; its body is only brace-matched.
    AstNode inline_assembly() {
        const std::size_t start = pos_;
        take();
        if (cur().kind == TokenKind::String) take();
        if (at_punct("(")) skip_balanced("(", ")");
        if (!at_punct("{")) throw ParseError(cur().span, "'{'", cur().lexeme);
        skip_balanced("{", "}");
        return node(NodeKind::InlineAssembly, start, "assembly");
    }

    bool declaration_ahead() const {
        const Token& t = cur();
        if (t.is_keyword("mapping")) return true;
        if (t.kind == TokenKind::Keyword && is_elementary_type_keyword(t.lexeme)) {
            if (peek(1).is_punct("(")) return false;  // type conversion
            if (t.lexeme == "address" && peek(1).is_keyword("payable") && peek(2).is_punct("("))
                return false;
            return true;
        }
        if (t.kind != TokenKind::Identifier) return false;
        const Token& next = peek(1);
        if (next.kind == TokenKind::Identifier || is_data_location(next)) return true;
        if (next.is_punct("[") && peek(2).is_punct("]")) return true;
        if (next.is_punct(".") && peek(2).kind == TokenKind::Identifier &&
            (peek(3).kind == TokenKind::Identifier || is_data_location(peek(3))))
            return true;
        return false;
    }

    // Variable declaration or expression, without the trailing ';'.
    AstNode simple_statement() {
        const std::size_t start = pos_;
        if (at_punct("(") && peek(1).kind == TokenKind::Keyword &&
            is_elementary_type_keyword(peek(1).lexeme) &&
            (peek(2).kind == TokenKind::Identifier || is_data_location(peek(2))))
            throw UnsupportedConstruct(cur().span, "tuple variable declaration");
        if (declaration_ahead()) {
            std::vector<AstNode> children;
            children.push_back(type_name());
            if (is_data_location(cur())) children.push_back(leaf(NodeKind::DataLocation, take()));
            children.push_back(leaf(NodeKind::Identifier, expect_ident("variable name")));
            if (accept_punct("=")) children.push_back(expression());
            return node(NodeKind::VariableDeclarationStatement, start, std::nullopt, std::move(children));
        }
        AstNode expr = expression();
        return node(NodeKind::ExpressionStatement, start, std::nullopt, {std::move(expr)});
    }

    // ---- expressions --------------------------------------------------------

    AstNode expression() {
        const std::size_t start = pos_;
        AstNode lhs = conditional();
        if (!is_assignment_op(cur())) return lhs;
        const Token& op = take();
        std::vector<AstNode> children{std::move(lhs)};
        if (op.lexeme != "=") children.push_back(leaf(NodeKind::Operator, op));
        const std::string op_text = op.lexeme;
        children.push_back(expression());
        return node(NodeKind::Assignment, start, op_text, std::move(children));
    }

    AstNode conditional() {
        const std::size_t start = pos_;
        AstNode cond = binary(1);
        if (!at_punct("?")) return cond;
        take();
        AstNode yes = expression();
        expect_punct(":");
        AstNode no = expression();
        return node(NodeKind::Conditional, start, "?:", {std::move(cond), std::move(yes), std::move(no)});
    }

    AstNode binary(int min_prec) {
        const std::size_t start = pos_;
        AstNode lhs = unary();
        while (true) {
            const BinaryOp op = binary_precedence(cur());
            if (op.precedence == 0 || op.precedence < min_prec) return lhs;
            const Token& op_tok = take();
            AstNode op_node = leaf(NodeKind::Operator, op_tok);
            AstNode rhs = binary(op.right_assoc ? op.precedence : op.precedence + 1);
            lhs = node(NodeKind::BinaryOperation, start, op_tok.lexeme,
                       {std::move(lhs), std::move(op_node), std::move(rhs)});
        }
    }

    AstNode unary() {
        const std::size_t start = pos_;
        const Token& t = cur();
        const bool prefix = (t.kind == TokenKind::Punct &&
                             (t.lexeme == "!" || t.lexeme == "~" || t.lexeme == "-" || t.lexeme == "+" ||
                              t.lexeme == "++" || t.lexeme == "--")) ||
                            t.is_keyword("delete");
        if (prefix) {
            const Token& op = take();
            AstNode op_node = leaf(NodeKind::Operator, op);
            AstNode operand = unary();
            return node(NodeKind::UnaryOperation, start, op.lexeme, {std::move(op_node), std::move(operand)});
        }
        return postfix();
    }

    AstNode postfix() {
        const std::size_t start = pos_;
        AstNode expr = primary();
        while (true) {
            if (at_punct("(")) {
                AstNode args = argument_list();
                expr = node(NodeKind::FunctionCall, start, std::nullopt, {std::move(expr), std::move(args)});
            } else if (at_punct("[")) {
                take();
                std::vector<AstNode> children{std::move(expr)};
                if (!at_punct("]")) children.push_back(expression());
                expect_punct("]");
                expr = node(NodeKind::IndexAccess, start, std::nullopt, std::move(children));
            } else if (at_punct(".")) {
                take();
                if (cur().kind != TokenKind::Identifier && cur().kind != TokenKind::Keyword)
                    throw ParseError(cur().span, "member name", cur().lexeme);
                const std::string member = take().lexeme;
                expr = node(NodeKind::MemberAccess, start, member, {std::move(expr)});
            } else if (at_punct("++") || at_punct("--")) {
                const Token& op = take();
                AstNode op_node = leaf(NodeKind::Operator, op);
                expr = node(NodeKind::UnaryOperation, start, op.lexeme, {std::move(expr), std::move(op_node)});
            } else if (at_punct("{") && peek(1).kind == TokenKind::Identifier && peek(2).is_punct(":")) {
                throw UnsupportedConstruct(cur().span, "call options");
            } else {
                return expr;
            }
        }
    }

    AstNode argument_list() {
        const std::size_t start = pos_;
        expect_punct("(");
        if (at_punct("{")) throw UnsupportedConstruct(cur().span, "named arguments");
        std::vector<AstNode> args;
        if (!at_punct(")")) {
            do {
                args.push_back(expression());
            } while (accept_punct(","));
        }
        expect_punct(")");
        return node(NodeKind::ArgumentList, start, std::nullopt, std::move(args));
    }

    AstNode primary() {
        const std::size_t start = pos_;
        const Token& t = cur();
        switch (t.kind) {
            case TokenKind::Identifier:
                return leaf(NodeKind::Identifier, take());
            case TokenKind::Number: {
                const Token& num = take();
                std::vector<AstNode> children;
                if (cur().kind == TokenKind::Keyword && is_unit_keyword(cur().lexeme))
                    children.push_back(leaf(NodeKind::Unit, take()));
                return node(NodeKind::NumberLiteral, start, num.lexeme, std::move(children));
            }
            case TokenKind::String:
                return leaf(NodeKind::StringLiteral, take());
            case TokenKind::Punct:
                if (t.lexeme == "(" || t.lexeme == "[") return tuple();
                break;
            case TokenKind::Keyword:
                if (t.lexeme == "true" || t.lexeme == "false") return leaf(NodeKind::BoolLiteral, take());
                if (is_elementary_type_keyword(t.lexeme)) {
                    std::string name = take().lexeme;
                    if (name == "address" && at_kw("payable")) {
                        take();
                        name = "address payable";
                    }
                    return node(NodeKind::ElementaryTypeName, start, name);
                }
                if (t.lexeme == "payable" && peek(1).is_punct("(")) {
                    take();
                    return node(NodeKind::ElementaryTypeName, start, "address payable");
                }
                if (t.lexeme == "new") {
                    take();
                    AstNode type = type_name();
                    return node(NodeKind::NewExpression, start, "new", {std::move(type)});
                }
                if (t.lexeme == "type") throw UnsupportedConstruct(t.span, "type expression");
                break;
            case TokenKind::EndOfFile:
                break;
        }
        throw ParseError(t.span, "expression", t.lexeme);
    }

    // Parenthesised expression, tuple or inline array.
    AstNode tuple() {
        const std::size_t start = pos_;
        const bool array = take().lexeme == "[";
        const std::string_view close = array ? "]" : ")";
        std::vector<AstNode> elems;
        bool comma = false;
        if (!at_punct(close)) {
            elems.push_back(expression());
            while (accept_punct(",")) {
                comma = true;
                elems.push_back(expression());
            }
        }
        expect_punct(close);
        if (!array && elems.size() == 1 && !comma) return std::move(elems.front());
        return node(NodeKind::TupleExpression, start, array ? "[]" : "()", std::move(elems));
    }

    std::string_view src_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::string contract_;
    std::vector<FunctionAst> functions_;
};

}  // namespace

ParseResult parse_source(std::string_view source) { return Parser(source).run(); }

std::vector<FunctionAst> parse_contract(std::string_view source) {
    return parse_source(source).functions;
}

FunctionAst parse_function(std::string_view source) {
    auto functions = parse_contract(source);
    if (functions.size() == 1) return std::move(functions.front());
    if (functions.empty()) {
        const SourceSpan at{1, 1, 1, 1};
        throw ParseError(at, "exactly one function definition", "none");
    }
    throw ParseError(functions[1].span, "exactly one function definition", functions[1].name);
}

const FunctionAst& find_function(const std::vector<FunctionAst>& functions, std::string_view name) {
    const FunctionAst* found = nullptr;
    for (const auto& fn : functions) {
        if (fn.name == name || fn.qualified_name() == name) {
            if (found) throw Error("ambiguous function name '" + std::string(name) + "'");
            found = &fn;
        }
    }
    if (!found) throw Error("no function named '" + std::string(name) + "'");
    return *found;
}

}  // namespace clonescope::frontend
