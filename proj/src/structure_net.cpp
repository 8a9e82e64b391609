#include "codenet/structure_net.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

#include "codenet/diagnostics.hpp"

namespace codenet {

namespace {

constexpr std::array<std::string_view, kConstructCount> kConstructNames{
    "function-definition", "return-type",          "parameter-list",
    "parameter",           "compound-statement",   "declaration",
    "if-statement",        "condition",            "then-branch",
    "else-branch",         "while-statement",      "do-statement",
    "for-statement",       "for-clauses",          "switch-statement",
    "case-clause",         "return-statement",     "expression-statement",
    "call-expression",     "argument-list",        "binary-expression",
    "unary-expression",    "assignment-expression", "label-or-goto"};

}  // namespace

std::string_view to_string(Construct c) noexcept { return kConstructNames[static_cast<std::size_t>(c)]; }

std::optional<Construct> construct_from_string(std::string_view text) noexcept {
    for (std::size_t k = 0; k < kConstructNames.size(); ++k)
        if (kConstructNames[k] == text) return static_cast<Construct>(k);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// StructureNetwork

StructureNetwork::StructureNetwork(std::vector<NetNode> nodes, std::vector<Edge> edges, NodeId root)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), root_(root) {
    for (auto& e : edges_)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges_.begin(), edges_.end());
    for (const auto& e : edges_) {
        if (e.first == e.second) throw std::invalid_argument("self-loop in structure network");
        if (e.second >= nodes_.size()) throw std::invalid_argument("edge endpoint out of range");
    }
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("parallel edge in structure network");

    adjacency_offsets_.assign(nodes_.size() + 1, 0);
    for (const auto& [a, b] : edges_) {
        ++adjacency_offsets_[a + 1];
        ++adjacency_offsets_[b + 1];
    }
    std::partial_sum(adjacency_offsets_.begin(), adjacency_offsets_.end(), adjacency_offsets_.begin());
    adjacency_.resize(edges_.size() * 2);
    std::vector<std::size_t> fill(adjacency_offsets_.begin(), adjacency_offsets_.end() - 1);
    for (const auto& [a, b] : edges_) {
        adjacency_[fill[a]++] = b;
        adjacency_[fill[b]++] = a;
    }
    for (std::size_t v = 0; v < nodes_.size(); ++v)
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offsets_[v]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offsets_[v + 1]));
}

std::span<const NodeId> StructureNetwork::neighbors(NodeId id) const {
    const std::size_t lo = adjacency_offsets_.at(id);
    const std::size_t hi = adjacency_offsets_.at(id + 1);
    return {adjacency_.data() + lo, hi - lo};
}

bool operator==(const StructureNetwork& a, const StructureNetwork& b) {
    if (a.root_ != b.root_ || a.edges_ != b.edges_ || a.nodes_.size() != b.nodes_.size()) return false;
    for (std::size_t k = 0; k < a.nodes_.size(); ++k)
        if (a.nodes_[k].id != b.nodes_[k].id || a.nodes_[k].role != b.nodes_[k].role) return false;
    return true;
}

// ---------------------------------------------------------------------------
// NetworkBuilder

NodeId NetworkBuilder::add_construct(Construct c) {
    roles_.emplace_back(c);
    children_.emplace_back();
    return static_cast<NodeId>(roles_.size() - 1);
}

NodeId NetworkBuilder::add_token(Token t) {
    roles_.emplace_back(std::move(t));
    children_.emplace_back();
    return static_cast<NodeId>(roles_.size() - 1);
}

void NetworkBuilder::attach(NodeId parent, NodeId child) { children_.at(parent).push_back(child); }

void NetworkBuilder::attach_all(NodeId parent, std::span<const NodeId> children) {
    auto& list = children_.at(parent);
    list.insert(list.end(), children.begin(), children.end());
}

StructureNetwork NetworkBuilder::build(NodeId root) const {
    std::vector<NodeId> order;
    std::vector<NodeId> renumber(roles_.size(), static_cast<NodeId>(-1));
    std::vector<NodeId> stack{root};
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        if (renumber[v] != static_cast<NodeId>(-1)) throw std::logic_error("node attached twice");
        renumber[v] = static_cast<NodeId>(order.size());
        order.push_back(v);
        const auto& kids = children_[v];
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    std::vector<NetNode> nodes;
    nodes.reserve(order.size());
    std::vector<Edge> edges;
    for (NodeId old : order) {
        nodes.push_back({renumber[old], roles_[old]});
        for (NodeId child : children_[old]) edges.emplace_back(renumber[old], renumber[child]);
    }
    return StructureNetwork(std::move(nodes), std::move(edges), 0);
}

// ---------------------------------------------------------------------------
// Grouper

namespace {

constexpr std::size_t kNoMatch = static_cast<std::size_t>(-1);

bool is_punct(const Token& t, char c) {
    return t.kind == TokenKind::Punctuation && t.lexeme.size() == 1 && t.lexeme[0] == c;
}
bool is_op(const Token& t, std::string_view op) { return t.kind == TokenKind::Operator && t.lexeme == op; }
bool is_kw(const Token& t, std::string_view kw) { return t.kind == TokenKind::Keyword && t.lexeme == kw; }
bool is_directive(const Token& t) { return t.kind == TokenKind::Other && t.lexeme.starts_with('#'); }

bool is_assignment_op(const Token& t) {
    if (t.kind != TokenKind::Operator) return false;
    static constexpr std::string_view ops[] = {"=", "+=", "-=", "*=", "/=", "%=",
                                    "&=", "|=", "^=", "<<=", ">>="};
    return std::find(std::begin(ops), std::end(ops), t.lexeme) != std::end(ops);
}

bool is_binary_op(const Token& t) {
    if (is_punct(t, ',')) return true;
    if (t.kind != TokenKind::Operator) return false;
    static constexpr std::string_view ops[] = {"+", "-", "*", "/", "%", "<<", ">>", "<",
                                    ">", "<=", ">=", "==", "!=", "&", "|", "^", "&&", "||", "?", ":"};
    return std::find(std::begin(ops), std::end(ops), t.lexeme) != std::end(ops);
}

bool is_prefix_op(const Token& t) {
    if (t.kind == TokenKind::Keyword) return t.lexeme == "sizeof" || t.lexeme == "_Alignof";
    if (t.kind != TokenKind::Operator) return false;
    static constexpr std::string_view ops[] = {"+", "-", "*", "&", "!", "~", "++", "--", "&&"};
    return std::find(std::begin(ops), std::end(ops), t.lexeme) != std::end(ops);
}

bool is_type_word(const Token& t) {
    if (t.kind != TokenKind::Keyword) return false;
    static constexpr std::string_view words[] = {"void", "char", "short", "int", "long", "float", "double", "signed",
        "unsigned", "_Bool", "_Complex", "struct", "union", "enum", "const", "volatile",
        "static", "extern", "register", "auto", "typedef", "inline", "restrict", "_Atomic",
        "_Thread_local", "_Alignas", "_Noreturn"};
    return std::find(std::begin(words), std::end(words), t.lexeme) != std::end(words);
}

using Items = std::vector<NodeId>;

class Grouper {
public:
    Grouper(std::span<const Token> tokens, NetworkBuilder& builder) : t_(tokens), b_(builder) {
        match_brackets();
    }

    NodeId function_definition() {
        const NodeId root = b_.add_construct(Construct::FunctionDefinition);
        const std::size_t n = t_.size();
        const std::size_t body = find_top_level(0, n, '{');
        const std::size_t params = body == kNoMatch ? kNoMatch : find_parameter_list(0, body);
        if (params == kNoMatch) {
            // Not recognisably a function; keep whatever statements we can.
            std::size_t i = 0;
            while (i < n) add(root, statement(i, n));
            return root;
        }
        const std::size_t name = params - 1;
        if (name > 0) {
            const NodeId rt = b_.add_construct(Construct::ReturnType);
            for (std::size_t k = 0; k < name; ++k) b_.attach(rt, tok(k));
            b_.attach(root, rt);
        }
        b_.attach(root, tok(name));
        b_.attach(root, parameter_list(params));
        for (std::size_t k = match_[params] + 1; k < body; ++k) b_.attach(root, tok(k));
        b_.attach(root, compound(body));
        for (std::size_t k = match_[body] + 1; k < n; ++k) b_.attach(root, tok(k));
        return root;
    }

private:
    // -- helpers -----------------------------------------------------------

    void match_brackets() {
        match_.assign(t_.size(), kNoMatch);
        std::vector<std::size_t> stack;
        for (std::size_t k = 0; k < t_.size(); ++k) {
            const Token& tk = t_[k];
            if (tk.kind != TokenKind::Punctuation) continue;
            const char c = tk.lexeme[0];
            if (c == '(' || c == '[' || c == '{') {
                stack.push_back(k);
            } else if (c == ')' || c == ']' || c == '}') {
                const char want = c == ')' ? '(' : c == ']' ? '[' : '{';
                if (stack.empty()) throw ParseError(tk.offset, std::string("unbalanced '") + c + "'");
                if (t_[stack.back()].lexeme[0] != want)
                    throw ParseError(t_[stack.back()].offset,
                                     std::string("unclosed '") + t_[stack.back()].lexeme + "' before '" + c + "'");
                match_[stack.back()] = k;
                match_[k] = stack.back();
                stack.pop_back();
            }
        }
        if (!stack.empty())
            throw ParseError(t_[stack.back()].offset,
                             std::string("unclosed '") + t_[stack.back()].lexeme + "'");
    }

    bool is_open(std::size_t k) const {
        return k < t_.size() && t_[k].kind == TokenKind::Punctuation &&
               (t_[k].lexeme[0] == '(' || t_[k].lexeme[0] == '[' || t_[k].lexeme[0] == '{');
    }

    // Index one past the element starting at k (a token or a bracket group).
    std::size_t skip(std::size_t k) const { return is_open(k) ? match_[k] + 1 : k + 1; }

    std::size_t find_top_level(std::size_t b, std::size_t e, char c) const {
        for (std::size_t k = b; k < e; k = skip(k))
            if (is_punct(t_[k], c)) return k;
        return kNoMatch;
    }

    NodeId tok(std::size_t k) { return b_.add_token(t_[k]); }

    void add(NodeId parent, const Items& items) { b_.attach_all(parent, items); }
    static void append(Items& into, const Items& more) { into.insert(into.end(), more.begin(), more.end()); }

    Items flat(std::size_t b, std::size_t e) {
        Items out;
        for (std::size_t k = b; k < e; ++k) out.push_back(tok(k));
        return out;
    }

    NodeId wrap(Construct c, const Items& items) {
        const NodeId node = b_.add_construct(c);
        add(node, items);
        return node;
    }

    // -- function head -------------------------------------------------------

    std::size_t find_parameter_list(std::size_t b, std::size_t e) const {
        for (std::size_t k = b; k < e; k = skip(k)) {
            if (!is_punct(t_[k], '(') || k == 0) continue;
            const Token& prev = t_[k - 1];
            if (prev.kind == TokenKind::Name && !prev.lexeme.starts_with("__attribute")) return k;
        }
        return kNoMatch;
    }

    NodeId parameter_list(std::size_t open) {
        const std::size_t close = match_[open];
        const NodeId list = b_.add_construct(Construct::ParameterList);
        b_.attach(list, tok(open));
        std::size_t start = open + 1;
        for (std::size_t k = start; k <= close; k = skip(k)) {
            if (k != close && !is_punct(t_[k], ',')) continue;
            if (k > start) b_.attach(list, wrap(Construct::Parameter, flat(start, k)));
            b_.attach(list, tok(k));
            start = k + 1;
        }
        return list;
    }

    // -- statements ----------------------------------------------------------

    NodeId compound(std::size_t open) {
        const NodeId node = b_.add_construct(Construct::CompoundStatement);
        add(node, block_contents(open));
        return node;
    }

    // '{' statements '}' as a flat item list.
    Items block_contents(std::size_t open) {
        const std::size_t close = match_[open];
        Items out{tok(open)};
        std::size_t i = open + 1;
        while (i < close) append(out, statement(i, close));
        out.push_back(tok(close));
        return out;
    }

    // Items for the statement at i; advances i past it.
    Items statement(std::size_t& i, std::size_t end) {
        const Token& t = t_[i];
        if (is_directive(t) || is_punct(t, ';')) {
            const std::size_t at = i++;
            return flat(at, i);
        }
        if (is_punct(t, '{')) {
            const std::size_t open = i;
            i = match_[open] + 1;
            return {compound(open)};
        }
        if (t.kind == TokenKind::Keyword) {
            if (t.lexeme == "if") return {if_statement(i, end)};
            if (t.lexeme == "while") return {while_statement(i, end)};
            if (t.lexeme == "do") return {do_statement(i, end)};
            if (t.lexeme == "for") return {for_statement(i, end)};
            if (t.lexeme == "switch") return {switch_statement(i, end)};
            if (t.lexeme == "case" || t.lexeme == "default") return {case_clause(i, end)};
            if (t.lexeme == "return") return {return_statement(i, end)};
            if (t.lexeme == "goto") {
                const std::size_t stop = statement_end(i, end);
                const std::size_t b = i;
                i = stop;
                return {wrap(Construct::LabelOrGoto, flat(b, stop))};
            }
            if (t.lexeme == "break" || t.lexeme == "continue" || t.lexeme == "else") {
                const std::size_t stop = statement_end(i, end);
                const std::size_t b = i;
                i = stop;
                return flat(b, stop);
            }
        }
        if (t.kind == TokenKind::Name && i + 1 < end && is_op(t_[i + 1], ":")) {
            const std::size_t b = i;
            i += 2;
            return {wrap(Construct::LabelOrGoto, flat(b, i))};
        }
        if (looks_like_declaration(i, end)) {
            const std::size_t stop = statement_end(i, end);
            const std::size_t b = i;
            i = stop;
            return {declaration(b, stop)};
        }
        return expression_statement(i, end);
    }

    // One past the terminating ';' at top level (or end).
    std::size_t statement_end(std::size_t b, std::size_t end) const {
        for (std::size_t k = b; k < end; k = skip(k))
            if (is_punct(t_[k], ';')) return k + 1;
        return end;
    }

    bool looks_like_declaration(std::size_t i, std::size_t end) const {
        const Token& t = t_[i];
        if (is_type_word(t)) return true;
        if (t.kind != TokenKind::Name || i + 1 >= end) return false;
        const Token& next = t_[i + 1];
        if (next.kind == TokenKind::Name) return true;
        std::size_t k = i + 1;
        while (k < end && is_op(t_[k], "*")) ++k;
        if (k == i + 1 || k + 1 >= end || t_[k].kind != TokenKind::Name) return false;
        const Token& after = t_[k + 1];
        return is_punct(after, ';') || is_op(after, "=") || is_punct(after, ',') || is_punct(after, '[') ||
               is_punct(after, ')');
    }

    // Parenthesised construct such as `(cond)` wrapped in a node of kind c.
    NodeId paren_node(Construct c, std::size_t open) {
        const std::size_t close = match_[open];
        Items items{tok(open)};
        append(items, expression(open + 1, close));
        items.push_back(tok(close));
        return wrap(c, items);
    }

    // A compound branch body becomes a branch node holding the block's
    // contents; a single statement hangs off the if-statement directly.
    Items branch(Construct c, std::size_t& i, std::size_t end) {
        if (i >= end) return {};
        if (is_punct(t_[i], '{')) {
            const std::size_t open = i;
            i = match_[open] + 1;
            return {wrap(c, block_contents(open))};
        }
        return statement(i, end);
    }

    // Loop and switch bodies: a block's contents hang off the statement node.
    Items body(std::size_t& i, std::size_t end) {
        if (i >= end) return {};
        if (is_punct(t_[i], '{')) {
            const std::size_t open = i;
            i = match_[open] + 1;
            return block_contents(open);
        }
        return statement(i, end);
    }

    NodeId if_statement(std::size_t& i, std::size_t end) {
        const NodeId node = b_.add_construct(Construct::IfStatement);
        b_.attach(node, tok(i++));
        if (i < end && is_punct(t_[i], '(')) {
            b_.attach(node, paren_node(Construct::Condition, i));
            i = match_[i] + 1;
        }
        add(node, branch(Construct::ThenBranch, i, end));
        if (i < end && is_kw(t_[i], "else")) {
            b_.attach(node, tok(i++));
            add(node, branch(Construct::ElseBranch, i, end));
        }
        return node;
    }

    NodeId while_statement(std::size_t& i, std::size_t end) {
        const NodeId node = b_.add_construct(Construct::WhileStatement);
        b_.attach(node, tok(i++));
        if (i < end && is_punct(t_[i], '(')) {
            b_.attach(node, paren_node(Construct::Condition, i));
            i = match_[i] + 1;
        }
        add(node, body(i, end));
        return node;
    }

    NodeId do_statement(std::size_t& i, std::size_t end) {
        const NodeId node = b_.add_construct(Construct::DoStatement);
        b_.attach(node, tok(i++));
        add(node, body(i, end));
        if (i < end && is_kw(t_[i], "while")) {
            b_.attach(node, tok(i++));
            if (i < end && is_punct(t_[i], '(')) {
                b_.attach(node, paren_node(Construct::Condition, i));
                i = match_[i] + 1;
            }
            if (i < end && is_punct(t_[i], ';')) b_.attach(node, tok(i++));
        }
        return node;
    }

    NodeId for_statement(std::size_t& i, std::size_t end) {
        const NodeId node = b_.add_construct(Construct::ForStatement);
        b_.attach(node, tok(i++));
        if (i < end && is_punct(t_[i], '(')) {
            const std::size_t open = i;
            const std::size_t close = match_[open];
            const NodeId clauses = b_.add_construct(Construct::ForClauses);
            b_.attach(clauses, tok(open));
            std::size_t start = open + 1;
            for (std::size_t k = start; k <= close; k = skip(k)) {
                if (k != close && !is_punct(t_[k], ';')) continue;
                if (k > start) {
                    if (looks_like_declaration(start, k))
                        b_.attach(clauses, declaration(start, k));
                    else
                        add(clauses, expression(start, k));
                }
                b_.attach(clauses, tok(k));
                start = k + 1;
            }
            b_.attach(node, clauses);
            i = close + 1;
        }
        add(node, body(i, end));
        return node;
    }

    NodeId switch_statement(std::size_t& i, std::size_t end) {
        const NodeId node = b_.add_construct(Construct::SwitchStatement);
        b_.attach(node, tok(i++));
        if (i < end && is_punct(t_[i], '(')) {
            b_.attach(node, paren_node(Construct::Condition, i));
            i = match_[i] + 1;
        }
        add(node, body(i, end));
        return node;
    }

    // `case expr:` / `default:` followed by the statements up to the next
    // label at the same level.
    NodeId case_clause(std::size_t& i, std::size_t end) {
        const NodeId node = b_.add_construct(Construct::CaseClause);
        const std::size_t b = i;
        std::size_t colon = kNoMatch;
        int pending_ternary = 0;
        for (std::size_t k = b + 1; k < end; k = skip(k)) {
            if (is_op(t_[k], "?")) ++pending_ternary;
            if (is_op(t_[k], ":")) {
                if (pending_ternary == 0) {
                    colon = k;
                    break;
                }
                --pending_ternary;
            }
            if (is_punct(t_[k], ';')) break;
        }
        b_.attach(node, tok(b));
        if (colon == kNoMatch) {
            i = b + 1;
            return node;
        }
        add(node, expression(b + 1, colon));
        b_.attach(node, tok(colon));
        i = colon + 1;
        while (i < end && !is_kw(t_[i], "case") && !is_kw(t_[i], "default")) add(node, statement(i, end));
        return node;
    }

    NodeId return_statement(std::size_t& i, std::size_t end) {
        const std::size_t stop = statement_end(i, end);
        const NodeId node = b_.add_construct(Construct::ReturnStatement);
        b_.attach(node, tok(i));
        const bool semi = stop > i + 1 && is_punct(t_[stop - 1], ';');
        add(node, expression(i + 1, semi ? stop - 1 : stop));
        if (semi) b_.attach(node, tok(stop - 1));
        i = stop;
        return node;
    }

    NodeId declaration(std::size_t b, std::size_t e) {
        const NodeId node = b_.add_construct(Construct::Declaration);
        std::size_t k = b;
        while (k < e) {
            if (is_op(t_[k], "=")) {
                b_.attach(node, tok(k));
                std::size_t stop = k + 1;
                while (stop < e && !is_punct(t_[stop], ',') && !is_punct(t_[stop], ';')) stop = skip(stop);
                add(node, initializer(k + 1, stop));
                k = stop;
                continue;
            }
            const std::size_t next = skip(k);
            add(node, flat(k, next));
            k = next;
        }
        return node;
    }

    Items initializer(std::size_t b, std::size_t e) {
        if (b < e && is_punct(t_[b], '{') && match_[b] + 1 == e) return brace_list(b);
        return expression(b, e);
    }

    Items brace_list(std::size_t open) {
        const std::size_t close = match_[open];
        Items out{tok(open)};
        std::size_t start = open + 1;
        for (std::size_t k = start; k <= close; k = skip(k)) {
            if (k != close && !is_punct(t_[k], ',')) continue;
            append(out, initializer(start, k));
            out.push_back(tok(k));
            start = k + 1;
        }
        return out;
    }

    Items expression_statement(std::size_t& i, std::size_t end) {
        const std::size_t b = i;
        // Iterator macros: NAME(args) followed by a loop body.
        if (t_[b].kind == TokenKind::Name && b + 1 < end && is_punct(t_[b + 1], '(')) {
            const std::size_t after = match_[b + 1] + 1;
            if (after < end) {
                const Token& next = t_[after];
                const bool body_follows = is_punct(next, '{') || next.kind == TokenKind::Name ||
                                          (next.kind == TokenKind::Keyword && !is_type_word(next) &&
                                           next.lexeme != "sizeof");
                if (body_follows) {
                    const NodeId node = b_.add_construct(Construct::ExpressionStatement);
                    add(node, expression(b, after));
                    i = after;
                    add(node, statement(i, end));
                    return {node};
                }
            }
        }
        const std::size_t stop = statement_end(b, end);
        i = stop;
        const bool semi = is_punct(t_[stop - 1], ';');
        Items expr = expression(b, semi ? stop - 1 : stop);
        // A statement that is one construct (a call, an assignment) is that
        // construct plus its terminator.
        const NodeId node = expr.size() == 1 && b_.is_construct(expr.front())
                                ? expr.front()
                                : wrap(Construct::ExpressionStatement, expr);
        if (semi) b_.attach(node, tok(stop - 1));
        return {node};
    }

    // -- expressions ---------------------------------------------------------

    // assignment < binary < unary < primary
    Items expression(std::size_t b, std::size_t e) {
        if (b >= e) return {};
        if (e - b == 1) return flat(b, e);
        for (std::size_t k = b; k < e; k = skip(k)) {
            if (!is_assignment_op(t_[k])) continue;
            if (k == b) break;
            Items items = binary(b, k);
            items.push_back(tok(k));
            append(items, expression(k + 1, e));
            return {wrap(Construct::AssignmentExpression, items)};
        }
        return binary(b, e);
    }

    bool is_cast_group(std::size_t open, std::size_t e) const {
        const std::size_t close = match_[open];
        if (!is_punct(t_[open], '(') || close + 1 >= e || close == open + 1) return false;
        for (std::size_t k = open + 1; k < close; ++k) {
            const Token& t = t_[k];
            if (t.kind != TokenKind::Name && t.kind != TokenKind::Keyword && !is_op(t, "*")) return false;
            if (t.kind == TokenKind::Keyword && !is_type_word(t)) return false;
        }
        const Token& next = t_[close + 1];
        const bool operand_next = next.kind == TokenKind::Name || next.kind == TokenKind::Literal ||
                                  is_punct(next, '(') || is_punct(next, '{') || is_prefix_op(next);
        if (!operand_next) return false;
        // `(x) - y` is binary unless the group is plainly a type.
        const bool typey = is_type_word(t_[open + 1]) || is_op(t_[close - 1], "*");
        return typey || !(next.kind == TokenKind::Operator);
    }

    Items binary(std::size_t b, std::size_t e) {
        std::vector<std::size_t> splits;
        bool expect_operand = true;
        bool member_next = false;
        for (std::size_t k = b; k < e; k = skip(k)) {
            const Token& t = t_[k];
            if (member_next) {
                member_next = false;
                continue;
            }
            if (expect_operand) {
                if (is_prefix_op(t)) continue;
                if (is_open(k) && is_cast_group(k, e)) continue;
                expect_operand = false;
                continue;
            }
            if (is_op(t, ".") || is_op(t, "->")) {
                member_next = true;
                continue;
            }
            if (is_binary_op(t)) {
                splits.push_back(k);
                expect_operand = true;
            }
        }
        if (splits.empty()) return unary(b, e);
        Items items;
        std::size_t start = b;
        for (std::size_t s : splits) {
            append(items, unary(start, s));
            items.push_back(tok(s));
            start = s + 1;
        }
        append(items, unary(start, e));
        return {wrap(Construct::BinaryExpression, items)};
    }

    Items unary(std::size_t b, std::size_t e) {
        if (b >= e) return {};
        if (e - b == 1) return flat(b, e);
        std::size_t k = b;
        while (k < e) {
            if (is_prefix_op(t_[k])) {
                ++k;
            } else if (is_open(k) && is_cast_group(k, e)) {
                k = match_[k] + 1;
            } else {
                break;
            }
        }
        if (k > b) {
            Items items = flat(b, k);
            append(items, postfix(k, e));
            return wrap_unless_bare(items);
        }
        const Token& last = t_[e - 1];
        if ((is_op(last, "++") || is_op(last, "--")) && e - b > 1) {
            Items items = postfix(b, e - 1);
            items.push_back(tok(e - 1));
            return wrap_unless_bare(items);
        }
        return postfix(b, e);
    }

    // An operator on a single token (`!err`, `&ctx`, `i++`) stays flat.
    Items wrap_unless_bare(const Items& items) {
        if (items.size() == 2 && !b_.is_construct(items[0]) && !b_.is_construct(items[1])) return items;
        return {wrap(Construct::UnaryExpression, items)};
    }

    Items group_contents(std::size_t open) {
        const std::size_t close = match_[open];
        Items items{tok(open)};
        if (is_punct(t_[open], '(') && open + 1 < close && is_punct(t_[open + 1], '{') &&
            match_[open + 1] + 1 == close) {
            items.push_back(compound(open + 1));  // GNU statement expression
        } else if (is_punct(t_[open], '{')) {
            items.pop_back();
            return brace_list(open);
        } else {
            append(items, expression(open + 1, close));
        }
        items.push_back(tok(close));
        return items;
    }

    Items postfix(std::size_t b, std::size_t e) {
        Items cur;
        std::size_t k = b;
        while (k < e) {
            if (!cur.empty() && is_punct(t_[k], '(')) {
                const std::size_t close = match_[k];
                Items call = cur;
                call.push_back(tok(k));
                std::size_t start = k + 1;
                for (std::size_t j = start; j <= close; j = skip(j)) {
                    if (j != close && !is_punct(t_[j], ',')) continue;
                    append(call, expression(start, j));
                    call.push_back(tok(j));
                    start = j + 1;
                }
                cur = {wrap(Construct::CallExpression, call)};
                k = close + 1;
            } else if (is_open(k)) {
                append(cur, group_contents(k));
                k = match_[k] + 1;
            } else {
                cur.push_back(tok(k));
                ++k;
            }
        }
        return cur;
    }

    std::span<const Token> t_;
    NetworkBuilder& b_;
    std::vector<std::size_t> match_;
};

}  // namespace

StructureNetwork parse_structure(std::span<const Token> tokens) {
    NetworkBuilder builder;
    Grouper grouper(tokens, builder);
    const NodeId root = grouper.function_definition();
    return builder.build(root);
}

NetworkStats network_stats(const StructureNetwork& net) noexcept {
    NetworkStats s;
    s.nodes = net.size();
    s.edges = net.edge_count();
    std::size_t interpretive = 0;
    for (const auto& n : net.nodes())
        if (!n.is_token()) ++interpretive;
    s.interpretive_share = s.nodes ? static_cast<double>(interpretive) / static_cast<double>(s.nodes) : 0.0;
    return s;
}

std::vector<const Token*> leaf_tokens(const StructureNetwork& net) {
    std::vector<const Token*> out;
    if (net.size() == 0) return out;
    std::vector<bool> seen(net.size(), false);
    std::vector<NodeId> stack{net.root()};
    seen[net.root()] = true;
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        if (net.node(v).is_token()) out.push_back(&net.node(v).token());
        const auto nb = net.neighbors(v);
        for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
            if (seen[*it]) continue;
            seen[*it] = true;
            stack.push_back(*it);
        }
    }
    return out;
}

StructureCheck check_structure(const StructureNetwork& net, std::span<const Token> tokens) {
    StructureCheck check;
    const std::size_t n = net.size();
    check.tree_edge_count = n > 0 && net.edge_count() == n - 1;

    std::vector<bool> seen(n, false);
    std::size_t reached = 0;
    if (n > 0) {
        std::vector<NodeId> stack{net.root()};
        seen[net.root()] = true;
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            ++reached;
            for (NodeId w : net.neighbors(v))
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
    }
    check.connected = n > 0 && reached == n;

    check.tokens_are_leaves = true;
    for (const auto& node : net.nodes())
        if (node.is_token() && net.degree(node.id) > 1) check.tokens_are_leaves = false;

    const auto leaves = leaf_tokens(net);
    check.leaf_complete = leaves.size() == tokens.size() &&
                          std::equal(leaves.begin(), leaves.end(), tokens.begin(),
                                     [](const Token* a, const Token& b) { return *a == b; });
    return check;
}

}  // namespace codenet
