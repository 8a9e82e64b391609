#pragma once

// Structure networks: one undirected tree per function whose leaves are the
// function's tokens and whose inner nodes label the grammatical construct the
// tokens beneath them form.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "codenet/lexer.hpp"

namespace codenet {

/// Closed set of interpretive-node labels.
enum class Construct : std::uint8_t {
    FunctionDefinition,
    ReturnType,
    ParameterList,
    Parameter,
    CompoundStatement,
    Declaration,
    IfStatement,
    Condition,
    ThenBranch,
    ElseBranch,
    WhileStatement,
    DoStatement,
    ForStatement,
    ForClauses,
    SwitchStatement,
    CaseClause,
    ReturnStatement,
    ExpressionStatement,
    CallExpression,
    ArgumentList,
    BinaryExpression,
    UnaryExpression,
    AssignmentExpression,
    LabelOrGoto,
};

inline constexpr std::size_t kConstructCount = 24;

std::string_view to_string(Construct c) noexcept;
std::optional<Construct> construct_from_string(std::string_view text) noexcept;

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

struct NetNode {
    NodeId id = 0;
    std::variant<Token, Construct> role;

    bool is_token() const noexcept { return std::holds_alternative<Token>(role); }
    const Token& token() const { return std::get<Token>(role); }
    Construct construct() const { return std::get<Construct>(role); }
};

/// Undirected, unweighted graph. Edges are stored once with the smaller id
/// first and kept sorted; adjacency is precomputed.
class StructureNetwork {
public:
    StructureNetwork() = default;
    StructureNetwork(std::vector<NetNode> nodes, std::vector<Edge> edges, NodeId root);

    std::size_t size() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    NodeId root() const noexcept { return root_; }
    const std::vector<NetNode>& nodes() const noexcept { return nodes_; }
    const NetNode& node(NodeId id) const { return nodes_.at(id); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const NodeId> neighbors(NodeId id) const;
    std::size_t degree(NodeId id) const { return neighbors(id).size(); }

    friend bool operator==(const StructureNetwork& a, const StructureNetwork& b);

private:
    std::vector<NetNode> nodes_;
    std::vector<Edge> edges_;
    NodeId root_ = 0;
    std::vector<std::size_t> adjacency_offsets_;
    std::vector<NodeId> adjacency_;
};

/// Incremental tree construction. build() renumbers nodes in preorder from
/// `root`, children in insertion order.
class NetworkBuilder {
public:
    NodeId add_construct(Construct c);
    NodeId add_token(Token t);
    void attach(NodeId parent, NodeId child);
    void attach_all(NodeId parent, std::span<const NodeId> children);

    std::size_t size() const noexcept { return roles_.size(); }
    bool is_construct(NodeId id) const { return std::holds_alternative<Construct>(roles_.at(id)); }
    StructureNetwork build(NodeId root) const;

private:
    std::vector<std::variant<Token, Construct>> roles_;
    std::vector<std::vector<NodeId>> children_;
};

/// Groups a function's tokens into its structure network. Constructs the
/// grouper cannot classify hang directly off the innermost enclosing node.
/// Throws ParseError when brackets do not balance.
StructureNetwork parse_structure(std::span<const Token> tokens);

struct NetworkStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double interpretive_share = 0.0;
};

NetworkStats network_stats(const StructureNetwork& net) noexcept;

struct StructureCheck {
    bool connected = false;
    bool tree_edge_count = false;          // |E| == |V| - 1
    bool leaf_complete = false;            // token leaves == input tokens, in order
    bool tokens_are_leaves = false;

    bool ok() const noexcept { return connected && tree_edge_count && leaf_complete && tokens_are_leaves; }
};

/// Verifies the tree invariants by traversal.
StructureCheck check_structure(const StructureNetwork& net, std::span<const Token> tokens);

/// Token leaves in left-to-right (preorder) order.
std::vector<const Token*> leaf_tokens(const StructureNetwork& net);

}  // namespace codenet
