#include <doctest.h>

#include "codenet/corpus.hpp"
#include "codenet/lexer.hpp"
#include "codenet/structure_net.hpp"
#include "support.hpp"

using namespace codenet;

namespace {

void render(const StructureNetwork& net, NodeId v, NodeId parent, std::string& out) {
    const NetNode& node = net.node(v);
    if (node.is_token()) {
        out += node.token().lexeme;
        return;
    }
    out += "(";
    out += to_string(node.construct());
    for (NodeId w : net.neighbors(v)) {
        if (w == parent) continue;
        out += " ";
        render(net, w, v, out);
    }
    out += ")";
}

std::string sexpr(const std::string& code) {
    const auto tokens = tokenize(code);
    const auto net = parse_structure(tokens);
    REQUIRE(check_structure(net, tokens).ok());
    std::string out;
    render(net, net.root(), net.root(), out);
    return out;
}

}  // namespace

TEST_SUITE("structure_net") {

TEST_CASE("the add tree") {
    const auto tokens = tokenize("int add(int a, int b) { return a + b; }");
    const auto net = parse_structure(tokens);
    CHECK(net.size() == 24);
    CHECK(net.edge_count() == 23);
    const auto stats = network_stats(net);
    CHECK(stats.nodes == 24);
    CHECK(stats.edges == 23);
    CHECK(stats.interpretive_share == doctest::Approx(8.0 / 24.0).epsilon(1e-15));
    CHECK(net.node(net.root()).construct() == Construct::FunctionDefinition);
    CHECK(sexpr("int add(int a, int b) { return a + b; }") ==
          "(function-definition (return-type int) add (parameter-list ( (parameter int a) , (parameter int b) )) "
          "(compound-statement { (return-statement return (binary-expression a + b) ;) }))");
}

TEST_CASE("the smallest tree") {
    NetworkBuilder b;
    const NodeId root = b.add_construct(Construct::ExpressionStatement);
    b.attach(root, b.add_token(Token{TokenKind::Punctuation, ";", 0}));
    const auto net = b.build(root);
    const auto stats = network_stats(net);
    CHECK(stats.nodes == 2);
    CHECK(stats.edges == 1);
    CHECK(stats.interpretive_share == 0.5);
}

TEST_CASE("builder numbers nodes in preorder") {
    NetworkBuilder b;
    const NodeId leaf = b.add_token(Token{TokenKind::Name, "x", 0});
    const NodeId root = b.add_construct(Construct::CompoundStatement);
    const NodeId mid = b.add_construct(Construct::ExpressionStatement);
    b.attach(root, mid);
    b.attach(mid, leaf);
    const auto net = b.build(root);
    CHECK(net.root() == 0);
    CHECK(net.node(1).construct() == Construct::ExpressionStatement);
    CHECK(net.node(2).token().lexeme == "x");
    CHECK(net.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("labels round-trip and the set is closed") {
    for (std::size_t k = 0; k < kConstructCount; ++k) {
        const auto c = static_cast<Construct>(k);
        CHECK(construct_from_string(to_string(c)) == c);
    }
    CHECK(to_string(Construct::IfStatement) == "if-statement");
    CHECK(to_string(Construct::LabelOrGoto) == "label-or-goto");
    CHECK_FALSE(construct_from_string("lambda-expression").has_value());
}

TEST_CASE("network rejects self-loops and parallel edges") {
    std::vector<NetNode> nodes(2);
    nodes[1].id = 1;
    CHECK_THROWS(StructureNetwork(nodes, {{0, 0}}, 0));
    CHECK_THROWS(StructureNetwork(nodes, {{0, 1}, {1, 0}}, 0));
    CHECK_NOTHROW(StructureNetwork(nodes, {{1, 0}}, 0));
}

TEST_CASE("statement shapes") {
    SUBCASE("a call statement is the call itself") {
        CHECK(sexpr("void f(void) { g(x, 1); }") ==
              "(function-definition (return-type void) f (parameter-list ( (parameter void) )) "
              "(compound-statement { (call-expression g ( x , 1 ) ;) }))");
    }
    SUBCASE("single-statement branches hang off the if") {
        CHECK(sexpr("int f(int x) { if (x) return 1; else return 2; }") ==
              "(function-definition (return-type int) f (parameter-list ( (parameter int x) )) "
              "(compound-statement { (if-statement if (condition ( x )) (return-statement return 1 ;) else "
              "(return-statement return 2 ;)) }))");
    }
    SUBCASE("block branches become branch nodes") {
        CHECK(sexpr("void f(int x) { if (x) { y = 1; } }") ==
              "(function-definition (return-type void) f (parameter-list ( (parameter int x) )) "
              "(compound-statement { (if-statement if (condition ( x )) "
              "(then-branch { (assignment-expression y = 1 ;) })) }))");
    }
    SUBCASE("loop bodies hang off the loop") {
        CHECK(sexpr("void f(int n) { while (n) { n--; } }") ==
              "(function-definition (return-type void) f (parameter-list ( (parameter int n) )) "
              "(compound-statement { (while-statement while (condition ( n )) { (expression-statement n -- ;) "
              "}) }))");
    }
    SUBCASE("declarations and labels") {
        CHECK(sexpr("int f(void) { int err = -1; goto out; out: return err; }") ==
              "(function-definition (return-type int) f (parameter-list ( (parameter void) )) "
              "(compound-statement { (declaration int err = - 1 ;) (label-or-goto goto out ;) "
              "(label-or-goto out :) (return-statement return err ;) }))");
    }
}

TEST_CASE("unbalanced brackets name the offset") {
    const auto tokens = tokenize("int f(void) { return (1; }");
    try {
        (void)parse_structure(tokens);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset == 21);
    }
}

TEST_CASE("unrecognised token runs still give a valid tree") {
    for (const char* code : {"@@ $$ ;;", "int", "x y z w ( ) { }", "{ } { }", "int f(void) { asm volatile(\"\" ::: \"memory\"); }",
                             "void f(void) { ({ int t = 1; t; }); }", "int f(void) { return x ? y : z; }"}) {
        CAPTURE(code);
        const auto tokens = tokenize(code);
        const auto net = parse_structure(tokens);
        CHECK(check_structure(net, tokens).ok());
        CHECK(net.node(net.root()).construct() == Construct::FunctionDefinition);
    }
}

TEST_CASE("leaf tokens come back in source order") {
    const auto tokens = tokenize("int f(int a) { for (int i = 0; i < a; i++) g(i); return a; }");
    const auto net = parse_structure(tokens);
    const auto leaves = leaf_tokens(net);
    REQUIRE(leaves.size() == tokens.size());
    for (std::size_t k = 0; k < tokens.size(); ++k) CHECK(*leaves[k] == tokens[k]);
}

TEST_CASE("invariants hold on every golden snippet and fixture function") {
    for (const auto& entry : std::filesystem::directory_iterator(testing::data_dir() / "golden" / "lexer")) {
        if (entry.path().extension() != ".c") continue;
        CAPTURE(entry.path().filename().string());
        const auto tokens = tokenize(testing::slurp(entry.path()));
        if (entry.path().filename() == "20.c") {
            // The unterminated string swallows a ')' so the brackets cannot balance.
            CHECK_THROWS_AS(parse_structure(tokens), ParseError);
            continue;
        }
        const auto net = parse_structure(tokens);
        CHECK(check_structure(net, tokens).ok());
    }
    const auto files = scan_repository(testing::fixture_repo(), default_folders());
    for (const auto& s : ingest_files(files, {}, 1)) {
        CAPTURE(s.record.name);
        const auto tokens = tokenize(s.record.code);
        const auto net = parse_structure(tokens);
        CHECK(check_structure(net, tokens).ok());
        const double share = network_stats(net).interpretive_share;
        CHECK(share > 0.0);
        CHECK(share < 0.5);
    }
}

TEST_CASE("parsing is deterministic") {
    const auto tokens = tokenize(testing::slurp(testing::data_dir() / "golden" / "lexer" / "19.c"));
    CHECK(parse_structure(tokens) == parse_structure(tokens));
}

TEST_CASE("check_structure catches broken networks") {
    const auto tokens = tokenize("int x;");
    std::vector<NetNode> nodes(4);
    for (NodeId i = 0; i < 4; ++i) nodes[i].id = i;
    nodes[0].role = Construct::FunctionDefinition;
    nodes[1].role = tokens[0];
    nodes[2].role = tokens[1];
    nodes[3].role = tokens[2];
    const StructureNetwork disconnected(nodes, {{0, 1}, {0, 2}}, 0);
    const auto c1 = check_structure(disconnected, tokens);
    CHECK_FALSE(c1.connected);
    CHECK_FALSE(c1.ok());
    const StructureNetwork token_hub(nodes, {{0, 1}, {1, 2}, {1, 3}}, 0);
    CHECK_FALSE(check_structure(token_hub, tokens).tokens_are_leaves);
    const StructureNetwork good(nodes, {{0, 1}, {0, 2}, {0, 3}}, 0);
    CHECK(check_structure(good, tokens).ok());
}

}  // TEST_SUITE
