#include <doctest.h>

#include <random>
#include <set>

#include "signedflow/generators.hpp"
#include "signedflow/sp_term.hpp"

using namespace signedflow;

TEST_CASE("parse: digon sugar expands to P(e+,e-)") {
    SpTerm d = parse_sp("P(e+,e-)");
    CHECK(d == parse_sp("D"));
    CHECK(d.is_digon());
    CHECK(print_sp(d) == "D");
    SignedGraph g = compile(d);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 2);
    CHECK(g.edge(0).sign == +1);
    CHECK(g.edge(1).sign == -1);
}

TEST_CASE("parse: nested series flatten") {
    CHECK(parse_sp("S(e+,S(e+,e+))") == parse_sp("S(e+,e+,e+)"));
    CHECK(parse_sp("S(e+,S(e+,e+))").arity() == 3);
}

TEST_CASE("parse: arity and syntax errors carry positions") {
    CHECK_THROWS_AS(parse_sp("S(e+)"), SpParseError);
    CHECK_THROWS_AS(parse_sp("P(e+)"), SpParseError);
    CHECK_THROWS_AS(parse_sp("Q(e+,e+)"), SpParseError);
    CHECK_THROWS_AS(parse_sp("S(e+,e+"), SpParseError);
    CHECK_THROWS_AS(parse_sp("e*"), SpParseError);
    CHECK_THROWS_AS(parse_sp("D extra"), SpParseError);
    try {
        parse_sp("S(e+,e*)");
    } catch (const SpParseError& e) {
        CHECK(e.position == 6);
    }
}

TEST_CASE("print is whitespace-insensitive-parse stable and idempotent") {
    std::vector<std::string> inputs = {"P( e+ , e- )", "S(e+,D,e+)", "P(S(e+,D),S(D,e+))",
                                       "P(e-,e-)", "S(D, P(e+, S(e+, D), e-), D)"};
    for (const auto& s : inputs) {
        SpTerm t = parse_sp(s);
        CHECK(parse_sp(print_sp(t)) == t);
        CHECK(print_sp(parse_sp(print_sp(t))) == print_sp(t));
    }
}

TEST_CASE("compile: single edge, digon, and the four-edge chain") {
    SignedGraph k2 = compile(parse_sp("e+"));
    CHECK(k2.vertex_count() == 2);
    CHECK(k2.edge_count() == 1);
    CHECK(k2.terminals() == std::pair{0, 1});

    SignedGraph dprime = compile(parse_sp("S(e+,D,e+)"));
    CHECK(dprime.vertex_count() == 4);
    CHECK(dprime.edge_count() == 4);
    // one negative edge, parallel to a positive one
    int negatives = 0;
    for (const Edge& e : dprime.edges()) negatives += e.sign < 0 ? 1 : 0;
    CHECK(negatives == 1);
}

TEST_CASE("compile: edge count equals leaf count on random terms") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 50; ++round) {
        SpTerm t = random_term(rng, 1 + static_cast<int>(rng() % 8));
        SignedGraph g = compile(t);
        CHECK(g.edge_count() == t.leaf_count());
        CHECK(g.has_terminals());
    }
}

TEST_CASE("depth recurrence") {
    CHECK(depth(parse_sp("e+")) == 0);
    CHECK(depth(parse_sp("e-")) == 0);
    CHECK(depth(parse_sp("D")) == 1);
    CHECK(depth(parse_sp("S(e+,D,e+)")) == 2);
    CHECK(depth(parse_sp("P(S(e+,D,e+),e-)")) == 3);  // evaluated by hand
}

TEST_CASE("pieces_of_depth: root, leaves, and Observation-5 nonemptiness") {
    SpTerm t = parse_sp("P(S(e+,D,e+),e-)");
    int d = depth(t);
    auto at_top = pieces_of_depth(t, d);
    REQUIRE(at_top.size() == 1);
    CHECK(at_top[0].empty());
    auto leaves = pieces_of_depth(t, 0);
    CHECK(static_cast<int>(leaves.size()) == t.leaf_count());
    for (int k = 0; k <= d; ++k) CHECK_FALSE(pieces_of_depth(t, k).empty());
    CHECK_THROWS_AS(pieces_of_depth(t, d + 1), std::invalid_argument);
}

TEST_CASE("replace_piece basics") {
    SpTerm t = parse_sp("S(e+,D,e+)");
    SpTerm h = parse_sp("P(e+,e-)");
    CHECK(replace_piece(t, {}, h) == h);
    // replacing a leaf by an equal leaf leaves the term unchanged
    CHECK(replace_piece(t, {0}, SpTerm::pos_edge()) == t);
    // replacing the digon with a single edge merges into the series
    SpTerm r = replace_piece(t, {1}, SpTerm::neg_edge());
    CHECK(r == parse_sp("S(e+,e-,e+)"));
    // edge count changes by the leaf difference
    SpTerm big = replace_piece(t, {1}, parse_sp("S(e+,D,e+)"));
    CHECK(big.leaf_count() == t.leaf_count() - 2 + 4);
    CHECK_THROWS_AS(replace_piece(t, {7}, h), std::invalid_argument);
}

TEST_CASE("Observation 6: non-terminal vertices have two distinct neighbours") {
    for (const SpTerm& t : enumerate_terms_list(6)) {
        SignedGraph g = compile(t);
        for (int v = 2; v < g.vertex_count(); ++v) {
            std::set<int> nbrs;
            for (int id : g.incident(v)) nbrs.insert(g.other_end(id, v));
            CHECK(nbrs.size() >= 2);
        }
    }
}

TEST_CASE("canonicalize sorts parallel children and tracks leaves") {
    SpTerm t = SpTerm::parallel({SpTerm::neg_edge(), SpTerm::pos_edge()});
    std::vector<int> map;
    SpTerm c = canonicalize(t, &map);
    CHECK(print_sp(c) == "D");
    CHECK(map == std::vector<int>{1, 0});

    // compiled graphs agree as labelled graphs after canonicalization
    std::mt19937_64 rng(5);
    for (int round = 0; round < 40; ++round) {
        SpTerm r = random_term(rng, 1 + static_cast<int>(rng() % 7));
        CHECK(compile(r).same_labelled_graph(compile(canonicalize(r))));
    }
}

TEST_CASE("mirror reverses series order and fixes parallel terms") {
    CHECK(mirror(parse_sp("S(e+,D)")) == parse_sp("S(D,e+)"));
    SpTerm n = parse_sp("P(S(e+,D),e-)");
    CHECK(mirror(mirror(n)) == n);
}

TEST_CASE("switch_term flips exactly the leaf signs at a vertex") {
    SpTerm t = parse_sp("S(e+,D,e+)");
    SignedGraph g = compile(t);
    for (int v = 0; v < g.vertex_count(); ++v) {
        SpTerm s = switch_term(t, v);
        SignedGraph expect = g.switched(v);
        CHECK(compile(s).same_labelled_graph(expect));
    }
    // switching at both endpoints of an edge leaves it unchanged
    CHECK(switch_term(parse_sp("e-"), std::vector<int>{0, 1}) == parse_sp("e-"));
}

TEST_CASE("compile_with_layout exposes piece terminals and edge ranges") {
    SpTerm t = parse_sp("S(e+,D,e+)");
    CompiledTerm ct = compile_with_layout(t);
    CHECK(ct.graph.same_labelled_graph(compile(t)));
    const PieceLayout& root = ct.at({});
    CHECK(root.source == 0);
    CHECK(root.target == 1);
    CHECK(root.edge_count == 4);
    const PieceLayout& digon = ct.at({1});
    CHECK(digon.first_edge == 1);
    CHECK(digon.edge_count == 2);
    // the digon sits between the two junction vertices
    CHECK(digon.source == 2);
    CHECK(digon.target == 3);
}
