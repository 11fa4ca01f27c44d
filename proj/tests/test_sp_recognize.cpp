#include <doctest.h>

#include <random>

#include "signedflow/generators.hpp"
#include "signedflow/sp_recognize.hpp"

using namespace signedflow;

TEST_CASE("is_reduced: digon yes, same-sign pair no, degree-2 junction no") {
    CHECK(is_reduced(parse_sp("D")));

    ReducedWitness w;
    CHECK_FALSE(is_reduced(parse_sp("P(e+,e+)"), &w));
    REQUIRE(w.same_sign_pair.has_value());

    ReducedWitness w2;
    CHECK_FALSE(is_reduced(parse_sp("S(e+,e+)"), &w2));
    REQUIRE(w2.low_degree_vertex.has_value());
}

TEST_CASE("the only reduced term of depth 1 is the unbalanced 2-cycle") {
    for (const SpTerm& t : enumerate_terms_list(6)) {
        if (depth(t) != 1) continue;
        CHECK(is_reduced(t) == (t == parse_sp("D")));
    }
}

TEST_CASE("recognize_string: D is a string but not nontrivial") {
    auto p = recognize_string(parse_sp("D"));
    REQUIRE(p.has_value());
    CHECK(p->beta == 1);
    CHECK_FALSE(p->nontrivial);

    auto q = recognize_string(parse_sp("e+"));
    REQUIRE(q.has_value());
    CHECK(q->beta == 0);
    CHECK_FALSE(q->nontrivial);

    CHECK_FALSE(recognize_string(parse_sp("e-")).has_value());
}

TEST_CASE("recognize_string: bridges must alternate with digons") {
    auto p = recognize_string(parse_sp("S(e+,D,D,e+)"));
    REQUIRE(p.has_value());
    CHECK(p->beta == 2);
    CHECK(p->nontrivial);
    CHECK(p->parts.size() == 4);
    CHECK_FALSE(p->starts_with_digon());

    CHECK_FALSE(recognize_string(parse_sp("S(e+,e+)")).has_value());
    CHECK_FALSE(recognize_string(parse_sp("S(e+,D,e+,e+)")).has_value());
    CHECK_FALSE(recognize_string(parse_sp("S(e-,D)")).has_value());
    CHECK_FALSE(recognize_string(parse_sp("P(S(e+,D),e+)")).has_value());
}

TEST_CASE("normalize_to_string: K2- needs one switch") {
    auto n = normalize_to_string(parse_sp("e-"));
    REQUIRE(n.has_value());
    CHECK(n->profile.term == parse_sp("e+"));
    CHECK(n->switchings.size() == 1);
}

TEST_CASE("normalize_to_string: S(e-,D,e-) becomes S(e+,D,e+) with 2 switches") {
    SpTerm t = parse_sp("S(e-,D,e-)");
    auto n = normalize_to_string(t);
    REQUIRE(n.has_value());
    CHECK(print_sp(canonicalize(n->profile.term)) == "S(e+,D,e+)");
    CHECK(n->switchings.size() == 2);
    // applying the switching sequence to compile(t) gives the compiled string
    SignedGraph switched = compile(t).switched(n->switchings);
    CHECK(switched.same_labelled_graph(compile(n->profile.term)));
    // and the result re-verifies as a string
    CHECK(recognize_string(n->profile.term).has_value());
}

TEST_CASE("normalize_to_string: preconditions reported") {
    std::string why;
    CHECK_FALSE(normalize_to_string(parse_sp("P(S(e+,D),S(D,e+))"), &why).has_value());
    CHECK(why == "depth exceeds 2");
    why.clear();
    CHECK_FALSE(normalize_to_string(parse_sp("S(e+,e+)"), &why).has_value());
    CHECK(why == "term is not reduced");
}

TEST_CASE("normalize_to_string holds on every reduced term of depth <= 2") {
    for (const SpTerm& t : enumerate_terms_list(7)) {
        if (depth(t) > 2 || !is_reduced(t)) continue;
        auto n = normalize_to_string(t);
        REQUIRE(n.has_value());
        SignedGraph switched = compile(t).switched(n->switchings);
        CHECK(switched.same_labelled_graph(compile(n->profile.term)));
    }
}

TEST_CASE("recognize_necklace: labeling precedence and types") {
    // beta(G2) = 0 wins: G2 = K2+, type II
    auto p = recognize_necklace(parse_sp("P(S(e+,D),e+)"));
    REQUIRE(p.has_value());
    CHECK(p->g2.beta == 0);
    CHECK(p->g1.beta == 1);
    CHECK(p->type == NecklaceType::II);

    // odd beta(G2) wins next: G2 = D (grouped from the flattened e+/e-), type I
    auto q = recognize_necklace(parse_sp("P(S(D,D),D)"));
    REQUIRE(q.has_value());
    CHECK(q->g2.beta == 1);
    CHECK(q->g1.beta == 2);
    CHECK(q->type == NecklaceType::I);

    // neither string nontrivial
    CHECK_FALSE(recognize_necklace(parse_sp("P(e+,e-)")).has_value());
    CHECK_FALSE(recognize_necklace(parse_sp("S(e+,D)")).has_value());
    // a K2- part is not a string
    CHECK_FALSE(recognize_necklace(parse_sp("P(S(e+,D),e-)")).has_value());
}

TEST_CASE("recognize_necklace: edge maps address the parent compilation") {
    SpTerm t = parse_sp("P(S(D,D),D)");
    auto p = recognize_necklace(t);
    REQUIRE(p.has_value());
    SignedGraph g = compile(t);
    SignedGraph g1 = compile(p->g1.term);
    for (size_t e = 0; e < p->g1.edge_map.size(); ++e)
        CHECK(g.edge(p->g1.edge_map[e]).sign == g1.edge(static_cast<int>(e)).sign);
    SignedGraph g2 = compile(p->g2.term);
    for (size_t e = 0; e < p->g2.edge_map.size(); ++e)
        CHECK(g.edge(p->g2.edge_map[e]).sign == g2.edge(static_cast<int>(e)).sign);
}

TEST_CASE("find_necklace_piece: preconditions") {
    std::string why;
    CHECK_FALSE(find_necklace_piece(parse_sp("S(e+,D,e+)"), &why).has_value());
    CHECK(why == "depth below 3");
}

TEST_CASE("find_necklace_piece: guaranteed on reduced terms of depth >= 3") {
    int found = 0, total = 0;
    for (const SpTerm& t : enumerate_terms_list(8)) {
        if (!is_reduced(t) || depth(t) < 3) continue;
        ++total;
        auto site = find_necklace_piece(t);
        REQUIRE(site.has_value());
        ++found;
        // the reported profile re-verifies as a necklace
        CHECK(recognize_necklace(site->profile.term).has_value());
        // the switched subgraph matches the necklace term edge-by-edge
        SignedGraph switched = compile(t).switched(site->switchings);
        SignedGraph h = compile(site->profile.term);
        const SpTerm& piece = resolve_piece(t, site->piece);
        int base = 0;
        {
            // recompute the global leaf offset of the piece
            const SpTerm* cur = &t;
            for (int i : site->piece) {
                base += cur->child_leaf_offset(i);
                cur = &cur->child(i);
            }
        }
        int off_a = base + piece.child_leaf_offset(site->child_a);
        int off_b = base + piece.child_leaf_offset(site->child_b);
        int lc_a = piece.child(site->child_a).leaf_count();
        for (int e = 0; e < h.edge_count(); ++e) {
            int parent = e < lc_a ? off_a + e : off_b + (e - lc_a);
            CHECK(h.edge(e).sign == switched.edge(parent).sign);
        }
    }
    CHECK(found == total);
    CHECK(total > 0);
}

TEST_CASE("find_necklace_piece: wrapped necklace piece re-verifies") {
    SpTerm t = parse_sp("S(D,P(S(e+,D,e+),e-),D)");
    REQUIRE(depth(t) == 4);
    REQUIRE(is_reduced(t));
    auto site = find_necklace_piece(t);
    REQUIRE(site.has_value());
    CHECK(site->piece == PieceRef{1});
    CHECK(recognize_necklace(site->profile.term).has_value());
}

TEST_CASE("recognize_sp: basics") {
    CHECK(*recognize_sp(compile(parse_sp("e+"))) == parse_sp("e+"));

    // K4 is not series-parallel
    SignedGraph k4 = SignedGraph::make(
        4, {{0, 1, +1}, {0, 2, +1}, {0, 3, +1}, {1, 2, +1}, {1, 3, +1}, {2, 3, +1}},
        std::pair{0, 1});
    CHECK_FALSE(recognize_sp(k4).has_value());

    SignedGraph no_terms = SignedGraph::make(2, {{0, 1, +1}});
    CHECK_THROWS_AS(recognize_sp(no_terms), std::invalid_argument);
}

TEST_CASE("recognize_sp: round-trips over the enumerated corpus") {
    for (const SpTerm& t : enumerate_terms_list(7)) {
        auto back = recognize_sp(compile(t));
        REQUIRE(back.has_value());
        CHECK(*back == t);
    }
}
