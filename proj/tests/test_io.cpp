#include <doctest.h>

#include "signedflow/flow_engine.hpp"
#include "signedflow/io.hpp"
#include "signedflow/sp_term.hpp"

using namespace signedflow;

static const char* kSample =
    "# a two-terminal chain\n"
    "terminals s t\n"
    "s m +\n"
    "m t +\n"
    "m t -\n";

TEST_CASE("edge list: parse and format round-trip") {
    SignedGraph g = parse_edge_list(kSample);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
    REQUIRE(g.has_terminals());
    CHECK(g.vertex_name(g.source()) == "s");
    CHECK(g.vertex_name(g.target()) == "t");
    CHECK(g.edge(2).sign == -1);

    SignedGraph again = parse_edge_list(format_edge_list(g));
    CHECK(again.same_labelled_graph(g));
}

TEST_CASE("edge list: errors carry line numbers") {
    CHECK_THROWS_AS(parse_edge_list("a a +\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("a b *\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("a b\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("terminals a a\n a b +\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("terminals x y\na b +\n"), ParseError);
    try {
        parse_edge_list("a b +\nc d ?\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("flow text format: golden output and reparse") {
    SpTerm t = parse_sp("S(e+,D)");
    SignedGraph g = compile(t);
    FlowAssignment f = FlowAssignment::zero(g, 6);
    f.values = {2, 3, -1};
    std::string text = format_flow(g, f);
    CHECK(text ==
          "flow k=6\n"
          "e0 v0->v2 2\n"
          "e1 v2->v1 3\n"
          "e2 v2->x<-v1 -1\n");
    FlowAssignment back = parse_flow(g, text);
    CHECK(back.values == f.values);
    CHECK(back.bound == 6);
    for (int id = 0; id < g.edge_count(); ++id) {
        CHECK(back.dirs[id].toward_u == f.dirs[id].toward_u);
        CHECK(back.dirs[id].toward_v == f.dirs[id].toward_v);
    }
}

TEST_CASE("flow text format: all four endpoint markers parse") {
    SignedGraph g = parse_edge_list("terminals a b\na b +\na b -\n");
    std::string text =
        "flow k=6\n"
        "e0 a<-b 2\n"
        "e1 a<-x->b 1\n";
    FlowAssignment f = parse_flow(g, text);
    CHECK(f.dirs[0].toward_u);
    CHECK_FALSE(f.dirs[0].toward_v);
    CHECK(f.dirs[1].toward_u);
    CHECK(f.dirs[1].toward_v);
    CHECK_THROWS_AS(parse_flow(g, "flow k=6\ne0 a->b 1\n"), ParseError);  // missing e1
    CHECK_THROWS_AS(parse_flow(g, "flow k=6\ne0 b->a 1\ne1 a->x<-b 1\n"), ParseError);
}

TEST_CASE("dot export: dashed negatives and value labels") {
    SpTerm t = parse_sp("D");
    SignedGraph g = compile(t);
    auto f = dp_flow(parse_sp("P(S(e+,D),S(D,e+))"), 6);
    std::string plain = to_dot(g);
    CHECK(plain.find("style=dashed") != std::string::npos);
    CHECK(plain.find("digraph") != std::string::npos);

    SignedGraph big = compile(parse_sp("P(S(e+,D),S(D,e+))"));
    REQUIRE(f.has_value());
    std::string with_flow = to_dot(big, &*f);
    CHECK(with_flow.find("e0=") != std::string::npos);
}

TEST_CASE("graph json round-trips to a fixpoint") {
    SignedGraph g = parse_edge_list(kSample);
    std::string j = graph_to_json(g);
    SignedGraph back = graph_from_json(j);
    CHECK(back.same_labelled_graph(g));
    CHECK(graph_to_json(back) == j);
}

TEST_CASE("flow and report json are well-formed") {
    SpTerm t = parse_sp("P(S(e+,D),S(D,e+))");
    SignedGraph g = compile(t);
    auto f = dp_flow(t, 6);
    REQUIRE(f.has_value());
    std::string fj = flow_to_json(g, *f);
    CHECK(fj.find("\"k\":6") != std::string::npos);
    VerifyReport rep = verify_flow(g, *f, false);
    std::string rj = verify_report_to_json(rep);
    CHECK(rj.find("\"valid\":true") != std::string::npos);
}
