#include <doctest.h>

#include <random>

#include "signedflow/generators.hpp"
#include "signedflow/oracle.hpp"
#include "signedflow/sp_term.hpp"

using namespace signedflow;

TEST_CASE("oracle: all-positive 2-cycle has a 2-flow") {
    SignedGraph g = SignedGraph::make(2, {{0, 1, +1}, {0, 1, +1}});
    OracleResult r = oracle_flow(g, 2);
    CHECK(r.found);
    REQUIRE(r.witness.has_value());
    CHECK(verify_flow(g, *r.witness, false).valid());
}

TEST_CASE("oracle: a standalone digon has no flow for any k") {
    SignedGraph g = compile(parse_sp("D"));
    for (int k = 2; k <= 8; ++k) CHECK_FALSE(oracle_flow(g, k).found);
    CHECK_FALSE(oracle_flow_number(g).has_value());
}

TEST_CASE("oracle: two-terminal chain has no closed flow, closed barbell needs 3") {
    CHECK_FALSE(oracle_flow(compile(parse_sp("S(e+,D,e+)")), 6).found);
    SignedGraph barbell = compile(parse_sp("S(D,e+,D)"));
    CHECK_FALSE(oracle_flow(barbell, 2).found);
    CHECK(oracle_flow(barbell, 3).found);
    CHECK(oracle_flow_number(barbell) == 3);
}

TEST_CASE("oracle: edge limit is enforced") {
    SignedGraph g = compile(parse_sp("P(e+,e+)"));
    CHECK_THROWS_AS(oracle_flow(g, 2, 1), std::invalid_argument);
}

TEST_CASE("oracle: monotonicity in k") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 60; ++round) {
        SpTerm t = random_term(rng, 2 + static_cast<int>(rng() % 5));
        SignedGraph g = compile(t);
        bool prev = false;
        for (int k = 2; k <= 6; ++k) {
            bool found = oracle_flow(g, k).found;
            if (prev) CHECK(found);
            prev = found;
        }
    }
}

TEST_CASE("oracle: switching invariance") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 40; ++round) {
        SpTerm t = random_term(rng, 2 + static_cast<int>(rng() % 5));
        SignedGraph g = compile(t);
        SignedGraph s = g;
        for (int i = 0; i < 3; ++i) s = s.switched(static_cast<int>(rng() % g.vertex_count()));
        CHECK(oracle_flow_number(g, 6) == oracle_flow_number(s, 6));
    }
}

namespace {

// Second, slower oracle: enumerate every legal orientation together with
// positive values only. Confirms the canonical-orientation + signed-values
// reduction used by the main oracle.
bool exhaustive_all_orientations(const SignedGraph& g, int k) {
    int m = g.edge_count();
    std::vector<int> values(m, 0);
    std::vector<HalfDirs> dirs(m);
    std::function<bool(int)> rec = [&](int idx) -> bool {
        if (idx == m) {
            FlowAssignment f;
            f.bound = k;
            f.values = values;
            f.dirs = dirs;
            return verify_flow(g, f, false).valid();
        }
        const Edge& e = g.edge(idx);
        std::vector<HalfDirs> options;
        if (e.sign > 0)
            options = {{false, true}, {true, false}};
        else
            options = {{false, false}, {true, true}};
        for (const HalfDirs& d : options) {
            dirs[idx] = d;
            for (int v = 1; v < k; ++v) {
                values[idx] = v;
                if (rec(idx + 1)) return true;
            }
        }
        return false;
    };
    return rec(0);
}

}  // namespace

TEST_CASE("oracle: canonical-orientation search equals full orientation search") {
    for (const SpTerm& t : enumerate_terms_list(5)) {
        SignedGraph g = compile(t);
        for (int k : {2, 3}) {
            CHECK(oracle_flow(g, k).found == exhaustive_all_orientations(g, k));
        }
    }
}

TEST_CASE("oracle: boundary pairs of the digon match the closed-form region") {
    SignedGraph g = compile(parse_sp("D"));
    auto pairs = oracle_boundary_pairs(g, 6);
    for (int a = -10; a <= 10; ++a)
        for (int b = -10; b <= 10; ++b) {
            bool in = std::count(pairs.begin(), pairs.end(), std::pair{a, b}) > 0;
            bool expect = (a - b) % 2 == 0 && a != b && a != -b && std::abs(a + b) <= 10 &&
                          std::abs(a - b) <= 10;
            CHECK(in == expect);
        }
}
