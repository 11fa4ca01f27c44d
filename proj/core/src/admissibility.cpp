#include "signedflow/admissibility.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace signedflow {

namespace {

struct CircuitIndex {
    std::vector<std::vector<int>> balanced;
    std::vector<std::vector<int>> unbalanced;
    std::vector<std::set<int>> unbalanced_vertices;

    explicit CircuitIndex(const SignedGraph& g) {
        for (auto& cyc : enumerate_simple_cycles(g)) {
            if (cycle_sign(g, cyc) == Balance::Balanced) {
                balanced.push_back(std::move(cyc));
            } else {
                auto verts = cycle_vertices(g, cyc);
                unbalanced_vertices.emplace_back(verts->begin(), verts->end());
                unbalanced.push_back(std::move(cyc));
            }
        }
    }
};

SignedCircuit checked(const SignedGraph& g, SignedCircuit c) {
    if (auto err = verify_signed_circuit(g, c))
        throw std::logic_error("internal: produced an invalid signed circuit: " + *err);
    return c;
}

// Covers edges with signed circuits; stops early once `want` (or everything,
// when want < 0) is covered.
void cover_edges(const SignedGraph& g, const CircuitIndex& ix,
                 std::vector<std::optional<SignedCircuit>>& witness, int want) {
    auto covered = [&]() {
        if (want >= 0) return witness[want].has_value();
        return std::all_of(witness.begin(), witness.end(),
                           [](const auto& w) { return w.has_value(); });
    };
    auto put = [&](int e, SignedCircuit c) {
        if (!witness[e]) witness[e] = checked(g, std::move(c));
    };

    for (const auto& cyc : ix.balanced) {
        for (int e : cyc) {
            SignedCircuit c;
            c.kind = SignedCircuit::Kind::BalancedCycle;
            c.cycle = cyc;
            put(e, std::move(c));
        }
        if (covered()) return;
    }

    for (size_t i = 0; i < ix.unbalanced.size(); ++i) {
        for (size_t j = i + 1; j < ix.unbalanced.size(); ++j) {
            const auto& c1 = ix.unbalanced[i];
            const auto& c2 = ix.unbalanced[j];
            std::set<int> e1(c1.begin(), c1.end());
            if (std::any_of(c2.begin(), c2.end(), [&](int e) { return e1.count(e) > 0; }))
                continue;
            std::vector<int> shared;
            for (int v : ix.unbalanced_vertices[i])
                if (ix.unbalanced_vertices[j].count(v)) shared.push_back(v);

            if (shared.size() == 1) {
                SignedCircuit c;
                c.kind = SignedCircuit::Kind::Barbell;
                c.cycle1 = c1;
                c.cycle2 = c2;
                c.shared_vertex = shared[0];
                for (int e : c1) put(e, c);
                for (int e : c2) put(e, c);
                if (covered()) return;
            } else if (shared.empty()) {
                std::vector<char> forbidden(g.vertex_count(), 0);
                for (int v : ix.unbalanced_vertices[i]) forbidden[v] = 1;
                for (int v : ix.unbalanced_vertices[j]) forbidden[v] = 1;
                std::vector<int> from(ix.unbalanced_vertices[i].begin(),
                                      ix.unbalanced_vertices[i].end());
                std::vector<int> to(ix.unbalanced_vertices[j].begin(),
                                    ix.unbalanced_vertices[j].end());
                auto paths = connecting_paths(g, from, to, forbidden, 0);
                for (const auto& p : paths) {
                    SignedCircuit c;
                    c.kind = SignedCircuit::Kind::Barbell;
                    c.cycle1 = c1;
                    c.cycle2 = c2;
                    c.path = p;
                    for (int e : c1) put(e, c);
                    for (int e : c2) put(e, c);
                    for (int e : p) put(e, c);
                    if (covered()) return;
                }
            }
        }
    }
}

}  // namespace

std::optional<SignedCircuit> circuit_through(const SignedGraph& g, int edge_id) {
    if (edge_id < 0 || edge_id >= g.edge_count()) throw std::invalid_argument("unknown edge id");
    CircuitIndex ix(g);
    std::vector<std::optional<SignedCircuit>> witness(g.edge_count());
    cover_edges(g, ix, witness, edge_id);
    return witness[edge_id];
}

AdmissibilityReport is_flow_admissible(const SignedGraph& g) {
    AdmissibilityReport rep;
    rep.witness.resize(g.edge_count());
    CircuitIndex ix(g);
    cover_edges(g, ix, rep.witness, -1);
    for (int e = 0; e < g.edge_count(); ++e)
        if (!rep.witness[e]) rep.uncovered.push_back(e);
    rep.admissible = rep.uncovered.empty();
    return rep;
}

namespace {

// Unbalanced simple cycle with all edges inside [lo, hi), optionally through
// a required edge.
std::optional<std::vector<int>> unbalanced_cycle_in_range(const SignedGraph& g, int lo, int hi,
                                                          int through) {
    for (auto& cyc : enumerate_simple_cycles(g)) {
        bool in_range = std::all_of(cyc.begin(), cyc.end(),
                                    [&](int e) { return e >= lo && e < hi; });
        if (!in_range) continue;
        if (through >= 0 && !std::count(cyc.begin(), cyc.end(), through)) continue;
        if (cycle_sign(g, cyc) == Balance::Unbalanced) return cyc;
    }
    return std::nullopt;
}

// Path from a vertex of `cyc` to vertex `anchor`, internally avoiding the
// cycle; empty when the anchor already lies on the cycle.
std::vector<int> path_cycle_to_anchor(const SignedGraph& g, const std::vector<int>& cyc,
                                      int anchor) {
    auto verts = cycle_vertices(g, cyc);
    if (std::count(verts->begin(), verts->end(), anchor)) return {};
    std::vector<char> forbidden(g.vertex_count(), 0);
    for (int v : *verts) forbidden[v] = 1;
    auto paths = connecting_paths(g, *verts, {anchor}, forbidden, 1);
    if (paths.empty()) throw std::logic_error("internal: endpart anchor unreachable from cycle");
    return paths[0];
}

}  // namespace

std::optional<SignedCircuit> barbell_via_endparts(const SpTerm& t, int edge_id) {
    if (t.kind() != SpTerm::Kind::Series) return std::nullopt;
    CompiledTerm ct = compile_with_layout(t);
    const SignedGraph& g = ct.graph;
    int n = t.arity();
    const PieceLayout& first = ct.at({0});
    const PieceLayout& last = ct.at({n - 1});
    int r1 = first.target;  // inner terminal of the first endpart
    int r2 = last.source;

    auto c1 = unbalanced_cycle_in_range(g, first.first_edge, first.first_edge + first.edge_count, -1);
    auto c2 = unbalanced_cycle_in_range(g, last.first_edge, last.first_edge + last.edge_count, -1);
    if (!c1 || !c2) return std::nullopt;  // endparts not both unbalanced

    bool in_first = edge_id < first.edge_count;
    bool in_last = edge_id >= last.first_edge;

    if (in_first || in_last) {
        // rebuild the near cycle so it passes through the edge
        if (in_first)
            c1 = unbalanced_cycle_in_range(g, first.first_edge,
                                           first.first_edge + first.edge_count, edge_id);
        else
            c2 = unbalanced_cycle_in_range(g, last.first_edge, last.first_edge + last.edge_count,
                                           edge_id);
        if (!c1 || !c2) return std::nullopt;
    }

    // connecting path: cycle1 -> r1 -> ... -> r2 -> cycle2
    std::vector<int> path = path_cycle_to_anchor(g, *c1, r1);
    if (!(in_first || in_last)) {
        auto mid = st_path_through_edge(g, r1, r2, edge_id);
        if (!mid) return std::nullopt;
        path.insert(path.end(), mid->begin(), mid->end());
    } else if (r1 != r2) {
        std::vector<char> none(g.vertex_count(), 0);
        auto ps = connecting_paths(g, {r1}, {r2}, none, 1);
        if (ps.empty()) return std::nullopt;
        path.insert(path.end(), ps[0].begin(), ps[0].end());
    }
    std::vector<int> tail = path_cycle_to_anchor(g, *c2, r2);
    path.insert(path.end(), tail.begin(), tail.end());

    SignedCircuit c;
    c.kind = SignedCircuit::Kind::Barbell;
    c.cycle1 = *c1;
    c.cycle2 = *c2;
    c.path = path;
    if (path.empty()) {
        // cycles meet at a single vertex (r1 == r2 on both cycles)
        auto v1 = cycle_vertices(g, *c1);
        auto v2 = cycle_vertices(g, *c2);
        std::set<int> s1(v1->begin(), v1->end());
        for (int v : *v2)
            if (s1.count(v)) c.shared_vertex = v;
    }
    if (verify_signed_circuit(g, c)) return std::nullopt;
    return c;
}

AdmissibilityReport is_flow_admissible_term(const SpTerm& t) {
    if (t.kind() == SpTerm::Kind::Series) {
        SignedGraph g = compile(t);
        AdmissibilityReport rep;
        rep.witness.resize(g.edge_count());
        bool all = true;
        for (int e = 0; e < g.edge_count() && all; ++e) {
            rep.witness[e] = barbell_via_endparts(t, e);
            if (!rep.witness[e]) all = false;
        }
        if (all) {
            rep.admissible = true;
            return rep;
        }
        // endparts not both unbalanced (or a mid-edge detour failed):
        // fall through to the general search
    }
    return is_flow_admissible(compile(t));
}

}  // namespace signedflow
