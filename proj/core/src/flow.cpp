#include "signedflow/flow.hpp"

#include <cstdlib>

namespace signedflow {

FlowAssignment FlowAssignment::zero(const SignedGraph& g, int bound) {
    FlowAssignment f;
    f.bound = bound;
    f.values.assign(g.edge_count(), 0);
    f.dirs.resize(g.edge_count());
    for (int id = 0; id < g.edge_count(); ++id) f.dirs[id] = canonical_dirs(g.edge(id));
    return f;
}

HalfDirs canonical_dirs(const Edge& e) {
    if (e.sign > 0) return HalfDirs{false, true};  // u -> v
    return HalfDirs{false, false};                 // extroverted
}

FlowAssignment canonical_flow(const SignedGraph& g, std::vector<int> values, int bound) {
    FlowAssignment f = FlowAssignment::zero(g, bound);
    f.values = std::move(values);
    return f;
}

int vertex_contribution(const SignedGraph& g, const FlowAssignment& f, int id, int w) {
    const HalfDirs& d = f.dirs.at(id);
    bool toward = g.endpoint_index(id, w) == 0 ? d.toward_u : d.toward_v;
    return toward ? f.values.at(id) : -f.values.at(id);
}

VerifyReport verify_flow(const SignedGraph& g, const FlowAssignment& f,
                         bool treat_terminals_as_free) {
    VerifyReport rep;
    if (static_cast<int>(f.values.size()) != g.edge_count() ||
        static_cast<int>(f.dirs.size()) != g.edge_count()) {
        rep.violations.push_back({FlowViolation::Kind::EdgeCountMismatch, -1,
                                  "assignment does not cover exactly the edges of the graph"});
        return rep;
    }
    for (int id = 0; id < g.edge_count(); ++id) {
        int v = f.values[id];
        if (v == 0)
            rep.violations.push_back(
                {FlowViolation::Kind::ZeroValue, id, "edge e" + std::to_string(id) + " has value 0"});
        else if (std::abs(v) >= f.bound)
            rep.violations.push_back({FlowViolation::Kind::OutOfRange, id,
                                      "edge e" + std::to_string(id) + " value " + std::to_string(v) +
                                          " out of range for k=" + std::to_string(f.bound)});
        const Edge& e = g.edge(id);
        bool tu = f.dirs[id].toward_u, tv = f.dirs[id].toward_v;
        bool legal = e.sign > 0 ? (tu != tv) : (tu == tv);
        if (!legal)
            rep.violations.push_back({FlowViolation::Kind::IllegalOrientation, id,
                                      "edge e" + std::to_string(id) + " orientation illegal for its sign"});
    }
    for (int w = 0; w < g.vertex_count(); ++w) {
        bool is_terminal = g.has_terminals() && (w == g.source() || w == g.target());
        if (is_terminal && treat_terminals_as_free) continue;
        long sum = 0;
        for (int id : g.incident(w)) sum += vertex_contribution(g, f, id, w);
        if (sum != 0)
            rep.violations.push_back({FlowViolation::Kind::ConservationFailure, w,
                                      "conservation fails at " + g.vertex_name(w) + " (net " +
                                          std::to_string(sum) + ")"});
    }
    if (g.has_terminals()) {
        long at_s = 0, at_t = 0;
        for (int id : g.incident(g.source())) at_s += vertex_contribution(g, f, id, g.source());
        for (int id : g.incident(g.target())) at_t += vertex_contribution(g, f, id, g.target());
        rep.realized_boundary = {static_cast<int>(-at_s), static_cast<int>(at_t)};
    }
    return rep;
}

std::pair<int, int> boundary(const SignedGraph& g, const FlowAssignment& f) {
    if (!g.has_terminals()) throw std::invalid_argument("graph has no terminals");
    VerifyReport rep = verify_flow(g, f, /*treat_terminals_as_free=*/true);
    if (!rep.valid()) throw std::invalid_argument("not a valid pseudoflow: " + rep.violations.front().message);
    return *rep.realized_boundary;
}

FlowAssignment switch_flow(const SignedGraph& g, const FlowAssignment& f, int v) {
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("unknown vertex id");
    FlowAssignment out = f;
    for (int id : g.incident(v)) {
        if (g.endpoint_index(id, v) == 0)
            out.dirs[id].toward_u = !out.dirs[id].toward_u;
        else
            out.dirs[id].toward_v = !out.dirs[id].toward_v;
    }
    return out;
}

FlowAssignment canonicalize_orientation(const SignedGraph& g, const FlowAssignment& f) {
    FlowAssignment out = f;
    for (int id = 0; id < g.edge_count(); ++id) {
        HalfDirs want = canonical_dirs(g.edge(id));
        const HalfDirs& have = out.dirs[id];
        if (have.toward_u == want.toward_u && have.toward_v == want.toward_v) continue;
        // the only legal alternative reverses both half-edges, which is the
        // same flow with the value negated
        out.dirs[id] = want;
        out.values[id] = -out.values[id];
    }
    return out;
}

}  // namespace signedflow
