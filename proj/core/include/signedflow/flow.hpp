#pragma once

#include <optional>
#include <string>
#include <vector>

#include "signedflow/signed_graph.hpp"

namespace signedflow {

// Half-edge directions of one edge. toward_u is true when the half-edge at
// endpoint u points to u (flow enters u), false when it points away.
// Legal combinations: positive edge, exactly one of the two is true;
// negative edge, both or neither.
struct HalfDirs {
    bool toward_u = false;
    bool toward_v = true;
};

// Orientation plus integer edge values, indexed by edge id.
// Values may be negative; nowhere-zero means 0 < |value| < bound.
struct FlowAssignment {
    int bound = 6;
    std::vector<int> values;
    std::vector<HalfDirs> dirs;

    static FlowAssignment zero(const SignedGraph& g, int bound = 6);
};

// Canonical half-edge directions: positive edge directed u -> v (as stored),
// negative edge extroverted (both half-edges point away from the endpoints).
HalfDirs canonical_dirs(const Edge& e);
FlowAssignment canonical_flow(const SignedGraph& g, std::vector<int> values, int bound = 6);

// Contribution of edge `id` to the vertex sum at endpoint w:
// +value if the half-edge at w points toward w, -value otherwise.
int vertex_contribution(const SignedGraph& g, const FlowAssignment& f, int id, int w);

struct FlowViolation {
    enum class Kind {
        EdgeCountMismatch,
        ZeroValue,
        OutOfRange,
        IllegalOrientation,
        ConservationFailure,
    };
    Kind kind;
    int where = -1;  // edge id or vertex id depending on kind
    std::string message;
};

struct VerifyReport {
    std::vector<FlowViolation> violations;
    // present when the graph has terminals: (net outflow at s, net inflow at t)
    std::optional<std::pair<int, int>> realized_boundary;

    bool valid() const { return violations.empty(); }
};

// Checks the nowhere-zero / orientation / conservation conditions. With
// treat_terminals_as_free, conservation is not required at the terminals
// (pseudoflow checking).
VerifyReport verify_flow(const SignedGraph& g, const FlowAssignment& f,
                         bool treat_terminals_as_free);

// (a, b) with a = outflow - inflow at the source and b = inflow - outflow at
// the target. Requires terminals and a valid pseudoflow.
std::pair<int, int> boundary(const SignedGraph& g, const FlowAssignment& f);

// Flow on switched(g, v): same values, half-edges at v reversed.
FlowAssignment switch_flow(const SignedGraph& g, const FlowAssignment& f, int v);

// Rewrites f into canonical orientation (positive edges u->v, negative
// extroverted), negating values as needed. The flow is unchanged as a flow.
FlowAssignment canonicalize_orientation(const SignedGraph& g, const FlowAssignment& f);

}  // namespace signedflow
