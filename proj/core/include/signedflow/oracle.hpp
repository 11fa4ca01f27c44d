#pragma once

#include <optional>
#include <cstdint>

#include "signedflow/flow.hpp"
#include "signedflow/signed_graph.hpp"

namespace signedflow {

struct OracleResult {
    int k = 0;
    bool found = false;
    std::optional<FlowAssignment> witness;
    std::uint64_t nodes_explored = 0;
};

inline constexpr int kOracleDefaultEdgeLimit = 14;

// Exhaustive backtracking over per-edge values in +-{1..k-1} under the
// canonical orientation (positive edges directed as stored, negative edges
// extroverted), pruning by partial vertex sums. Conservation is required at
// every vertex; terminals get no special treatment. found is true iff a
// nowhere-zero k-flow exists. Throws if the edge limit is exceeded.
OracleResult oracle_flow(const SignedGraph& g, int k, int edge_limit = kOracleDefaultEdgeLimit);

// Least k <= k_max admitting a nowhere-zero k-flow, or nullopt.
std::optional<int> oracle_flow_number(const SignedGraph& g, int k_max = 8,
                                      int edge_limit = kOracleDefaultEdgeLimit);

// Boundary pairs (a, b) realizable by nowhere-zero k-valuations that conserve
// flow at every non-terminal vertex (terminals free). Test oracle for the
// boundary-pair dynamic programming. Requires terminals.
std::vector<std::pair<int, int>> oracle_boundary_pairs(const SignedGraph& g, int k,
                                                       int edge_limit = kOracleDefaultEdgeLimit);

}  // namespace signedflow
