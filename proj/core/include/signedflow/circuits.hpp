#pragma once

#include <optional>
#include <string>
#include <vector>

#include "signedflow/signed_graph.hpp"

namespace signedflow {

// Witness that an edge can carry flow: either a balanced cycle or a barbell
// (two edge-disjoint unbalanced cycles joined by a path, possibly trivial).
struct SignedCircuit {
    enum class Kind { BalancedCycle, Barbell };
    Kind kind = Kind::BalancedCycle;

    std::vector<int> cycle;  // BalancedCycle: the cycle's edge ids

    std::vector<int> cycle1;  // Barbell parts
    std::vector<int> cycle2;
    std::vector<int> path;        // edge ids, empty for the shared-vertex case
    int shared_vertex = -1;       // set when path is trivial

    std::vector<int> edge_set() const;
    bool contains_edge(int id) const;
};

// Checks all structural invariants; returns an error description or nullopt.
std::optional<std::string> verify_signed_circuit(const SignedGraph& g, const SignedCircuit& c);

// All simple cycles of g as sorted edge-id lists (each cycle once).
// Intended for desk-scale graphs; size grows exponentially.
std::vector<std::vector<int>> enumerate_simple_cycles(const SignedGraph& g);

// Simple paths from a vertex of `from` to a vertex of `to` whose internal
// vertices avoid `forbidden` (and both cycles). Paths are edge-id lists.
// Enumeration stops after `limit` paths when limit > 0.
std::vector<std::vector<int>> connecting_paths(const SignedGraph& g,
                                               const std::vector<int>& from_vertices,
                                               const std::vector<int>& to_vertices,
                                               const std::vector<char>& forbidden_vertices,
                                               int limit = 0);

// A simple s-t path through the given edge, if one exists (vertex-wise simple).
std::optional<std::vector<int>> st_path_through_edge(const SignedGraph& g, int s, int t, int id);

}  // namespace signedflow
