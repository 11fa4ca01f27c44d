#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace signedflow {

// Edge of a signed multigraph. Edge ids are the indices into
// SignedGraph::edges(); endpoints are vertex indices. sign is +1 or -1.
struct Edge {
    int u = 0;
    int v = 0;
    int sign = +1;
};

// Signed multigraph with optional ordered terminal pair (source, target).
// Loops are rejected at construction; parallel edges are allowed.
// Immutable after construction: all mutating operations return new graphs.
class SignedGraph {
public:
    SignedGraph() = default;

    // names may be empty (then v0, v1, ... are generated).
    static SignedGraph make(int vertex_count, std::vector<Edge> edges,
                            std::optional<std::pair<int, int>> terminals = std::nullopt,
                            std::vector<std::string> names = {});

    int vertex_count() const { return static_cast<int>(incidence_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int id) const { return edges_.at(id); }
    const std::vector<Edge>& edges() const { return edges_; }

    const std::vector<int>& incident(int v) const { return incidence_.at(v); }
    int degree(int v) const { return static_cast<int>(incidence_.at(v).size()); }

    // 0 or 1 for the endpoints of an edge; throws if w is not an endpoint.
    int endpoint_index(int edge_id, int w) const;
    int other_end(int edge_id, int w) const;

    const std::optional<std::pair<int, int>>& terminals() const { return terminals_; }
    bool has_terminals() const { return terminals_.has_value(); }
    int source() const { return terminals_.value().first; }
    int target() const { return terminals_.value().second; }

    const std::string& vertex_name(int v) const { return names_.at(v); }
    const std::vector<std::string>& vertex_names() const { return names_; }

    // Switching at v: flips the sign of every edge incident with v.
    SignedGraph switched(int v) const;
    SignedGraph switched(const std::vector<int>& vertices) const;

    // Same vertex count, same terminals, same multiset of
    // (min(u,v), max(u,v), sign) triples. Edge ids are not compared.
    bool same_labelled_graph(const SignedGraph& other) const;

    // True iff no unbalanced cycle exists (signs consistent with a
    // vertex bipotential).
    bool balanced() const;

    // Edge ids of all bridges (cut edges). Parallel edges are never bridges.
    std::vector<int> bridges() const;
    bool bridgeless() const { return bridges().empty(); }

    bool connected() const;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incidence_;  // vertex -> edge ids
    std::optional<std::pair<int, int>> terminals_;
    std::vector<std::string> names_;
};

enum class Balance { Balanced, Unbalanced };

// Sign of a cycle given as an edge-id list. Throws std::invalid_argument
// if the edges do not form a single simple cycle of g (2-cycles allowed).
Balance cycle_sign(const SignedGraph& g, const std::vector<int>& cycle);

// Validates that `cycle` is a simple cycle (distinct edges, every touched
// vertex used by exactly two of them, connected). Returns the vertex
// sequence on success.
std::optional<std::vector<int>> cycle_vertices(const SignedGraph& g,
                                               const std::vector<int>& cycle);

}  // namespace signedflow
