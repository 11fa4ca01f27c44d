#include "signedflow/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace signedflow {

namespace {

// Contribution sign of edge `id` at vertex w under the canonical orientation,
// per unit of value: positive edge u->v contributes -1 at u and +1 at v;
// extroverted negative edge contributes -1 at both ends.
int unit_contribution(const Edge& e, int endpoint_index) {
    if (e.sign > 0) return endpoint_index == 0 ? -1 : +1;
    return -1;
}

struct Search {
    const SignedGraph& g;
    int k;
    std::vector<int> order;        // edge ids in assignment order
    std::vector<int> values;       // by edge id
    std::vector<long> vertex_sum;  // partial sums
    std::vector<int> remaining;    // unassigned incident edges per vertex
    std::vector<char> conserve;    // whether the vertex sum must vanish
    std::uint64_t nodes = 0;
    bool collect_boundaries = false;
    std::set<std::pair<int, int>> boundaries;
    bool done = false;

    explicit Search(const SignedGraph& graph, int bound) : g(graph), k(bound) {
        values.assign(g.edge_count(), 0);
        vertex_sum.assign(g.vertex_count(), 0);
        remaining.assign(g.vertex_count(), 0);
        conserve.assign(g.vertex_count(), 1);
        for (int v = 0; v < g.vertex_count(); ++v) remaining[v] = g.degree(v);
        // DFS edge order so vertices close early
        std::vector<char> seen_edge(g.edge_count(), 0), seen_vertex(g.vertex_count(), 0);
        for (int start = 0; start < g.vertex_count(); ++start) {
            if (seen_vertex[start]) continue;
            std::vector<int> stack = {start};
            seen_vertex[start] = 1;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int id : g.incident(u)) {
                    if (seen_edge[id]) continue;
                    seen_edge[id] = 1;
                    order.push_back(id);
                    int w = g.other_end(id, u);
                    if (!seen_vertex[w]) {
                        seen_vertex[w] = 1;
                        stack.push_back(w);
                    }
                }
            }
        }
    }

    bool feasible_at(int w) const {
        if (!conserve[w]) return true;
        if (remaining[w] == 0) return vertex_sum[w] == 0;
        return std::llabs(vertex_sum[w]) <= static_cast<long>(k - 1) * remaining[w];
    }

    bool assign(size_t idx) {
        ++nodes;
        if (idx == order.size()) {
            if (collect_boundaries) {
                long at_s = vertex_sum[g.source()], at_t = vertex_sum[g.target()];
                boundaries.insert({static_cast<int>(-at_s), static_cast<int>(at_t)});
                return false;  // keep enumerating
            }
            return true;
        }
        int id = order[idx];
        const Edge& e = g.edge(id);
        int cu = unit_contribution(e, 0), cv = unit_contribution(e, 1);
        --remaining[e.u];
        --remaining[e.v];
        // global negation symmetry: fix the first edge's value positive when
        // only existence matters
        int lo = (idx == 0 && !collect_boundaries) ? 1 : -(k - 1);
        for (int val = lo; val <= k - 1; ++val) {
            if (val == 0) continue;
            values[id] = val;
            vertex_sum[e.u] += static_cast<long>(cu) * val;
            vertex_sum[e.v] += static_cast<long>(cv) * val;
            if (feasible_at(e.u) && feasible_at(e.v) && assign(idx + 1)) return true;
            vertex_sum[e.u] -= static_cast<long>(cu) * val;
            vertex_sum[e.v] -= static_cast<long>(cv) * val;
        }
        values[id] = 0;
        ++remaining[e.u];
        ++remaining[e.v];
        return false;
    }
};

}  // namespace

OracleResult oracle_flow(const SignedGraph& g, int k, int edge_limit) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (g.edge_count() > edge_limit)
        throw std::invalid_argument("graph exceeds the oracle edge limit (" +
                                    std::to_string(edge_limit) + ")");
    OracleResult res;
    res.k = k;
    // a vertex of degree 1 can never conserve a nonzero value
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 1) {
            res.found = false;
            return res;
        }
    Search s(g, k);
    res.found = s.assign(0);
    res.nodes_explored = s.nodes;
    if (res.found) res.witness = canonical_flow(g, s.values, k);
    return res;
}

std::optional<int> oracle_flow_number(const SignedGraph& g, int k_max, int edge_limit) {
    for (int k = 2; k <= k_max; ++k)
        if (oracle_flow(g, k, edge_limit).found) return k;
    return std::nullopt;
}

std::vector<std::pair<int, int>> oracle_boundary_pairs(const SignedGraph& g, int k,
                                                       int edge_limit) {
    if (!g.has_terminals()) throw std::invalid_argument("graph has no terminals");
    if (g.edge_count() > edge_limit)
        throw std::invalid_argument("graph exceeds the oracle edge limit");
    Search s(g, k);
    s.collect_boundaries = true;
    s.conserve[g.source()] = 0;
    s.conserve[g.target()] = 0;
    s.assign(0);
    return {s.boundaries.begin(), s.boundaries.end()};
}

}  // namespace signedflow
