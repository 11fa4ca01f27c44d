#include "signedflow/signed_graph.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace signedflow {

SignedGraph SignedGraph::make(int vertex_count, std::vector<Edge> edges,
                              std::optional<std::pair<int, int>> terminals,
                              std::vector<std::string> names) {
    if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
    SignedGraph g;
    g.incidence_.resize(vertex_count);
    for (size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v)
            throw std::invalid_argument("loop edge rejected (edge " + std::to_string(i) + ")");
        if (e.sign != +1 && e.sign != -1)
            throw std::invalid_argument("edge sign must be +1 or -1");
        g.incidence_[e.u].push_back(static_cast<int>(i));
        g.incidence_[e.v].push_back(static_cast<int>(i));
    }
    g.edges_ = std::move(edges);
    if (terminals) {
        auto [s, t] = *terminals;
        if (s < 0 || s >= vertex_count || t < 0 || t >= vertex_count)
            throw std::invalid_argument("terminal out of range");
        if (s == t) throw std::invalid_argument("terminals must be distinct");
    }
    g.terminals_ = terminals;
    if (names.empty()) {
        names.reserve(vertex_count);
        for (int v = 0; v < vertex_count; ++v) names.push_back("v" + std::to_string(v));
    } else if (static_cast<int>(names.size()) != vertex_count) {
        throw std::invalid_argument("name count mismatch");
    }
    g.names_ = std::move(names);
    return g;
}

int SignedGraph::endpoint_index(int edge_id, int w) const {
    const Edge& e = edge(edge_id);
    if (e.u == w) return 0;
    if (e.v == w) return 1;
    throw std::invalid_argument("vertex is not an endpoint of edge");
}

int SignedGraph::other_end(int edge_id, int w) const {
    const Edge& e = edge(edge_id);
    return e.u == w ? e.v : (e.v == w ? e.u : throw std::invalid_argument("not an endpoint"));
}

SignedGraph SignedGraph::switched(int v) const {
    if (v < 0 || v >= vertex_count()) throw std::invalid_argument("unknown vertex id");
    SignedGraph g = *this;
    for (int id : incidence_[v]) g.edges_[id].sign = -g.edges_[id].sign;
    return g;
}

SignedGraph SignedGraph::switched(const std::vector<int>& vertices) const {
    SignedGraph g = *this;
    for (int v : vertices) g = g.switched(v);
    return g;
}

bool SignedGraph::same_labelled_graph(const SignedGraph& other) const {
    if (vertex_count() != other.vertex_count()) return false;
    if (terminals_ != other.terminals_) return false;
    auto key = [](const SignedGraph& g) {
        std::vector<std::tuple<int, int, int>> k;
        k.reserve(g.edges_.size());
        for (const Edge& e : g.edges_)
            k.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v), e.sign);
        std::sort(k.begin(), k.end());
        return k;
    };
    return key(*this) == key(other);
}

bool SignedGraph::balanced() const {
    // BFS assigning a +-1 potential; balanced iff sign(uv) == p(u)*p(v) is
    // satisfiable on every component.
    std::vector<int> pot(vertex_count(), 0);
    for (int start = 0; start < vertex_count(); ++start) {
        if (pot[start] != 0) continue;
        pot[start] = 1;
        std::vector<int> stack = {start};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int id : incidence_[u]) {
                int w = other_end(id, u);
                int want = pot[u] * edges_[id].sign;
                if (pot[w] == 0) {
                    pot[w] = want;
                    stack.push_back(w);
                } else if (pot[w] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::vector<int> SignedGraph::bridges() const {
    int n = vertex_count();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<int> out;
    int timer = 0;
    // iterative DFS tracking the edge used to enter each vertex
    std::function<void(int, int)> dfs = [&](int u, int in_edge) {
        disc[u] = low[u] = timer++;
        for (int id : incidence_[u]) {
            if (id == in_edge) continue;
            int w = other_end(id, u);
            if (disc[w] == -1) {
                dfs(w, id);
                low[u] = std::min(low[u], low[w]);
                if (low[w] > disc[u]) out.push_back(id);
            } else {
                low[u] = std::min(low[u], disc[w]);
            }
        }
    };
    for (int v = 0; v < n; ++v)
        if (disc[v] == -1) dfs(v, -1);
    std::sort(out.begin(), out.end());
    return out;
}

bool SignedGraph::connected() const {
    if (vertex_count() == 0) return true;
    std::vector<char> seen(vertex_count(), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int id : incidence_[u]) {
            int w = other_end(id, u);
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == vertex_count();
}

std::optional<std::vector<int>> cycle_vertices(const SignedGraph& g,
                                               const std::vector<int>& cycle) {
    if (cycle.size() < 2) return std::nullopt;
    std::vector<char> used(g.edge_count(), 0);
    for (int id : cycle) {
        if (id < 0 || id >= g.edge_count() || used[id]) return std::nullopt;
        used[id] = 1;
    }
    // walk the closed trail starting from the first edge
    std::vector<char> taken(g.edge_count(), 0);
    int start = g.edge(cycle[0]).u;
    int cur = start;
    std::vector<int> verts;
    for (size_t step = 0; step < cycle.size(); ++step) {
        verts.push_back(cur);
        int next_edge = -1;
        for (int id : cycle) {
            if (taken[id]) continue;
            const Edge& e = g.edge(id);
            if (e.u == cur || e.v == cur) {
                next_edge = id;
                break;
            }
        }
        if (next_edge < 0) return std::nullopt;
        taken[next_edge] = 1;
        cur = g.other_end(next_edge, cur);
    }
    if (cur != start) return std::nullopt;
    // simple: no repeated vertex
    std::vector<int> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
    return verts;
}

Balance cycle_sign(const SignedGraph& g, const std::vector<int>& cycle) {
    if (!cycle_vertices(g, cycle))
        throw std::invalid_argument("edge list does not form a cycle");
    int negatives = 0;
    for (int id : cycle)
        if (g.edge(id).sign < 0) ++negatives;
    return negatives % 2 == 0 ? Balance::Balanced : Balance::Unbalanced;
}

}  // namespace signedflow
