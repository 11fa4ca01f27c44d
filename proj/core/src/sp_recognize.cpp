#include "signedflow/sp_recognize.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace signedflow {

bool is_reduced(const SpTerm& t, ReducedWitness* witness) {
    SignedGraph g = compile(t);
    for (int v = 2; v < g.vertex_count(); ++v) {  // 0, 1 are the terminals
        if (g.degree(v) < 3) {
            if (witness) witness->low_degree_vertex = v;
            return false;
        }
    }
    std::map<std::pair<int, int>, std::vector<int>> by_pair;
    for (int id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        by_pair[{std::min(e.u, e.v), std::max(e.u, e.v)}].push_back(id);
    }
    for (auto& [pair, ids] : by_pair) {
        for (size_t i = 0; i < ids.size(); ++i)
            for (size_t j = i + 1; j < ids.size(); ++j)
                if (g.edge(ids[i]).sign == g.edge(ids[j]).sign) {
                    if (witness) witness->same_sign_pair = {ids[i], ids[j]};
                    return false;
                }
    }
    return true;
}

namespace {

// Digon node = Parallel of {e+, e-} in either child order.
std::optional<int> digon_positive_child(const SpTerm& t) {
    if (t.kind() != SpTerm::Kind::Parallel || t.arity() != 2) return std::nullopt;
    if (!t.child(0).is_leaf() || !t.child(1).is_leaf()) return std::nullopt;
    if (t.child(0).leaf_sign() == t.child(1).leaf_sign()) return std::nullopt;
    return t.child(0).leaf_sign() > 0 ? 0 : 1;
}

}  // namespace

std::optional<StringProfile> recognize_string(const SpTerm& t) {
    StringProfile p;
    p.term = t;
    if (t.kind() == SpTerm::Kind::PosEdge) {
        p.parts = {StringPart{false, 0, 0}};
        p.beta = 0;
        p.nontrivial = false;
        return p;
    }
    if (auto pos = digon_positive_child(t)) {
        p.parts = {StringPart{true, 0, *pos}};
        p.beta = 1;
        p.nontrivial = false;
        return p;
    }
    if (t.kind() != SpTerm::Kind::Series) return std::nullopt;
    int offset = 0;
    bool prev_bridge = false;
    for (int i = 0; i < t.arity(); ++i) {
        const SpTerm& c = t.child(i);
        if (c.kind() == SpTerm::Kind::PosEdge) {
            if (i > 0 && prev_bridge) return std::nullopt;  // junction not in a 2-cycle
            p.parts.push_back(StringPart{false, offset, offset});
            prev_bridge = true;
            offset += 1;
        } else if (auto pos = digon_positive_child(c)) {
            p.parts.push_back(StringPart{true, offset, offset + *pos});
            p.beta += 1;
            prev_bridge = false;
            offset += 2;
        } else {
            return std::nullopt;
        }
    }
    p.nontrivial = true;  // any series connection has >= 3 vertices
    return p;
}

std::vector<int> bridge_switchings(const SignedGraph& g, const std::vector<int>& edge_ids) {
    // edges of the listed set outside 2-cycles = endpoint pairs hit once
    std::map<std::pair<int, int>, std::vector<int>> by_pair;
    for (int id : edge_ids) {
        const Edge& e = g.edge(id);
        by_pair[{std::min(e.u, e.v), std::max(e.u, e.v)}].push_back(id);
    }
    std::vector<int> bridge_edges;
    for (auto& [pair, ids] : by_pair)
        if (ids.size() == 1) bridge_edges.push_back(ids[0]);

    // within the scope of depth <= 2 pieces these edges form a forest, so a
    // switching making them all positive exists; propagate membership from
    // the smallest vertex of each tree
    std::vector<std::vector<int>> adj(g.vertex_count());
    for (int id : bridge_edges) {
        adj[g.edge(id).u].push_back(id);
        adj[g.edge(id).v].push_back(id);
    }
    std::vector<int> state(g.vertex_count(), -1);  // -1 unseen, 0 out, 1 in S
    std::vector<int> switchings;
    for (int root = 0; root < g.vertex_count(); ++root) {
        if (state[root] != -1 || adj[root].empty()) continue;
        state[root] = 0;
        std::vector<int> stack = {root};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int id : adj[u]) {
                int w = g.other_end(id, u);
                int want = g.edge(id).sign > 0 ? state[u] : 1 - state[u];
                if (state[w] == -1) {
                    state[w] = want;
                    stack.push_back(w);
                } else if (state[w] != want) {
                    throw std::logic_error("bridge_switchings: scoped edges do not form a forest");
                }
            }
        }
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (state[v] == 1) switchings.push_back(v);
    return switchings;
}

std::optional<StringNormalization> normalize_to_string(const SpTerm& t, std::string* why) {
    if (!is_reduced(t)) {
        if (why) *why = "term is not reduced";
        return std::nullopt;
    }
    if (depth(t) > 2) {
        if (why) *why = "depth exceeds 2";
        return std::nullopt;
    }
    SignedGraph g = compile(t);
    std::vector<int> all_edges(g.edge_count());
    for (int id = 0; id < g.edge_count(); ++id) all_edges[id] = id;
    std::vector<int> switchings = bridge_switchings(g, all_edges);
    SpTerm switched = switch_term(t, switchings);
    auto profile = recognize_string(switched);
    if (!profile) {
        if (why) *why = "normalized term is not a string";
        return std::nullopt;
    }
    return StringNormalization{std::move(*profile), std::move(switchings)};
}

std::optional<NecklaceNormalization> normalize_to_necklace(const SpTerm& t, std::string* why) {
    if (!is_reduced(t)) {
        if (why) *why = "term is not reduced";
        return std::nullopt;
    }
    if (t.kind() != SpTerm::Kind::Parallel) {
        if (why) *why = "term is not of parallel type";
        return std::nullopt;
    }
    for (const SpTerm& c : t.children())
        if (depth(c) > 2) {
            if (why) *why = "a part has depth above 2";
            return std::nullopt;
        }
    SignedGraph g = compile(t);
    std::vector<int> all_edges(g.edge_count());
    for (int id = 0; id < g.edge_count(); ++id) all_edges[id] = id;
    std::vector<int> switchings = bridge_switchings(g, all_edges);
    SpTerm switched = switch_term(t, switchings);
    auto profile = recognize_necklace(switched);
    if (!profile) {
        if (why) *why = "parts do not group into two strings";
        return std::nullopt;
    }
    NecklaceNormalization out;
    out.profile = std::move(*profile);
    out.term = std::move(switched);
    out.switchings = std::move(switchings);
    return out;
}

namespace {

// Child of a parallel node interpreted as a standalone string, if possible.
std::optional<std::pair<SpTerm, int>> child_as_string(const SpTerm& parent, int i) {
    const SpTerm& c = parent.child(i);
    auto prof = recognize_string(c);
    if (!prof) return std::nullopt;
    return std::pair{c, prof->beta};
}

}  // namespace

std::optional<NecklaceProfile> recognize_necklace(const SpTerm& t) {
    if (t.kind() != SpTerm::Kind::Parallel) return std::nullopt;
    int n = t.arity();
    if (n > 3) return std::nullopt;

    struct Group {
        SpTerm term;
        int beta;
        std::vector<int> edge_map;
    };
    std::vector<Group> groups;

    if (n == 2) {
        for (int i = 0; i < 2; ++i) {
            auto s = child_as_string(t, i);
            if (!s) return std::nullopt;
            int off = t.child_leaf_offset(i);
            std::vector<int> map(t.child(i).leaf_count());
            for (size_t k = 0; k < map.size(); ++k) map[k] = off + static_cast<int>(k);
            groups.push_back({s->first, s->second, std::move(map)});
        }
    } else {  // n == 3: one string part plus a digon formed by an e+ and an e- part
        int pos = -1, neg = -1, big = -1;
        for (int i = 0; i < 3; ++i) {
            const SpTerm& c = t.child(i);
            if (c.kind() == SpTerm::Kind::PosEdge && pos < 0)
                pos = i;
            else if (c.kind() == SpTerm::Kind::NegEdge && neg < 0)
                neg = i;
            else if (big < 0)
                big = i;
            else
                return std::nullopt;
        }
        if (pos < 0 || neg < 0 || big < 0) return std::nullopt;
        auto s = child_as_string(t, big);
        if (!s) return std::nullopt;
        int off = t.child_leaf_offset(big);
        std::vector<int> map(t.child(big).leaf_count());
        for (size_t k = 0; k < map.size(); ++k) map[k] = off + static_cast<int>(k);
        groups.push_back({s->first, s->second, std::move(map)});
        // digon group: component edges in canonical D order (e+ then e-)
        groups.push_back({SpTerm::digon(), 1,
                          {t.child_leaf_offset(pos), t.child_leaf_offset(neg)}});
    }

    bool nontrivial0 = groups[0].term.kind() == SpTerm::Kind::Series;
    bool nontrivial1 = groups[1].term.kind() == SpTerm::Kind::Series;
    if (!nontrivial0 && !nontrivial1) return std::nullopt;

    // label G2 by precedence: beta zero first, then beta odd; remaining ties
    // resolved toward the smaller beta, then term order
    auto prefer_as_g2 = [&](const Group& x, const Group& y) {
        // returns true when x is the better G2 than y
        if ((x.beta == 0) != (y.beta == 0)) return x.beta == 0;
        if ((x.beta % 2 == 1) != (y.beta % 2 == 1)) return x.beta % 2 == 1;
        if (x.beta != y.beta) return x.beta < y.beta;
        return compare_terms(x.term, y.term) <= 0;
    };
    int g2 = prefer_as_g2(groups[0], groups[1]) ? 0 : 1;
    int g1 = 1 - g2;

    NecklaceProfile p;
    p.term = t;
    p.g1 = {groups[g1].term, groups[g1].beta, groups[g1].edge_map};
    p.g2 = {groups[g2].term, groups[g2].beta, groups[g2].edge_map};
    p.type = (p.g2.beta % 2 == 1) ? NecklaceType::I : NecklaceType::II;
    return p;
}

namespace {

int leaf_offset_of(const SpTerm& t, const PieceRef& path) {
    int off = 0;
    const SpTerm* cur = &t;
    for (int i : path) {
        off += cur->child_leaf_offset(i);
        cur = &cur->child(i);
    }
    return off;
}

}  // namespace

std::vector<NecklaceSite> find_necklace_sites(const SpTerm& t) {
    std::vector<NecklaceSite> sites;
    if (depth(t) < 3 || !is_reduced(t)) return sites;
    SignedGraph g = compile(t);
    std::vector<int> signs = leaf_signs(t);

    for (const PieceRef& ref : pieces_of_depth(t, 3)) {
        const SpTerm& piece = resolve_piece(t, ref);
        if (piece.kind() != SpTerm::Kind::Parallel) continue;
        int piece_off = leaf_offset_of(t, ref);
        for (int i = 0; i < piece.arity(); ++i) {
            for (int j = i + 1; j < piece.arity(); ++j) {
                if (depth(piece.child(i)) != 2 && depth(piece.child(j)) != 2) continue;
                // switchings are scoped to the edges of the two chosen parts
                std::vector<int> scope;
                for (int l = 0; l < piece.child(i).leaf_count(); ++l)
                    scope.push_back(piece_off + piece.child_leaf_offset(i) + l);
                for (int l = 0; l < piece.child(j).leaf_count(); ++l)
                    scope.push_back(piece_off + piece.child_leaf_offset(j) + l);
                std::vector<int> switchings;
                try {
                    switchings = bridge_switchings(g, scope);
                } catch (const std::exception&) {
                    continue;  // parts not string-shaped
                }
                // apply the switching to the two parts' leaves
                std::vector<char> in_set(g.vertex_count(), 0);
                for (int v : switchings) in_set[v] = 1;
                auto switched_child = [&](int c) {
                    const SpTerm& sub = piece.child(c);
                    int base = piece_off + piece.child_leaf_offset(c);
                    std::vector<int> sub_signs(sub.leaf_count());
                    for (int l = 0; l < sub.leaf_count(); ++l) {
                        const Edge& e = g.edge(base + l);
                        int flip = (in_set[e.u] ? -1 : 1) * (in_set[e.v] ? -1 : 1);
                        sub_signs[l] = signs[base + l] * flip;
                    }
                    return with_leaf_signs(sub, sub_signs);
                };
                SpTerm candidate = SpTerm::parallel({switched_child(i), switched_child(j)});
                auto prof = recognize_necklace(candidate);
                if (!prof) continue;
                NecklaceSite site;
                site.piece = ref;
                site.child_a = i;
                site.child_b = j;
                site.switchings = std::move(switchings);
                site.beta = prof->beta();
                site.profile = std::move(*prof);
                sites.push_back(std::move(site));
            }
        }
    }
    std::stable_sort(sites.begin(), sites.end(),
                     [](const NecklaceSite& a, const NecklaceSite& b) { return a.beta < b.beta; });
    return sites;
}

std::optional<NecklaceSite> find_necklace_piece(const SpTerm& t, std::string* why) {
    if (!is_reduced(t)) {
        if (why) *why = "term is not reduced";
        return std::nullopt;
    }
    if (depth(t) < 3) {
        if (why) *why = "depth below 3";
        return std::nullopt;
    }
    auto sites = find_necklace_sites(t);
    if (sites.empty()) {
        if (why) *why = "no necklace site found";
        return std::nullopt;
    }
    return sites.front();
}

namespace {

// one live edge of the reduction graph used by recognize_sp
struct VirtualEdge {
    int u, v;  // term source at u, target at v
    SpTerm term;
    bool alive = true;
};

}  // namespace

std::optional<SpTerm> recognize_sp(const SignedGraph& g) {
    if (!g.has_terminals()) throw std::invalid_argument("recognize_sp needs terminals");
    int s = g.source(), t = g.target();
    if (g.edge_count() == 0) return std::nullopt;
    if (!g.connected()) return std::nullopt;

    std::vector<VirtualEdge> edges;
    edges.reserve(g.edge_count());
    for (const Edge& e : g.edges())
        edges.push_back({e.u, e.v, SpTerm::leaf(e.sign), true});
    std::vector<char> vertex_alive(g.vertex_count(), 1);

    auto incident_alive = [&](int v) {
        std::vector<int> out;
        for (size_t i = 0; i < edges.size(); ++i)
            if (edges[i].alive && (edges[i].u == v || edges[i].v == v))
                out.push_back(static_cast<int>(i));
        return out;
    };
    auto oriented = [&](int idx, int from) {
        // term of edges[idx] as seen from `from`
        return edges[idx].u == from ? edges[idx].term : mirror(edges[idx].term);
    };

    bool progress = true;
    while (progress) {
        progress = false;
        // parallel merges first
        std::map<std::pair<int, int>, std::vector<int>> by_pair;
        for (size_t i = 0; i < edges.size(); ++i) {
            if (!edges[i].alive) continue;
            const auto& e = edges[i];
            by_pair[{std::min(e.u, e.v), std::max(e.u, e.v)}].push_back(static_cast<int>(i));
        }
        for (auto& [pair, ids] : by_pair) {
            if (ids.size() < 2) continue;
            int a = ids[0], b = ids[1];
            SpTerm ta = oriented(a, pair.first);
            SpTerm tb = oriented(b, pair.first);
            edges[b].alive = false;
            edges[a] = {pair.first, pair.second, SpTerm::parallel({ta, tb}), true};
            progress = true;
        }
        if (progress) continue;
        // series contraction at a non-terminal vertex of degree 2
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (!vertex_alive[v] || v == s || v == t) continue;
            auto inc = incident_alive(v);
            if (inc.size() != 2) continue;
            int a = inc[0], b = inc[1];
            int x = edges[a].u == v ? edges[a].v : edges[a].u;
            int y = edges[b].u == v ? edges[b].v : edges[b].u;
            if (x == y) continue;  // parallel rule handles this pair
            SpTerm left = edges[a].u == x ? edges[a].term : mirror(edges[a].term);
            SpTerm right = edges[b].u == v ? edges[b].term : mirror(edges[b].term);
            edges[b].alive = false;
            edges[a] = {x, y, SpTerm::series({left, right}), true};
            vertex_alive[v] = 0;
            progress = true;
            break;
        }
    }

    std::vector<int> alive;
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].alive) alive.push_back(static_cast<int>(i));
    int alive_vertices = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (vertex_alive[v]) ++alive_vertices;
    if (alive.size() != 1 || alive_vertices != 2) return std::nullopt;
    const VirtualEdge& last = edges[alive[0]];
    if (!((last.u == s && last.v == t) || (last.u == t && last.v == s))) return std::nullopt;
    SpTerm result = last.u == s ? last.term : mirror(last.term);
    return canonicalize(result);
}

}  // namespace signedflow
