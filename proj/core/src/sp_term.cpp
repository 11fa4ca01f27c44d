#include "signedflow/sp_term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace signedflow {

SpTerm SpTerm::series(std::vector<SpTerm> children) {
    std::vector<SpTerm> flat;
    for (SpTerm& c : children) {
        if (c.kind_ == Kind::Series)
            for (SpTerm& gc : c.children_) flat.push_back(std::move(gc));
        else
            flat.push_back(std::move(c));
    }
    if (flat.size() < 2) throw std::invalid_argument("series connection needs at least 2 parts");
    return SpTerm(Kind::Series, std::move(flat));
}

SpTerm SpTerm::parallel(std::vector<SpTerm> children) {
    std::vector<SpTerm> flat;
    for (SpTerm& c : children) {
        if (c.kind_ == Kind::Parallel)
            for (SpTerm& gc : c.children_) flat.push_back(std::move(gc));
        else
            flat.push_back(std::move(c));
    }
    if (flat.size() < 2) throw std::invalid_argument("parallel connection needs at least 2 parts");
    return SpTerm(Kind::Parallel, std::move(flat));
}

int SpTerm::leaf_count() const {
    if (is_leaf()) return 1;
    int n = 0;
    for (const SpTerm& c : children_) n += c.leaf_count();
    return n;
}

int SpTerm::child_leaf_offset(int i) const {
    int off = 0;
    for (int j = 0; j < i; ++j) off += children_.at(j).leaf_count();
    return off;
}

bool SpTerm::is_digon() const {
    if (kind_ != Kind::Parallel || children_.size() != 2) return false;
    return children_[0].is_leaf() && children_[1].is_leaf() &&
           children_[0].leaf_sign() != children_[1].leaf_sign();
}

bool SpTerm::operator==(const SpTerm& other) const {
    if (kind_ != other.kind_) return false;
    if (children_.size() != other.children_.size()) return false;
    for (size_t i = 0; i < children_.size(); ++i)
        if (!(children_[i] == other.children_[i])) return false;
    return true;
}

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw SpParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    }

    SpTerm term() {
        skip_ws();
        if (pos >= text.size()) throw SpParseError("unexpected end of input", pos);
        char c = text[pos];
        if (c == 'e') {
            ++pos;
            if (pos >= text.size() || (text[pos] != '+' && text[pos] != '-'))
                throw SpParseError("expected '+' or '-' after 'e'", pos);
            char s = text[pos++];
            return s == '+' ? SpTerm::pos_edge() : SpTerm::neg_edge();
        }
        if (c == 'D') {
            ++pos;
            return SpTerm::digon();
        }
        if (c == 'S' || c == 'P') {
            ++pos;
            expect('(');
            std::vector<SpTerm> children;
            children.push_back(term());
            while (peek() == ',') {
                expect(',');
                children.push_back(term());
            }
            expect(')');
            if (children.size() < 2)
                throw SpParseError(std::string(1, c) + "(...) needs at least 2 parts", pos);
            return c == 'S' ? SpTerm::series(std::move(children))
                            : SpTerm::parallel(std::move(children));
        }
        throw SpParseError("unexpected character", pos);
    }
};

}  // namespace

SpTerm parse_sp(const std::string& text) {
    Parser p{text};
    SpTerm t = p.term();
    p.skip_ws();
    if (p.pos != text.size()) throw SpParseError("trailing input", p.pos);
    return canonicalize(t);
}

std::string print_sp(const SpTerm& t) {
    switch (t.kind()) {
        case SpTerm::Kind::PosEdge:
            return "e+";
        case SpTerm::Kind::NegEdge:
            return "e-";
        case SpTerm::Kind::Series:
        case SpTerm::Kind::Parallel: {
            if (t.is_digon()) return "D";
            std::string out = t.kind() == SpTerm::Kind::Series ? "S(" : "P(";
            for (int i = 0; i < t.arity(); ++i) {
                if (i) out += ",";
                out += print_sp(t.child(i));
            }
            out += ")";
            return out;
        }
    }
    return {};
}

int compare_terms(const SpTerm& a, const SpTerm& b) {
    return print_sp(a).compare(print_sp(b));
}

SpTerm canonicalize(const SpTerm& t, std::vector<int>* leaf_map) {
    // recursively canonicalize, tracking where each leaf goes
    std::function<std::pair<SpTerm, std::vector<int>>(const SpTerm&)> go =
        [&](const SpTerm& node) -> std::pair<SpTerm, std::vector<int>> {
        if (node.is_leaf()) return {node, {0}};
        std::vector<std::pair<SpTerm, std::vector<int>>> kids;
        kids.reserve(node.arity());
        for (const SpTerm& c : node.children()) kids.push_back(go(c));
        std::vector<int> order(kids.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        if (node.kind() == SpTerm::Kind::Parallel) {
            std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
                return compare_terms(kids[x].first, kids[y].first) < 0;
            });
        }
        // old leaf offset of each child
        std::vector<int> old_off(kids.size() + 1, 0);
        for (size_t i = 0; i < kids.size(); ++i)
            old_off[i + 1] = old_off[i] + kids[i].first.leaf_count();
        std::vector<SpTerm> new_children;
        std::vector<int> map(old_off.back(), -1);
        int new_pos = 0;
        for (int idx : order) {
            const auto& [ct, cmap] = kids[idx];
            for (size_t j = 0; j < cmap.size(); ++j) map[old_off[idx] + j] = new_pos + cmap[j];
            new_pos += ct.leaf_count();
            new_children.push_back(ct);
        }
        SpTerm out = node.kind() == SpTerm::Kind::Series ? SpTerm::series(std::move(new_children))
                                                         : SpTerm::parallel(std::move(new_children));
        return {out, map};
    };
    auto [out, map] = go(t);
    if (leaf_map) *leaf_map = map;
    return out;
}

SpTerm mirror(const SpTerm& t) {
    if (t.is_leaf()) return t;
    std::vector<SpTerm> kids;
    kids.reserve(t.arity());
    for (const SpTerm& c : t.children()) kids.push_back(mirror(c));
    if (t.kind() == SpTerm::Kind::Series) std::reverse(kids.begin(), kids.end());
    return t.kind() == SpTerm::Kind::Series ? SpTerm::series(std::move(kids))
                                            : SpTerm::parallel(std::move(kids));
}

namespace {

struct CompileState {
    std::vector<Edge> edges;
    int next_vertex = 2;

    void build(const SpTerm& t, int s, int v) {
        switch (t.kind()) {
            case SpTerm::Kind::PosEdge:
                edges.push_back({s, v, +1});
                return;
            case SpTerm::Kind::NegEdge:
                edges.push_back({s, v, -1});
                return;
            case SpTerm::Kind::Series: {
                int cur = s;
                for (int i = 0; i < t.arity(); ++i) {
                    int nxt = (i + 1 == t.arity()) ? v : next_vertex++;
                    build(t.child(i), cur, nxt);
                    cur = nxt;
                }
                return;
            }
            case SpTerm::Kind::Parallel:
                for (const SpTerm& c : t.children()) build(c, s, v);
                return;
        }
    }
};

}  // namespace

SignedGraph compile(const SpTerm& t) {
    CompileState st;
    st.build(t, 0, 1);
    return SignedGraph::make(st.next_vertex, std::move(st.edges), std::pair{0, 1});
}

const PieceLayout& CompiledTerm::at(const std::vector<int>& path) const {
    for (const auto& [p, layout] : pieces)
        if (p == path) return layout;
    throw std::invalid_argument("unknown piece path");
}

CompiledTerm compile_with_layout(const SpTerm& t) {
    CompiledTerm out;
    std::vector<Edge> edges;
    int next_vertex = 2;
    std::vector<int> path;

    std::function<void(const SpTerm&, int, int)> build = [&](const SpTerm& node, int s, int v) {
        out.pieces.push_back(
            {path, PieceLayout{s, v, static_cast<int>(edges.size()), node.leaf_count()}});
        switch (node.kind()) {
            case SpTerm::Kind::PosEdge:
                edges.push_back({s, v, +1});
                return;
            case SpTerm::Kind::NegEdge:
                edges.push_back({s, v, -1});
                return;
            case SpTerm::Kind::Series: {
                int cur = s;
                for (int i = 0; i < node.arity(); ++i) {
                    int nxt = (i + 1 == node.arity()) ? v : next_vertex++;
                    path.push_back(i);
                    build(node.child(i), cur, nxt);
                    path.pop_back();
                    cur = nxt;
                }
                return;
            }
            case SpTerm::Kind::Parallel:
                for (int i = 0; i < node.arity(); ++i) {
                    path.push_back(i);
                    build(node.child(i), s, v);
                    path.pop_back();
                }
                return;
        }
    };
    build(t, 0, 1);
    out.graph = SignedGraph::make(next_vertex, std::move(edges), std::pair{0, 1});
    return out;
}

int depth(const SpTerm& t) {
    if (t.is_leaf()) return 0;
    int m = 0;
    for (const SpTerm& c : t.children()) m = std::max(m, depth(c));
    return 1 + m;
}

const SpTerm& resolve_piece(const SpTerm& t, const PieceRef& p) {
    const SpTerm* cur = &t;
    for (int i : p) {
        if (cur->is_leaf() || i < 0 || i >= cur->arity())
            throw std::invalid_argument("invalid piece reference");
        cur = &cur->child(i);
    }
    return *cur;
}

std::vector<PieceRef> all_pieces(const SpTerm& t) {
    std::vector<PieceRef> out;
    PieceRef path;
    std::function<void(const SpTerm&)> go = [&](const SpTerm& node) {
        out.push_back(path);
        if (node.is_leaf()) return;
        for (int i = 0; i < node.arity(); ++i) {
            path.push_back(i);
            go(node.child(i));
            path.pop_back();
        }
    };
    go(t);
    return out;
}

std::vector<PieceRef> pieces_of_depth(const SpTerm& t, int k) {
    if (k < 0 || k > depth(t)) throw std::invalid_argument("depth out of range");
    std::vector<PieceRef> out;
    for (PieceRef& p : all_pieces(t))
        if (depth(resolve_piece(t, p)) == k) out.push_back(std::move(p));
    return out;
}

SpTerm replace_piece(const SpTerm& t, const PieceRef& p, const SpTerm& h) {
    if (p.empty()) return h;
    resolve_piece(t, p);  // validate
    std::function<SpTerm(const SpTerm&, size_t)> go = [&](const SpTerm& node, size_t d) -> SpTerm {
        if (d == p.size()) return h;
        std::vector<SpTerm> kids;
        kids.reserve(node.arity());
        for (int i = 0; i < node.arity(); ++i) {
            if (i == p[d])
                kids.push_back(go(node.child(i), d + 1));
            else
                kids.push_back(node.child(i));
        }
        // series/parallel factories re-flatten
        return node.kind() == SpTerm::Kind::Series ? SpTerm::series(std::move(kids))
                                                   : SpTerm::parallel(std::move(kids));
    };
    return go(t, 0);
}

SpTerm with_leaf_signs(const SpTerm& t, const std::vector<int>& signs) {
    if (static_cast<int>(signs.size()) != t.leaf_count())
        throw std::invalid_argument("sign count mismatch");
    int next = 0;
    std::function<SpTerm(const SpTerm&)> go = [&](const SpTerm& node) -> SpTerm {
        if (node.is_leaf()) return SpTerm::leaf(signs[next++]);
        std::vector<SpTerm> kids;
        kids.reserve(node.arity());
        for (const SpTerm& c : node.children()) kids.push_back(go(c));
        return SpTerm(node.kind(), std::move(kids));
    };
    return go(t);
}

std::vector<int> leaf_signs(const SpTerm& t) {
    std::vector<int> out;
    std::function<void(const SpTerm&)> go = [&](const SpTerm& node) {
        if (node.is_leaf()) {
            out.push_back(node.leaf_sign());
            return;
        }
        for (const SpTerm& c : node.children()) go(c);
    };
    go(t);
    return out;
}

SpTerm switch_term(const SpTerm& t, int vertex) {
    return switch_term(t, std::vector<int>{vertex});
}

SpTerm switch_term(const SpTerm& t, const std::vector<int>& vertices) {
    SignedGraph g = compile(t);
    std::vector<int> signs = leaf_signs(t);
    for (int v : vertices) {
        if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("unknown vertex id");
        for (int id : g.incident(v)) signs[id] = -signs[id];
    }
    return with_leaf_signs(t, signs);
}

}  // namespace signedflow
