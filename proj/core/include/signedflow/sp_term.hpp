#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "signedflow/signed_graph.hpp"

namespace signedflow {

// Series-parallel expression over signed single edges.
//
// Invariants kept by the factory functions and parse_sp:
//   - Series/Parallel have arity >= 2,
//   - a Series node has no Series child, a Parallel node no Parallel child.
// Canonical form additionally sorts Parallel children (series order is
// semantically significant, parallel order is not).
class SpTerm {
public:
    enum class Kind { PosEdge, NegEdge, Series, Parallel };

    SpTerm() : kind_(Kind::PosEdge) {}

    static SpTerm pos_edge() { return SpTerm(Kind::PosEdge, {}); }
    static SpTerm neg_edge() { return SpTerm(Kind::NegEdge, {}); }
    static SpTerm leaf(int sign) { return sign > 0 ? pos_edge() : neg_edge(); }
    static SpTerm digon() { return parallel({pos_edge(), neg_edge()}); }
    // Flatten nested nodes of the same kind; throw on arity < 2.
    static SpTerm series(std::vector<SpTerm> children);
    static SpTerm parallel(std::vector<SpTerm> children);

    Kind kind() const { return kind_; }
    bool is_leaf() const { return kind_ == Kind::PosEdge || kind_ == Kind::NegEdge; }
    int leaf_sign() const { return kind_ == Kind::PosEdge ? +1 : -1; }
    const std::vector<SpTerm>& children() const { return children_; }
    int arity() const { return static_cast<int>(children_.size()); }
    const SpTerm& child(int i) const { return children_.at(i); }

    int leaf_count() const;
    // First leaf index (edge id after compile) of child i.
    int child_leaf_offset(int i) const;

    bool is_digon() const;  // Parallel of exactly {e+, e-} in either order

    bool operator==(const SpTerm& other) const;
    bool operator!=(const SpTerm& other) const { return !(*this == other); }

private:
    SpTerm(Kind k, std::vector<SpTerm> ch) : kind_(k), children_(std::move(ch)) {}
    Kind kind_;
    std::vector<SpTerm> children_;

    friend SpTerm replace_piece(const SpTerm&, const std::vector<int>&, const SpTerm&);
    friend SpTerm with_leaf_signs(const SpTerm&, const std::vector<int>&);
};

// DSL: term := "e+" | "e-" | "D" | "S(" term ("," term)+ ")"
//            | "P(" term ("," term)+ ")"
// Whitespace-insensitive. Throws SpParseError with offset on bad input.
struct SpParseError : std::runtime_error {
    size_t position;
    SpParseError(const std::string& what, size_t pos)
        : std::runtime_error(what + " at offset " + std::to_string(pos)), position(pos) {}
};
SpTerm parse_sp(const std::string& text);

// Canonical printer; uses the D shorthand for unbalanced 2-cycles.
std::string print_sp(const SpTerm& t);

// Total order on terms: lexicographic on the printed canonical form.
int compare_terms(const SpTerm& a, const SpTerm& b);

// Sort parallel children recursively; returns the canonical term and, if
// leaf_map is non-null, fills old-leaf-index -> new-leaf-index.
SpTerm canonicalize(const SpTerm& t, std::vector<int>* leaf_map = nullptr);

// Mirror image: swap source and target (reverses every series node).
SpTerm mirror(const SpTerm& t);

// Compile to a two-terminal signed graph. Vertices: source = 0, target = 1,
// junctions numbered afterwards in DFS order. Edge ids equal leaf indices.
SignedGraph compile(const SpTerm& t);

// Compilation plus, for every piece, its terminal vertices and edge range.
struct PieceLayout {
    int source = 0;
    int target = 1;
    int first_edge = 0;
    int edge_count = 0;
};
struct CompiledTerm {
    SignedGraph graph;
    std::vector<std::pair<std::vector<int>, PieceLayout>> pieces;  // path -> layout

    const PieceLayout& at(const std::vector<int>& path) const;
};
CompiledTerm compile_with_layout(const SpTerm& t);

// 0 for single edges, 1 + max over parts otherwise.
int depth(const SpTerm& t);

// A piece is any subterm reachable through the parts relation; identified by
// the path of child indices from the root.
using PieceRef = std::vector<int>;

const SpTerm& resolve_piece(const SpTerm& t, const PieceRef& p);
std::vector<PieceRef> all_pieces(const SpTerm& t);
std::vector<PieceRef> pieces_of_depth(const SpTerm& t, int k);  // throws if k out of range

// Replace the subterm at p by h and renormalize (flattening only; no
// canonical sorting, so surrounding leaf order is predictable).
SpTerm replace_piece(const SpTerm& t, const PieceRef& p, const SpTerm& h);

// Same tree shape with the given per-leaf signs (+1/-1).
SpTerm with_leaf_signs(const SpTerm& t, const std::vector<int>& signs);
std::vector<int> leaf_signs(const SpTerm& t);

// Term after switching at a vertex of compile(t): flips the sign of every
// leaf whose edge touches v. Shape (and hence leaf ids) is preserved.
SpTerm switch_term(const SpTerm& t, int vertex);
SpTerm switch_term(const SpTerm& t, const std::vector<int>& vertices);

}  // namespace signedflow
