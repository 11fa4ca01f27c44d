#pragma once

#include <optional>
#include <string>
#include <vector>

#include "signedflow/signed_graph.hpp"
#include "signedflow/sp_term.hpp"

namespace signedflow {

// Witness for a failed reducedness check: either a non-terminal vertex of
// degree < 3 or a same-sign parallel edge pair.
struct ReducedWitness {
    std::optional<int> low_degree_vertex;
    std::optional<std::pair<int, int>> same_sign_pair;
};

// Reduced: every non-terminal vertex has degree >= 3 and no two parallel
// edges carry the same sign.
bool is_reduced(const SpTerm& t, ReducedWitness* witness = nullptr);

// A string is a series connection of positive single edges ("bridges") and
// unbalanced 2-cycles ("digons") in which every non-terminal vertex lies in
// a 2-cycle, i.e. no two consecutive bridges. Single e+ and single D count
// as (trivial) strings.
struct StringPart {
    bool digon = false;
    int first_leaf = 0;       // leaf/edge offset within the string term
    int positive_leaf = 0;    // for digons: which of the two leaves is positive
};
struct StringProfile {
    SpTerm term;
    std::vector<StringPart> parts;
    int beta = 0;            // number of 2-cycles
    bool nontrivial = false; // more than two vertices
    bool starts_with_digon() const { return !parts.empty() && parts.front().digon; }
    bool ends_with_digon() const { return !parts.empty() && parts.back().digon; }
};

// Exact recognition (not up to switching).
std::optional<StringProfile> recognize_string(const SpTerm& t);

// Reduced term of depth <= 2 -> switching-equivalent string, with the
// switching sequence (vertex ids of compile(t)) realizing it. The reason
// string explains a nullopt.
struct StringNormalization {
    StringProfile profile;
    std::vector<int> switchings;
};
std::optional<StringNormalization> normalize_to_string(const SpTerm& t,
                                                       std::string* why = nullptr);

// Necklace: parallel connection of two strings, at least one nontrivial.
// Components are stored with maps from their own edge ids to the edge ids
// of the necklace term's compilation.
enum class NecklaceType { I, II };
struct NecklaceComponent {
    SpTerm term;                // standalone string term
    int beta = 0;
    std::vector<int> edge_map;  // component edge id -> parent edge id
};
struct NecklaceProfile {
    SpTerm term;  // the (flattened) parallel term
    NecklaceComponent g1, g2;
    NecklaceType type = NecklaceType::II;
    int beta() const { return g1.beta + g2.beta; }
};
std::optional<NecklaceProfile> recognize_necklace(const SpTerm& t);

// Switching subset that makes every listed edge lying outside a 2-cycle
// positive. The listed edges (minus 2-cycles) must form a forest, which
// holds for unions of depth <= 2 pieces of a reduced term; throws otherwise.
std::vector<int> bridge_switchings(const SignedGraph& g, const std::vector<int>& edge_ids);

// Root-level necklace normalization: a reduced parallel term whose parts all
// have depth <= 2 is switching-equivalent to a necklace whenever its parts
// can be grouped into two strings.
struct NecklaceNormalization {
    NecklaceProfile profile;  // of the switched term
    SpTerm term;              // the switched term itself
    std::vector<int> switchings;
};
std::optional<NecklaceNormalization> normalize_to_necklace(const SpTerm& t,
                                                           std::string* why = nullptr);

// Sub-connection of a depth-3 parallel piece that is switching-equivalent to
// a necklace: the piece, the two part indices used, switchings on compile(t),
// and the resulting necklace (profile of the switched sub-term).
struct NecklaceSite {
    PieceRef piece;
    int child_a = 0;
    int child_b = 0;
    std::vector<int> switchings;
    NecklaceProfile profile;
    int beta = 0;
};

// All candidate sites of a reduced term of depth >= 3 (pairs of parts of
// depth-3 parallel pieces, at least one part of depth 2), cheapest-beta
// first, ties broken leftmost in term order.
std::vector<NecklaceSite> find_necklace_sites(const SpTerm& t);

// First (minimum-beta) site, or nullopt with a reason when the
// preconditions fail.
std::optional<NecklaceSite> find_necklace_piece(const SpTerm& t, std::string* why = nullptr);

// Two-terminal series-parallel recognition by iterated series/parallel
// reduction. Returns a term whose compilation is isomorphic to g
// (terminal-respecting, sign-preserving), or nullopt.
std::optional<SpTerm> recognize_sp(const SignedGraph& g);

}  // namespace signedflow
