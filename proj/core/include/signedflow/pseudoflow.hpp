#pragma once

#include <optional>
#include <string>
#include <vector>

#include "signedflow/flow.hpp"
#include "signedflow/sp_recognize.hpp"
#include "signedflow/sp_term.hpp"

namespace signedflow {

inline constexpr int kBoundaryMax = 5;  // boundaries live in I5 = {-5..5}

inline bool in_i5(int x) { return x >= -kBoundaryMax && x <= kBoundaryMax; }
inline bool same_parity(int a, int b) { return ((a - b) % 2) == 0; }

// Pair (a, b) is valid for a two-terminal piece when a nonzero boundary is
// not demanded of a degree-1 terminal.
bool boundary_pair_valid(int a, int b, int deg_source, int deg_target);
bool boundary_pair_valid(int a, int b, const StringProfile& s);

// Pseudoflow on the unbalanced 2-cycle D with boundary (a, b);
// exists iff a = b (mod 2), a != +-b, a and b in I5. Positive edge carries
// (a+b)/2 from source to target, negative edge (a-b)/2 extroverted.
std::optional<FlowAssignment> digon_pseudoflow(int a, int b);

// c_1..c_{n+1} of one parity with c_1 = a, c_{n+1} = b, |c_i| != |c_{i+1}|,
// interior entries nonzero, all in I5 (or +-(max_abs)). Used by the string
// construction; exposed for tests.
std::optional<std::vector<int>> find_boundary_sequence(int n, int a, int b,
                                                       int max_abs = kBoundaryMax);

// String pseudoflow per the digon-sequence construction. Distinguishes
// precondition failures (reported through `why`) from infeasibility
// (nullopt with empty reason). Requires a nontrivial string.
std::optional<FlowAssignment> string_pseudoflow(const StringProfile& s, int a, int b,
                                                std::string* why = nullptr);

// (a, b)-pseudoflow on a single string component that may also be a lone
// K2+ or a lone digon (dispatches accordingly).
std::optional<FlowAssignment> string_component_pseudoflow(const StringProfile& s, int a, int b);

// Embedded lookup table driving the necklace construction: for each
// normalized (a, b) with |a| <= |b|, a >= 0 (b >= 0 when a = 0), a != +-b,
// the component boundaries ((a1,b1), (a2,b2)) per necklace type.
struct NecklaceTableRow {
    int a, b;
    int a1_I, b1_I, a2_I, b2_I;
    int a1_II, b1_II, a2_II, b2_II;
};
const std::vector<NecklaceTableRow>& necklace_table();
// Throws std::logic_error when any row violates the component conditions or
// does not sum back to (a, b). Runs once on first table use.
void necklace_table_self_check();

// Necklace pseudoflow: defined when a != +-b, or a = b = 0 with beta >= 2.
std::optional<FlowAssignment> necklace_pseudoflow(const NecklaceProfile& p, int a, int b,
                                                  std::string* why = nullptr);

// Union of pseudoflows on edge-disjoint parallel parts; boundaries add.
// Inputs are (component graph, flow, edge map into the combined graph).
FlowAssignment pseudoflow_sum(const SignedGraph& combined,
                              const std::vector<const FlowAssignment*>& flows,
                              const std::vector<const std::vector<int>*>& edge_maps, int bound = 6);

// Series composition: consecutive boundaries must match (b_i = a_{i+1}).
// Throws std::invalid_argument on a junction mismatch.
FlowAssignment series_compose(const std::vector<SpTerm>& parts,
                              const std::vector<FlowAssignment>& flows, int bound = 6);

}  // namespace signedflow
