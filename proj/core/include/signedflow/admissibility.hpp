#pragma once

#include <optional>
#include <vector>

#include "signedflow/circuits.hpp"
#include "signedflow/signed_graph.hpp"
#include "signedflow/sp_term.hpp"

namespace signedflow {

struct AdmissibilityReport {
    bool admissible = false;
    std::vector<std::optional<SignedCircuit>> witness;  // per edge id
    std::vector<int> uncovered;
};

// A balanced cycle through e, else a barbell containing e, else nullopt.
// Returned witnesses are verified before return.
std::optional<SignedCircuit> circuit_through(const SignedGraph& g, int edge_id);

// Every edge in a signed circuit <=> flow-admissible. Exhaustive
// enumeration within blocks; exponential worst case, fine at desk scale.
AdmissibilityReport is_flow_admissible(const SignedGraph& g);

// Term-aware entry point. For a series term with unbalanced endparts every
// edge lies in a barbell, built constructively without the general search.
AdmissibilityReport is_flow_admissible_term(const SpTerm& t);

// Constructive barbell for an edge of a series term with unbalanced
// endparts (used by the fast path; exposed for testing).
std::optional<SignedCircuit> barbell_via_endparts(const SpTerm& t, int edge_id);

}  // namespace signedflow
