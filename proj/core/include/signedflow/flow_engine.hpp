#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "signedflow/flow.hpp"
#include "signedflow/sp_recognize.hpp"
#include "signedflow/sp_term.hpp"

namespace signedflow {

using BPair = std::pair<int, int>;

// Boundary-pair dynamic programming over the term tree. Node sets are exact:
// a pair (a, b) is present iff some nowhere-zero k-valuation of the piece
// conserves flow at its interior vertices and realizes net outflow a at the
// piece source and net inflow b at the piece target.
struct DpNode {
    std::vector<DpNode> children;
    std::set<BPair> pairs;
    // prefix_links[i]: combined pair of children 0..i -> (combined pair of
    // children 0..i-1, pair chosen for child i); reconstruction data
    std::vector<std::map<BPair, std::pair<BPair, BPair>>> prefix_links;
};

struct BoundaryPairSet {
    SpTerm term;
    int k = 6;
    DpNode root;

    bool contains(BPair p) const { return root.pairs.count(p) > 0; }
    const std::set<BPair>& root_pairs() const { return root.pairs; }
};

BoundaryPairSet dp_pairs(const SpTerm& t, int k);

// Nowhere-zero k-flow (conservation everywhere, terminals included)
// reconstructed from the DP, or nullopt when boundary (0,0) is unreachable.
std::optional<FlowAssignment> dp_flow(const SpTerm& t, int k = 6);

// Least k in [2, k_max] with a nowhere-zero k-flow; nullopt = none (for
// series-parallel terms k_max = 6 is exhaustive).
std::optional<int> flow_number_sp(const SpTerm& t, int k_max = 6);

// ---- reductions ----

struct ReductionStep {
    enum class Kind {
        Contract,     // R1: consecutive leaf pair of a series node merged
        DropParallel, // R2: one edge of a same-sign parallel leaf pair removed
        Split,        // R3: balanced endpart split off as its own subproblem
    };
    Kind kind;
    int problem = 0;  // which subproblem the step applied to
    // Contract: leaves (pos, pos+1) merged at pos; s1, s2 their signs.
    // DropParallel: leaf `removed` deleted, `kept` is its partner (pre-step
    // positions), `sign` their common sign.
    // Split: series children [0, cut) became problem `problem`, the rest was
    // appended as problem `appended`; left_leaves = leaf count of the left.
    int pos = 0, s1 = 0, s2 = 0;
    int kept = 0, removed = 0, sign = 0;
    int cut = 0, appended = 0, left_leaves = 0;
};

struct ReductionTrace {
    SpTerm original;
    std::vector<ReductionStep> steps;
};

struct ReduceResult {
    std::vector<SpTerm> subproblems;
    ReductionTrace trace;
};

// Fixpoint of R1 (contract a positive edge at a degree-2 non-terminal after
// making it positive by switching), R2 (drop one edge of a same-sign parallel
// pair) and R3 (split a balanced endpart off a series root). Each surviving
// subproblem is reduced per is_reduced. Throws on non-admissible input.
ReduceResult reduce(const SpTerm& t);

// Replays the inverse reductions: given verified flows on the subproblems,
// produces a verified flow on the original term.
FlowAssignment lift(const ReductionTrace& trace, const std::vector<FlowAssignment>& subflows);

// ---- constructive strategy ----

struct ConstructiveResult {
    std::optional<FlowAssignment> flow;
    int fallbacks = 0;               // times the proof path fell back to the DP
    std::vector<std::string> trace;  // human-readable step log
};

// Proof-following pipeline: reduce, solve strings/necklaces by the pseudoflow
// calculus, otherwise replace a minimum-beta necklace piece and recurse.
// Falls back to dp_flow for a subproblem whose replacement graph is not
// flow-admissible; such events are counted and logged.
ConstructiveResult constructive_flow(const SpTerm& t);

}  // namespace signedflow
