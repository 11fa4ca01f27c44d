#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "signedflow/sp_term.hpp"

namespace signedflow {

// String with `beta` digons; bridges[i] says whether a bridge sits in slot i
// (before digon i, between digons, after the last). beta + 1 slots. Every
// non-terminal vertex automatically lies in a 2-cycle. beta = 0 requires
// exactly the single-bridge pattern (the trivial string K2+).
SpTerm gen_string(int beta, const std::vector<bool>& bridges);

struct StringSpec {
    int beta = 0;
    std::vector<bool> bridges;
    bool nontrivial() const;
};

// Parallel connection of the two specified strings; at least one must be
// nontrivial.
SpTerm gen_necklace(const StringSpec& s1, const StringSpec& s2);

// All canonical terms with exactly `edges` leaves, in a deterministic order.
// Parallel children are non-decreasing in canonical term order; mirror images
// of series terms are distinct.
void enumerate_terms(int edges, const std::function<void(const SpTerm&)>& sink);

// Convenience: canonical terms with 1..max_edges leaves (size-ascending).
void enumerate_terms_upto(int max_edges, const std::function<void(const SpTerm&)>& sink);
std::vector<SpTerm> enumerate_terms_list(int max_edges);

std::uint64_t count_terms(int edges);

// Seeded random canonical term with the given number of leaves.
SpTerm random_term(std::mt19937_64& rng, int edges);

// ---- census ----

struct CensusRecord {
    std::uint64_t index = 0;
    SpTerm term;
    std::string term_text;
    bool admissible = false;
    std::optional<int> flow_number;  // nullopt = no nowhere-zero 6-flow
    bool dp_ok = false;              // dp_flow(k=6) produced a verified flow
    bool constructive_ok = false;    // constructive_flow produced a verified flow
    int fallbacks = 0;
};

struct CensusSummary {
    std::uint64_t terms = 0;
    std::uint64_t admissible = 0;
    std::uint64_t disagreements = 0;  // admissible vs dp vs constructive
    std::uint64_t fallback_events = 0;
    std::map<int, std::uint64_t> flow_number_histogram;
    std::vector<std::string> flow_number_six;  // term texts
};

// Runs the census over all canonical terms with <= max_edges edges, streaming
// records in enumeration order (deterministic, also with threads > 1).
// A false return from the sink stops the census early.
CensusSummary census(int max_edges, const std::function<bool(const CensusRecord&)>& sink,
                     int threads = 1);

CensusRecord census_record(std::uint64_t index, const SpTerm& t);

inline constexpr int kCensusDefaultMaxEdges = 10;

}  // namespace signedflow
