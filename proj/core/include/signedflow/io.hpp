#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "signedflow/admissibility.hpp"
#include "signedflow/flow.hpp"
#include "signedflow/signed_graph.hpp"

namespace signedflow {

// Edge-list text format, one graph per file:
//   # comments and blank lines allowed
//   terminals s t        (optional, at most once)
//   u v +                (one edge per line, sign '+' or '-')
// Vertex ids are nonempty alphanumeric tokens; edge ids follow line order.
struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& what, int line_, int col_)
        : std::runtime_error(what + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(col_) + ")"),
          line(line_),
          column(col_) {}
};

SignedGraph parse_edge_list(const std::string& text);
std::string format_edge_list(const SignedGraph& g);

// Flow text format, one edge per line:
//   flow k=<bound>
//   e<id> <u>-><v> <value>        positive edge directed u -> v
//   e<id> <u><-<v> <value>        positive edge directed v -> u
//   e<id> <u>->x<-<v> <value>     negative edge, both half-edges point away
//                                 from their endpoints (extroverted)
//   e<id> <u><-x-><v> <value>     negative edge, both point toward them
std::string format_flow(const SignedGraph& g, const FlowAssignment& f);
FlowAssignment parse_flow(const SignedGraph& g, const std::string& text);

// DOT export; negative edges dashed, flow values as edge labels.
std::string to_dot(const SignedGraph& g, const FlowAssignment* flow = nullptr);

// JSON codecs (nlohmann grammar, stable key order via object dumps).
std::string graph_to_json(const SignedGraph& g);
SignedGraph graph_from_json(const std::string& text);
std::string flow_to_json(const SignedGraph& g, const FlowAssignment& f);
std::string verify_report_to_json(const VerifyReport& rep);
std::string admissibility_to_json(const SignedGraph& g, const AdmissibilityReport& rep);

}  // namespace signedflow
