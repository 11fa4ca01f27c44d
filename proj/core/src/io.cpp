#include "signedflow/io.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include <json.hpp>

namespace signedflow {

namespace {

bool alnum_token(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

SignedGraph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::map<std::string, int> ids;
    std::vector<std::string> names;
    std::vector<Edge> edges;
    std::optional<std::pair<int, int>> terminals;
    std::optional<std::pair<std::string, std::string>> terminal_names;

    auto intern = [&](const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(names.size());
        ids.emplace(name, id);
        names.push_back(name);
        return id;
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream ls(stripped);
        std::vector<std::string> tok;
        std::string w;
        while (ls >> w) tok.push_back(w);
        if (tok.empty()) continue;
        if (tok[0] == "terminals") {
            if (tok.size() != 3) throw ParseError("terminals needs two vertex ids", lineno, 1);
            if (terminal_names) throw ParseError("duplicate terminals line", lineno, 1);
            if (!alnum_token(tok[1]) || !alnum_token(tok[2]))
                throw ParseError("vertex ids must be alphanumeric", lineno, 1);
            if (tok[1] == tok[2]) throw ParseError("terminals must be distinct", lineno, 1);
            terminal_names = {tok[1], tok[2]};
            continue;
        }
        if (tok.size() != 3) throw ParseError("expected 'u v sign'", lineno, 1);
        if (!alnum_token(tok[0]) || !alnum_token(tok[1]))
            throw ParseError("vertex ids must be alphanumeric", lineno, 1);
        if (tok[2] != "+" && tok[2] != "-")
            throw ParseError("sign must be '+' or '-'", lineno, static_cast<int>(line.rfind(tok[2])) + 1);
        int u = intern(tok[0]), v = intern(tok[1]);
        if (u == v) throw ParseError("loop edges are not allowed", lineno, 1);
        edges.push_back({u, v, tok[2] == "+" ? +1 : -1});
    }
    if (terminal_names) {
        auto su = ids.find(terminal_names->first);
        auto sv = ids.find(terminal_names->second);
        if (su == ids.end() || sv == ids.end())
            throw ParseError("terminal vertex does not appear in any edge", 1, 1);
        terminals = {su->second, sv->second};
    }
    int vertex_count = static_cast<int>(names.size());
    return SignedGraph::make(vertex_count, std::move(edges), terminals, std::move(names));
}

std::string format_edge_list(const SignedGraph& g) {
    std::ostringstream out;
    if (g.has_terminals())
        out << "terminals " << g.vertex_name(g.source()) << " " << g.vertex_name(g.target())
            << "\n";
    for (const Edge& e : g.edges())
        out << g.vertex_name(e.u) << " " << g.vertex_name(e.v) << " " << (e.sign > 0 ? "+" : "-")
            << "\n";
    return out.str();
}

std::string format_flow(const SignedGraph& g, const FlowAssignment& f) {
    std::ostringstream out;
    out << "flow k=" << f.bound << "\n";
    for (int id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        const HalfDirs& d = f.dirs[id];
        out << "e" << id << " " << g.vertex_name(e.u);
        if (e.sign > 0) {
            out << (d.toward_v ? "->" : "<-");
        } else if (!d.toward_u && !d.toward_v) {
            out << "->x<-";  // extroverted
        } else {
            out << "<-x->";  // introverted
        }
        out << g.vertex_name(e.v) << " " << f.values[id] << "\n";
    }
    return out.str();
}

FlowAssignment parse_flow(const SignedGraph& g, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    FlowAssignment f = FlowAssignment::zero(g);
    std::vector<char> seen(g.edge_count(), 0);
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream ls(stripped);
        std::vector<std::string> tok;
        std::string w;
        while (ls >> w) tok.push_back(w);
        if (tok.empty()) continue;
        if (tok[0] == "flow") {
            if (tok.size() != 2 || tok[1].rfind("k=", 0) != 0)
                throw ParseError("expected 'flow k=<bound>'", lineno, 1);
            f.bound = std::stoi(tok[1].substr(2));
            continue;
        }
        if (tok.size() != 3 || tok[0].size() < 2 || tok[0][0] != 'e')
            throw ParseError("expected 'e<id> <endpoints> <value>'", lineno, 1);
        int id = std::stoi(tok[0].substr(1));
        if (id < 0 || id >= g.edge_count()) throw ParseError("unknown edge id", lineno, 1);
        if (seen[id]) throw ParseError("duplicate edge line", lineno, 1);
        seen[id] = 1;
        const Edge& e = g.edge(id);
        const std::string& mid = tok[1];
        std::string un = g.vertex_name(e.u), vn = g.vertex_name(e.v);
        HalfDirs d;
        if (mid == un + "->" + vn)
            d = {false, true};
        else if (mid == un + "<-" + vn)
            d = {true, false};
        else if (mid == un + "->x<-" + vn)
            d = {false, false};
        else if (mid == un + "<-x->" + vn)
            d = {true, true};
        else
            throw ParseError("endpoint marker does not match edge " + tok[0], lineno, 1);
        f.dirs[id] = d;
        f.values[id] = std::stoi(tok[2]);
    }
    for (int id = 0; id < g.edge_count(); ++id)
        if (!seen[id]) throw ParseError("missing line for edge e" + std::to_string(id), 1, 1);
    return f;
}

std::string to_dot(const SignedGraph& g, const FlowAssignment* flow) {
    std::ostringstream out;
    out << "digraph signed {\n  rankdir=LR;\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        out << "  " << g.vertex_name(v);
        if (g.has_terminals() && v == g.source())
            out << " [shape=square,label=\"" << g.vertex_name(v) << " (s)\"]";
        else if (g.has_terminals() && v == g.target())
            out << " [shape=square,label=\"" << g.vertex_name(v) << " (t)\"]";
        out << ";\n";
    }
    for (int id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        std::string attrs;
        bool forward = true;
        std::string label = "e" + std::to_string(id);
        if (flow) label += "=" + std::to_string(flow->values[id]);
        if (e.sign < 0) {
            attrs = "style=dashed,dir=both,";
            const HalfDirs d = flow ? flow->dirs[id] : canonical_dirs(e);
            attrs += (d.toward_u && d.toward_v) ? "arrowtail=normal,arrowhead=normal,"
                                                : "arrowtail=inv,arrowhead=inv,";
        } else if (flow) {
            forward = flow->dirs[id].toward_v;
        }
        out << "  " << g.vertex_name(forward ? e.u : e.v) << " -> "
            << g.vertex_name(forward ? e.v : e.u) << " [" << attrs << "label=\"" << label
            << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string graph_to_json(const SignedGraph& g) {
    nlohmann::json j;
    j["vertices"] = g.vertex_names();
    if (g.has_terminals())
        j["terminals"] = {g.vertex_name(g.source()), g.vertex_name(g.target())};
    else
        j["terminals"] = nullptr;
    nlohmann::json edges = nlohmann::json::array();
    for (int id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        edges.push_back({{"id", id},
                         {"u", g.vertex_name(e.u)},
                         {"v", g.vertex_name(e.v)},
                         {"sign", e.sign}});
    }
    j["edges"] = edges;
    return j.dump();
}

SignedGraph graph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<std::string> names = j.at("vertices").get<std::vector<std::string>>();
    std::map<std::string, int> ids;
    for (size_t i = 0; i < names.size(); ++i) ids[names[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (const auto& je : j.at("edges"))
        edges.push_back({ids.at(je.at("u").get<std::string>()),
                         ids.at(je.at("v").get<std::string>()), je.at("sign").get<int>()});
    std::optional<std::pair<int, int>> terminals;
    if (!j.at("terminals").is_null())
        terminals = {ids.at(j["terminals"][0].get<std::string>()),
                     ids.at(j["terminals"][1].get<std::string>())};
    return SignedGraph::make(static_cast<int>(names.size()), std::move(edges), terminals, names);
}

std::string flow_to_json(const SignedGraph& g, const FlowAssignment& f) {
    nlohmann::json j;
    j["k"] = f.bound;
    nlohmann::json edges = nlohmann::json::array();
    for (int id = 0; id < g.edge_count(); ++id) {
        edges.push_back({{"id", id},
                         {"value", f.values[id]},
                         {"toward_u", f.dirs[id].toward_u},
                         {"toward_v", f.dirs[id].toward_v}});
    }
    j["edges"] = edges;
    return j.dump();
}

std::string verify_report_to_json(const VerifyReport& rep) {
    nlohmann::json j;
    j["valid"] = rep.valid();
    nlohmann::json v = nlohmann::json::array();
    for (const auto& viol : rep.violations) v.push_back(viol.message);
    j["violations"] = v;
    if (rep.realized_boundary)
        j["boundary"] = {rep.realized_boundary->first, rep.realized_boundary->second};
    return j.dump();
}

std::string admissibility_to_json(const SignedGraph& g, const AdmissibilityReport& rep) {
    nlohmann::json j;
    j["admissible"] = rep.admissible;
    nlohmann::json per_edge = nlohmann::json::array();
    for (int id = 0; id < g.edge_count(); ++id) {
        nlohmann::json w;
        w["edge"] = id;
        if (rep.witness[id]) {
            w["witness"] = rep.witness[id]->kind == SignedCircuit::Kind::BalancedCycle
                               ? "balanced-cycle"
                               : "barbell";
        } else {
            w["witness"] = nullptr;
        }
        per_edge.push_back(w);
    }
    j["edges"] = per_edge;
    j["uncovered"] = rep.uncovered;
    return j.dump();
}

}  // namespace signedflow
