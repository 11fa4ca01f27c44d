#include "signedflow/pseudoflow.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <stdexcept>

namespace signedflow {

bool boundary_pair_valid(int a, int b, int deg_source, int deg_target) {
    return (a != 0 || deg_source >= 2) && (b != 0 || deg_target >= 2);
}

bool boundary_pair_valid(int a, int b, const StringProfile& s) {
    return boundary_pair_valid(a, b, s.starts_with_digon() ? 2 : 1,
                               s.ends_with_digon() ? 2 : 1);
}

std::optional<FlowAssignment> digon_pseudoflow(int a, int b) {
    if (!same_parity(a, b) || a == b || a == -b || !in_i5(a) || !in_i5(b)) return std::nullopt;
    SignedGraph g = compile(SpTerm::digon());
    FlowAssignment f = FlowAssignment::zero(g, 6);
    f.values[0] = (a + b) / 2;  // positive edge, source -> target
    f.values[1] = (a - b) / 2;  // negative edge, extroverted
    return f;
}

std::optional<std::vector<int>> find_boundary_sequence(int n, int a, int b, int max_abs) {
    if (n < 1) return std::nullopt;
    if (!same_parity(a, b)) return std::nullopt;
    if (std::abs(a) > max_abs || std::abs(b) > max_abs) return std::nullopt;
    int parity = std::abs(a) % 2;
    std::vector<int> classes;  // usable absolute values
    for (int c = parity; c <= max_abs; c += 2) classes.push_back(c);

    // reachability DP over positions 0..n on absolute values; zero only at
    // the ends, consecutive classes distinct
    auto allowed = [&](int pos, int cls) {
        if (cls == 0 && pos != 0 && pos != n) return false;
        return true;
    };
    std::vector<std::vector<char>> reach(n + 1, std::vector<char>(max_abs + 1, 0));
    reach[0][std::abs(a)] = allowed(0, std::abs(a));
    for (int p = 1; p <= n; ++p)
        for (int c : classes) {
            if (!allowed(p, c)) continue;
            for (int prev : classes)
                if (prev != c && reach[p - 1][prev]) {
                    reach[p][c] = 1;
                    break;
                }
        }
    if (!reach[n][std::abs(b)]) return std::nullopt;

    // reconstruct backwards, preferring small classes
    std::vector<int> cls_seq(n + 1);
    cls_seq[n] = std::abs(b);
    for (int p = n; p > 0; --p) {
        for (int c : classes) {
            if (c != cls_seq[p] && allowed(p - 1, c) && reach[p - 1][c]) {
                cls_seq[p - 1] = c;
                break;
            }
        }
    }
    if (cls_seq[0] != std::abs(a)) return std::nullopt;  // |a| was unreachable backwards
    std::vector<int> out(n + 1);
    out[0] = a;
    out[n] = b;
    for (int p = 1; p < n; ++p) out[p] = cls_seq[p];
    return out;
}

namespace {

FlowAssignment assert_pseudoflow(const SignedGraph& g, FlowAssignment f, int a, int b,
                                 const char* what) {
    VerifyReport rep = verify_flow(g, f, /*treat_terminals_as_free=*/true);
    if (!rep.valid())
        throw std::logic_error(std::string("internal: ") + what +
                               " produced an invalid pseudoflow: " + rep.violations.front().message);
    if (rep.realized_boundary != std::pair{a, b})
        throw std::logic_error(std::string("internal: ") + what + " boundary mismatch");
    return f;
}

}  // namespace

std::optional<FlowAssignment> string_pseudoflow(const StringProfile& s, int a, int b,
                                                std::string* why) {
    if (!s.nontrivial) {
        if (why) *why = "precondition: string is trivial";
        return std::nullopt;
    }
    if (!same_parity(a, b)) {
        if (why) *why = "precondition: a and b differ in parity";
        return std::nullopt;
    }
    if (!in_i5(a) || !in_i5(b)) {
        if (why) *why = "precondition: boundary outside I5";
        return std::nullopt;
    }
    if (!boundary_pair_valid(a, b, s)) {
        if (why) *why = "precondition: pair invalid for a degree-1 terminal";
        return std::nullopt;
    }
    int beta = s.beta;
    bool cond_a = (beta % 2 == 1) && a != b && a != -b;
    bool cond_b = (beta % 2 == 0) && (a == b || a == -b);
    bool cond_c = beta >= 2 && (std::abs(a) % 2 == 1 || a == 0 || b == 0);
    if (!cond_a && !cond_b && !cond_c) return std::nullopt;

    auto seq = find_boundary_sequence(beta, a, b);
    if (!seq) throw std::logic_error("internal: sequence construction failed under (a)/(b)/(c)");

    SignedGraph g = compile(s.term);
    FlowAssignment f = FlowAssignment::zero(g, 6);
    int cur = (*seq)[0];
    int digon_index = 0;
    for (const StringPart& part : s.parts) {
        if (!part.digon) {
            f.values[part.first_leaf] = cur;
        } else {
            int c1 = cur, c2 = (*seq)[digon_index + 1];
            int pos = part.positive_leaf;
            int neg = part.first_leaf == pos ? part.first_leaf + 1 : part.first_leaf;
            f.values[pos] = (c1 + c2) / 2;
            f.values[neg] = (c1 - c2) / 2;
            cur = c2;
            ++digon_index;
        }
    }
    return assert_pseudoflow(g, std::move(f), a, b, "string_pseudoflow");
}

std::optional<FlowAssignment> string_component_pseudoflow(const StringProfile& s, int a, int b) {
    if (s.beta == 0) {
        // single positive edge: (a, b) realizable iff a == b != 0
        if (a != b || a == 0 || !in_i5(a)) return std::nullopt;
        SignedGraph g = compile(s.term);
        FlowAssignment f = FlowAssignment::zero(g, 6);
        f.values[0] = a;
        return assert_pseudoflow(g, std::move(f), a, b, "k2+ component");
    }
    if (!s.nontrivial) {
        // lone digon
        auto f = digon_pseudoflow(a, b);
        if (!f) return std::nullopt;
        // remap onto this profile's term (leaf order may differ from canonical D)
        SignedGraph g = compile(s.term);
        FlowAssignment out = FlowAssignment::zero(g, 6);
        int pos = s.parts[0].positive_leaf;
        int neg = pos == 0 ? 1 : 0;
        out.values[pos] = f->values[0];
        out.values[neg] = f->values[1];
        return assert_pseudoflow(g, std::move(out), a, b, "digon component");
    }
    return string_pseudoflow(s, a, b);
}

namespace {

const std::vector<NecklaceTableRow>& raw_necklace_rows() {
    //            a   b |  type I: a1 b1 a2 b2 | type II: a1 b1 a2 b2
    static const std::vector<NecklaceTableRow> rows = {
        {0, 2, /*I*/ 1, 5, -1, -3, /*II*/ 1, 3, -1, -1},
        {0, 4, /*I*/ 3, 5, -3, -1, /*II*/ 1, 5, -1, -1},
        {2, 4, /*I*/ -1, 5, 3, -1, /*II*/ 1, 3, 1, 1},
        {2, -4, /*I*/ -1, -5, 3, 1, /*II*/ 1, -5, 1, 1},
        {1, 3, /*I*/ 3, -1, -2, 4, /*II*/ 3, 5, -2, -2},
        {1, -3, /*I*/ 3, 1, -2, -4, /*II*/ 3, -1, -2, -2},
        {1, 5, /*I*/ 3, 1, -2, 4, /*II*/ -1, 3, 2, 2},
        {1, -5, /*I*/ 3, -1, -2, -4, /*II*/ 5, -1, -4, -4},
        {3, 5, /*I*/ 5, 1, -2, 4, /*II*/ 1, 3, 2, 2},
        {3, -5, /*I*/ 5, -1, -2, -4, /*II*/ 5, -3, -2, -2},
    };
    return rows;
}

}  // namespace

const std::vector<NecklaceTableRow>& necklace_table() {
    static std::once_flag checked;
    std::call_once(checked, [] { necklace_table_self_check(); });
    return raw_necklace_rows();
}

void necklace_table_self_check() {
    const auto& rows = raw_necklace_rows();
    if (rows.size() != 10) throw std::logic_error("necklace table must have 10 rows");
    auto odd = [](int x) { return std::abs(x) % 2 == 1; };
    for (const auto& r : rows) {
        for (int v : {r.a1_I, r.b1_I, r.a2_I, r.b2_I, r.a1_II, r.b1_II, r.a2_II, r.b2_II})
            if (!in_i5(v)) throw std::logic_error("necklace table entry outside I5");
        // condition (1): a1, b1 odd and a1 != +-b1 (both types)
        if (!odd(r.a1_I) || !odd(r.b1_I) || r.a1_I == r.b1_I || r.a1_I == -r.b1_I)
            throw std::logic_error("necklace table: condition (1) fails for type I");
        if (!odd(r.a1_II) || !odd(r.b1_II) || r.a1_II == r.b1_II || r.a1_II == -r.b1_II)
            throw std::logic_error("necklace table: condition (1) fails for type II");
        // condition (2): type I needs a2 != +-b2, type II needs a2 = +-b2
        if (r.a2_I == r.b2_I || r.a2_I == -r.b2_I)
            throw std::logic_error("necklace table: condition (2) fails for type I");
        if (r.a2_II != r.b2_II && r.a2_II != -r.b2_II)
            throw std::logic_error("necklace table: condition (2) fails for type II");
        if (!same_parity(r.a2_I, r.b2_I) || !same_parity(r.a2_II, r.b2_II))
            throw std::logic_error("necklace table: component parity mismatch");
        // sums reproduce (a, b)
        if (r.a1_I + r.a2_I != r.a || r.b1_I + r.b2_I != r.b)
            throw std::logic_error("necklace table: type I row does not sum to (a, b)");
        if (r.a1_II + r.a2_II != r.a || r.b1_II + r.b2_II != r.b)
            throw std::logic_error("necklace table: type II row does not sum to (a, b)");
    }
}

namespace {

struct PairOp {
    bool swap = false;  // (x, y) -> (-y, -x)
    bool neg = false;   // (x, y) -> (-x, -y)
};

std::pair<int, int> apply_op(std::pair<int, int> p, bool swap_op) {
    if (swap_op) return {-p.second, -p.first};
    return {-p.first, -p.second};
}

}  // namespace

std::optional<FlowAssignment> necklace_pseudoflow(const NecklaceProfile& p, int a, int b,
                                                  std::string* why) {
    if (!same_parity(a, b)) {
        if (why) *why = "precondition: a and b differ in parity";
        return std::nullopt;
    }
    if (!in_i5(a) || !in_i5(b)) {
        if (why) *why = "precondition: boundary outside I5";
        return std::nullopt;
    }

    std::pair<int, int> c1, c2;
    if (a == 0 && b == 0) {
        if (p.beta() < 2) return std::nullopt;  // not covered: beta(G) must be >= 2
        if (p.g2.beta == 0) {
            c1 = {1, 1};
            c2 = {-1, -1};
        } else {
            c1 = {1, 3};
            c2 = {-1, -3};
        }
    } else if (a != b && a != -b) {
        // normalize to |a| <= |b|, a >= 0, b >= 0 when a = 0
        int na = a, nb = b;
        std::vector<bool> ops;  // true = swap, false = negate
        if (std::abs(na) > std::abs(nb)) {
            std::tie(na, nb) = std::pair{-nb, -na};
            ops.push_back(true);
        }
        if (na < 0 || (na == 0 && nb < 0)) {
            std::tie(na, nb) = std::pair{-na, -nb};
            ops.push_back(false);
        }
        const NecklaceTableRow* row = nullptr;
        for (const auto& r : necklace_table())
            if (r.a == na && r.b == nb) row = &r;
        if (!row) throw std::logic_error("internal: necklace table miss for a covered pair");
        if (p.type == NecklaceType::I) {
            c1 = {row->a1_I, row->b1_I};
            c2 = {row->a2_I, row->b2_I};
        } else {
            c1 = {row->a1_II, row->b1_II};
            c2 = {row->a2_II, row->b2_II};
        }
        // undo the normalization on the component boundaries (inverse ops in
        // reverse order; both transforms are involutions and additive)
        for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
            c1 = apply_op(c1, *it);
            c2 = apply_op(c2, *it);
        }
    } else {
        return std::nullopt;  // a = +-b and not (0, 0): not covered
    }

    auto prof1 = recognize_string(p.g1.term);
    auto prof2 = recognize_string(p.g2.term);
    if (!prof1 || !prof2) throw std::logic_error("internal: necklace component is not a string");
    auto f1 = string_component_pseudoflow(*prof1, c1.first, c1.second);
    auto f2 = string_component_pseudoflow(*prof2, c2.first, c2.second);
    if (!f1 || !f2)
        throw std::logic_error("internal: necklace component pseudoflow unavailable for (" +
                               std::to_string(c1.first) + "," + std::to_string(c1.second) + ")/(" +
                               std::to_string(c2.first) + "," + std::to_string(c2.second) + ")");

    SignedGraph g = compile(p.term);
    FlowAssignment f =
        pseudoflow_sum(g, {&*f1, &*f2}, {&p.g1.edge_map, &p.g2.edge_map});
    return assert_pseudoflow(g, std::move(f), a, b, "necklace_pseudoflow");
}

FlowAssignment pseudoflow_sum(const SignedGraph& combined,
                              const std::vector<const FlowAssignment*>& flows,
                              const std::vector<const std::vector<int>*>& edge_maps, int bound) {
    FlowAssignment out = FlowAssignment::zero(combined, bound);
    std::vector<char> taken(combined.edge_count(), 0);
    for (size_t c = 0; c < flows.size(); ++c) {
        const FlowAssignment& f = *flows[c];
        const std::vector<int>& map = *edge_maps[c];
        if (f.values.size() != map.size())
            throw std::invalid_argument("edge map size does not match component");
        for (size_t e = 0; e < map.size(); ++e) {
            int parent = map[e];
            if (taken.at(parent)) throw std::invalid_argument("overlapping edge ids in sum");
            taken[parent] = 1;
            out.values[parent] = f.values[e];
            out.dirs[parent] = f.dirs[e];
        }
    }
    return out;
}

FlowAssignment series_compose(const std::vector<SpTerm>& parts,
                              const std::vector<FlowAssignment>& flows, int bound) {
    if (parts.size() != flows.size() || parts.size() < 2)
        throw std::invalid_argument("series_compose needs matching parts and flows (>= 2)");
    std::vector<std::pair<int, int>> bounds;
    for (size_t i = 0; i < parts.size(); ++i) {
        SignedGraph g = compile(parts[i]);
        bounds.push_back(boundary(g, flows[i]));
    }
    for (size_t i = 0; i + 1 < parts.size(); ++i)
        if (bounds[i].second != bounds[i + 1].first)
            throw std::invalid_argument(
                "series junction mismatch: part " + std::to_string(i) + " ends with " +
                std::to_string(bounds[i].second) + " but part " + std::to_string(i + 1) +
                " starts with " + std::to_string(bounds[i + 1].first));

    SpTerm combined = SpTerm::series(std::vector<SpTerm>(parts));
    SignedGraph g = compile(combined);
    FlowAssignment out = FlowAssignment::zero(g, bound);
    int offset = 0;
    for (size_t i = 0; i < parts.size(); ++i) {
        for (size_t e = 0; e < flows[i].values.size(); ++e) {
            out.values[offset + e] = flows[i].values[e];
            out.dirs[offset + e] = flows[i].dirs[e];
        }
        offset += parts[i].leaf_count();
    }
    VerifyReport rep = verify_flow(g, out, /*treat_terminals_as_free=*/true);
    if (!rep.valid())
        throw std::logic_error("internal: series_compose produced an invalid pseudoflow");
    return out;
}

}  // namespace signedflow
