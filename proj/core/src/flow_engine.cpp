#include "signedflow/flow_engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "signedflow/admissibility.hpp"
#include "signedflow/pseudoflow.hpp"

namespace signedflow {

namespace {

int source_degree(const SpTerm& t) {
    switch (t.kind()) {
        case SpTerm::Kind::PosEdge:
        case SpTerm::Kind::NegEdge:
            return 1;
        case SpTerm::Kind::Series:
            return source_degree(t.child(0));
        case SpTerm::Kind::Parallel: {
            int d = 0;
            for (const SpTerm& c : t.children()) d += source_degree(c);
            return d;
        }
    }
    return 0;
}

int target_degree(const SpTerm& t) {
    switch (t.kind()) {
        case SpTerm::Kind::PosEdge:
        case SpTerm::Kind::NegEdge:
            return 1;
        case SpTerm::Kind::Series:
            return target_degree(t.child(t.arity() - 1));
        case SpTerm::Kind::Parallel: {
            int d = 0;
            for (const SpTerm& c : t.children()) d += target_degree(c);
            return d;
        }
    }
    return 0;
}

DpNode dp_build(const SpTerm& t, int k) {
    DpNode node;
    if (t.is_leaf()) {
        for (int c = -(k - 1); c <= k - 1; ++c) {
            if (c == 0) continue;
            node.pairs.insert(t.leaf_sign() > 0 ? BPair{c, c} : BPair{c, -c});
        }
        return node;
    }
    for (const SpTerm& c : t.children()) node.children.push_back(dp_build(c, k));
    node.prefix_links.resize(t.arity());

    long bound_a = static_cast<long>(k - 1) * source_degree(t);
    long bound_b = static_cast<long>(k - 1) * target_degree(t);

    std::set<BPair> prefix = node.children[0].pairs;
    for (const BPair& p : prefix) node.prefix_links[0][p] = {p, p};
    for (int i = 1; i < t.arity(); ++i) {
        std::set<BPair> next;
        for (const BPair& p : prefix) {
            for (const BPair& q : node.children[i].pairs) {
                BPair combined;
                if (t.kind() == SpTerm::Kind::Series) {
                    if (p.second != q.first) continue;  // junction values must agree
                    combined = {p.first, q.second};
                } else {
                    combined = {p.first + q.first, p.second + q.second};
                    if (std::abs(combined.first) > bound_a || std::abs(combined.second) > bound_b)
                        continue;
                }
                if (next.insert(combined).second) node.prefix_links[i][combined] = {p, q};
            }
        }
        prefix = std::move(next);
    }
    node.pairs = std::move(prefix);
    return node;
}

void dp_reconstruct(const SpTerm& t, const DpNode& node, BPair target, int leaf_offset,
                    std::vector<int>& values) {
    if (t.is_leaf()) {
        values[leaf_offset] = target.first;  // (c, c) or (c, -c): value is c
        return;
    }
    // unwind the prefix links from the last child to the first
    std::vector<BPair> child_pairs(t.arity());
    BPair cur = target;
    for (int i = t.arity() - 1; i >= 1; --i) {
        auto it = node.prefix_links[i].find(cur);
        if (it == node.prefix_links[i].end())
            throw std::logic_error("internal: dp reconstruction link missing");
        child_pairs[i] = it->second.second;
        cur = it->second.first;
    }
    child_pairs[0] = cur;
    int off = leaf_offset;
    for (int i = 0; i < t.arity(); ++i) {
        dp_reconstruct(t.child(i), node.children[i], child_pairs[i], off, values);
        off += t.child(i).leaf_count();
    }
}

}  // namespace

BoundaryPairSet dp_pairs(const SpTerm& t, int k) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    BoundaryPairSet s;
    s.term = t;
    s.k = k;
    s.root = dp_build(t, k);
    return s;
}

std::optional<FlowAssignment> dp_flow(const SpTerm& t, int k) {
    BoundaryPairSet s = dp_pairs(t, k);
    if (!s.contains({0, 0})) return std::nullopt;
    std::vector<int> values(t.leaf_count(), 0);
    dp_reconstruct(t, s.root, {0, 0}, 0, values);
    SignedGraph g = compile(t);
    FlowAssignment f = canonical_flow(g, std::move(values), k);
    VerifyReport rep = verify_flow(g, f, /*treat_terminals_as_free=*/false);
    if (!rep.valid())
        throw std::logic_error("internal: dp_flow reconstruction invalid: " +
                               rep.violations.front().message);
    return f;
}

std::optional<int> flow_number_sp(const SpTerm& t, int k_max) {
    for (int k = 2; k <= k_max; ++k)
        if (dp_pairs(t, k).contains({0, 0})) return k;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// reductions
// ---------------------------------------------------------------------------

namespace {

// Series node with two consecutive single-edge children (a degree-2
// non-terminal junction). Returns (path, child index).
std::optional<std::pair<PieceRef, int>> find_contract_site(const SpTerm& t) {
    std::optional<std::pair<PieceRef, int>> found;
    PieceRef path;
    std::function<bool(const SpTerm&)> go = [&](const SpTerm& node) -> bool {
        if (node.kind() == SpTerm::Kind::Series) {
            for (int i = 0; i + 1 < node.arity(); ++i) {
                if (node.child(i).is_leaf() && node.child(i + 1).is_leaf()) {
                    found = {path, i};
                    return true;
                }
            }
        }
        if (!node.is_leaf()) {
            for (int i = 0; i < node.arity(); ++i) {
                path.push_back(i);
                if (go(node.child(i))) return true;
                path.pop_back();
            }
        }
        return false;
    };
    go(t);
    return found;
}

// Parallel node with two same-sign single-edge children.
std::optional<std::tuple<PieceRef, int, int>> find_parallel_pair(const SpTerm& t) {
    std::optional<std::tuple<PieceRef, int, int>> found;
    PieceRef path;
    std::function<bool(const SpTerm&)> go = [&](const SpTerm& node) -> bool {
        if (node.kind() == SpTerm::Kind::Parallel) {
            for (int i = 0; i < node.arity(); ++i)
                for (int j = i + 1; j < node.arity(); ++j)
                    if (node.child(i).is_leaf() && node.child(j).is_leaf() &&
                        node.child(i).leaf_sign() == node.child(j).leaf_sign()) {
                        found = {path, i, j};
                        return true;
                    }
        }
        if (!node.is_leaf()) {
            for (int i = 0; i < node.arity(); ++i) {
                path.push_back(i);
                if (go(node.child(i))) return true;
                path.pop_back();
            }
        }
        return false;
    };
    go(t);
    return found;
}

int global_leaf_offset(const SpTerm& t, const PieceRef& path) {
    int off = 0;
    const SpTerm* cur = &t;
    for (int i : path) {
        off += cur->child_leaf_offset(i);
        cur = &cur->child(i);
    }
    return off;
}

// R1: merge consecutive leaf children (i, i+1) of the series node at `path`.
SpTerm apply_contract(const SpTerm& t, const PieceRef& path, int i) {
    const SpTerm& node = resolve_piece(t, path);
    int s = node.child(i).leaf_sign() * node.child(i + 1).leaf_sign();
    std::vector<SpTerm> kids;
    for (int m = 0; m < node.arity(); ++m) {
        if (m == i) {
            kids.push_back(SpTerm::leaf(s));
        } else if (m == i + 1) {
            continue;
        } else {
            kids.push_back(node.child(m));
        }
    }
    SpTerm new_node = kids.size() == 1 ? kids[0] : SpTerm::series(std::move(kids));
    return replace_piece(t, path, new_node);
}

// R2: drop leaf child j of the parallel node at `path`.
SpTerm apply_drop(const SpTerm& t, const PieceRef& path, int j) {
    const SpTerm& node = resolve_piece(t, path);
    std::vector<SpTerm> kids;
    for (int m = 0; m < node.arity(); ++m)
        if (m != j) kids.push_back(node.child(m));
    SpTerm new_node = kids.size() == 1 ? kids[0] : SpTerm::parallel(std::move(kids));
    return replace_piece(t, path, new_node);
}

bool piece_balanced(const SpTerm& t) { return compile(t).balanced(); }

}  // namespace

ReduceResult reduce(const SpTerm& t) {
    if (!is_flow_admissible_term(t).admissible)
        throw std::invalid_argument("reduce requires a flow-admissible term");
    ReduceResult res;
    res.trace.original = t;
    res.subproblems = {t};
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t p = 0; p < res.subproblems.size() && !progress; ++p) {
            SpTerm& cur = res.subproblems[p];
            if (cur.is_leaf()) continue;
            if (auto site = find_contract_site(cur)) {
                auto [path, i] = *site;
                const SpTerm& node = resolve_piece(cur, path);
                ReductionStep step;
                step.kind = ReductionStep::Kind::Contract;
                step.problem = static_cast<int>(p);
                step.pos = global_leaf_offset(cur, path) + node.child_leaf_offset(i);
                step.s1 = node.child(i).leaf_sign();
                step.s2 = node.child(i + 1).leaf_sign();
                cur = apply_contract(cur, path, i);
                res.trace.steps.push_back(step);
                progress = true;
            } else if (cur.kind() == SpTerm::Kind::Series &&
                       (piece_balanced(cur.child(0)) ||
                        piece_balanced(cur.child(cur.arity() - 1)))) {
                int n = cur.arity();
                int cut = piece_balanced(cur.child(0)) ? 1 : n - 1;
                std::vector<SpTerm> left_kids, right_kids;
                for (int i = 0; i < cut; ++i) left_kids.push_back(cur.child(i));
                for (int i = cut; i < n; ++i) right_kids.push_back(cur.child(i));
                SpTerm left = left_kids.size() == 1 ? left_kids[0] : SpTerm::series(left_kids);
                SpTerm right = right_kids.size() == 1 ? right_kids[0] : SpTerm::series(right_kids);
                ReductionStep step;
                step.kind = ReductionStep::Kind::Split;
                step.problem = static_cast<int>(p);
                step.cut = cut;
                step.appended = static_cast<int>(res.subproblems.size());
                step.left_leaves = left.leaf_count();
                cur = left;
                res.subproblems.push_back(right);
                res.trace.steps.push_back(step);
                progress = true;
            } else if (auto pair = find_parallel_pair(cur)) {
                auto [path, i, j] = *pair;
                const SpTerm& node = resolve_piece(cur, path);
                ReductionStep step;
                step.kind = ReductionStep::Kind::DropParallel;
                step.problem = static_cast<int>(p);
                int base = global_leaf_offset(cur, path);
                step.kept = base + node.child_leaf_offset(i);
                step.removed = base + node.child_leaf_offset(j);
                step.sign = node.child(i).leaf_sign();
                cur = apply_drop(cur, path, j);
                res.trace.steps.push_back(step);
                progress = true;
            }
        }
    }
    return res;
}

namespace {

// Partner adjustment for re-inserting a dropped parallel edge: shift the
// partner by one, away from zero unless at the magnitude cap.
std::pair<int, int> drop_lift_values(int w, int bound) {
    int s = w > 0 ? 1 : -1;
    int w_new = (std::abs(w) == bound - 1) ? w - s : w + s;
    int z = w - w_new;
    return {w_new, z};
}

}  // namespace

FlowAssignment lift(const ReductionTrace& trace, const std::vector<FlowAssignment>& subflows) {
    std::vector<FlowAssignment> flows = subflows;
    // replay term states forward to know each step's pre/post terms
    std::vector<std::vector<SpTerm>> states;
    {
        std::vector<SpTerm> problems = {trace.original};
        states.push_back(problems);
        for (const ReductionStep& st : trace.steps) {
            SpTerm& cur = problems[st.problem];
            switch (st.kind) {
                case ReductionStep::Kind::Contract: {
                    auto site = find_contract_site(cur);
                    cur = apply_contract(cur, site->first, site->second);
                    break;
                }
                case ReductionStep::Kind::DropParallel: {
                    auto pair = find_parallel_pair(cur);
                    cur = apply_drop(cur, std::get<0>(*pair), std::get<2>(*pair));
                    break;
                }
                case ReductionStep::Kind::Split: {
                    // recompute the split from the recorded cut
                    int n = cur.arity();
                    std::vector<SpTerm> left_kids, right_kids;
                    for (int i = 0; i < st.cut; ++i) left_kids.push_back(cur.child(i));
                    for (int i = st.cut; i < n; ++i) right_kids.push_back(cur.child(i));
                    SpTerm left = left_kids.size() == 1 ? left_kids[0] : SpTerm::series(left_kids);
                    SpTerm right =
                        right_kids.size() == 1 ? right_kids[0] : SpTerm::series(right_kids);
                    cur = left;
                    problems.push_back(right);
                    break;
                }
            }
            states.push_back(problems);
        }
    }
    if (flows.size() != states.back().size())
        throw std::invalid_argument("lift: flow count does not match subproblem count");
    for (size_t i = 0; i < flows.size(); ++i)
        flows[i] = canonicalize_orientation(compile(states.back()[i]), flows[i]);

    for (int s = static_cast<int>(trace.steps.size()) - 1; s >= 0; --s) {
        const ReductionStep& st = trace.steps[s];
        FlowAssignment& f = flows[st.problem];
        switch (st.kind) {
            case ReductionStep::Kind::Contract: {
                int v = f.values.at(st.pos);
                int v2 = st.s1 > 0 ? v : -v;
                f.values.insert(f.values.begin() + st.pos + 1, v2);
                f.dirs.insert(f.dirs.begin() + st.pos + 1, HalfDirs{});
                break;
            }
            case ReductionStep::Kind::DropParallel: {
                int kept_post = st.kept > st.removed ? st.kept - 1 : st.kept;
                int w = f.values.at(kept_post);
                auto [w_new, z] = drop_lift_values(w, f.bound);
                f.values[kept_post] = w_new;
                f.values.insert(f.values.begin() + st.removed, z);
                f.dirs.insert(f.dirs.begin() + st.removed, HalfDirs{});
                break;
            }
            case ReductionStep::Kind::Split: {
                FlowAssignment right = flows.at(st.appended);
                flows.erase(flows.begin() + st.appended);
                FlowAssignment& left = flows[st.problem];
                left.values.insert(left.values.end(), right.values.begin(), right.values.end());
                left.dirs.insert(left.dirs.end(), right.dirs.begin(), right.dirs.end());
                break;
            }
        }
        // restore canonical orientation relative to the pre-step term
        flows[st.problem] = canonical_flow(compile(states[s][st.problem]),
                                           std::move(flows[st.problem].values),
                                           flows[st.problem].bound);
    }
    SignedGraph g = compile(trace.original);
    FlowAssignment out = flows.at(0);
    VerifyReport rep = verify_flow(g, out, /*treat_terminals_as_free=*/false);
    if (!rep.valid())
        throw std::logic_error("internal: lift produced an invalid flow: " +
                               rep.violations.front().message);
    return out;
}

// ---------------------------------------------------------------------------
// constructive strategy
// ---------------------------------------------------------------------------

namespace {

struct SolveCtx {
    int fallbacks = 0;
    std::vector<std::string> log;
};

struct NecklaceReplacement {
    SpTerm new_term;
    std::vector<int> old_to_new;      // old leaf -> new leaf, -1 for H edges
    std::vector<int> h_local_to_old;  // P(Ci,Cj)-local edge -> old leaf
    int d0_pos = 0, d0_neg = 0;       // D0 leaves in the new term
    bool case_b = false;
    bool at_source = false;
};

NecklaceReplacement build_replacement(const SpTerm& t, const NecklaceSite& site) {
    NecklaceReplacement r;
    const SpTerm& piece = resolve_piece(t, site.piece);
    int m = piece.arity();
    int i = site.child_a, j = site.child_b;
    int piece_off = global_leaf_offset(t, site.piece);
    int lc_piece = piece.leaf_count();
    int lc_i = piece.child(i).leaf_count();
    int lc_j = piece.child(j).leaf_count();

    r.case_b = false;
    if (t.kind() == SpTerm::Kind::Series && site.piece.size() == 1 && m == 2) {
        if (site.piece[0] == 0) {
            r.case_b = true;
            r.at_source = true;
        } else if (site.piece[0] == t.arity() - 1) {
            r.case_b = true;
            r.at_source = false;
        }
    }

    SpTerm replacement;
    int d0_local;  // offset of the digon's positive leaf within the replacement
    if (!r.case_b) {
        replacement = SpTerm::series({SpTerm::pos_edge(), SpTerm::digon(), SpTerm::pos_edge()});
        d0_local = 1;
    } else if (r.at_source) {
        replacement = SpTerm::series({SpTerm::digon(), SpTerm::pos_edge()});
        d0_local = 0;
    } else {
        replacement = SpTerm::series({SpTerm::pos_edge(), SpTerm::digon()});
        d0_local = 1;
    }
    int lc_r = replacement.leaf_count();

    // new parallel node: children in order, child i replaced by R, child j
    // dropped (i < j always)
    SpTerm new_piece;
    int r_local_off;  // leaf offset of R within the new piece
    if (m == 2) {
        new_piece = replacement;
        r_local_off = 0;
    } else {
        std::vector<SpTerm> kids;
        for (int c = 0; c < m; ++c) {
            if (c == j) continue;
            kids.push_back(c == i ? replacement : piece.child(c));
        }
        new_piece = kids.size() == 1 ? kids[0] : SpTerm::parallel(std::move(kids));
        r_local_off = piece.child_leaf_offset(i);
    }
    r.new_term = replace_piece(t, site.piece, new_piece);

    // leaf maps (pure index arithmetic; flattening preserves leaf order)
    int total_old = t.leaf_count();
    r.old_to_new.assign(total_old, -1);
    auto new_local = [&](int old_local) -> int {
        // position of an old piece-local leaf in the new piece, for children
        // other than i and j
        int shift = 0;
        int off_i = piece.child_leaf_offset(i);
        int off_j = piece.child_leaf_offset(j);
        if (old_local > off_i) shift += lc_r - lc_i;
        if (old_local > off_j) shift -= lc_j;
        return old_local + shift;
    };
    for (int leaf = 0; leaf < total_old; ++leaf) {
        if (leaf < piece_off) {
            r.old_to_new[leaf] = leaf;
        } else if (leaf < piece_off + lc_piece) {
            int local = leaf - piece_off;
            int off_i = piece.child_leaf_offset(i);
            int off_j = piece.child_leaf_offset(j);
            if ((local >= off_i && local < off_i + lc_i) ||
                (local >= off_j && local < off_j + lc_j))
                continue;  // H edge
            r.old_to_new[leaf] = piece_off + new_local(local);
        } else {
            r.old_to_new[leaf] = leaf + (lc_r - lc_i - lc_j);
        }
    }
    r.h_local_to_old.resize(lc_i + lc_j);
    for (int l = 0; l < lc_i; ++l)
        r.h_local_to_old[l] = piece_off + piece.child_leaf_offset(i) + l;
    for (int l = 0; l < lc_j; ++l)
        r.h_local_to_old[lc_i + l] = piece_off + piece.child_leaf_offset(j) + l;
    r.d0_pos = piece_off + r_local_off + d0_local;
    r.d0_neg = r.d0_pos + 1;
    return r;
}

std::optional<FlowAssignment> solve_closed(const SpTerm& t, SolveCtx& ctx);

std::optional<FlowAssignment> solve_reduced(const SpTerm& t, SolveCtx& ctx) {
    // t is reduced and flow-admissible; all sign normalization is scoped to
    // the piece being worked on (Lemma-7/Lemma-8 style switchings)
    std::vector<int> unswitch;
    std::optional<FlowAssignment> flow;
    SpTerm nt = t;

    if (depth(t) <= 2) {
        auto norm = normalize_to_string(t);
        if (!norm) throw std::logic_error("internal: reduced depth<=2 term is not a string");
        ctx.log.push_back("string base case: " + print_sp(norm->profile.term));
        unswitch = norm->switchings;
        nt = norm->profile.term;
        flow = string_pseudoflow(norm->profile, 0, 0);
        if (!flow) throw std::logic_error("internal: admissible string has no (0,0)-pseudoflow");
    } else if (auto whole = normalize_to_necklace(t)) {
        ctx.log.push_back("necklace base case: " + print_sp(whole->term));
        unswitch = whole->switchings;
        nt = whole->term;
        flow = necklace_pseudoflow(whole->profile, 0, 0);
        if (!flow) throw std::logic_error("internal: admissible necklace has no (0,0)-pseudoflow");
    } else {
        // replace a minimum-beta necklace piece and recurse
        auto sites = find_necklace_sites(t);
        if (sites.empty())
            throw std::logic_error("internal: reduced term of depth >= 3 without necklace site");
        const NecklaceSite& site = sites.front();
        unswitch = site.switchings;
        nt = switch_term(t, site.switchings);
        NecklaceReplacement rep = build_replacement(nt, site);
        ctx.log.push_back(std::string("replace necklace (beta ") + std::to_string(site.beta) +
                          ") by " + (rep.case_b ? "end digon chain (case B)" : "D' (case A)"));

        if (!is_flow_admissible_term(rep.new_term).admissible) {
            ++ctx.fallbacks;
            ctx.log.push_back("replacement graph not flow-admissible; dp fallback");
            flow = dp_flow(nt, 6);
            if (!flow) throw std::logic_error("internal: dp fallback failed on admissible term");
        } else {
            auto sub = solve_closed(rep.new_term, ctx);
            if (!sub) throw std::logic_error("internal: recursion failed on admissible term");
            FlowAssignment subf = canonicalize_orientation(compile(rep.new_term), *sub);
            // boundary of the fresh 2-cycle: its piece source is the stored
            // u endpoint of its edges
            SignedGraph g_new = compile(rep.new_term);
            const Edge& d0e = g_new.edge(rep.d0_pos);
            int a = 0, b = 0;
            for (int id : {rep.d0_pos, rep.d0_neg}) {
                a -= vertex_contribution(g_new, subf, id, d0e.u);
                b += vertex_contribution(g_new, subf, id, d0e.v);
            }
            if (!same_parity(a, b) || a == b || a == -b || !in_i5(a) || !in_i5(b))
                throw std::logic_error("internal: extracted boundary violates the digon property");
            if (!rep.case_b && (a == 0 || b == 0))
                throw std::logic_error("internal: case A boundary must be nonzero");
            ctx.log.push_back("extracted boundary (" + std::to_string(a) + "," +
                              std::to_string(b) + ") for the necklace");

            auto h_flow = necklace_pseudoflow(site.profile, a, b);
            if (!h_flow)
                throw std::logic_error("internal: necklace pseudoflow missing for extracted pair");
            // splice: surviving edges from the subflow, H edges from the
            // necklace pseudoflow (component maps -> local -> old)
            FlowAssignment out = FlowAssignment::zero(compile(nt), 6);
            for (int leaf = 0; leaf < static_cast<int>(rep.old_to_new.size()); ++leaf) {
                if (rep.old_to_new[leaf] < 0) continue;
                out.values[leaf] = subf.values[rep.old_to_new[leaf]];
                out.dirs[leaf] = subf.dirs[rep.old_to_new[leaf]];
            }
            FlowAssignment hf = canonicalize_orientation(compile(site.profile.term), *h_flow);
            for (size_t l = 0; l < rep.h_local_to_old.size(); ++l) {
                out.values[rep.h_local_to_old[l]] = hf.values[l];
                out.dirs[rep.h_local_to_old[l]] = hf.dirs[l];
            }
            flow = std::move(out);
        }
    }

    // verify on the switched term, then undo the switchings
    SignedGraph g_switched = compile(nt);
    VerifyReport rep = verify_flow(g_switched, *flow, /*treat_terminals_as_free=*/false);
    if (!rep.valid())
        throw std::logic_error("internal: constructive flow invalid on switched term: " +
                               rep.violations.front().message);
    FlowAssignment f = *flow;
    for (auto it = unswitch.rbegin(); it != unswitch.rend(); ++it)
        f = switch_flow(g_switched, f, *it);
    return f;
}

std::optional<FlowAssignment> solve_closed(const SpTerm& t, SolveCtx& ctx) {
    if (t.is_leaf()) return std::nullopt;
    if (!is_flow_admissible_term(t).admissible) return std::nullopt;
    SignedGraph g = compile(t);

    // R1: contract a degree-2 junction between consecutive single edges
    if (auto site = find_contract_site(t)) {
        auto [path, i] = *site;
        const SpTerm& node = resolve_piece(t, path);
        int pos = global_leaf_offset(t, path) + node.child_leaf_offset(i);
        int s1 = node.child(i).leaf_sign();
        SpTerm contracted = apply_contract(t, path, i);
        auto sub = solve_closed(contracted, ctx);
        if (!sub) return std::nullopt;
        FlowAssignment f = canonicalize_orientation(compile(contracted), *sub);
        int v = f.values.at(pos);
        f.values.insert(f.values.begin() + pos + 1, s1 > 0 ? v : -v);
        f.dirs.insert(f.dirs.begin() + pos + 1, HalfDirs{});
        return canonical_flow(g, std::move(f.values), f.bound);
    }

    // R3: split a balanced endpart off a series root
    if (t.kind() == SpTerm::Kind::Series) {
        int n = t.arity();
        int cut = piece_balanced(t.child(0)) ? 1 : (piece_balanced(t.child(n - 1)) ? n - 1 : 0);
        if (cut > 0) {
            std::vector<SpTerm> lk, rk;
            for (int i = 0; i < cut; ++i) lk.push_back(t.child(i));
            for (int i = cut; i < n; ++i) rk.push_back(t.child(i));
            SpTerm left = lk.size() == 1 ? lk[0] : SpTerm::series(lk);
            SpTerm right = rk.size() == 1 ? rk[0] : SpTerm::series(rk);
            ctx.log.push_back("split balanced endpart: " + print_sp(left) + " / " + print_sp(right));
            auto fl = solve_closed(left, ctx);
            auto fr = solve_closed(right, ctx);
            if (!fl || !fr) return std::nullopt;
            FlowAssignment out = FlowAssignment::zero(g, 6);
            int lc = left.leaf_count();
            for (int e = 0; e < lc; ++e) {
                out.values[e] = fl->values[e];
                out.dirs[e] = fl->dirs[e];
            }
            for (size_t e = 0; e < fr->values.size(); ++e) {
                out.values[lc + e] = fr->values[e];
                out.dirs[lc + e] = fr->dirs[e];
            }
            return out;
        }
    }

    // R2: same-sign parallel pair
    if (auto pair = find_parallel_pair(t)) {
        auto [path, i, j] = *pair;
        const SpTerm& node = resolve_piece(t, path);
        int base = global_leaf_offset(t, path);
        int kept = base + node.child_leaf_offset(i);
        int removed = base + node.child_leaf_offset(j);

        if (path.empty() && node.arity() == 2) {
            // bare same-sign 2-cycle: a circulation is the whole flow
            FlowAssignment f = FlowAssignment::zero(g, 6);
            f.values[0] = 1;
            f.values[1] = -1;
            return f;
        }
        SpTerm kept_term = apply_drop(t, path, j);
        if (is_flow_admissible_term(kept_term).admissible) {
            auto sub = solve_closed(kept_term, ctx);
            if (!sub) return std::nullopt;
            FlowAssignment f = canonicalize_orientation(compile(kept_term), *sub);
            int kept_post = kept > removed ? kept - 1 : kept;
            int w = f.values.at(kept_post);
            auto [w_new, z] = drop_lift_values(w, f.bound);
            f.values[kept_post] = w_new;
            f.values.insert(f.values.begin() + removed, z);
            return canonical_flow(g, std::move(f.values), f.bound);
        }
        // partner not covered once the edge is gone: excise the whole
        // 2-cycle and put a circulation on it
        ctx.log.push_back("excise same-sign 2-cycle (partner uncovered)");
        if (node.arity() > 2) {
            std::vector<SpTerm> kids;
            for (int c = 0; c < node.arity(); ++c)
                if (c != i && c != j) kids.push_back(node.child(c));
            SpTerm rest = kids.size() == 1 ? kids[0] : SpTerm::parallel(std::move(kids));
            SpTerm t_rest = replace_piece(t, path, rest);
            auto sub = solve_closed(t_rest, ctx);
            if (!sub) return std::nullopt;
            // removed pair leaves: kept < removed in old indexing
            FlowAssignment f = canonicalize_orientation(compile(t_rest), *sub);
            f.values.insert(f.values.begin() + kept, 1);
            f.values.insert(f.values.begin() + removed, -1);
            return canonical_flow(g, std::move(f.values), f.bound);
        }
        if (path.size() == 1 && t.kind() == SpTerm::Kind::Series) {
            // the 2-cycle is an interior series part: its removal cuts the
            // chain into two closed subproblems
            int q = path[0];
            if (q > 0 && q + 1 < t.arity()) {
                std::vector<SpTerm> lk, rk;
                for (int c = 0; c < q; ++c) lk.push_back(t.child(c));
                for (int c = q + 1; c < t.arity(); ++c) rk.push_back(t.child(c));
                SpTerm left = lk.size() == 1 ? lk[0] : SpTerm::series(lk);
                SpTerm right = rk.size() == 1 ? rk[0] : SpTerm::series(rk);
                auto fl = solve_closed(left, ctx);
                auto fr = solve_closed(right, ctx);
                if (!fl || !fr) return std::nullopt;
                FlowAssignment out = FlowAssignment::zero(g, 6);
                int lc = left.leaf_count();
                for (int e = 0; e < lc; ++e) {
                    out.values[e] = fl->values[e];
                    out.dirs[e] = fl->dirs[e];
                }
                out.values[lc] = 1;
                out.values[lc + 1] = -1;
                for (size_t e = 0; e < fr->values.size(); ++e) {
                    out.values[lc + 2 + e] = fr->values[e];
                    out.dirs[lc + 2 + e] = fr->dirs[e];
                }
                return out;
            }
        }
        // deeply nested excision: rare; stay total via the dp
        ++ctx.fallbacks;
        ctx.log.push_back("nested excision; dp fallback");
        return dp_flow(t, 6);
    }

    return solve_reduced(t, ctx);
}

}  // namespace

ConstructiveResult constructive_flow(const SpTerm& t) {
    ConstructiveResult res;
    SolveCtx ctx;
    auto f = solve_closed(t, ctx);
    res.fallbacks = ctx.fallbacks;
    res.trace = std::move(ctx.log);
    if (f) {
        SignedGraph g = compile(t);
        VerifyReport rep = verify_flow(g, *f, /*treat_terminals_as_free=*/false);
        if (!rep.valid())
            throw std::logic_error("internal: constructive flow failed verification: " +
                                   rep.violations.front().message);
        res.flow = std::move(*f);
    }
    return res;
}

}  // namespace signedflow
