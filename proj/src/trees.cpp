#include "mirror/trees.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace mirror {

std::string canonical_key(const TreeType& t) {
    if (t.is_leaf()) return "L" + exponent_str(t.weight);
    std::vector<std::string> keys;
    keys.reserve(t.children.size());
    for (const auto& c : t.children) keys.push_back(canonical_key(c));
    std::sort(keys.begin(), keys.end());
    std::string out = "N(";
    for (const auto& k : keys) out += k;
    out += ")";
    return out;
}

long nonleaf_count(const TreeType& t) {
    if (t.is_leaf()) return 0;
    long c = 1;
    for (const auto& ch : t.children) c += nonleaf_count(ch);
    return c;
}

long vertex_count(const TreeType& t) {
    long c = 1;
    for (const auto& ch : t.children) c += vertex_count(ch);
    return c;
}

long leaf_count(const TreeType& t) {
    if (t.is_leaf()) return 1;
    long c = 0;
    for (const auto& ch : t.children) c += leaf_count(ch);
    return c;
}

Int aut_count(const TreeType& t) {
    if (t.is_leaf()) return 1;
    Int aut = 1;
    for (const auto& ch : t.children) aut *= aut_count(ch);
    std::map<std::string, Int> classes;
    for (const auto& ch : t.children) classes[canonical_key(ch)] += 1;
    for (const auto& [key, mult] : classes) {
        for (Int i = 2; i <= mult; ++i) aut *= i;
    }
    return aut;
}

bool is_stable(const TreeType& t) {
    if (t.is_leaf()) return true;
    std::set<std::string> weights;
    for (const auto& ch : t.children) {
        if (!weights.insert(exponent_str(ch.weight)).second) return false;
        if (!is_stable(ch)) return false;
    }
    return true;
}

LeafLabels LeafLabels::from_series(const Series& f) {
    LeafLabels out;
    for (const auto& [e, c] : f.terms()) {
        if (vec_is_zero(e.m)) continue;  // constant and pure-Q terms are not labels
        out.labels.push_back(e);
        out.coeffs.push_back(c);
    }
    return out;
}

std::optional<std::size_t> LeafLabels::find(const Exponent& e) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == e) return i;
    return std::nullopt;
}

namespace {

// All label-multiset sums (>= 1 label) inside the window, with the minimal
// grading order they can be reached at.
std::vector<Exponent> submonoid_elements(const LeafLabels& labels, const Truncation& window) {
    std::set<Exponent, ExponentLess> seen;
    std::vector<Exponent> frontier;
    for (const auto& l : labels.labels) {
        if (!window.in_window(l)) continue;
        if (seen.insert(l).second) frontier.push_back(l);
    }
    while (!frontier.empty()) {
        std::vector<Exponent> next;
        for (const auto& e : frontier) {
            for (const auto& l : labels.labels) {
                Exponent s = exp_add(e, l);
                if (!window.in_window(s)) continue;
                if (seen.insert(s).second) next.push_back(s);
            }
        }
        frontier = std::move(next);
    }
    std::vector<Exponent> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [&](const Exponent& a, const Exponent& b) {
        Int oa = window.order_of(a), ob = window.order_of(b);
        if (oa != ob) return oa < ob;
        return ExponentLess{}(a, b);
    });
    return out;
}

struct Enumerator {
    const LeafLabels& labels;
    const Truncation& window;
    long leaf_cap;
    bool stable;
    std::vector<Exponent> universe;  // submonoid elements, order-sorted
    std::map<Exponent, std::vector<TreeType>, ExponentLess> memo;

    const std::vector<TreeType>& trees_of(const Exponent& w) {
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
        std::vector<TreeType> result;
        if (!vec_is_zero(w.m)) {
            if (labels.find(w)) result.push_back(TreeType{w, {}});
            attach_decompositions(w, /*min_parts=*/2, result);
        }
        // Canonical dedup (different recursion routes can rebuild a type).
        std::sort(result.begin(), result.end(), [](const TreeType& a, const TreeType& b) {
            return canonical_key(a) < canonical_key(b);
        });
        result.erase(std::unique(result.begin(), result.end(),
                                 [](const TreeType& a, const TreeType& b) {
                                     return canonical_key(a) == canonical_key(b);
                                 }),
                     result.end());
        for (const auto& t : result)
            require(leaf_count(t) <= leaf_cap, Errc::leaf_cap_exceeded,
                    "tree exceeds the leaf budget " + std::to_string(leaf_cap));
        return memo.emplace(w, std::move(result)).first->second;
    }

    // Append all trees 'root weight w with >= min_parts children' to out.
    void attach_decompositions(const Exponent& w, int min_parts, std::vector<TreeType>& out) {
        if (stable) {
            std::vector<Exponent> chosen;
            distinct_parts(w, zero_exponent_like(w), 0, chosen, min_parts, out);
        } else {
            std::vector<TreeType> chosen;
            multiset_parts(w, zero_exponent_like(w), 0, 0, chosen, min_parts, out);
        }
    }

    static Exponent zero_exponent_like(const Exponent& w) {
        return zero_exponent(static_cast<int>(w.m.size()), static_cast<int>(w.q.size()));
    }

    // Stable: strictly increasing universe indices give pairwise distinct
    // child weights. Child weights always have strictly smaller order than w
    // (>= 2 parts, each of order >= 1), so trees_of never re-enters on w.
    void distinct_parts(const Exponent& w, const Exponent& partial, std::size_t start,
                        std::vector<Exponent>& chosen, int min_parts, std::vector<TreeType>& out) {
        Int need = window.order_of(w) - window.order_of(partial);
        for (std::size_t i = start; i < universe.size(); ++i) {
            const Exponent& cand = universe[i];
            if (vec_is_zero(cand.m)) continue;  // child weights lie outside Q
            Int o = window.order_of(cand);
            if (o > need) break;  // universe is order-sorted
            Exponent next = exp_add(partial, cand);
            if (next == w) {
                if (static_cast<int>(chosen.size()) + 1 >= min_parts && !trees_of(cand).empty()) {
                    chosen.push_back(cand);
                    emit_combinations(w, chosen, out);
                    chosen.pop_back();
                }
                continue;
            }
            if (o == need) continue;  // no room left for a further part
            if (trees_of(cand).empty()) continue;
            chosen.push_back(cand);
            distinct_parts(w, next, i + 1, chosen, min_parts, out);
            chosen.pop_back();
        }
    }

    void emit_combinations(const Exponent& w, const std::vector<Exponent>& parts,
                           std::vector<TreeType>& out) {
        std::vector<TreeType> children;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == parts.size()) {
                out.push_back(TreeType{w, children});
                return;
            }
            for (const auto& t : trees_of(parts[i])) {
                children.push_back(t);
                rec(i + 1);
                children.pop_back();
            }
        };
        rec(0);
    }

    // Unstable: children form a multiset of trees, chosen with non-decreasing
    // (universe index, tree index) so each multiset appears exactly once.
    void multiset_parts(const Exponent& w, const Exponent& partial, std::size_t start_idx,
                        std::size_t start_tree, std::vector<TreeType>& chosen, int min_parts,
                        std::vector<TreeType>& out) {
        Int need = window.order_of(w) - window.order_of(partial);
        for (std::size_t i = start_idx; i < universe.size(); ++i) {
            const Exponent& cand = universe[i];
            if (vec_is_zero(cand.m)) continue;
            Int o = window.order_of(cand);
            if (o > need) break;
            Exponent next = exp_add(partial, cand);
            bool complete = (next == w);
            if (complete && static_cast<int>(chosen.size()) + 1 < min_parts) continue;
            if (!complete && o == need) continue;
            const auto& cand_trees = trees_of(cand);
            std::size_t first_tree = (i == start_idx) ? start_tree : 0;
            for (std::size_t ti = first_tree; ti < cand_trees.size(); ++ti) {
                chosen.push_back(cand_trees[ti]);
                if (complete)
                    out.push_back(TreeType{w, chosen});
                else
                    multiset_parts(w, next, i, ti, chosen, min_parts, out);
                chosen.pop_back();
            }
        }
    }
};

}  // namespace

std::vector<TreeType> disk_types(const Exponent& target, const LeafLabels& labels,
                                 const Truncation& window, long leaf_cap) {
    require(!vec_is_zero(target.m), Errc::malformed_input,
            "disk types need a root weight with nonzero M part");
    Enumerator en{labels, window, leaf_cap, /*stable=*/true, submonoid_elements(labels, window), {}};
    return en.trees_of(target);
}

std::vector<TreeType> curve_types(const IntVec& q, const LeafLabels& labels,
                                  const Truncation& window, long leaf_cap) {
    require(!vec_is_zero(q), Errc::malformed_input, "curve types need q != 0");
    Exponent root;
    root.m = zero_vec(labels.labels.empty() ? 0 : labels.labels[0].m.size());
    root.r = 0;
    root.q = q;
    Enumerator en{labels, window, leaf_cap, /*stable=*/true, submonoid_elements(labels, window), {}};
    std::vector<TreeType> out;
    en.attach_decompositions(root, 2, out);
    std::sort(out.begin(), out.end(), [](const TreeType& a, const TreeType& b) {
        return canonical_key(a) < canonical_key(b);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const TreeType& a, const TreeType& b) {
                              return canonical_key(a) == canonical_key(b);
                          }),
              out.end());
    for (const auto& t : out)
        require(leaf_count(t) <= leaf_cap, Errc::leaf_cap_exceeded,
                "tree exceeds the leaf budget " + std::to_string(leaf_cap));
    return out;
}

std::vector<TreeType> disk_types_unstable(const Exponent& target, const LeafLabels& labels,
                                          const Truncation& window, long leaf_cap) {
    require(!vec_is_zero(target.m), Errc::malformed_input,
            "disk types need a root weight with nonzero M part");
    Enumerator en{labels, window, leaf_cap, /*stable=*/false, submonoid_elements(labels, window), {}};
    return en.trees_of(target);
}

namespace {

Rat leaf_weight_product(const TreeType& t, const LeafLabels& labels) {
    if (t.is_leaf()) {
        auto i = labels.find(t.weight);
        return i ? labels.coeffs[*i] : Rat(0);
    }
    Rat p(1);
    for (const auto& ch : t.children) p *= leaf_weight_product(ch, labels);
    return p;
}

}  // namespace

Rat a_coefficient(const Exponent& target, const LeafLabels& labels, const Truncation& window,
                  long leaf_cap) {
    Rat a(0);
    for (const auto& t : disk_types(target, labels, window, leaf_cap)) {
        Rat term = leaf_weight_product(t, labels);
        a += (nonleaf_count(t) % 2 == 0) ? term : -term;
    }
    return a;
}

namespace {

struct ExpansionCore {
    std::map<Exponent, Rat, ExponentLess> a;  // nonzero a_m only
    Series product;                           // Π (1 + a_m z^m)
};

ExpansionCore expansion_core(const LeafLabels& labels, const Truncation& window, int n, int r) {
    ExpansionCore core;
    core.product = Series::constant(window, n, r, Rat(1));
    auto universe = submonoid_elements(labels, window);
    std::size_t i = 0;
    while (i < universe.size()) {
        Int level = window.order_of(universe[i]);
        std::size_t j = i;
        std::vector<std::pair<Exponent, Rat>> level_factors;
        for (; j < universe.size() && window.order_of(universe[j]) == level; ++j) {
            const Exponent& w = universe[j];
            if (vec_is_zero(w.m)) continue;  // pure-Q exponents are not factors
            Rat c_w(0);
            if (auto li = labels.find(w)) c_w = labels.coeffs[*li];
            Rat a_w = c_w - core.product.coeff(w);
            if (a_w != 0) level_factors.push_back({w, a_w});
        }
        for (const auto& [w, a_w] : level_factors) {
            core.a.emplace(w, a_w);
            Series factor = Series::constant(window, n, r, Rat(1));
            factor.add_term(w, a_w);
            core.product = mul(core.product, factor);
        }
        i = j;
    }
    return core;
}

}  // namespace

Rat b_coefficient(const IntVec& q, const LeafLabels& labels, const Truncation& window) {
    require(!vec_is_zero(q), Errc::malformed_input, "b needs q != 0");
    if (labels.labels.empty()) return Rat(0);
    const int n = static_cast<int>(labels.labels[0].m.size());
    const int r = static_cast<int>(q.size());
    ExpansionCore core = expansion_core(labels, window, n, r);
    Exponent target{zero_vec(static_cast<std::size_t>(n)), Int(0), q};
    return core.product.coeff(target);
}

std::map<Exponent, Rat, ExponentLess> a_table(const LeafLabels& labels, const Truncation& window,
                                              int n, int r) {
    return expansion_core(labels, window, n, r).a;
}

namespace {

void check_expansion_vertex(const Decomposition& dec, const KaehlerData& kd, int v) {
    if (kd.rank == 0) return;  // no corrections anywhere; any vertex works
    auto interior = interior_vertex_indices(dec);
    for (int i : interior)
        if (i == v) return;
    fail(Errc::vertex_not_interior,
         "vertex " + std::to_string(v) + " is not interior to the polytope");
}

// Slab member at v re-windowed onto a grading built from its own support.
std::pair<Series, Truncation> windowed_member(const Decomposition& dec, const KaehlerData& kd,
                                              const SlabFamily& fam, int v) {
    Exponent shift = chart_shift(dec, kd, fam.canonical_vertex, v);
    std::vector<Exponent> extra;
    for (const auto& e : fam.corrections) extra.push_back(exp_add(e, shift));
    Truncation trunc = truncation_for(dec, kd, v, fam.order, extra);
    Series f(trunc);
    for (const auto& [e, c] : fam.at(v).terms()) f.add_term(e, c);
    return {std::move(f), std::move(trunc)};
}

}  // namespace

ProductExpansion product_expansion(const Decomposition& dec, const KaehlerData& kd, int v, int k) {
    return product_expansion(dec, kd, slab_family(dec, kd, k), v);
}

ProductExpansion product_expansion(const Decomposition& dec, const KaehlerData& kd,
                                   const SlabFamily& fam, int v) {
    check_expansion_vertex(dec, kd, v);
    auto [f, trunc] = windowed_member(dec, kd, fam, v);
    LeafLabels labels = LeafLabels::from_series(f);
    ExpansionCore core = expansion_core(labels, trunc, dec.dim, kd.rank);

    ProductExpansion out;
    for (const auto& [w, a] : core.a) out.factors.push_back({w, a});
    out.expanded = core.product;
    out.reference = f;
    out.matches = core.product.same_terms(f);
    return out;
}

Series exp_form(const Decomposition& dec, const KaehlerData& kd, int v, int k) {
    return exp_form(dec, kd, slab_family(dec, kd, k), v);
}

Series exp_form(const Decomposition& dec, const KaehlerData& kd, const SlabFamily& fam, int v) {
    check_expansion_vertex(dec, kd, v);
    auto [f, trunc] = windowed_member(dec, kd, fam, v);
    LeafLabels labels = LeafLabels::from_series(f);
    const int n = dec.dim;
    const int r = kd.rank;

    Series expu = Series::constant(trunc, n, r, Rat(1));  // exp(U) over processed levels
    auto universe = submonoid_elements(labels, trunc);
    std::size_t i = 0;
    while (i < universe.size()) {
        Int level = trunc.order_of(universe[i]);
        std::size_t j = i;
        Series delta(trunc);
        for (; j < universe.size() && trunc.order_of(universe[j]) == level; ++j) {
            const Exponent& w = universe[j];
            if (vec_is_zero(w.m)) continue;  // the sum runs over m̄ ≠ 0 only
            Rat c_w(0);
            if (auto li = labels.find(w)) c_w = labels.coeffs[*li];
            Rat u_w = c_w - expu.coeff(w);
            if (u_w != 0) delta.add_term(w, u_w);
        }
        if (!delta.is_zero()) expu = mul(expu, exp_series(delta, n, r));
        i = j;
    }
    return expu;
}

Rat unstable_signed_aut_sum(const Exponent& target, const LeafLabels& labels,
                            const Truncation& window, long leaf_cap) {
    Rat sum(0);
    for (const auto& t : disk_types_unstable(target, labels, window, leaf_cap)) {
        Rat term = leaf_weight_product(t, labels) / Rat(aut_count(t));
        sum += (nonleaf_count(t) % 2 == 0) ? term : -term;
    }
    return sum;
}

Json tree_to_json(const TreeType& t) {
    Json j;
    if (t.is_leaf()) {
        Json label;
        label["m"] = intvec_to_json(t.weight.m);
        label["q"] = intvec_to_json(t.weight.q);
        j["label"] = std::move(label);
        return j;
    }
    Json weight;
    weight["m"] = intvec_to_json(t.weight.m);
    weight["q"] = intvec_to_json(t.weight.q);
    j["weight"] = std::move(weight);
    Json children = Json::array();
    for (const auto& c : t.children) children.push_back(tree_to_json(c));
    j["children"] = std::move(children);
    return j;
}

std::string tree_to_dot(const std::vector<TreeType>& trees) {
    std::string out = "digraph trees {\n  node [shape=box];\n";
    int counter = 0;
    std::function<int(const TreeType&)> emit = [&](const TreeType& t) -> int {
        int id = counter++;
        std::string label = exponent_str(t.weight);
        out += "  n" + std::to_string(id) + " [label=\"" + label + "\"];\n";
        for (const auto& c : t.children) {
            int cid = emit(c);
            out += "  n" + std::to_string(id) + " -> n" + std::to_string(cid) + ";\n";
        }
        return id;
    };
    for (const auto& t : trees) emit(t);
    out += "}\n";
    return out;
}

}  // namespace mirror
