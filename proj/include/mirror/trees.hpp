// trees.hpp
// Rooted trees labelled by slab-monoid exponents: the combinatorial side of
// the slab functions. Stable disk types (pairwise-distinct child weights)
// give the product expansion f = Π (1 + a_m z^m); pointed curve types give
// the normalization coefficients b_q; unstable types with automorphism
// factors give the exponential form. The whole module never touches the
// normalization solver, so comparisons against it are genuine cross-checks.
#pragma once

#include <map>

#include "mirror/slab.hpp"

namespace mirror {

struct TreeType {
    Exponent weight;                 // balancing: sum of the children's weights
    std::vector<TreeType> children;  // empty = leaf (weight must be a label)

    bool is_leaf() const { return children.empty(); }
};

// Deterministic structural encoding; children sorted by their encodings.
// Defines tree-type identity and canonical ordering.
std::string canonical_key(const TreeType& t);

// Non-leaf vertex count, total vertex count, leaf count.
long nonleaf_count(const TreeType& t);
long vertex_count(const TreeType& t);
long leaf_count(const TreeType& t);

// |Aut|: product over nodes of multiset symmetries of isomorphic children.
// Stable trees (distinct child weights everywhere) always give 1.
Int aut_count(const TreeType& t);
bool is_stable(const TreeType& t);

// Leaf labels: the exponents of the slab function with m̄ ≠ 0 together with
// their coefficients (coefficients are 1 for every built-in fixture; the
// general coupled solve can produce other integers).
struct LeafLabels {
    std::vector<Exponent> labels;
    std::vector<Rat> coeffs;

    static LeafLabels from_series(const Series& f);
    std::optional<std::size_t> find(const Exponent& e) const;
};

// All stable disk types with the given root weight (m̄ ≠ 0 required) and at
// most leaf_cap leaves. Dedup by canonical key, sorted by it.
std::vector<TreeType> disk_types(const Exponent& target, const LeafLabels& labels,
                                 const Truncation& window, long leaf_cap);

// Stable pointed curve types: root weight q ∈ Q \ {0}, root has >= 2
// children with pairwise distinct weights, children are disk types.
std::vector<TreeType> curve_types(const IntVec& q, const LeafLabels& labels,
                                  const Truncation& window, long leaf_cap);

// Unstable disk types (distinctness dropped); for small targets/tests only.
std::vector<TreeType> disk_types_unstable(const Exponent& target, const LeafLabels& labels,
                                          const Truncation& window, long leaf_cap);

// a_m = Σ over stable disk types of (-1)^{#nonleaf}, weighted by the leaf
// coefficients. Computed from the explicit enumeration.
Rat a_coefficient(const Exponent& target, const LeafLabels& labels, const Truncation& window,
                  long leaf_cap);

// b_q = Σ over curve types of (-1)^{#nonleaf - 1}. Evaluated through the
// distinct-part product recursion (same signed sum, no enumeration).
Rat b_coefficient(const IntVec& q, const LeafLabels& labels, const Truncation& window);

// Full a_m table over the window by the signed recursion
//   a_w = c_w · [w is a label] - Σ_{>=2 distinct parts of w} Π a_{w_i},
// evaluated as an incremental product over grading levels.
std::map<Exponent, Rat, ExponentLess> a_table(const LeafLabels& labels, const Truncation& window,
                                              int n, int r);

struct ProductExpansion {
    std::vector<std::pair<Exponent, Rat>> factors;  // nonzero a_m, canonical order
    Series expanded;                                // Π (1 + a_m z^m) in the window
    Series reference;                               // the slab function it must equal
    bool matches = false;
};

// Tropical product expansion at a vertex (interior when rank Q > 0).
ProductExpansion product_expansion(const Decomposition& dec, const KaehlerData& kd, int v, int k);
ProductExpansion product_expansion(const Decomposition& dec, const KaehlerData& kd,
                                   const SlabFamily& fam, int v);

// Exponential form: exp of the unstable-tree generating sum with 1/|Aut|
// weights, computed by the level recursion; equals the slab function.
Series exp_form(const Decomposition& dec, const KaehlerData& kd, int v, int k);
Series exp_form(const Decomposition& dec, const KaehlerData& kd, const SlabFamily& fam, int v);

// Signed 1/|Aut| sum over unstable types of one weight (test aid; explicit).
Rat unstable_signed_aut_sum(const Exponent& target, const LeafLabels& labels,
                            const Truncation& window, long leaf_cap);

Json tree_to_json(const TreeType& t);
std::string tree_to_dot(const std::vector<TreeType>& trees);

}  // namespace mirror
