// slab.hpp
// Slab functions: the naive sum over lattice points, the normalization
// solve, the four determining conditions, the mirror-degeneration equation
// with its theta generators, and broken-line lifts.
#pragma once

#include <optional>

#include "mirror/series.hpp"

namespace mirror {

// Σ_{m ∈ σ∩M} z^{(m-v, ψ̄(m)-ψ̄(v))}; constant term 1 from m = v.
Series naive_slab(const Decomposition& dec, const KaehlerData& kd, int v, const Truncation& trunc);
Series naive_slab(const Decomposition& dec, const KaehlerData& kd, int v, int k);

struct SlabFunction {
    int vertex = -1;
    int order = 0;
    Series f;  // full slab series at the vertex
    Series g;  // pure-Q correction (Σ b_q z^q), i.e. pure_q_part(f) - 1
};

// Single-vertex normalization: f = naive + g with g a pure-Q series,
// iterated until log f has no pure-Q terms up to order k. This is the global
// slab function whenever σ has at most one interior lattice point (all
// built-in fixtures); the coupled family solve below handles the rest.
SlabFunction normalize_at(const Decomposition& dec, const KaehlerData& kd, int v, int k);

// The slab family {f_v}: one series per vertex, satisfying
//   1. constant term 1 at every vertex,
//   2. f_{v'} = z^{(v-v',0,ψ̄(v)-ψ̄(v'))} f_v for adjacent v, v',
//   3. log f_v has no z^q terms (q in Q \ {0}) up to order k, at every vertex,
//   4. one function per vertex (slab-independence).
// Solved as a per-round exact linear system over all correction candidates
// (finitely many: membership in every vertex monoid bounds them).
struct SlabFamily {
    int canonical_vertex = -1;
    int order = 0;
    Truncation trunc;              // window at the canonical vertex
    std::vector<Series> members;   // one per vertex index
    std::vector<Exponent> corrections;  // solved correction exponents (canonical frame)

    const Series& at(int v) const { return members[static_cast<std::size_t>(v)]; }
};

SlabFamily slab_family(const Decomposition& dec, const KaehlerData& kd, int k);

// Family member at one vertex, packaged like normalize_at's result.
SlabFunction slab_function(const Decomposition& dec, const KaehlerData& kd, int v, int k);

// Vertex the family is anchored at: lex-smallest interior lattice point when
// one exists, else the lex-smallest vertex.
int canonical_vertex(const Decomposition& dec, const KaehlerData& kd);

struct ConditionEntry {
    int condition = 0;      // 1..4, or 0 for support/membership checks
    int vertex = -1;
    int vertex_other = -1;  // condition 2 pairs
    bool pass = false;
    std::string detail;
};

struct ConditionReport {
    bool all_pass = true;
    std::vector<ConditionEntry> entries;
};

ConditionReport verify_conditions(const Decomposition& dec, const KaehlerData& kd, int k);
// Same checks against an externally supplied family (negative controls).
ConditionReport verify_family(const Decomposition& dec, const KaehlerData& kd,
                              const SlabFamily& family);

// Membership (m, q, d) ∈ C(Ξ_ψ̄): d > 0 with m ∈ d·σ and q - d·ψ̄(m/d) ≥ 0,
// or d = 0 with m = 0 and q ∈ N^r. Exact rational arithmetic throughout.
bool cone_contains(const Decomposition& dec, const KaehlerData& kd, const IntVec& m, const IntVec& q,
                   const Int& d);

struct ThetaGenerator {
    std::string name;
    IntVec m;       // lattice point of σ (empty for U, W)
    IntVec q;       // psibar(m)
    bool apex = false;
};

struct MirrorEquation {
    IntVec q_choice;
    std::vector<ThetaGenerator> generators;  // thetas then U, W
    // Homogenized slab series F: degree-1 exponents (m | q) with coefficients.
    std::vector<std::pair<Exponent, Rat>> homogeneous_f;
    std::string equation_homogeneous;  // "U*W = z^q * V0 * F"
    std::string equation_dehomogenized;
    // Ξ_ψ̄ description: vertex list (m, ψ̄(m)) and the recession generators of Q.
    std::vector<std::pair<IntVec, IntVec>> xi_vertices;
};

MirrorEquation mirror_equation(const Decomposition& dec, const KaehlerData& kd, int k,
                               const std::optional<IntVec>& q_choice = std::nullopt);

struct BrokenLineSegment {
    IntVec direction;  // in M ⊕ Z (travel direction, = -m̄ of the monomial)
    Exponent monomial;
    Rat coeff;
};

struct BrokenLine {
    int base_vertex = -1;
    std::vector<BrokenLineSegment> segments;
    bool bends = false;
    Exponent final_exponent;
    Rat final_coeff;
};

struct LiftResult {
    int base_vertex = -1;
    Exponent initial;
    std::vector<BrokenLine> lines;
    Series lift;  // sum of final monomials = z^initial · f_v
};

// Broken lines entering vertically from below (initial m̄ = (0,-1)) and
// crossing the slab once near v_base; one line per slab-function term.
LiftResult enumerate_broken_lines(const Decomposition& dec, const KaehlerData& kd, int v_base,
                                  const Exponent& initial, int k);

struct LiftInvarianceEntry {
    int v = -1, v_prime = -1;
    bool pass = false;
};

struct LiftInvarianceReport {
    bool all_pass = true;
    std::vector<LiftInvarianceEntry> entries;
};

// For every adjacent pair, the monodromy transport of the lift at v must
// equal the lift at v'.
LiftInvarianceReport lift_invariance(const Decomposition& dec, const KaehlerData& kd,
                                     const Exponent& initial, int k);
LiftInvarianceReport lift_invariance_family(const Decomposition& dec, const KaehlerData& kd,
                                            const Exponent& initial, const SlabFamily& family);

}  // namespace mirror
