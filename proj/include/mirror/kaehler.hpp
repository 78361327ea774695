// kaehler.hpp
// The monoid P of integral convex piecewise linear functions on the fan over
// the decomposition, vanishing on the base cell, together with its dual
// Q ≅ N^r, the universal function values psibar(v), the local representatives
// phi_v and membership in the vertex monoids.
//
// Supported scope is P ≅ N^r (unimodularly simplicial cone of functions);
// anything else raises CONE_NOT_SMOOTH. Rank 0 (no walls) is fine.
#pragma once

#include <optional>
#include <vector>

#include "mirror/polytope.hpp"

namespace mirror {

struct BendingFunctional {
    Wall wall;
    // Sparse integer coefficients over vertex indices; evaluating on a value
    // assignment phi gives phi(b) + phi(a) - sum c_i phi(u_i), which is >= 0
    // exactly when phi is convex across the wall.
    std::vector<std::pair<int, Int>> coeffs;

    IntVec apply_values(const std::vector<IntVec>& values_per_vertex, std::size_t r) const;
    Int apply_scalar(const IntVec& values_per_vertex) const;
};

BendingFunctional bending_functional(const Decomposition& dec, const Wall& wall);

struct KaehlerData {
    int rank = 0;
    // generators[g][v] = value of the g-th generator function at vertex v.
    std::vector<IntVec> generators;
    // psibar[v] = (g_1(v),...,g_r(v)) in N^r.
    std::vector<IntVec> psibar;
    std::vector<Wall> walls;
    // bending_images[w] = wall functional evaluated on the generators (in N^r).
    std::vector<IntVec> bending_images;
    bool strictly_convex = false;

    IntVec psibar_at(int v) const { return psibar[static_cast<std::size_t>(v)]; }
    Int psibar_degree(int v) const { return vec_sum(psibar[static_cast<std::size_t>(v)]); }
};

// Compute P and Q by double description in the coordinates of the vertices
// outside the base cell. Requires a valid decomposition.
KaehlerData kaehler_data(const Decomposition& dec);

struct ConvexityReport {
    bool convex = true;
    bool strictly_convex = true;
    std::vector<IntVec> bending_images;
};

// Strict convexity of the computed universal function, or of a user-supplied
// assignment of N^r values at the vertices. A supplied assignment with a
// negative bending image raises OVERRIDE_NOT_CONVEX.
ConvexityReport check_strict_convexity(const Decomposition& dec, const KaehlerData& kd);
ConvexityReport check_strict_convexity(const Decomposition& dec, const KaehlerData& kd,
                                       const std::vector<IntVec>& override_psibar);

// Value of the local representative phi_v at a lattice vector m in the
// tangent wedge of σ at v (exhaustive cone location over cells through v).
// Throws OUTSIDE_TANGENT_WEDGE otherwise.
IntVec phi_value(const Decomposition& dec, const KaehlerData& kd, int v, const IntVec& m);

// Membership (m, q) ∈ P̄_v: m in the tangent wedge and q - phi_v(m) in N^r.
bool in_vertex_monoid(const Decomposition& dec, const KaehlerData& kd, int v, const IntVec& m,
                      const IntVec& q);

// P-level monodromy (m, r, q) -> (m + r(v-v'), r, q + r(psibar(v)-psibar(v')))
// as an (n+1+rank) square integer matrix.
IntMat monodromy_p(const Decomposition& dec, const KaehlerData& kd, int v, int v_prime);

}  // namespace mirror
