// cones.hpp
// Exact polyhedral cone computations: extreme rays of pointed cones given by
// inequalities, dual-cone interior points (used to build series truncation
// gradings), smoothness tests for lattice-point monoids, and dimension of
// pairwise cone intersections.
#pragma once

#include <optional>
#include <vector>

#include "mirror/linalg.hpp"
#include "mirror/numeric.hpp"

namespace mirror {

// Extreme rays of C = {x in R^d : A x >= 0} where A has full column rank d
// (C is then pointed). Rays are primitive integer vectors, lex-sorted.
//
// The enumeration follows the classical algebraic description of extreme
// rays (see e.g. Fukuda & Prodon, "Double description method revisited"):
// every extreme ray of a pointed cone is the 1-dimensional solution set of
// d-1 linearly independent active constraints. Constraint counts here are
// single digits, so scanning all (d-1)-subsets is the simplest exact route.
std::vector<IntVec> extreme_rays(const IntMat& a, int dim);

// Monoid smoothness: lattice points of cone(rays) form a free monoid N^s iff
// the rays are linearly independent and span a saturated sublattice.
bool rays_span_free_monoid(const std::vector<IntVec>& rays, int dim);

// A y with y . g >= 1 for every generator g (an integer point interior to the
// dual cone), or nullopt when cone(gens) is not salient. Zero generators are
// rejected. The point is found as the sum of the dual cone's extreme rays.
std::optional<IntVec> dual_interior_point(const std::vector<IntVec>& gens, int dim);

// Dimension of cone(gens_a) ∩ cone(gens_b), where each generator list spans a
// full-dimensional simplicial cone (dim generators, nonzero determinant).
int intersection_dim(const std::vector<IntVec>& gens_a, const std::vector<IntVec>& gens_b, int dim);

// Membership x ∈ cone(gens) for a simplicial full-dimensional cone.
bool simplicial_cone_contains(const std::vector<IntVec>& gens, const IntVec& x);

}  // namespace mirror
