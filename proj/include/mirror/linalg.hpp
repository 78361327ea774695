// linalg.hpp
// Small dense exact linear algebra over cpp_int / cpp_rational.
// Sizes are tiny (ambient dims and rank stay in single digits), so the
// implementations favour clarity: Bareiss determinants, rational Gauss
// elimination, gcd-of-minors saturation tests.
#pragma once

#include <optional>
#include <vector>

#include "mirror/numeric.hpp"

namespace mirror {

using IntMat = std::vector<IntVec>;
using RatMat = std::vector<RatVec>;

// Fraction-free (Bareiss) determinant of a square integer matrix.
Int det_bareiss(IntMat m);

int rank_of(const IntMat& m);

// Solve A x = b over the rationals. A is (rows x cols); returns a solution
// iff the system is consistent and has a unique solution.
std::optional<RatVec> solve_unique(const IntMat& a, const IntVec& b);

// Rational nullspace basis of A (vectors x with A x = 0), scaled to primitive
// integer vectors.
std::vector<IntVec> nullspace(const IntMat& a);

// Inverse of a square nonsingular integer matrix, as a rational matrix.
RatMat inverse(const IntMat& m);

// gcd of all s x s minors of an s x d matrix (s <= d); 1 means the rows span
// a saturated (direct-summand) sublattice of Z^d.
Int minors_gcd(const IntMat& m);

// Matrix-vector and matrix-matrix products.
IntVec mat_apply(const IntMat& m, const IntVec& v);
IntMat mat_mul(const IntMat& a, const IntMat& b);
IntMat identity_mat(std::size_t n);
bool is_identity(const IntMat& m);

// Outcome of an exact linear solve used by the slab condition system.
struct LinearSolve {
    bool consistent = false;
    bool unique = false;
    RatVec solution;  // valid when consistent && unique
};

// Solve A x = b (rational entries) by Gauss elimination, reporting
// consistency and uniqueness exactly.
LinearSolve solve_exact(RatMat a, RatVec b);

}  // namespace mirror
