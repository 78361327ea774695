// polytope.hpp
// Lattice polytope decompositions into standard simplices: parsing,
// validation, lattice points, interior walls, vertex fan structures and the
// monodromy transformations of the associated affine structure.
//
// All values are immutable after construction and every operation is a pure
// function, so concurrent use from multiple threads is safe.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mirror/error.hpp"
#include "mirror/linalg.hpp"
#include "mirror/numeric.hpp"

namespace mirror {

struct Decomposition {
    int dim = 0;
    std::vector<IntVec> vertices;          // vertex table; includes every lattice point of σ
    std::vector<std::vector<int>> cells;   // maximal cells, n+1 vertex indices each
    int base_cell = 0;

    int vertex_index(const IntVec& v) const;   // -1 when absent
    int origin_index() const { return vertex_index(zero_vec(static_cast<std::size_t>(dim))); }
    bool cell_has_vertex(int cell, int v) const;
};

// Parse the JSON input document. Schema:
//   {"dim": int, "vertices": [[int...],...], "maximal_cells": [[int...],...],
//    "base_cell": int}
// Integers may exceed 64 bits, in which case they are decimal strings.
// Throws MALFORMED_INPUT on schema violations; geometric validity is the
// job of validate().
Decomposition parse_decomposition(const std::string& text);

struct ValidationIssue {
    Errc code;
    std::string detail;
};

// Full validity check; empty result means the decomposition is a standard-
// simplex decomposition of σ = Conv(vertices) with the required base cell.
std::vector<ValidationIssue> validate(const Decomposition& dec);

// Throws the first validation issue, if any.
void require_valid(const Decomposition& dec);

// All lattice points of σ (equivalently, the vertex table), lex-sorted.
std::vector<IntVec> lattice_points(const Decomposition& dec);

struct Wall {
    std::vector<int> face;      // n vertex indices of the codim-1 cell, sorted
    int cell_a = -1, cell_b = -1;
    int opp_a = -1, opp_b = -1; // opposite vertices in cell_a / cell_b
    IntVec relation;            // c_i with opp_b = sum c_i * face_i - opp_a, sum c_i = 2
};

// Interior codimension-one cells with their two incident maximal cells,
// opposite vertices, and the integral affine relation across the wall.
std::vector<Wall> interior_walls(const Decomposition& dec);

struct VertexFan {
    int vertex = -1;
    // Maximal cones in Z^n ⊕ Z; each cone lists its primitive generators,
    // the n tangent-edge generators first, the extra downward/upward ray last.
    std::vector<std::vector<IntVec>> cones;
};

// Fan of tangent wedges at a vertex: for every maximal cell through v one
// cone extended by the ray through (-v,-1) and one extended by (0,1).
VertexFan fan_structure(const Decomposition& dec, int v);

// True when v and w are both vertices of a common maximal cell.
bool adjacent_vertices(const Decomposition& dec, int v, int w);

// Holonomy of the local system Λ ≅ Z^n ⊕ Z around the singular locus between
// adjacent vertices: (m, r) -> (m + r (v - v'), r). Integer (n+1)x(n+1) matrix.
IntMat monodromy_lambda(const Decomposition& dec, int v, int v_prime);

// Vertex indices lying in the interior of σ (on no boundary facet).
std::vector<int> interior_vertex_indices(const Decomposition& dec);

// Max coordinate spread of σ (∞-norm diameter).
Int diameter_inf(const Decomposition& dec);

// Is m inside σ (as a rational membership test over all cells)?
bool sigma_contains(const Decomposition& dec, const RatVec& point);

// Descriptive model of the discriminant locus: for each maximal cell, the
// maximal cells of its first barycentric subdivision avoiding the vertices.
// Returned as lists of rational barycenter chains.
std::vector<std::vector<RatVec>> discriminant_cells(const Decomposition& dec);

}  // namespace mirror
