#include "mirror/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mirror/cones.hpp"
#include "mirror/jsonio.hpp"

namespace mirror {

int Decomposition::vertex_index(const IntVec& v) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == v) return static_cast<int>(i);
    return -1;
}

bool Decomposition::cell_has_vertex(int cell, int v) const {
    for (int i : cells[static_cast<std::size_t>(cell)])
        if (i == v) return true;
    return false;
}

Decomposition parse_decomposition(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::malformed_input, std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) fail(Errc::malformed_input, "top level must be an object");
    for (const char* key : {"dim", "vertices", "maximal_cells", "base_cell"})
        if (!j.contains(key)) fail(Errc::malformed_input, std::string("missing field '") + key + "'");

    Decomposition dec;
    Int dim = int_from_json(j["dim"]);
    if (dim < 1 || dim > 16) fail(Errc::malformed_input, "dim out of range");
    dec.dim = static_cast<int>(dim);

    if (!j["vertices"].is_array() || j["vertices"].empty())
        fail(Errc::malformed_input, "vertices must be a non-empty array");
    for (const auto& row : j["vertices"]) {
        IntVec v = intvec_from_json(row);
        if (static_cast<int>(v.size()) != dec.dim)
            fail(Errc::malformed_input, "vertex arity mismatch at " + vec_str(v));
        dec.vertices.push_back(std::move(v));
    }

    if (!j["maximal_cells"].is_array() || j["maximal_cells"].empty())
        fail(Errc::malformed_input, "maximal_cells must be a non-empty array");
    for (const auto& row : j["maximal_cells"]) {
        if (!row.is_array()) fail(Errc::malformed_input, "cell must be an index array");
        std::vector<int> cell;
        for (const auto& x : row) {
            Int idx = int_from_json(x);
            if (idx < 0 || idx >= Int(dec.vertices.size()))
                fail(Errc::malformed_input, "vertex index out of range: " + idx.str());
            cell.push_back(static_cast<int>(idx));
        }
        if (static_cast<int>(cell.size()) != dec.dim + 1)
            fail(Errc::malformed_input, "cell must have dim+1 vertices");
        dec.cells.push_back(std::move(cell));
    }

    Int base = int_from_json(j["base_cell"]);
    if (base < 0 || base >= Int(dec.cells.size()))
        fail(Errc::malformed_input, "base_cell index out of range");
    dec.base_cell = static_cast<int>(base);
    return dec;
}

namespace {

// Edge matrix of a cell from its first vertex; columns are edge vectors.
IntMat edge_matrix(const Decomposition& dec, const std::vector<int>& cell) {
    const std::size_t n = static_cast<std::size_t>(dec.dim);
    IntMat m(n, IntVec(n));
    for (std::size_t j = 0; j + 1 <= n; ++j) {
        IntVec e = vec_sub(dec.vertices[static_cast<std::size_t>(cell[j + 1])],
                           dec.vertices[static_cast<std::size_t>(cell[0])]);
        for (std::size_t i = 0; i < n; ++i) m[i][j] = e[i];
    }
    return m;
}

// Cone over a cell: generators (v,1) in Z^{n+1}.
std::vector<IntVec> homogenized_cell(const Decomposition& dec, const std::vector<int>& cell) {
    std::vector<IntVec> gens;
    for (int idx : cell) {
        IntVec g = dec.vertices[static_cast<std::size_t>(idx)];
        g.push_back(Int(1));
        gens.push_back(std::move(g));
    }
    return gens;
}

// Normal of the hyperplane through the n face vertices and sign of the
// opposite vertex; facet is part of a cell with vertex set `cell`.
// Returns (normal, offset) with normal . x >= offset on the cell side.
std::pair<IntVec, Int> facet_halfspace(const Decomposition& dec, const std::vector<int>& face,
                                       int opposite) {
    const std::size_t n = static_cast<std::size_t>(dec.dim);
    // Find primitive normal orthogonal to the face's direction space.
    IntMat dirs;
    for (std::size_t i = 1; i < face.size(); ++i)
        dirs.push_back(vec_sub(dec.vertices[static_cast<std::size_t>(face[i])],
                               dec.vertices[static_cast<std::size_t>(face[0])]));
    if (dirs.empty()) dirs.push_back(IntVec(n, Int(0)));
    auto ker = nullspace(dirs);
    if (ker.size() != 1) fail(Errc::internal, "degenerate facet");
    IntVec normal = ker[0];
    Int offset = vec_dot(normal, dec.vertices[static_cast<std::size_t>(face[0])]);
    if (vec_dot(normal, dec.vertices[static_cast<std::size_t>(opposite)]) < offset) {
        normal = vec_neg(normal);
        offset = -offset;
    }
    return {normal, offset};
}

std::map<std::vector<int>, std::vector<std::pair<int, int>>> facet_incidence(const Decomposition& dec) {
    // face (sorted indices) -> list of (cell index, opposite vertex index)
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> inc;
    for (std::size_t c = 0; c < dec.cells.size(); ++c) {
        const auto& cell = dec.cells[c];
        for (std::size_t drop = 0; drop < cell.size(); ++drop) {
            std::vector<int> face;
            for (std::size_t i = 0; i < cell.size(); ++i)
                if (i != drop) face.push_back(cell[i]);
            std::sort(face.begin(), face.end());
            inc[face].push_back({static_cast<int>(c), cell[drop]});
        }
    }
    return inc;
}

}  // namespace

std::vector<ValidationIssue> validate(const Decomposition& dec) {
    std::vector<ValidationIssue> issues;
    auto add = [&](Errc code, const std::string& d) { issues.push_back({code, d}); };
    const std::size_t n = static_cast<std::size_t>(dec.dim);

    // Vertex table sanity.
    {
        std::set<IntVec> seen;
        for (const auto& v : dec.vertices) {
            if (!seen.insert(v).second) add(Errc::malformed_input, "duplicate vertex " + vec_str(v));
        }
    }
    for (const auto& cell : dec.cells) {
        std::set<int> s(cell.begin(), cell.end());
        if (s.size() != cell.size()) {
            add(Errc::non_standard_simplex, "cell with repeated vertices");
            return issues;
        }
    }

    if (dec.origin_index() < 0) add(Errc::origin_missing, "0 is not a vertex of the decomposition");
    else {
        bool base_has_origin = false;
        for (int idx : dec.cells[static_cast<std::size_t>(dec.base_cell)])
            if (dec.vertices[static_cast<std::size_t>(idx)] == zero_vec(n)) base_has_origin = true;
        if (!base_has_origin) add(Errc::base_cell_without_origin, "base cell does not contain 0 as a vertex");
    }

    // Unimodularity of every cell.
    for (std::size_t c = 0; c < dec.cells.size(); ++c) {
        Int d = det_bareiss(edge_matrix(dec, dec.cells[c]));
        if (d != 1 && d != -1)
            add(Errc::non_standard_simplex,
                "cell " + std::to_string(c) + " has edge determinant " + d.str());
    }
    if (!issues.empty()) return issues;

    // Facet matching: every codim-1 face in at most two cells; shared faces
    // have the two opposite vertices strictly on opposite sides; unmatched
    // faces must support the whole vertex set (boundary facets).
    auto inc = facet_incidence(dec);
    for (const auto& [face, touching] : inc) {
        if (touching.size() > 2) {
            add(Errc::bad_face_intersection, "facet shared by more than two cells");
            continue;
        }
        auto [normal, offset] = facet_halfspace(dec, face, touching[0].second);
        if (touching.size() == 2) {
            Int side = vec_dot(normal, dec.vertices[static_cast<std::size_t>(touching[1].second)]);
            if (side >= offset)
                add(Errc::bad_face_intersection,
                    "cells " + std::to_string(touching[0].first) + "," + std::to_string(touching[1].first) +
                        " lie on the same side of a shared facet");
        } else {
            for (const auto& v : dec.vertices) {
                if (vec_dot(normal, v) < offset) {
                    add(Errc::not_covering, "boundary facet of cell " + std::to_string(touching[0].first) +
                                                " does not support the vertex set");
                    break;
                }
            }
        }
    }
    if (!issues.empty()) return issues;

    // Pairwise intersections are common faces: the homogenized cones must
    // meet exactly in the cone over the shared vertex set.
    for (std::size_t a = 0; a < dec.cells.size(); ++a) {
        for (std::size_t b = a + 1; b < dec.cells.size(); ++b) {
            std::vector<int> shared;
            for (int i : dec.cells[a])
                if (dec.cell_has_vertex(static_cast<int>(b), i)) shared.push_back(i);
            if (shared.size() == n + 1) {
                add(Errc::bad_face_intersection, "duplicate maximal cell");
                continue;
            }
            auto ga = homogenized_cell(dec, dec.cells[a]);
            auto gb = homogenized_cell(dec, dec.cells[b]);
            int d = intersection_dim(ga, gb, dec.dim + 1);
            if (d != static_cast<int>(shared.size()))
                add(Errc::bad_face_intersection,
                    "cells " + std::to_string(a) + "," + std::to_string(b) + " do not meet in a common face");
        }
    }
    if (!issues.empty()) return issues;

    // Every vertex geometrically inside a cell must be one of its vertices
    // (lattice points of standard simplices are vertices).
    for (std::size_t vi = 0; vi < dec.vertices.size(); ++vi) {
        bool in_some_cell = false;
        for (std::size_t c = 0; c < dec.cells.size(); ++c) {
            auto gens = homogenized_cell(dec, dec.cells[c]);
            IntVec x = dec.vertices[vi];
            x.push_back(Int(1));
            if (simplicial_cone_contains(gens, x)) {
                in_some_cell = true;
                if (!dec.cell_has_vertex(static_cast<int>(c), static_cast<int>(vi)))
                    add(Errc::not_covering, "vertex " + vec_str(dec.vertices[vi]) +
                                                " lies in cell " + std::to_string(c) +
                                                " without being one of its vertices");
            }
        }
        if (!in_some_cell)
            add(Errc::not_covering, "vertex " + vec_str(dec.vertices[vi]) + " lies in no cell");
    }
    return issues;
}

void require_valid(const Decomposition& dec) {
    auto issues = validate(dec);
    if (!issues.empty()) fail(issues[0].code, issues[0].detail);
}

std::vector<IntVec> lattice_points(const Decomposition& dec) {
    std::vector<IntVec> pts = dec.vertices;
    std::sort(pts.begin(), pts.end(), lex_less);
    return pts;
}

std::vector<Wall> interior_walls(const Decomposition& dec) {
    std::vector<Wall> walls;
    auto inc = facet_incidence(dec);
    for (const auto& [face, touching] : inc) {
        if (touching.size() != 2) continue;
        Wall w;
        w.face = face;
        w.cell_a = touching[0].first;
        w.opp_a = touching[0].second;
        w.cell_b = touching[1].first;
        w.opp_b = touching[1].second;
        // Solve opp_a + opp_b = sum c_i u_i with sum c_i = 2.
        const std::size_t n = static_cast<std::size_t>(dec.dim);
        IntMat a(n + 1, IntVec(face.size()));
        IntVec rhs(n + 1);
        for (std::size_t j = 0; j < face.size(); ++j) {
            const auto& u = dec.vertices[static_cast<std::size_t>(face[j])];
            for (std::size_t i = 0; i < n; ++i) a[i][j] = u[i];
            a[n][j] = 1;
        }
        IntVec target = vec_add(dec.vertices[static_cast<std::size_t>(w.opp_a)],
                                dec.vertices[static_cast<std::size_t>(w.opp_b)]);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = target[i];
        rhs[n] = 2;
        auto sol = solve_unique(a, rhs);
        if (!sol) fail(Errc::internal, "wall affine relation unsolvable");
        w.relation.resize(face.size());
        for (std::size_t j = 0; j < face.size(); ++j) {
            require(rat_is_integer((*sol)[j]), Errc::internal, "wall relation not integral");
            w.relation[j] = boost::multiprecision::numerator((*sol)[j]);
        }
        walls.push_back(std::move(w));
    }
    std::sort(walls.begin(), walls.end(), [](const Wall& x, const Wall& y) { return x.face < y.face; });
    return walls;
}

VertexFan fan_structure(const Decomposition& dec, int v) {
    require(v >= 0 && v < static_cast<int>(dec.vertices.size()), Errc::malformed_input,
            "vertex index out of range");
    const std::size_t n = static_cast<std::size_t>(dec.dim);
    VertexFan fan;
    fan.vertex = v;
    const IntVec& vv = dec.vertices[static_cast<std::size_t>(v)];

    IntVec down = vec_neg(vv);
    down.push_back(Int(-1));
    IntVec up = zero_vec(n);
    up.push_back(Int(1));

    auto tangent_edges = [&](const std::vector<int>& cell) {
        std::vector<IntVec> edges;
        for (int idx : cell) {
            if (idx == v) continue;
            IntVec e = vec_sub(dec.vertices[static_cast<std::size_t>(idx)], vv);
            e.push_back(Int(0));
            edges.push_back(primitive(e));
        }
        std::sort(edges.begin(), edges.end(), lex_less);
        return edges;
    };

    for (const IntVec& extra : {down, up}) {
        for (const auto& cell : dec.cells) {
            bool has = false;
            for (int idx : cell) has = has || (idx == v);
            if (!has) continue;
            auto cone = tangent_edges(cell);
            cone.push_back(extra);
            fan.cones.push_back(std::move(cone));
        }
    }
    return fan;
}

bool adjacent_vertices(const Decomposition& dec, int v, int w) {
    if (v == w) return false;
    for (std::size_t c = 0; c < dec.cells.size(); ++c)
        if (dec.cell_has_vertex(static_cast<int>(c), v) && dec.cell_has_vertex(static_cast<int>(c), w))
            return true;
    return false;
}

IntMat monodromy_lambda(const Decomposition& dec, int v, int v_prime) {
    require(adjacent_vertices(dec, v, v_prime), Errc::not_adjacent,
            "vertices share no maximal cell");
    const std::size_t n = static_cast<std::size_t>(dec.dim);
    IntVec diff = vec_sub(dec.vertices[static_cast<std::size_t>(v)],
                          dec.vertices[static_cast<std::size_t>(v_prime)]);
    IntMat m = identity_mat(n + 1);
    for (std::size_t i = 0; i < n; ++i) m[i][n] = diff[i];
    return m;
}

std::vector<int> interior_vertex_indices(const Decomposition& dec) {
    std::set<int> boundary;
    auto inc = facet_incidence(dec);
    for (const auto& [face, touching] : inc) {
        if (touching.size() == 1)
            for (int i : face) boundary.insert(i);
    }
    std::vector<int> interior;
    for (std::size_t i = 0; i < dec.vertices.size(); ++i)
        if (!boundary.count(static_cast<int>(i))) interior.push_back(static_cast<int>(i));
    std::sort(interior.begin(), interior.end(), [&](int a, int b) {
        return lex_less(dec.vertices[static_cast<std::size_t>(a)], dec.vertices[static_cast<std::size_t>(b)]);
    });
    return interior;
}

Int diameter_inf(const Decomposition& dec) {
    Int d = 0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(dec.dim); ++i) {
        Int lo = dec.vertices[0][i], hi = dec.vertices[0][i];
        for (const auto& v : dec.vertices) {
            if (v[i] < lo) lo = v[i];
            if (v[i] > hi) hi = v[i];
        }
        if (hi - lo > d) d = hi - lo;
    }
    return d;
}

bool sigma_contains(const Decomposition& dec, const RatVec& point) {
    // Clear denominators: x in σ iff (d x, d) in some homogenized cell cone.
    Int l = 1;
    for (const auto& x : point) {
        Int d = boost::multiprecision::denominator(x);
        l = l / int_gcd(l, d) * d;
    }
    IntVec num(point.size() + 1);
    for (std::size_t i = 0; i < point.size(); ++i)
        num[i] = boost::multiprecision::numerator(point[i]) * (l / boost::multiprecision::denominator(point[i]));
    num[point.size()] = l;
    for (const auto& cell : dec.cells) {
        std::vector<IntVec> gens;
        for (int idx : cell) {
            IntVec g = dec.vertices[static_cast<std::size_t>(idx)];
            g.push_back(Int(1));
            gens.push_back(std::move(g));
        }
        if (simplicial_cone_contains(gens, num)) return true;
    }
    return false;
}

std::vector<std::vector<RatVec>> discriminant_cells(const Decomposition& dec) {
    // Chains of faces of each maximal cell with dim >= 1 give barycentric
    // cells avoiding the vertices; emit the maximal chains (dims 1..n).
    std::vector<std::vector<RatVec>> cells_out;
    const std::size_t n = static_cast<std::size_t>(dec.dim);
    for (const auto& cell : dec.cells) {
        // A maximal chain of non-vertex faces is given by vertex-orderings
        // through their prefixes of size 2..n+1 (cells are tiny simplices).
        std::vector<int> perm = cell;
        std::sort(perm.begin(), perm.end());
        do {
            std::vector<RatVec> barys;
            for (std::size_t len = 2; len <= n + 1; ++len) {
                RatVec b(n, Rat(0));
                for (std::size_t t = 0; t < len; ++t)
                    for (std::size_t i = 0; i < n; ++i)
                        b[i] += Rat(dec.vertices[static_cast<std::size_t>(perm[t])][i], Int(len));
                barys.push_back(std::move(b));
            }
            cells_out.push_back(std::move(barys));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    std::sort(cells_out.begin(), cells_out.end());
    cells_out.erase(std::unique(cells_out.begin(), cells_out.end()), cells_out.end());
    return cells_out;
}

}  // namespace mirror
