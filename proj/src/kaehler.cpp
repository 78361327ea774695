#include "mirror/kaehler.hpp"

#include <algorithm>

#include "mirror/cones.hpp"

namespace mirror {

IntVec BendingFunctional::apply_values(const std::vector<IntVec>& values, std::size_t r) const {
    IntVec out(r, Int(0));
    for (const auto& [v, c] : coeffs) out = vec_add(out, vec_scale(c, values[static_cast<std::size_t>(v)]));
    return out;
}

Int BendingFunctional::apply_scalar(const IntVec& values) const {
    Int out = 0;
    for (const auto& [v, c] : coeffs) out += c * values[static_cast<std::size_t>(v)];
    return out;
}

BendingFunctional bending_functional(const Decomposition& dec, const Wall& wall) {
    (void)dec;
    BendingFunctional f;
    f.wall = wall;
    std::map<int, Int> acc;
    acc[wall.opp_a] += 1;
    acc[wall.opp_b] += 1;
    for (std::size_t j = 0; j < wall.face.size(); ++j) acc[wall.face[j]] -= wall.relation[j];
    for (const auto& [v, c] : acc)
        if (c != 0) f.coeffs.push_back({v, c});
    return f;
}

namespace {

IntVec values_from_free(const Decomposition& dec, const std::vector<int>& free_idx, const IntVec& x) {
    IntVec values(dec.vertices.size(), Int(0));
    for (std::size_t j = 0; j < free_idx.size(); ++j)
        values[static_cast<std::size_t>(free_idx[j])] = x[j];
    return values;
}

}  // namespace

KaehlerData kaehler_data(const Decomposition& dec) {
    KaehlerData kd;
    kd.walls = interior_walls(dec);

    std::vector<bool> in_base(dec.vertices.size(), false);
    for (int idx : dec.cells[static_cast<std::size_t>(dec.base_cell)])
        in_base[static_cast<std::size_t>(idx)] = true;
    std::vector<int> free_idx;
    for (std::size_t i = 0; i < dec.vertices.size(); ++i)
        if (!in_base[i]) free_idx.push_back(static_cast<int>(i));

    const int d = static_cast<int>(free_idx.size());
    if (d == 0 || kd.walls.empty()) {
        require(d == 0 && kd.walls.empty(), Errc::cone_not_smooth,
                "free vertices without walls (or walls without free vertices)");
        kd.rank = 0;
        kd.psibar.assign(dec.vertices.size(), IntVec{});
        kd.strictly_convex = true;  // nothing to bend
        return kd;
    }

    // Constraint rows: bending functionals restricted to the free coordinates.
    IntMat rows;
    std::vector<BendingFunctional> functionals;
    for (const auto& w : kd.walls) functionals.push_back(bending_functional(dec, w));
    for (const auto& f : functionals) {
        IntVec row(static_cast<std::size_t>(d), Int(0));
        for (const auto& [v, c] : f.coeffs) {
            auto it = std::find(free_idx.begin(), free_idx.end(), v);
            if (it != free_idx.end()) row[static_cast<std::size_t>(it - free_idx.begin())] += c;
        }
        rows.push_back(std::move(row));
    }
    // A function with zero bending everywhere is globally affine, and affine
    // plus zero on the base cell forces zero; so the cone is pointed and the
    // constraint matrix must have full column rank.
    require(rank_of(rows) == d, Errc::cone_not_smooth,
            "bending constraints are degenerate in the free coordinates");

    auto rays = extreme_rays(rows, d);
    require(rays_span_free_monoid(rays, d), Errc::cone_not_smooth,
            "the cone of convex functions is not unimodularly simplicial (" +
                std::to_string(rays.size()) + " extreme rays in dimension " + std::to_string(d) + ")");

    // Canonical generator order: by first supported vertex, then lex.
    std::sort(rays.begin(), rays.end(), [&](const IntVec& a, const IntVec& b) {
        std::size_t fa = 0, fb = 0;
        while (fa < a.size() && a[fa] == 0) ++fa;
        while (fb < b.size() && b[fb] == 0) ++fb;
        if (fa != fb) return fa < fb;
        return lex_less(a, b);
    });

    kd.rank = static_cast<int>(rays.size());
    for (const auto& ray : rays) {
        IntVec values = values_from_free(dec, free_idx, ray);
        require(vec_nonneg(values), Errc::internal, "generator with negative value");
        kd.generators.push_back(std::move(values));
    }
    kd.psibar.resize(dec.vertices.size());
    for (std::size_t v = 0; v < dec.vertices.size(); ++v) {
        IntVec pv(static_cast<std::size_t>(kd.rank));
        for (std::size_t g = 0; g < kd.generators.size(); ++g) pv[g] = kd.generators[g][v];
        kd.psibar[v] = std::move(pv);
    }
    for (const auto& f : functionals) {
        IntVec img(static_cast<std::size_t>(kd.rank));
        for (std::size_t g = 0; g < kd.generators.size(); ++g) img[g] = f.apply_scalar(kd.generators[g]);
        require(vec_nonneg(img), Errc::internal, "generator bending image not in N^r");
        kd.bending_images.push_back(std::move(img));
    }
    kd.strictly_convex = true;
    for (const auto& img : kd.bending_images)
        if (vec_is_zero(img)) kd.strictly_convex = false;
    return kd;
}

ConvexityReport check_strict_convexity(const Decomposition& dec, const KaehlerData& kd) {
    ConvexityReport rep;
    rep.bending_images = kd.bending_images;
    rep.convex = true;
    rep.strictly_convex = kd.strictly_convex;
    (void)dec;
    return rep;
}

ConvexityReport check_strict_convexity(const Decomposition& dec, const KaehlerData& kd,
                                       const std::vector<IntVec>& override_psibar) {
    require(override_psibar.size() == dec.vertices.size(), Errc::malformed_input,
            "override must assign a value vector to every vertex");
    const std::size_t r = static_cast<std::size_t>(kd.rank);
    for (const auto& v : override_psibar)
        require(v.size() == r && vec_nonneg(v), Errc::malformed_input,
                "override values must lie in N^r");
    ConvexityReport rep;
    rep.strictly_convex = true;
    for (const auto& w : kd.walls) {
        auto f = bending_functional(dec, w);
        IntVec img = f.apply_values(override_psibar, r);
        for (const auto& x : img)
            require(x >= 0, Errc::override_not_convex,
                    "override bends negatively across wall at " + vec_str(img));
        if (vec_is_zero(img)) rep.strictly_convex = false;
        rep.bending_images.push_back(std::move(img));
    }
    return rep;
}

namespace {

// Locate m in the tangent cone of some cell through v; returns the integral
// barycentric coordinates with respect to that cell's edge basis.
std::optional<std::pair<int, IntVec>> locate_in_wedge(const Decomposition& dec, int v, const IntVec& m) {
    for (std::size_t c = 0; c < dec.cells.size(); ++c) {
        if (!dec.cell_has_vertex(static_cast<int>(c), v)) continue;
        const auto& cell = dec.cells[c];
        const std::size_t n = static_cast<std::size_t>(dec.dim);
        IntMat cols(n, IntVec(n));
        std::vector<int> others;
        for (int idx : cell)
            if (idx != v) others.push_back(idx);
        for (std::size_t j = 0; j < n; ++j) {
            IntVec e = vec_sub(dec.vertices[static_cast<std::size_t>(others[j])],
                               dec.vertices[static_cast<std::size_t>(v)]);
            for (std::size_t i = 0; i < n; ++i) cols[i][j] = e[i];
        }
        auto sol = solve_unique(cols, m);
        if (!sol) continue;
        bool ok = true;
        IntVec lambda(n);
        for (std::size_t j = 0; j < n; ++j) {
            // Unimodular edge basis: coordinates of integer vectors are integers.
            require(rat_is_integer((*sol)[j]), Errc::internal, "non-integral wedge coordinates");
            lambda[j] = boost::multiprecision::numerator((*sol)[j]);
            if (lambda[j] < 0) ok = false;
        }
        if (ok) return std::make_pair(static_cast<int>(c), lambda);
    }
    return std::nullopt;
}

}  // namespace

IntVec phi_value(const Decomposition& dec, const KaehlerData& kd, int v, const IntVec& m) {
    auto loc = locate_in_wedge(dec, v, m);
    require(loc.has_value(), Errc::outside_tangent_wedge,
            vec_str(m) + " is outside the tangent wedge at vertex " + std::to_string(v));
    const auto& cell = dec.cells[static_cast<std::size_t>(loc->first)];
    std::vector<int> others;
    for (int idx : cell)
        if (idx != v) others.push_back(idx);
    IntVec value(static_cast<std::size_t>(kd.rank), Int(0));
    for (std::size_t j = 0; j < others.size(); ++j) {
        IntVec diff = vec_sub(kd.psibar_at(others[j]), kd.psibar_at(v));
        value = vec_add(value, vec_scale(loc->second[j], diff));
    }
    return value;
}

bool in_vertex_monoid(const Decomposition& dec, const KaehlerData& kd, int v, const IntVec& m,
                      const IntVec& q) {
    auto loc = locate_in_wedge(dec, v, m);
    if (!loc) return false;
    IntVec phi = phi_value(dec, kd, v, m);
    return vec_nonneg(vec_sub(q, phi));
}

IntMat monodromy_p(const Decomposition& dec, const KaehlerData& kd, int v, int v_prime) {
    require(adjacent_vertices(dec, v, v_prime), Errc::not_adjacent, "vertices share no maximal cell");
    const std::size_t n = static_cast<std::size_t>(dec.dim);
    const std::size_t r = static_cast<std::size_t>(kd.rank);
    IntVec dv = vec_sub(dec.vertices[static_cast<std::size_t>(v)],
                        dec.vertices[static_cast<std::size_t>(v_prime)]);
    IntVec dpsi = vec_sub(kd.psibar_at(v), kd.psibar_at(v_prime));
    IntMat m = identity_mat(n + 1 + r);
    for (std::size_t i = 0; i < n; ++i) m[i][n] = dv[i];
    for (std::size_t i = 0; i < r; ++i) m[n + 1 + i][n] = dpsi[i];
    return m;
}

}  // namespace mirror
