#include "mirror/cones.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "mirror/error.hpp"

namespace mirror {

namespace {

bool all_nonneg(const IntMat& a, const IntVec& x) {
    for (const auto& row : a)
        if (vec_dot(row, x) < 0) return false;
    return true;
}

}  // namespace

std::vector<IntVec> extreme_rays(const IntMat& a_in, int dim) {
    if (dim == 0) return {};
    // Deduplicate parallel rows (same half-space).
    IntMat a;
    {
        std::set<IntVec> seen;
        for (const auto& row : a_in) {
            IntVec p = primitive(row);
            if (vec_is_zero(p)) continue;
            if (seen.insert(p).second) a.push_back(p);
        }
    }
    if (rank_of(a) != dim) fail(Errc::internal, "extreme_rays: constraint matrix not full column rank");
    const std::size_t d = static_cast<std::size_t>(dim);

    // Greedy linearly independent starting basis.
    std::vector<std::size_t> basis_rows;
    {
        IntMat acc;
        for (std::size_t i = 0; i < a.size() && acc.size() < d; ++i) {
            IntMat test = acc;
            test.push_back(a[i]);
            if (rank_of(test) == static_cast<int>(test.size())) {
                acc = std::move(test);
                basis_rows.push_back(i);
            }
        }
    }
    // Process order: basis rows first, then the rest.
    std::vector<std::size_t> order = basis_rows;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::find(basis_rows.begin(), basis_rows.end(), i) == basis_rows.end())
            order.push_back(i);

    struct Ray {
        IntVec v;
        std::vector<bool> active;  // per processed constraint, a·v == 0
    };

    // Initial simplicial cone {B x >= 0}: rays are the columns of B^{-1}.
    IntMat b(d, IntVec(d));
    for (std::size_t i = 0; i < d; ++i) b[i] = a[order[i]];
    RatMat binv = inverse(b);
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < d; ++j) {
        RatVec col(d);
        for (std::size_t i = 0; i < d; ++i) col[i] = binv[i][j];
        Int l = 1;
        for (const auto& x : col) {
            Int den = boost::multiprecision::denominator(x);
            l = l / int_gcd(l, den) * den;
        }
        IntVec v(d);
        for (std::size_t i = 0; i < d; ++i)
            v[i] = boost::multiprecision::numerator(col[i]) * (l / boost::multiprecision::denominator(col[i]));
        v = primitive(v);
        Ray ray;
        ray.v = v;
        ray.active.assign(d, false);
        for (std::size_t i = 0; i < d; ++i) ray.active[i] = (vec_dot(a[order[i]], v) == 0);
        rays.push_back(std::move(ray));
    }

    auto adjacent = [&](const Ray& r1, const Ray& r2) {
        std::vector<bool> common(r1.active.size());
        for (std::size_t i = 0; i < common.size(); ++i) common[i] = r1.active[i] && r2.active[i];
        for (const auto& r3 : rays) {
            if (&r3 == &r1 || &r3 == &r2) continue;
            bool superset = true;
            for (std::size_t i = 0; i < common.size() && superset; ++i)
                if (common[i] && !r3.active[i]) superset = false;
            if (superset) return false;
        }
        return true;
    };

    for (std::size_t step = d; step < order.size(); ++step) {
        const IntVec& row = a[order[step]];
        std::vector<Int> vals(rays.size());
        bool any_neg = false;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            vals[i] = vec_dot(row, rays[i].v);
            if (vals[i] < 0) any_neg = true;
        }
        if (!any_neg) {
            for (std::size_t i = 0; i < rays.size(); ++i) rays[i].active.push_back(vals[i] == 0);
            continue;
        }
        std::vector<Ray> next;
        std::vector<Ray> born;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            for (std::size_t j = 0; j < rays.size(); ++j) {
                if (!(vals[i] > 0 && vals[j] < 0)) continue;
                if (!adjacent(rays[i], rays[j])) continue;
                IntVec combo = primitive(
                    vec_sub(vec_scale(vals[i], rays[j].v), vec_scale(vals[j], rays[i].v)));
                Ray nr;
                nr.v = std::move(combo);
                nr.active.resize(rays[i].active.size());
                for (std::size_t t = 0; t < nr.active.size(); ++t)
                    nr.active[t] = rays[i].active[t] && rays[j].active[t];
                nr.active.push_back(true);
                born.push_back(std::move(nr));
            }
        }
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (vals[i] < 0) continue;
            Ray keep = rays[i];
            keep.active.push_back(vals[i] == 0);
            next.push_back(std::move(keep));
        }
        for (auto& nr : born) next.push_back(std::move(nr));
        rays = std::move(next);
    }

    // Final verification: every ray feasible with active set of rank d-1.
    std::set<IntVec> found;
    for (const auto& r : rays) {
        require(all_nonneg(a, r.v), Errc::internal, "double description produced an infeasible ray");
        IntMat act;
        for (const auto& row : a)
            if (vec_dot(row, r.v) == 0) act.push_back(row);
        require(rank_of(act) == dim - 1, Errc::internal,
                "double description produced a non-extreme ray");
        found.insert(r.v);
    }
    std::vector<IntVec> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

bool rays_span_free_monoid(const std::vector<IntVec>& rays, int dim) {
    if (rays.empty()) return true;
    IntMat m(rays.begin(), rays.end());
    if (rank_of(m) != static_cast<int>(rays.size())) return false;
    (void)dim;
    return minors_gcd(m) == 1;
}

std::optional<IntVec> dual_interior_point(const std::vector<IntVec>& gens, int dim) {
    if (dim == 0) return IntVec{};
    for (const auto& g : gens)
        if (vec_is_zero(g)) return std::nullopt;
    if (gens.empty()) {
        // Dual cone is everything; any point works but nothing constrains it.
        return zero_vec(static_cast<std::size_t>(dim));
    }
    // Work inside span(gens): y = B^T z with B a basis of the span, taken
    // from the generators themselves (independent subset).
    IntMat basis;
    for (const auto& g : gens) {
        IntMat test = basis;
        test.push_back(g);
        if (rank_of(test) > rank_of(basis)) basis = test;
    }
    const int rho = static_cast<int>(basis.size());
    // Constraints in z-coordinates: (gens . B^T) z >= 0.
    IntMat a;
    a.reserve(gens.size());
    for (const auto& g : gens) {
        IntVec row(static_cast<std::size_t>(rho));
        for (int j = 0; j < rho; ++j) row[static_cast<std::size_t>(j)] = vec_dot(g, basis[static_cast<std::size_t>(j)]);
        a.push_back(row);
    }
    if (rank_of(a) != rho) return std::nullopt;
    auto rays = extreme_rays(a, rho);
    if (rays.empty()) return std::nullopt;
    IntVec z = zero_vec(static_cast<std::size_t>(rho));
    for (const auto& r : rays) z = vec_add(z, r);
    // Map back: y = B^T z.
    IntVec y = zero_vec(gens[0].size());
    for (int j = 0; j < rho; ++j) y = vec_add(y, vec_scale(z[static_cast<std::size_t>(j)], basis[static_cast<std::size_t>(j)]));
    y = primitive(y);
    for (const auto& g : gens)
        if (vec_dot(g, y) < 1) return std::nullopt;
    return y;
}

int intersection_dim(const std::vector<IntVec>& gens_a, const std::vector<IntVec>& gens_b, int dim) {
    auto facet_rows = [&](const std::vector<IntVec>& gens) {
        IntMat g(gens.begin(), gens.end());
        // Facet normals of a simplicial cone are the rows of the inverse of
        // the generator matrix (columns = generators), cleared to integers.
        IntMat cols(static_cast<std::size_t>(dim), IntVec(static_cast<std::size_t>(dim)));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    gens[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        RatMat inv = inverse(cols);
        IntMat rows;
        for (const auto& r : inv) {
            Int l = 1;
            for (const auto& x : r) {
                Int d = boost::multiprecision::denominator(x);
                l = l / int_gcd(l, d) * d;
            }
            IntVec row(r.size());
            for (std::size_t i = 0; i < r.size(); ++i)
                row[i] = boost::multiprecision::numerator(r[i]) * (l / boost::multiprecision::denominator(r[i]));
            rows.push_back(primitive(row));
        }
        return rows;
    };
    IntMat a = facet_rows(gens_a);
    IntMat b = facet_rows(gens_b);
    for (const auto& r : b) a.push_back(r);
    auto rays = extreme_rays(a, dim);
    if (rays.empty()) return 0;
    IntMat m(rays.begin(), rays.end());
    return rank_of(m);
}

bool simplicial_cone_contains(const std::vector<IntVec>& gens, const IntVec& x) {
    const std::size_t d = x.size();
    IntMat cols(d, IntVec(gens.size()));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < gens.size(); ++j) cols[i][j] = gens[j][i];
    auto sol = solve_unique(cols, x);
    if (!sol) return false;
    for (const auto& c : *sol)
        if (c < 0) return false;
    return true;
}

}  // namespace mirror
