#include <doctest.h>

#include <random>

#include "mirror/fixtures.hpp"
#include "mirror/kaehler.hpp"

using namespace mirror;

namespace {

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.push_back(Int(x));
    return v;
}

Int coeff_at(const BendingFunctional& f, const Decomposition& dec, const IntVec& vertex) {
    int idx = dec.vertex_index(vertex);
    for (const auto& [v, c] : f.coeffs)
        if (v == idx) return c;
    return 0;
}

}  // namespace

TEST_CASE("bending_functional: interval wall") {
    Decomposition dec = load_fixture("interval");
    auto walls = interior_walls(dec);
    REQUIRE(walls.size() == 1);
    BendingFunctional f = bending_functional(dec, walls[0]);
    // phi(-1) - 2 phi(0) + phi(1)
    CHECK(coeff_at(f, dec, iv({-1})) == 1);
    CHECK(coeff_at(f, dec, iv({0})) == -2);
    CHECK(coeff_at(f, dec, iv({1})) == 1);
}

TEST_CASE("bending_functional: local-p2 wall through (0,0)-(1,0)") {
    Decomposition dec = load_fixture("local-p2");
    for (const auto& w : interior_walls(dec)) {
        std::set<IntVec> face;
        for (int i : w.face) face.insert(dec.vertices[static_cast<std::size_t>(i)]);
        if (face != std::set<IntVec>{iv({0, 0}), iv({1, 0})}) continue;
        BendingFunctional f = bending_functional(dec, w);
        // phi(-1,-1) + phi(0,1) + phi(1,0) - 3 phi(0,0)
        CHECK(coeff_at(f, dec, iv({-1, -1})) == 1);
        CHECK(coeff_at(f, dec, iv({0, 1})) == 1);
        CHECK(coeff_at(f, dec, iv({1, 0})) == 1);
        CHECK(coeff_at(f, dec, iv({0, 0})) == -3);
        return;
    }
    CHECK(false);  // wall not found
}

TEST_CASE("bending_functional: vanishes on linear functions") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> d(-4, 4);
    for (const auto& name : fixture_names()) {
        Decomposition dec = load_fixture(name);
        for (const auto& w : interior_walls(dec)) {
            BendingFunctional f = bending_functional(dec, w);
            for (int trial = 0; trial < 10; ++trial) {
                IntVec normal(static_cast<std::size_t>(dec.dim));
                for (auto& x : normal) x = d(rng);
                Int c = d(rng);
                IntVec values(dec.vertices.size());
                for (std::size_t i = 0; i < dec.vertices.size(); ++i)
                    values[i] = vec_dot(normal, dec.vertices[i]) + c;
                CHECK(f.apply_scalar(values) == 0);
            }
        }
    }
}

TEST_CASE("kaehler_data: interval") {
    Decomposition dec = load_fixture("interval");
    KaehlerData kd = kaehler_data(dec);
    CHECK(kd.rank == 1);
    REQUIRE(kd.generators.size() == 1);
    CHECK(kd.generators[0] == iv({0, 0, 1}));  // values at (-1), (0), (1)
    CHECK(kd.psibar_at(0) == iv({0}));
    CHECK(kd.psibar_at(1) == iv({0}));
    CHECK(kd.psibar_at(2) == iv({1}));
    CHECK(kd.strictly_convex);
}

TEST_CASE("kaehler_data: local-p2") {
    Decomposition dec = load_fixture("local-p2");
    KaehlerData kd = kaehler_data(dec);
    CHECK(kd.rank == 1);
    CHECK(kd.psibar_at(dec.vertex_index(iv({-1, -1}))) == iv({1}));
    CHECK(kd.psibar_at(dec.vertex_index(iv({0, 0}))) == iv({0}));
    CHECK(kd.psibar_at(dec.vertex_index(iv({1, 0}))) == iv({0}));
    CHECK(kd.psibar_at(dec.vertex_index(iv({0, 1}))) == iv({0}));
    CHECK(kd.strictly_convex);
}

TEST_CASE("kaehler_data: star-square has rank two") {
    Decomposition dec = load_fixture("star-square");
    KaehlerData kd = kaehler_data(dec);
    CHECK(kd.rank == 2);
    CHECK(kd.psibar_at(dec.vertex_index(iv({-1, 0}))) == iv({1, 0}));
    CHECK(kd.psibar_at(dec.vertex_index(iv({0, -1}))) == iv({0, 1}));
    CHECK(kd.psibar_at(dec.vertex_index(iv({1, 0}))) == iv({0, 0}));
    CHECK(kd.strictly_convex);
    REQUIRE(kd.bending_images.size() == 4);
    for (const auto& img : kd.bending_images) CHECK(!vec_is_zero(img));
}

TEST_CASE("kaehler_data: rank zero without walls") {
    Decomposition dec = load_fixture("simplex");
    KaehlerData kd = kaehler_data(dec);
    CHECK(kd.rank == 0);
    CHECK(kd.strictly_convex);
}

TEST_CASE("kaehler_data: the hexagon cone is not simplicial") {
    // Star subdivision of the hexagon: five extreme rays in dimension four.
    Decomposition dec = parse_decomposition(
        R"({"dim": 2,
            "vertices": [[0,0],[1,0],[1,1],[0,1],[-1,0],[-1,-1],[0,-1]],
            "maximal_cells": [[0,1,2],[0,2,3],[0,3,4],[0,4,5],[0,5,6],[0,6,1]],
            "base_cell": 0})");
    require_valid(dec);
    try {
        kaehler_data(dec);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::cone_not_smooth);
    }
}

TEST_CASE("psibar vanishes on the base cell; bending images in N^r") {
    for (const auto& name : fixture_names()) {
        Decomposition dec = load_fixture(name);
        KaehlerData kd = kaehler_data(dec);
        for (int idx : dec.cells[static_cast<std::size_t>(dec.base_cell)])
            CHECK(vec_is_zero(kd.psibar_at(idx)));
        for (const auto& img : kd.bending_images) CHECK(vec_nonneg(img));
    }
}

TEST_CASE("check_strict_convexity: overrides") {
    Decomposition dec = load_fixture("interval");
    KaehlerData kd = kaehler_data(dec);
    CHECK(check_strict_convexity(dec, kd).strictly_convex);

    // zero function bends nowhere
    std::vector<IntVec> zero(dec.vertices.size(), iv({0}));
    ConvexityReport rep = check_strict_convexity(dec, kd, zero);
    CHECK(!rep.strictly_convex);

    // value -1 is rejected up front; a concave assignment trips the error
    std::vector<IntVec> concave = {iv({0}), iv({5}), iv({0})};
    CHECK_THROWS_AS(check_strict_convexity(dec, kd, concave), Error);
}

TEST_CASE("check_strict_convexity: star-square computed values") {
    Decomposition dec = load_fixture("star-square");
    KaehlerData kd = kaehler_data(dec);
    ConvexityReport rep = check_strict_convexity(dec, kd);
    CHECK(rep.strictly_convex);
    CHECK(rep.bending_images.size() == 4);
}

TEST_CASE("phi_value: interval slopes") {
    Decomposition dec = load_fixture("interval");
    KaehlerData kd = kaehler_data(dec);
    int v0 = dec.vertex_index(iv({0}));
    CHECK(phi_value(dec, kd, v0, iv({2})) == iv({2}));
    CHECK(phi_value(dec, kd, v0, iv({-3})) == iv({0}));
    CHECK(phi_value(dec, kd, v0, iv({0})) == iv({0}));
}

TEST_CASE("phi_value: local-p2 corner cone") {
    Decomposition dec = load_fixture("local-p2");
    KaehlerData kd = kaehler_data(dec);
    int v0 = dec.vertex_index(iv({0, 0}));
    CHECK(phi_value(dec, kd, v0, iv({-2, -2})) == iv({2}));
    CHECK(phi_value(dec, kd, v0, iv({3, 5})) == iv({0}));
}

TEST_CASE("phi_value: outside the tangent wedge") {
    Decomposition dec = load_fixture("simplex");
    KaehlerData kd = kaehler_data(dec);
    CHECK_THROWS_AS(phi_value(dec, kd, 0, iv({-1})), Error);
}

TEST_CASE("in_vertex_monoid: interval examples") {
    Decomposition dec = load_fixture("interval");
    KaehlerData kd = kaehler_data(dec);
    int v0 = dec.vertex_index(iv({0}));
    CHECK(in_vertex_monoid(dec, kd, v0, iv({1}), iv({1})));    // x t
    CHECK(!in_vertex_monoid(dec, kd, v0, iv({1}), iv({0})));   // x
    CHECK(in_vertex_monoid(dec, kd, v0, iv({-1}), iv({0})));   // x^{-1}
    for (long q = 0; q <= 4; ++q) CHECK(in_vertex_monoid(dec, kd, v0, iv({0}), iv({q})));
}

TEST_CASE("in_vertex_monoid: closure under addition (sampled)") {
    std::mt19937 rng(911);
    std::uniform_int_distribution<long> dm(-3, 3), dq(0, 3);
    for (const auto& name : {"interval", "local-p2", "star-square"}) {
        Decomposition dec = load_fixture(name);
        KaehlerData kd = kaehler_data(dec);
        for (std::size_t v = 0; v < dec.vertices.size(); ++v) {
            int checked = 0;
            for (int trial = 0; trial < 400 && checked < 40; ++trial) {
                IntVec m1(static_cast<std::size_t>(dec.dim)), m2(static_cast<std::size_t>(dec.dim));
                IntVec q1(static_cast<std::size_t>(kd.rank)), q2(static_cast<std::size_t>(kd.rank));
                for (auto& x : m1) x = dm(rng);
                for (auto& x : m2) x = dm(rng);
                for (auto& x : q1) x = dq(rng);
                for (auto& x : q2) x = dq(rng);
                if (!in_vertex_monoid(dec, kd, static_cast<int>(v), m1, q1)) continue;
                if (!in_vertex_monoid(dec, kd, static_cast<int>(v), m2, q2)) continue;
                ++checked;
                CHECK(in_vertex_monoid(dec, kd, static_cast<int>(v), vec_add(m1, m2),
                                       vec_add(q1, q2)));
            }
        }
    }
}

TEST_CASE("phi_value convexity (sampled)") {
    std::mt19937 rng(2718);
    std::uniform_int_distribution<long> dm(-3, 3);
    for (const auto& name : {"interval", "local-p2", "star-square"}) {
        Decomposition dec = load_fixture(name);
        KaehlerData kd = kaehler_data(dec);
        for (std::size_t v = 0; v < dec.vertices.size(); ++v) {
            int checked = 0;
            for (int trial = 0; trial < 400 && checked < 40; ++trial) {
                IntVec m1(static_cast<std::size_t>(dec.dim)), m2(static_cast<std::size_t>(dec.dim));
                for (auto& x : m1) x = dm(rng);
                for (auto& x : m2) x = dm(rng);
                IntVec s = vec_add(m1, m2);
                try {
                    IntVec a = phi_value(dec, kd, static_cast<int>(v), m1);
                    IntVec b = phi_value(dec, kd, static_cast<int>(v), m2);
                    IntVec c = phi_value(dec, kd, static_cast<int>(v), s);
                    ++checked;
                    CHECK(vec_nonneg(vec_sub(vec_add(a, b), c)));
                } catch (const Error&) {
                    continue;  // outside the wedge
                }
            }
        }
    }
}

TEST_CASE("monodromy_p: interval and square examples") {
    Decomposition dec = load_fixture("interval");
    KaehlerData kd = kaehler_data(dec);
    // v = (0), v' = (1): (m, r, q) -> (m - r, r, q - r)
    IntMat t = monodromy_p(dec, kd, 1, 2);
    CHECK(mat_apply(t, iv({0, 1, 0})) == iv({-1, 1, -1}));
    CHECK(det_bareiss(t) == 1);

    Decomposition sq = load_fixture("star-square");
    KaehlerData kdsq = kaehler_data(sq);
    // v = (0,0), v' = (-1,0): (m,r,q1,q2) -> (m1+r, m2, r, q1-r, q2)
    IntMat ts = monodromy_p(sq, kdsq, 0, 3);
    CHECK(mat_apply(ts, iv({0, 0, 1, 0, 0})) == iv({1, 0, 1, -1, 0}));
}

TEST_CASE("monodromy_p projects onto monodromy_lambda") {
    for (const auto& name : fixture_names()) {
        Decomposition dec = load_fixture(name);
        KaehlerData kd = kaehler_data(dec);
        const std::size_t n = static_cast<std::size_t>(dec.dim);
        for (std::size_t v = 0; v < dec.vertices.size(); ++v) {
            for (std::size_t w = 0; w < dec.vertices.size(); ++w) {
                if (v == w || !adjacent_vertices(dec, static_cast<int>(v), static_cast<int>(w)))
                    continue;
                IntMat p = monodromy_p(dec, kd, static_cast<int>(v), static_cast<int>(w));
                IntMat l = monodromy_lambda(dec, static_cast<int>(v), static_cast<int>(w));
                for (std::size_t i = 0; i <= n; ++i)
                    for (std::size_t j = 0; j <= n; ++j) CHECK(p[i][j] == l[i][j]);
                // unipotence of the lift
                IntMat m = p;
                for (std::size_t i = 0; i < m.size(); ++i) m[i][i] -= 1;
                IntMat m2 = mat_mul(m, m);
                for (const auto& row : m2)
                    for (const auto& x : row) CHECK(x == 0);
            }
        }
    }
}
