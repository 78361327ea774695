#include <doctest.h>

#include <map>
#include <set>

#include "mirror/fixtures.hpp"
#include "mirror/slab.hpp"

using namespace mirror;

namespace {

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.push_back(Int(x));
    return v;
}

Exponent ex(std::initializer_list<long> m, std::initializer_list<long> q, long r = 0) {
    return Exponent{iv(m), Int(r), iv(q)};
}

using Terms = std::map<Exponent, Rat, ExponentLess>;

// The two-interior-vertex strip σ = [-2,1], cells of unit length, base [-1,0].
Decomposition strip() {
    Decomposition dec = parse_decomposition(
        R"({"dim": 1,
            "vertices": [[-2],[-1],[0],[1]],
            "maximal_cells": [[0,1],[1,2],[2,3]],
            "base_cell": 1})");
    require_valid(dec);
    return dec;
}

}  // namespace

TEST_CASE("naive_slab: expected term lists") {
    {
        Decomposition dec = load_fixture("local-p2");
        KaehlerData kd = kaehler_data(dec);
        Series s = naive_slab(dec, kd, dec.vertex_index(iv({0, 0})), 3);
        Terms expect{{ex({0, 0}, {0}), Rat(1)},
                     {ex({1, 0}, {0}), Rat(1)},
                     {ex({0, 1}, {0}), Rat(1)},
                     {ex({-1, -1}, {1}), Rat(1)}};
        CHECK(s.terms() == expect);
    }
    {
        Decomposition dec = load_fixture("interval");
        KaehlerData kd = kaehler_data(dec);
        Series s = naive_slab(dec, kd, 1, 3);
        Terms expect{{ex({0}, {0}), Rat(1)}, {ex({-1}, {0}), Rat(1)}, {ex({1}, {1}), Rat(1)}};
        CHECK(s.terms() == expect);
    }
    {
        Decomposition dec = load_fixture("simplex");
        KaehlerData kd = kaehler_data(dec);
        Series s = naive_slab(dec, kd, 0, 3);
        Terms expect{{Exponent{iv({0}), Int(0), {}}, Rat(1)}, {Exponent{iv({1}), Int(0), {}}, Rat(1)}};
        CHECK(s.terms() == expect);
    }
}

TEST_CASE("normalize_at: local-p2 corrections through order five") {
    Decomposition dec = load_fixture("local-p2");
    KaehlerData kd = kaehler_data(dec);
    SlabFunction sf = normalize_at(dec, kd, dec.vertex_index(iv({0, 0})), 5);
    Terms expect{{ex({0, 0}, {1}), Rat(-2)},
                 {ex({0, 0}, {2}), Rat(5)},
                 {ex({0, 0}, {3}), Rat(-32)},
                 {ex({0, 0}, {4}), Rat(286)},
                 {ex({0, 0}, {5}), Rat(-3038)}};
    CHECK(sf.g.terms() == expect);
}

TEST_CASE("normalize_at: interval correction is exactly t") {
    Decomposition dec = load_fixture("interval");
    KaehlerData kd = kaehler_data(dec);
    SlabFunction sf = normalize_at(dec, kd, 1, 5);
    Terms expect{{ex({0}, {1}), Rat(1)}};
    CHECK(sf.g.terms() == expect);
}

TEST_CASE("normalize_at: star-square through total degree three") {
    Decomposition dec = load_fixture("star-square");
    KaehlerData kd = kaehler_data(dec);
    SlabFunction sf = normalize_at(dec, kd, 0, 3);
    Terms expect{{ex({0, 0}, {1, 0}), Rat(1)},
                 {ex({0, 0}, {0, 1}), Rat(1)},
                 {ex({0, 0}, {1, 1}), Rat(3)},
                 {ex({0, 0}, {2, 1}), Rat(5)},
                 {ex({0, 0}, {1, 2}), Rat(5)}};
    CHECK(sf.g.terms() == expect);
}

TEST_CASE("slab_family: the four interval slab functions, verbatim") {
    Decomposition dec = load_fixture("interval");
    KaehlerData kd = kaehler_data(dec);
    SlabFamily fam = slab_family(dec, kd, 5);

    Terms f_minus1{{ex({0}, {0}), Rat(1)},
                   {ex({1}, {0}), Rat(1)},
                   {ex({2}, {1}), Rat(1)},
                   {ex({1}, {1}), Rat(1)}};
    Terms f_zero{{ex({0}, {0}), Rat(1)},
                 {ex({-1}, {0}), Rat(1)},
                 {ex({1}, {1}), Rat(1)},
                 {ex({0}, {1}), Rat(1)}};
    Terms f_plus1{{ex({0}, {0}), Rat(1)},
                  {ex({-1}, {-1}), Rat(1)},
                  {ex({-2}, {-1}), Rat(1)},
                  {ex({-1}, {0}), Rat(1)}};
    CHECK(fam.at(0).terms() == f_minus1);
    CHECK(fam.at(1).terms() == f_zero);
    CHECK(fam.at(2).terms() == f_plus1);
}

TEST_CASE("slab_family agrees with normalize_at at the canonical vertex") {
    for (const auto& name : fixture_names()) {
        Decomposition dec = load_fixture(name);
        KaehlerData kd = kaehler_data(dec);
        SlabFamily fam = slab_family(dec, kd, 4);
        SlabFunction sf = normalize_at(dec, kd, fam.canonical_vertex, 4);
        CHECK(fam.at(fam.canonical_vertex).same_terms(sf.f));
    }
}

TEST_CASE("slab_family is deterministic") {
    Decomposition dec = load_fixture("star-square");
    KaehlerData kd = kaehler_data(dec);
    SlabFamily a = slab_family(dec, kd, 4);
    SlabFamily b = slab_family(dec, kd, 4);
    for (std::size_t v = 0; v < dec.vertices.size(); ++v)
        CHECK(a.members[v].same_terms(b.members[v]));
}

TEST_CASE("verify_conditions: fixtures pass; corrupted correction fails at its degree") {
    for (const auto& name : fixture_names()) {
        Decomposition dec = load_fixture(name);
        KaehlerData kd = kaehler_data(dec);
        ConditionReport rep = verify_conditions(dec, kd, 4);
        CHECK(rep.all_pass);
    }

    // Negative control: damage the degree-2 correction of local-p2.
    Decomposition dec = load_fixture("local-p2");
    KaehlerData kd = kaehler_data(dec);
    SlabFamily fam = slab_family(dec, kd, 4);
    SlabFamily corrupted = fam;
    for (std::size_t v = 0; v < corrupted.members.size(); ++v) {
        Series::TermMap terms = corrupted.members[v].terms();
        Exponent shift = chart_shift(dec, kd, fam.canonical_vertex, static_cast<int>(v));
        terms[exp_add(ex({0, 0}, {2}), shift)] += Rat(1);
        corrupted.members[v] = Series::unchecked(corrupted.members[v].trunc(), std::move(terms));
    }
    ConditionReport rep = verify_family(dec, kd, corrupted);
    CHECK(!rep.all_pass);
    bool cond3_failed_at_deg2 = false;
    for (const auto& e : rep.entries)
        if (e.condition == 3 && !e.pass && e.detail.find("t^2") != std::string::npos)
            cond3_failed_at_deg2 = true;
    CHECK(cond3_failed_at_deg2);
}

TEST_CASE("verify_conditions: transported interval function has the known form") {
    Decomposition dec = load_fixture("interval");
    KaehlerData kd = kaehler_data(dec);
    SlabFamily fam = slab_family(dec, kd, 5);
    Series moved = transport_slab(fam.at(1), dec, kd, 1, 0);
    CHECK(moved.same_terms(fam.at(0)));  // 1 + x + x^2 t + x t
}

TEST_CASE("condition 2 composes around closed vertex paths") {
    Decomposition dec = load_fixture("star-square");
    KaehlerData kd = kaehler_data(dec);
    SlabFamily fam = slab_family(dec, kd, 3);
    // (0,0) -> (1,0) -> (0,1) -> (0,0)
    Series s = fam.at(0);
    s = transport_slab(s, dec, kd, 0, 1);
    s = transport_slab(s, dec, kd, 1, 2);
    s = transport_slab(s, dec, kd, 2, 0);
    CHECK(s.same_terms(fam.at(0)));
}

TEST_CASE("slab coefficients are integers") {
    for (const auto& name : fixture_names()) {
        Decomposition dec = load_fixture(name);
        KaehlerData kd = kaehler_data(dec);
        SlabFamily fam = slab_family(dec, kd, 5);
        for (const auto& member : fam.members)
            for (const auto& [e, c] : member.terms()) CHECK(rat_is_integer(c));
    }
}

TEST_CASE("two interior vertices: coupled corrections beyond pure Q") {
    Decomposition dec = strip();
    KaehlerData kd = kaehler_data(dec);
    CHECK(kd.rank == 2);
    CHECK(interior_vertex_indices(dec) == std::vector<int>{1, 2});

    SlabFamily fam = slab_family(dec, kd, 3);
    ConditionReport rep = verify_family(dec, kd, fam);
    CHECK(rep.all_pass);

    // Degree-1 slice at the vertex (0), solved by hand from conditions 1-4:
    // f_0 = 1 + x^{-1} + t1 x^{-2} + x t2 + t2 + t1 x^{-1} + (degree >= 2).
    const Series& f0 = fam.at(2);
    CHECK(f0.coeff(ex({0}, {0, 0})) == 1);
    CHECK(f0.coeff(ex({-1}, {0, 0})) == 1);
    CHECK(f0.coeff(ex({-2}, {1, 0})) == 1);
    CHECK(f0.coeff(ex({1}, {0, 1})) == 1);
    CHECK(f0.coeff(ex({0}, {0, 1})) == 1);
    CHECK(f0.coeff(ex({-1}, {1, 0})) == 1);
    // and nothing else in total degree <= 1
    std::size_t low_degree_terms = 0;
    for (const auto& [e, c] : f0.terms())
        if (qdegree(e) <= 1) ++low_degree_terms;
    CHECK(low_degree_terms == 6);

    // The pure-Q ansatz at a single vertex cannot satisfy all conditions here:
    // normalizing locally at (0) misses the t1 x^{-1} correction.
    SlabFunction local = normalize_at(dec, kd, 2, 3);
    CHECK(local.f.coeff(ex({-1}, {1, 0})) == 0);
    CHECK(!local.f.same_terms(f0));
}

TEST_CASE("cone_contains: the graph cone of the universal function") {
    Decomposition dec = load_fixture("local-p2");
    KaehlerData kd = kaehler_data(dec);
    // degree 0: only q in N^r
    CHECK(cone_contains(dec, kd, iv({0, 0}), iv({3}), Int(0)));
    CHECK(!cone_contains(dec, kd, iv({1, 0}), iv({0}), Int(0)));
    CHECK(!cone_contains(dec, kd, iv({0, 0}), iv({-1}), Int(0)));
    // vertices (v, psibar(v), 1)
    for (std::size_t v = 0; v < dec.vertices.size(); ++v)
        CHECK(cone_contains(dec, kd, dec.vertices[v], kd.psibar_at(static_cast<int>(v)), Int(1)));
    // (-2,-2, q, 2): needs q >= 2 psibar(-1,-1) = 2
    CHECK(cone_contains(dec, kd, iv({-2, -2}), iv({2}), Int(2)));
    CHECK(!cone_contains(dec, kd, iv({-2, -2}), iv({1}), Int(2)));
    // outside 2σ
    CHECK(!cone_contains(dec, kd, iv({3, 0}), iv({5}), Int(2)));
}

TEST_CASE("mirror_equation: generator counts and dehomogenized form") {
    {
        Decomposition dec = load_fixture("interval");
        KaehlerData kd = kaehler_data(dec);
        MirrorEquation eq = mirror_equation(dec, kd, 3, std::nullopt);
        CHECK(eq.generators.size() == 5);  // 3 lattice points + U, W
        CHECK(eq.q_choice == iv({1}));
    }
    {
        Decomposition dec = load_fixture("local-p2");
        KaehlerData kd = kaehler_data(dec);
        MirrorEquation eq = mirror_equation(dec, kd, 5, std::nullopt);
        CHECK(eq.generators.size() == 6);
        CHECK(eq.equation_homogeneous == "U*W = z^(1) * V0 * F");
        // Dehomogenized: uw = z^q f at the origin slab.
        CHECK(eq.equation_dehomogenized.find("u*w = z^(1) *") == 0);
        CHECK(eq.equation_dehomogenized.find("- 2*t") != std::string::npos);
        CHECK(eq.equation_dehomogenized.find("- 3038*t^5") != std::string::npos);
        // F has one degree-1 monomial per slab term (4 naive + 5 corrections);
        // vertex independence is asserted inside mirror_equation itself.
        CHECK(eq.homogeneous_f.size() == 9);
    }
}

TEST_CASE("mirror_equation: rank zero is out of scope") {
    Decomposition dec = load_fixture("simplex");
    KaehlerData kd = kaehler_data(dec);
    CHECK_THROWS_AS(mirror_equation(dec, kd, 3, std::nullopt), Error);
    try {
        mirror_equation(dec, kd, 3, std::nullopt);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::rank_zero_q);
    }
}

TEST_CASE("broken lines: interval order one") {
    Decomposition dec = load_fixture("interval");
    KaehlerData kd = kaehler_data(dec);
    Exponent initial = ex({0}, {0}, -1);
    LiftResult lr = enumerate_broken_lines(dec, kd, 1, initial, 1);
    REQUIRE(lr.lines.size() == 4);
    int unbent = 0;
    std::set<std::string> finals;
    for (const auto& line : lr.lines) {
        if (!line.bends) ++unbent;
        finals.insert(exponent_str(line.final_exponent));
    }
    CHECK(unbent == 2);
    std::set<std::string> expected = {
        exponent_str(ex({0}, {0}, -1)),   // z^m
        exponent_str(ex({0}, {1}, -1)),   // t z^m
        exponent_str(ex({-1}, {0}, -1)),  // x^{-1} z^m
        exponent_str(ex({1}, {1}, -1)),   // x t z^m
    };
    CHECK(finals == expected);
    // Lift = z^m f_v
    Series expect_lift = monomial_mul(slab_family(dec, kd, 1).at(1), initial, Rat(1));
    CHECK(lr.lift.same_terms(expect_lift));
}

TEST_CASE("broken lines: rank-zero simplex has two lines") {
    Decomposition dec = load_fixture("simplex");
    KaehlerData kd = kaehler_data(dec);
    Exponent initial{iv({0}), Int(-1), {}};
    LiftResult lr = enumerate_broken_lines(dec, kd, 0, initial, 1);
    CHECK(lr.lines.size() == 2);
}

TEST_CASE("broken line segments track directions") {
    Decomposition dec = load_fixture("interval");
    KaehlerData kd = kaehler_data(dec);
    Exponent initial = ex({0}, {0}, -1);
    LiftResult lr = enumerate_broken_lines(dec, kd, 1, initial, 1);
    for (const auto& line : lr.lines) {
        REQUIRE(line.segments.size() == 2);
        CHECK(line.segments[0].direction == iv({0, 1}));
        // direction = -m̄ of the attached monomial
        IntVec expected = vec_neg(line.final_exponent.m);
        expected.push_back(-line.final_exponent.r);
        CHECK(line.segments[1].direction == expected);
        CHECK(line.bends == !vec_is_zero(line.final_exponent.m));
    }
}

TEST_CASE("lift invariance holds for the family and fails for a corruption") {
    for (const auto& name : fixture_names()) {
        Decomposition dec = load_fixture(name);
        KaehlerData kd = kaehler_data(dec);
        Exponent initial = zero_exponent(dec.dim, kd.rank);
        initial.r = -1;
        LiftInvarianceReport rep = lift_invariance(dec, kd, initial, 5);
        CHECK(rep.all_pass);
        CHECK(!rep.entries.empty());
    }

    Decomposition dec = load_fixture("interval");
    KaehlerData kd = kaehler_data(dec);
    SlabFamily fam = slab_family(dec, kd, 3);
    // Replace every member by the local pure-Q ansatz at its own vertex;
    // condition 2 breaks and so does the lift.
    SlabFamily broken = fam;
    for (std::size_t v = 0; v < dec.vertices.size(); ++v)
        broken.members[v] = normalize_at(dec, kd, static_cast<int>(v), 3).f;
    Exponent initial = ex({0}, {0}, -1);
    CHECK(!lift_invariance_family(dec, kd, initial, broken).all_pass);
}
