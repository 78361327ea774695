#include <doctest.h>

#include <functional>
#include <map>
#include <random>

#include "mirror/cones.hpp"
#include "mirror/fixtures.hpp"
#include "mirror/series.hpp"
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

struct Fx {
    Decomposition dec;
    KaehlerData kd;
    Truncation trunc;
    int v0;
};

Fx setup(const std::string& name, int k) {
    Fx f{load_fixture(name), {}, {}, 0};
    f.kd = kaehler_data(f.dec);
    f.v0 = canonical_vertex(f.dec, f.kd);
    f.trunc = truncation_for(f.dec, f.kd, f.v0, k);
    return f;
}

// Independent multinomial oracle: coefficient of `target` in log(1 + u)
// where u is a finite list of monomials, via ordered-factorization counting.
Rat log_coeff_oracle(const std::vector<std::pair<Exponent, Rat>>& u, const Exponent& target,
                     int max_factors) {
    Rat total(0);
    std::function<void(int, Exponent, Rat)> rec = [&](int depth, Exponent sum, Rat prod) {
        if (depth > 0 && sum == target) {
            Rat sign = (depth % 2 == 1) ? Rat(1) : Rat(-1);
            total += sign * prod / Rat(depth);
        }
        if (depth == max_factors) return;
        for (const auto& [e, c] : u) rec(depth + 1, exp_add(sum, e), prod * c);
    };
    rec(0, zero_exponent(static_cast<int>(target.m.size()), static_cast<int>(target.q.size())),
        Rat(1));
    return total;
}

}  // namespace

TEST_CASE("exponent arithmetic realizes the monoid relation") {
    // (1,0;0) + (0,1;0) + (-1,-1;1) = (0,0;1): x*y*z = t
    Exponent x = ex({1, 0}, {0}), y = ex({0, 1}, {0}), z = ex({-1, -1}, {1});
    CHECK(exp_add(exp_add(x, y), z) == ex({0, 0}, {1}));
}

TEST_CASE("mul: the interval factorization") {
    Fx f = setup("interval", 3);
    Series a = Series::constant(f.trunc, 1, 1, Rat(1));
    a.add_term(ex({-1}, {0}), Rat(1));  // 1 + x^{-1}
    Series b = Series::constant(f.trunc, 1, 1, Rat(1));
    b.add_term(ex({1}, {1}), Rat(1));  // 1 + x t
    Series p = mul(a, b);
    Series expected = Series::constant(f.trunc, 1, 1, Rat(1));
    expected.add_term(ex({-1}, {0}), Rat(1));
    expected.add_term(ex({1}, {1}), Rat(1));
    expected.add_term(ex({0}, {1}), Rat(1));
    CHECK(p.same_terms(expected));
    // identity
    CHECK(mul(p, Series::constant(f.trunc, 1, 1, Rat(1))).same_terms(p));
}

TEST_CASE("mul: star-square exponent addition") {
    Fx f = setup("star-square", 2);
    Series a = Series::monomial(f.trunc, ex({1, 0}, {0, 0}), Rat(1));        // x
    Series b = Series::monomial(f.trunc, ex({-1, 0}, {1, 0}), Rat(1));       // t1 x^{-1}
    CHECK(mul(a, b).same_terms(Series::monomial(f.trunc, ex({0, 0}, {1, 0}), Rat(1))));
}

TEST_CASE("log: the factorized interval slab has no pure-Q part") {
    Fx f = setup("interval", 5);
    Series slab = naive_slab(f.dec, f.kd, f.v0, f.trunc);
    slab.add_term(ex({0}, {1}), Rat(1));  // + t, the normalized function
    Series lg = log_series(slab, 1, 1);
    for (const auto& [e, c] : pure_q_part(lg).terms()) CHECK(qdegree(e) == 0);
    CHECK(log_series(Series::constant(f.trunc, 1, 1, Rat(1)), 1, 1).is_zero());
}

TEST_CASE("log: pure-Q degree-1 part of the naive local-p2 slab is 2t") {
    Fx f = setup("local-p2", 3);
    Series naive = naive_slab(f.dec, f.kd, f.v0, f.trunc);
    Series lg = log_series(naive, 2, 1);
    Exponent t = ex({0, 0}, {1});
    CHECK(lg.coeff(t) == Rat(2));

    // Independent oracle: ordered factorizations of t into naive exponents.
    std::vector<std::pair<Exponent, Rat>> u;
    for (const auto& [e, c] : naive.terms())
        if (!(vec_is_zero(e.m) && vec_is_zero(e.q))) u.push_back({e, c});
    CHECK(log_coeff_oracle(u, t, 4) == Rat(2));
}

TEST_CASE("log requires constant term one") {
    Fx f = setup("interval", 2);
    Series s = Series::monomial(f.trunc, ex({1}, {1}), Rat(1));
    CHECK_THROWS_AS(log_series(s, 1, 1), Error);
}

TEST_CASE("exp: the multiple-cover sum gives back the product form") {
    Fx f = setup("interval", 6);
    // sum_{d>=1} (-1)^{d+1}/d (x^{-d} + (xt)^d) = log(1+x^{-1}) + log(1+xt)
    Series g(f.trunc);
    for (long d = 1; d <= 20; ++d) {
        Rat c = Rat((d % 2 == 1) ? 1 : -1, d);
        g.add_term(ex({-d}, {0}), c);
        g.add_term(ex({d}, {d}), c);
    }
    Series expg = exp_series(g, 1, 1);
    Series a = Series::constant(f.trunc, 1, 1, Rat(1));
    a.add_term(ex({-1}, {0}), Rat(1));
    Series b = Series::constant(f.trunc, 1, 1, Rat(1));
    b.add_term(ex({1}, {1}), Rat(1));
    CHECK(expg.same_terms(mul(a, b)));
    CHECK(exp_series(Series(f.trunc), 1, 1).same_terms(Series::constant(f.trunc, 1, 1, Rat(1))));
}

TEST_CASE("exp(log f) = f for the naive local-p2 slab") {
    Fx f = setup("local-p2", 3);
    Series naive = naive_slab(f.dec, f.kd, f.v0, f.trunc);
    CHECK(exp_series(log_series(naive, 2, 1), 2, 1).same_terms(naive));
}

TEST_CASE("log/exp round trips on random sparse series") {
    std::mt19937 rng(446);
    for (const auto& name : {"interval", "local-p2"}) {
        Fx f = setup(name, 3);
        Series naive = naive_slab(f.dec, f.kd, f.v0, f.trunc);
        std::vector<Exponent> pool;
        for (const auto& [e, c] : naive.terms())
            if (!(vec_is_zero(e.m) && vec_is_zero(e.q))) pool.push_back(e);
        std::uniform_int_distribution<int> coin(0, 2), coefd(-3, 3);
        for (int trial = 0; trial < 8; ++trial) {
            Series g(f.trunc);
            for (const auto& e : pool)
                if (coin(rng) == 0) g.add_term(e, Rat(coefd(rng)));
            CHECK(log_series(exp_series(g, f.dec.dim, f.kd.rank), f.dec.dim, f.kd.rank)
                      .same_terms(g));
            Series one_plus = add(g, Series::constant(f.trunc, f.dec.dim, f.kd.rank, Rat(1)));
            CHECK(exp_series(log_series(one_plus, f.dec.dim, f.kd.rank), f.dec.dim, f.kd.rank)
                      .same_terms(one_plus));
        }
    }
}

TEST_CASE("log turns products into sums") {
    std::mt19937 rng(447);
    Fx f = setup("local-p2", 3);
    Series naive = naive_slab(f.dec, f.kd, f.v0, f.trunc);
    std::vector<Exponent> pool;
    for (const auto& [e, c] : naive.terms())
        if (!(vec_is_zero(e.m) && vec_is_zero(e.q))) pool.push_back(e);
    std::uniform_int_distribution<int> coin(0, 2), coefd(-2, 2);
    for (int trial = 0; trial < 6; ++trial) {
        Series a = Series::constant(f.trunc, 2, 1, Rat(1));
        Series b = Series::constant(f.trunc, 2, 1, Rat(1));
        for (const auto& e : pool) {
            if (coin(rng) == 0) a.add_term(e, Rat(coefd(rng)));
            if (coin(rng) == 0) b.add_term(e, Rat(coefd(rng)));
        }
        Series lhs = log_series(mul(a, b), 2, 1);
        Series rhs = add(log_series(a, 2, 1), log_series(b, 2, 1));
        CHECK(lhs.same_terms(rhs));
    }
}

TEST_CASE("mul is commutative and associative on random triples") {
    std::mt19937 rng(448);
    Fx f = setup("star-square", 2);
    Series naive = naive_slab(f.dec, f.kd, f.v0, f.trunc);
    std::vector<Exponent> pool;
    for (const auto& [e, c] : naive.terms()) pool.push_back(e);
    std::uniform_int_distribution<int> coin(0, 1), coefd(-3, 3);
    for (int trial = 0; trial < 6; ++trial) {
        Series s[3];
        for (auto& x : s) {
            x = Series(f.trunc);
            for (const auto& e : pool)
                if (coin(rng)) x.add_term(e, Rat(coefd(rng)));
        }
        CHECK(mul(s[0], s[1]).same_terms(mul(s[1], s[0])));
        CHECK(mul(mul(s[0], s[1]), s[2]).same_terms(mul(s[0], mul(s[1], s[2]))));
    }
}

TEST_CASE("power: zero, geometric inverse, identity") {
    Fx f = setup("interval", 4);
    Series base = Series::constant(f.trunc, 1, 1, Rat(1));
    base.add_term(ex({1}, {1}), Rat(1));  // 1 + xt
    CHECK(power(base, 0, 1, 1).same_terms(Series::constant(f.trunc, 1, 1, Rat(1))));

    Series inv = power(base, -1, 1, 1);
    // 1 - xt + (xt)^2 - (xt)^3 + (xt)^4 within the window
    for (long d = 0; d <= 4; ++d) {
        Rat expect((d % 2 == 0) ? 1 : -1);
        if (f.trunc.in_window(ex({d}, {d}))) CHECK(inv.coeff(ex({d}, {d})) == expect);
    }

    Series slab = naive_slab(f.dec, f.kd, f.v0, f.trunc);
    slab.add_term(ex({0}, {1}), Rat(1));
    CHECK(mul(power(slab, -1, 1, 1), slab)
              .same_terms(Series::constant(f.trunc, 1, 1, Rat(1))));
    // f^{-2} f^2 = 1 as well
    CHECK(mul(power(slab, -2, 1, 1), power(slab, 2, 1, 1))
              .same_terms(Series::constant(f.trunc, 1, 1, Rat(1))));
    // constant term 2 is rejected for negative powers
    Series bad = add(slab, Series::constant(f.trunc, 1, 1, Rat(1)));
    CHECK_THROWS_AS(power(bad, -1, 1, 1), Error);
}

TEST_CASE("pure_q_part") {
    Fx f = setup("interval", 3);
    Series s = Series::constant(f.trunc, 1, 1, Rat(1));
    s.add_term(ex({-1}, {0}), Rat(1));
    s.add_term(ex({1}, {1}), Rat(1));
    s.add_term(ex({0}, {1}), Rat(1));
    Series p = pure_q_part(s);
    Series expected = Series::constant(f.trunc, 1, 1, Rat(1));
    expected.add_term(ex({0}, {1}), Rat(1));
    CHECK(p.same_terms(expected));

    Series xy(f.trunc);
    xy.add_term(ex({1}, {0}), Rat(1));
    xy.add_term(ex({-1}, {0}), Rat(1));
    CHECK(pure_q_part(xy).is_zero());
}

TEST_CASE("transport_slab: interval examples") {
    Fx f = setup("interval", 5);
    SlabFamily fam = slab_family(f.dec, f.kd, 5);
    const Series& f0 = fam.at(1);  // vertex (0)

    Series to_minus1 = transport_slab(f0, f.dec, f.kd, 1, 0);
    std::map<Exponent, Rat, ExponentLess> expect1{{ex({0}, {0}), Rat(1)},
                                                  {ex({1}, {0}), Rat(1)},
                                                  {ex({2}, {1}), Rat(1)},
                                                  {ex({1}, {1}), Rat(1)}};
    CHECK(to_minus1.terms() == expect1);

    Series to_plus1 = transport_slab(f0, f.dec, f.kd, 1, 2);
    std::map<Exponent, Rat, ExponentLess> expect2{{ex({0}, {0}), Rat(1)},
                                                  {ex({-1}, {-1}), Rat(1)},
                                                  {ex({-2}, {-1}), Rat(1)},
                                                  {ex({-1}, {0}), Rat(1)}};
    CHECK(to_plus1.terms() == expect2);

    CHECK(transport_slab(f0, f.dec, f.kd, 1, 1).same_terms(f0));
    CHECK_THROWS_AS(transport_slab(f0, f.dec, f.kd, 0, 2), Error);  // not adjacent
}

TEST_CASE("transport_slab: there and back") {
    Fx f = setup("star-square", 3);
    SlabFamily fam = slab_family(f.dec, f.kd, 3);
    for (std::size_t v = 0; v < f.dec.vertices.size(); ++v) {
        for (std::size_t w = 0; w < f.dec.vertices.size(); ++w) {
            if (v == w || !adjacent_vertices(f.dec, static_cast<int>(v), static_cast<int>(w)))
                continue;
            Series moved = transport_slab(fam.at(static_cast<int>(v)), f.dec, f.kd,
                                          static_cast<int>(v), static_cast<int>(w));
            Series back = transport_slab(moved, f.dec, f.kd, static_cast<int>(w),
                                         static_cast<int>(v));
            CHECK(back.same_terms(fam.at(static_cast<int>(v))));
        }
    }
}

TEST_CASE("serialization: sorted exponents, exact rationals") {
    Fx f = setup("interval", 2);
    Series s(f.trunc);
    s.add_term(ex({1}, {1}), Rat(-3));
    s.add_term(ex({-1}, {0}), Rat(1, 2));
    Json j = series_to_json(s);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["m"][0] == -1);
    CHECK(j[0]["coeff"] == "1/2");
    CHECK(j[1]["coeff"] == "-3");
    CHECK(j[1]["r"] == 0);
}

TEST_CASE("truncation windows reject support without a positive grading") {
    // A series support containing +x and -x (cost zero both ways) admits no
    // strictly positive grading.
    std::vector<IntVec> gens = {iv({1, 0}), iv({-1, 0})};
    CHECK(!dual_interior_point(gens, 2).has_value());
}
