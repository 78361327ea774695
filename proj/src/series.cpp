#include "mirror/series.hpp"

#include <algorithm>

#include "mirror/cones.hpp"

namespace mirror {

std::string exponent_str(const Exponent& e) {
    std::string s = "(m=" + vec_str(e.m) + ",r=" + e.r.str() + ",q=" + vec_str(e.q) + ")";
    return s;
}

Series Series::monomial(Truncation t, const Exponent& e, const Rat& c) {
    Series s(std::move(t));
    s.add_term(e, c);
    return s;
}

Series Series::constant(Truncation t, int n, int r, const Rat& c) {
    return monomial(std::move(t), zero_exponent(n, r), c);
}

Rat Series::coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Series::add_term(const Exponent& e, const Rat& c) {
    if (c == 0) return;
    if (!trunc_.in_window(e)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Series add(const Series& a, const Series& b) {
    Series out = a;
    for (const auto& [e, c] : b.terms()) out.add_term(e, c);
    return out;
}

Series sub(const Series& a, const Series& b) {
    Series out = a;
    for (const auto& [e, c] : b.terms()) out.add_term(e, -c);
    return out;
}

Series negate(const Series& a) {
    Series out(a.trunc());
    for (const auto& [e, c] : a.terms()) out.add_term(e, -c);
    return out;
}

Series scale(const Rat& s, const Series& a) {
    Series out(a.trunc());
    if (s == 0) return out;
    for (const auto& [e, c] : a.terms()) out.add_term(e, s * c);
    return out;
}

Series mul(const Series& a, const Series& b) {
    require(a.trunc().compatible(b.trunc()), Errc::internal, "mul with incompatible truncations");
    Series out(a.trunc());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Exponent e = exp_add(ea, eb);
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Series Series::unchecked(Truncation t, TermMap terms) {
    Series s(std::move(t));
    s.terms_ = std::move(terms);
    return s;
}

Series monomial_mul(const Series& a, const Exponent& delta, const Rat& c) {
    Series::TermMap shifted;
    for (const auto& [e, coef] : a.terms()) {
        Rat nc = coef * c;
        if (nc == 0) continue;
        shifted.emplace(exp_add(e, delta), std::move(nc));
    }
    return Series::unchecked(a.trunc(), std::move(shifted));
}

namespace {

long iteration_cap(const Truncation& t) {
    long cap = t.iter_cap;
    if (t.max_order >= 0 && t.max_order < Int(1 << 20)) {
        long p = static_cast<long>(t.max_order) + 8;
        if (p > cap) cap = p;
    }
    return cap;
}

}  // namespace

Series power(const Series& f, long e, int n, int r) {
    const Truncation& t = f.trunc();
    if (e == 0) return Series::constant(t, n, r, Rat(1));
    if (e > 0) {
        Series acc = Series::constant(t, n, r, Rat(1));
        Series base = f;
        long k = e;
        while (k > 0) {
            if (k & 1) acc = mul(acc, base);
            k >>= 1;
            if (k) base = mul(base, base);
        }
        return acc;
    }
    // Negative power: geometric-series inverse, then positive power.
    require(f.constant_term(n, r) == 1, Errc::constant_term_not_one,
            "negative power needs constant term 1");
    Series u = sub(f, Series::constant(t, n, r, Rat(1)));
    Series inv = Series::constant(t, n, r, Rat(1));
    Series p = Series::constant(t, n, r, Rat(1));
    Rat sign(1);
    long cap = iteration_cap(t);
    for (long i = 1; i <= cap; ++i) {
        p = mul(p, u);
        if (p.is_zero()) break;
        sign = -sign;
        inv = add(inv, scale(sign, p));
        require(i < cap, Errc::truncation_overflow,
                "inverse iteration did not terminate within the window");
    }
    return power(inv, -e, n, r);
}

Series log_series(const Series& f, int n, int r) {
    const Truncation& t = f.trunc();
    require(f.constant_term(n, r) == 1, Errc::constant_term_not_one, "log needs constant term 1");
    Series u = sub(f, Series::constant(t, n, r, Rat(1)));
    Series out(t);
    Series p = Series::constant(t, n, r, Rat(1));
    Rat sign(-1);
    long cap = iteration_cap(t);
    for (long i = 1; i <= cap; ++i) {
        p = mul(p, u);
        if (p.is_zero()) break;
        sign = -sign;
        out = add(out, scale(sign / Rat(i), p));
        require(i < cap, Errc::truncation_overflow,
                "log iteration did not terminate within the window");
    }
    return out;
}

Series exp_series(const Series& g, int n, int r) {
    const Truncation& t = g.trunc();
    require(g.constant_term(n, r) == 0, Errc::constant_term_not_one,
            "exp needs constant term 0");
    Series out = Series::constant(t, n, r, Rat(1));
    Series p = Series::constant(t, n, r, Rat(1));
    Rat fact(1);
    long cap = iteration_cap(t);
    for (long i = 1; i <= cap; ++i) {
        p = mul(p, g);
        if (p.is_zero()) break;
        fact *= Rat(i);
        out = add(out, scale(Rat(1) / fact, p));
        require(i < cap, Errc::truncation_overflow,
                "exp iteration did not terminate within the window");
    }
    return out;
}

Series pure_q_part(const Series& f) {
    Series out(f.trunc());
    for (const auto& [e, c] : f.terms())
        if (is_pure_q(e)) out.add_term(e, c);
    return out;
}

Exponent chart_shift(const Decomposition& dec, const KaehlerData& kd, int v, int v_prime) {
    Exponent delta;
    delta.m = vec_sub(dec.vertices[static_cast<std::size_t>(v)],
                      dec.vertices[static_cast<std::size_t>(v_prime)]);
    delta.r = 0;
    delta.q = vec_sub(kd.psibar_at(v), kd.psibar_at(v_prime));
    return delta;
}

Exponent transport_shift(const Decomposition& dec, const KaehlerData& kd, int v, int v_prime) {
    if (v != v_prime)
        require(adjacent_vertices(dec, v, v_prime), Errc::not_adjacent,
                "transport between vertices of no common cell");
    return chart_shift(dec, kd, v, v_prime);
}

Series transport_slab(const Series& f, const Decomposition& dec, const KaehlerData& kd, int v,
                      int v_prime) {
    Exponent delta = transport_shift(dec, kd, v, v_prime);
    return monomial_mul(f, delta, Rat(1));
}

Truncation truncation_for(const Decomposition& dec, const KaehlerData& kd, int v, int k,
                          const std::vector<Exponent>& extra_support) {
    const std::size_t n = static_cast<std::size_t>(dec.dim);
    const std::size_t r = static_cast<std::size_t>(kd.rank);
    const IntVec& vv = dec.vertices[static_cast<std::size_t>(v)];

    // Support: naive slab exponents at v, Q unit vectors, extras.
    std::vector<IntVec> support;  // packed (m | q)
    bool costs_nonneg = true;
    auto push = [&](const IntVec& m, const IntVec& q) {
        IntVec s = m;
        s.insert(s.end(), q.begin(), q.end());
        if (vec_is_zero(s)) return;
        if (vec_sum(q) < 0) costs_nonneg = false;
        support.push_back(std::move(s));
    };
    for (std::size_t w = 0; w < dec.vertices.size(); ++w) {
        if (static_cast<int>(w) == v) continue;
        push(vec_sub(dec.vertices[w], vv),
             vec_sub(kd.psibar_at(static_cast<int>(w)), kd.psibar_at(v)));
    }
    for (std::size_t i = 0; i < r; ++i) push(zero_vec(n), unit_vec(r, i));
    for (const auto& e : extra_support) {
        require(e.r == 0, Errc::internal, "support exponents must have r = 0");
        push(e.m, e.q);
    }

    auto ell = dual_interior_point(support, static_cast<int>(n + r));
    require(ell.has_value(), Errc::truncation_overflow,
            "no positive grading on the slab support at vertex " + std::to_string(v) +
                "; the support cone is not salient, so no finite truncation window is exact");

    Truncation t;
    t.weight_m.assign(ell->begin(), ell->begin() + static_cast<long>(n));
    t.weight_q.assign(ell->begin() + static_cast<long>(n), ell->end());

    // The window must contain every support exponent and every pure-Q target
    // of degree <= k; the lower-set property takes care of everything else.
    Int max_support(1);
    Int max_support_qdeg(0);
    for (const auto& s : support) {
        Int val = vec_dot(*ell, s);
        require(val >= 1, Errc::internal, "grading not >= 1 on support");
        if (val > max_support) max_support = val;
        Int qd(0);
        for (std::size_t i = n; i < s.size(); ++i) qd += s[i];
        if (qd > max_support_qdeg) max_support_qdeg = qd;
    }
    Int wq_max(0);
    for (const auto& wq : t.weight_q)
        if (wq > wq_max) wq_max = wq;
    t.max_order = Int(k) * std::max(wq_max, Int(1));
    if (max_support > t.max_order) t.max_order = max_support;
    t.use_qdeg = costs_nonneg;
    t.qdeg_max = std::max(Int(k), max_support_qdeg);
    t.m_inf_max = t.max_order * std::max(Int(1), diameter_inf(dec));
    t.iter_cap = 256;
    return t;
}

Json series_to_json(const Series& f) {
    Json arr = Json::array();
    for (const auto& [e, c] : f.terms()) {
        Json t;
        t["m"] = intvec_to_json(e.m);
        t["r"] = int_to_json(e.r);
        t["q"] = intvec_to_json(e.q);
        t["coeff"] = rat_str(c);
        arr.push_back(std::move(t));
    }
    return arr;
}

namespace {

std::string var_name(std::size_t i, std::size_t n) {
    if (n <= 3) {
        const char* names[] = {"x", "y", "w"};
        return names[i];
    }
    return "x" + std::to_string(i + 1);
}

std::string q_name(std::size_t i, std::size_t r) {
    if (r == 1) return "t";
    return "t" + std::to_string(i + 1);
}

void append_power(std::string& s, const std::string& var, const Int& e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += var;
    if (e != 1) s += "^" + e.str();
}

}  // namespace

std::string series_to_text(const Series& f) {
    if (f.terms().empty()) return "0";
    std::string out;
    for (const auto& [e, c] : f.terms()) {
        std::string mono;
        for (std::size_t i = 0; i < e.m.size(); ++i) append_power(mono, var_name(i, e.m.size()), e.m[i]);
        if (e.r != 0) append_power(mono, "s", e.r);
        for (std::size_t i = 0; i < e.q.size(); ++i) append_power(mono, q_name(i, e.q.size()), e.q[i]);
        std::string coef = rat_str(c);
        std::string term;
        if (mono.empty())
            term = coef;
        else if (coef == "1")
            term = mono;
        else if (coef == "-1")
            term = "-" + mono;
        else
            term = coef + "*" + mono;
        if (out.empty()) {
            out = term;
        } else if (!term.empty() && term[0] == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out;
}

}  // namespace mirror
