// series.hpp
// Sparse truncated power series over the exponent lattice M ⊕ Z ⊕ Q^gp with
// exact rational coefficients.
//
// Truncation windows are weighted-order windows: an integer functional ell
// with ell >= 1 on the designated support, a cap P on ell, optionally a cap
// on the Q-degree (valid when all support costs are >= 0) and on ‖m‖∞. Such
// a window is a lower set under addition of support exponents, which makes
// truncate-as-you-go multiplication exact on the window and gives log/exp a
// structural termination bound.
//
// Series are immutable values; all operations are pure functions.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mirror/jsonio.hpp"
#include "mirror/kaehler.hpp"
#include "mirror/numeric.hpp"

namespace mirror {

struct Exponent {
    IntVec m;  // Z^n part
    Int r;     // the Z factor of Λ ≅ M ⊕ Z (0 for slab series)
    IntVec q;  // Q^gp part, Z^rank

    bool operator==(const Exponent& o) const { return m == o.m && r == o.r && q == o.q; }
    bool operator!=(const Exponent& o) const { return !(*this == o); }
};

// Canonical total order: lexicographic on (m, r, q).
struct ExponentLess {
    bool operator()(const Exponent& a, const Exponent& b) const {
        if (a.m != b.m) return lex_less(a.m, b.m);
        if (a.r != b.r) return a.r < b.r;
        return lex_less(a.q, b.q);
    }
};

inline Exponent exp_add(const Exponent& a, const Exponent& b) {
    return {vec_add(a.m, b.m), a.r + b.r, vec_add(a.q, b.q)};
}
inline Exponent exp_neg(const Exponent& a) { return {vec_neg(a.m), -a.r, vec_neg(a.q)}; }
inline Exponent exp_sub(const Exponent& a, const Exponent& b) { return exp_add(a, exp_neg(b)); }
inline Exponent zero_exponent(int n, int r) {
    return {zero_vec(static_cast<std::size_t>(n)), Int(0), zero_vec(static_cast<std::size_t>(r))};
}
inline Int qdegree(const Exponent& e) { return vec_sum(e.q); }
inline bool is_pure_q(const Exponent& e) { return vec_is_zero(e.m) && e.r == 0; }

std::string exponent_str(const Exponent& e);

struct Truncation {
    IntVec weight_m;   // ell on the m part
    IntVec weight_q;   // ell on the q part
    Int max_order = 0; // cap on ell
    bool use_qdeg = false;
    Int qdeg_max = 0;  // cap on Σq when use_qdeg
    Int m_inf_max = 0; // cap on ‖m‖∞ (0 = disabled)
    long iter_cap = 256;

    Int order_of(const Exponent& e) const {
        return vec_dot(weight_m, e.m) + vec_dot(weight_q, e.q);
    }
    bool in_window(const Exponent& e) const {
        if (order_of(e) > max_order) return false;
        if (use_qdeg && qdegree(e) > qdeg_max) return false;
        if (m_inf_max > 0 && vec_inf_norm(e.m) > m_inf_max) return false;
        return true;
    }
    bool compatible(const Truncation& o) const {
        return weight_m == o.weight_m && weight_q == o.weight_q && max_order == o.max_order &&
               use_qdeg == o.use_qdeg && qdeg_max == o.qdeg_max && m_inf_max == o.m_inf_max;
    }
};

class Series {
  public:
    using TermMap = std::map<Exponent, Rat, ExponentLess>;

    Series() = default;
    explicit Series(Truncation t) : trunc_(std::move(t)) {}

    static Series monomial(Truncation t, const Exponent& e, const Rat& c);
    static Series constant(Truncation t, int n, int r, const Rat& c);

    const Truncation& trunc() const { return trunc_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rat coeff(const Exponent& e) const;
    Rat constant_term(int n, int r) const { return coeff(zero_exponent(n, r)); }

    // In-place accumulation used by the builders; drops out-of-window and
    // zero coefficients.
    void add_term(const Exponent& e, const Rat& c);

    // Construct from explicit terms without window filtering (transports land
    // in a shifted window; their consumers compare explicit term maps).
    static Series unchecked(Truncation t, TermMap terms);

    bool same_terms(const Series& o) const { return terms_ == o.terms_; }

  private:
    Truncation trunc_;
    TermMap terms_;
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series negate(const Series& a);
Series scale(const Rat& c, const Series& a);

// Truncated product; exact on the window (see header comment).
Series mul(const Series& a, const Series& b);

// Shift every exponent by delta and multiply coefficients by c. Exact; the
// result keeps the input's truncation metadata (used for transports, whose
// comparisons are on explicit term maps).
Series monomial_mul(const Series& a, const Exponent& delta, const Rat& c);

// f^e. Negative e requires constant term exactly 1.
Series power(const Series& f, long e, int n, int r);

// log f for constant term exactly 1; Taylor series of log(1+x), iterated
// until the truncated power vanishes (bounded by the window order).
Series log_series(const Series& f, int n, int r);

// exp g for constant term 0.
Series exp_series(const Series& g, int n, int r);

// Sub-series of exponents with m = 0 and r = 0 (constant included).
Series pure_q_part(const Series& f);

// Slab transport: z^{(v-v', 0, psibar(v)-psibar(v'))} · f for vertices of a
// common cell. Throws NOT_ADJACENT otherwise (v == v' is the identity).
Series transport_slab(const Series& f, const Decomposition& dec, const KaehlerData& kd, int v,
                      int v_prime);

// Exact shift exponent used by transport_slab (requires a common cell).
Exponent transport_shift(const Decomposition& dec, const KaehlerData& kd, int v, int v_prime);

// The same shift for arbitrary vertex pairs: single transports compose along
// any vertex path and the shifts telescope, so the formula is global.
Exponent chart_shift(const Decomposition& dec, const KaehlerData& kd, int v, int v_prime);

// Build a truncation window for computations at vertex v to Q-degree k:
// support = naive slab exponents at v, the Q unit vectors, and any extra
// exponents the caller will introduce (e.g. correction candidates). Throws
// TRUNCATION_OVERFLOW when no positive integer grading exists.
Truncation truncation_for(const Decomposition& dec, const KaehlerData& kd, int v, int k,
                          const std::vector<Exponent>& extra_support = {});

// JSON: [{"m": [...], "r": 0, "q": [...], "coeff": "p/q"}, ...], exponents
// in canonical order.
Json series_to_json(const Series& f);
std::string series_to_text(const Series& f);

}  // namespace mirror
