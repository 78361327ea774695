// numeric.hpp
// Exact arbitrary-precision integer/rational scalars and small vector helpers.
// Everything in this library is exact; there is no floating point anywhere.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <string>
#include <vector>

namespace mirror {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int int_gcd(Int a, Int b) {
    a = int_abs(a);
    b = int_abs(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline IntVec zero_vec(std::size_t n) { return IntVec(n, Int(0)); }

inline IntVec unit_vec(std::size_t n, std::size_t i) {
    IntVec v(n, Int(0));
    v[i] = 1;
    return v;
}

inline IntVec vec_add(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec vec_sub(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline IntVec vec_neg(const IntVec& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline IntVec vec_scale(const Int& c, const IntVec& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline Int vec_dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Int vec_sum(const IntVec& a) {
    Int s = 0;
    for (const auto& x : a) s += x;
    return s;
}

inline bool vec_is_zero(const IntVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

inline bool vec_nonneg(const IntVec& a) {
    for (const auto& x : a)
        if (x < 0) return false;
    return true;
}

inline Int vec_inf_norm(const IntVec& a) {
    Int m = 0;
    for (const auto& x : a) {
        Int v = int_abs(x);
        if (v > m) m = v;
    }
    return m;
}

// Lexicographic order; total order used for all canonical sorting of vectors.
inline bool lex_less(const IntVec& a, const IntVec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

// Divide out the gcd of all entries; first nonzero entry keeps its sign.
inline IntVec primitive(IntVec v) {
    Int g = 0;
    for (const auto& x : v) g = int_gcd(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

inline std::string vec_str(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    s += ")";
    return s;
}

inline std::string rat_str(const Rat& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline bool rat_is_integer(const Rat& r) { return boost::multiprecision::denominator(r) == 1; }

}  // namespace mirror
