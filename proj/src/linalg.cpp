#include "mirror/linalg.hpp"

#include "mirror/error.hpp"

namespace mirror {

Int det_bareiss(IntMat m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    for (const auto& row : m)
        if (row.size() != n) fail(Errc::internal, "det of non-square matrix");
    Int prev = 1;
    Int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

namespace {

// Rational row echelon; returns pivot column per row (as used) and mutates a/b.
struct Echelon {
    RatMat a;
    RatVec b;
    bool has_b = false;
    std::vector<std::size_t> pivot_cols;

    void reduce() {
        const std::size_t rows = a.size();
        const std::size_t cols = rows ? a[0].size() : 0;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t p = r;
            while (p < rows && a[p][c] == 0) ++p;
            if (p == rows) continue;
            std::swap(a[r], a[p]);
            if (has_b) std::swap(b[r], b[p]);
            Rat inv = a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[r][j] /= inv;
            if (has_b) b[r] /= inv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || a[i][c] == 0) continue;
                Rat f = a[i][c];
                for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
                if (has_b) b[i] -= f * b[r];
            }
            pivot_cols.push_back(c);
            ++r;
        }
    }
};

RatMat to_rat(const IntMat& m) {
    RatMat r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        r[i].resize(m[i].size());
        for (std::size_t j = 0; j < m[i].size(); ++j) r[i][j] = Rat(m[i][j]);
    }
    return r;
}

IntVec clear_denominators(const RatVec& v) {
    Int l = 1;
    for (const auto& x : v) {
        Int d = boost::multiprecision::denominator(x);
        l = l / int_gcd(l, d) * d;
    }
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        r[i] = boost::multiprecision::numerator(v[i]) * (l / boost::multiprecision::denominator(v[i]));
    }
    return primitive(r);
}

}  // namespace

int rank_of(const IntMat& m) {
    if (m.empty()) return 0;
    Echelon e{to_rat(m), {}, false, {}};
    e.reduce();
    return static_cast<int>(e.pivot_cols.size());
}

std::optional<RatVec> solve_unique(const IntMat& a, const IntVec& b) {
    RatVec rb(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) rb[i] = Rat(b[i]);
    LinearSolve s = solve_exact(to_rat(a), rb);
    if (!s.consistent || !s.unique) return std::nullopt;
    return s.solution;
}

std::vector<IntVec> nullspace(const IntMat& a) {
    if (a.empty()) return {};
    const std::size_t cols = a[0].size();
    Echelon e{to_rat(a), {}, false, {}};
    e.reduce();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<IntVec> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        RatVec v(cols, Rat(0));
        v[free_c] = 1;
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
            v[e.pivot_cols[r]] = -e.a[r][free_c];
        }
        basis.push_back(clear_denominators(v));
    }
    return basis;
}

RatMat inverse(const IntMat& m) {
    const std::size_t n = m.size();
    RatMat aug = to_rat(m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Rat(1) : Rat(0));
    }
    Echelon e{std::move(aug), {}, false, {}};
    e.reduce();
    if (e.pivot_cols.size() != n) fail(Errc::internal, "inverse of singular matrix");
    RatMat inv(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.a[i][n + j];
    return inv;
}

Int minors_gcd(const IntMat& m) {
    const std::size_t s = m.size();
    if (s == 0) return 1;
    const std::size_t d = m[0].size();
    if (s > d) fail(Errc::internal, "minors_gcd: more rows than columns");
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    Int g = 0;
    while (true) {
        IntMat sub(s, IntVec(s));
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) sub[i][j] = m[i][idx[j]];
        g = int_gcd(g, det_bareiss(sub));
        if (g == 1) return g;
        std::size_t i = s;
        while (i > 0) {
            --i;
            if (idx[i] != d - s + i) break;
            if (i == 0) return g;
        }
        ++idx[i];
        for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
}

IntVec mat_apply(const IntMat& m, const IntVec& v) {
    IntVec r(m.size(), Int(0));
    for (std::size_t i = 0; i < m.size(); ++i) r[i] = vec_dot(m[i], v);
    return r;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    IntMat r(n, IntVec(m, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t p = 0; p < k; ++p)
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][p] * b[p][j];
    return r;
}

IntMat identity_mat(std::size_t n) {
    IntMat m(n, IntVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

bool is_identity(const IntMat& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            if (m[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

LinearSolve solve_exact(RatMat a, RatVec b) {
    LinearSolve out;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    Echelon e{std::move(a), std::move(b), true, {}};
    e.reduce();
    for (std::size_t i = e.pivot_cols.size(); i < rows; ++i) {
        if (e.b[i] != 0) {
            out.consistent = false;
            return out;
        }
    }
    out.consistent = true;
    out.unique = (e.pivot_cols.size() == cols);
    if (out.unique) {
        out.solution.assign(cols, Rat(0));
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) out.solution[e.pivot_cols[r]] = e.b[r];
    }
    return out;
}

}  // namespace mirror
