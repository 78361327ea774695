#include "mirror/slab.hpp"

#include <algorithm>
#include <functional>

#include "mirror/cones.hpp"

namespace mirror {

Series naive_slab(const Decomposition& dec, const KaehlerData& kd, int v, const Truncation& trunc) {
    require(kd.strictly_convex, Errc::malformed_input,
            "slab functions need a strictly convex universal function");
    Series s(trunc);
    const IntVec& vv = dec.vertices[static_cast<std::size_t>(v)];
    for (std::size_t w = 0; w < dec.vertices.size(); ++w) {
        Exponent e;
        e.m = vec_sub(dec.vertices[w], vv);
        e.r = 0;
        e.q = vec_sub(kd.psibar_at(static_cast<int>(w)), kd.psibar_at(v));
        s.add_term(e, Rat(1));
    }
    return s;
}

Series naive_slab(const Decomposition& dec, const KaehlerData& kd, int v, int k) {
    return naive_slab(dec, kd, v, truncation_for(dec, kd, v, k));
}

namespace {

Series pure_q_above_zero(const Series& f, int k) {
    Series out(f.trunc());
    for (const auto& [e, c] : f.terms()) {
        if (!is_pure_q(e)) continue;
        Int d = qdegree(e);
        if (d >= 1 && d <= k) out.add_term(e, c);
    }
    return out;
}

void assert_integral(const Series& f, const std::string& where) {
    for (const auto& [e, c] : f.terms())
        require(rat_is_integer(c), Errc::integrality,
                where + ": non-integer coefficient " + rat_str(c) + " at " + exponent_str(e));
}

}  // namespace

SlabFunction normalize_at(const Decomposition& dec, const KaehlerData& kd, int v, int k) {
    const int n = dec.dim;
    const int r = kd.rank;
    Truncation trunc = truncation_for(dec, kd, v, k);
    Series f = naive_slab(dec, kd, v, trunc);

    // Add a pure-Q correction killing the pure-Q part of log f, iterating
    // to an exact fixpoint; every pass recomputes the log, so lower degrees
    // are re-verified rather than assumed.
    const long cap = 2 * k + 8;
    bool settled = (r == 0);
    for (long round = 0; round < cap && !settled; ++round) {
        Series bad = pure_q_above_zero(log_series(f, n, r), k);
        if (bad.is_zero()) {
            settled = true;
            break;
        }
        f = sub(f, bad);
    }
    require(settled || pure_q_above_zero(log_series(f, n, r), k).is_zero(),
            Errc::truncation_overflow, "pure-Q normalization did not reach a fixpoint at vertex " +
                                            std::to_string(v));
    assert_integral(f, "normalize");

    SlabFunction out;
    out.vertex = v;
    out.order = k;
    out.f = f;
    Series g = pure_q_part(f);
    g.add_term(zero_exponent(n, r), Rat(-1));
    out.g = g;
    return out;
}

int canonical_vertex(const Decomposition& dec, const KaehlerData& kd) {
    (void)kd;
    auto interior = interior_vertex_indices(dec);
    if (!interior.empty()) return interior.front();
    int best = 0;
    for (std::size_t i = 1; i < dec.vertices.size(); ++i)
        if (lex_less(dec.vertices[i], dec.vertices[static_cast<std::size_t>(best)])) best = static_cast<int>(i);
    return best;
}

namespace {

// Correction candidates in the canonical frame: exponents (m, q), m = w - v0
// for a lattice point w, q with Σq in 1..k and (e + shift_v) ∈ P̄_v for every
// vertex v; the naive exponents themselves are pinned to coefficient 1.
std::vector<Exponent> correction_candidates(const Decomposition& dec, const KaehlerData& kd, int v0,
                                            int k) {
    const std::size_t r = static_cast<std::size_t>(kd.rank);
    std::vector<Exponent> out;
    if (r == 0) return out;
    for (std::size_t w = 0; w < dec.vertices.size(); ++w) {
        IntVec m = vec_sub(dec.vertices[w], dec.vertices[static_cast<std::size_t>(v0)]);
        // Componentwise lower bound on q over all vertex memberships.
        IntVec lower(r);
        bool feasible = true;
        for (std::size_t i = 0; i < r; ++i) lower[i] = Int(0);
        bool first = true;
        for (std::size_t v = 0; v < dec.vertices.size() && feasible; ++v) {
            IntVec dir = vec_sub(dec.vertices[w], dec.vertices[v]);
            IntVec phi;
            try {
                phi = phi_value(dec, kd, static_cast<int>(v), dir);
            } catch (const Error&) {
                feasible = false;  // w - v outside the wedge cannot happen for w in σ
                break;
            }
            IntVec bound = vec_add(phi, vec_sub(kd.psibar_at(static_cast<int>(v)),
                                                kd.psibar_at(v0)));
            if (first) {
                lower = bound;
                first = false;
            } else {
                for (std::size_t i = 0; i < r; ++i)
                    if (bound[i] > lower[i]) lower[i] = bound[i];
            }
        }
        if (!feasible) continue;
        IntVec naive_q = vec_sub(kd.psibar_at(static_cast<int>(w)), kd.psibar_at(v0));
        // Enumerate q >= lower with Σq in 1..k.
        IntVec q(r);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i + 1 == r) {
                for (Int last = lower[i];; ++last) {
                    q[i] = last;
                    Int total = vec_sum(q);
                    if (total > Int(k)) break;
                    if (total >= 1 && q != naive_q) out.push_back({m, Int(0), q});
                }
                return;
            }
            for (Int val = lower[i];; ++val) {
                q[i] = val;
                Int partial = Int(0);
                for (std::size_t j = 0; j <= i; ++j) partial += q[j];
                Int rest_min = Int(0);
                for (std::size_t j = i + 1; j < r; ++j) rest_min += lower[j];
                if (partial + rest_min > Int(k)) break;
                rec(i + 1);
            }
        };
        rec(0);
    }
    std::sort(out.begin(), out.end(), ExponentLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// All q in N^r \ {0} with Σq <= k, canonical order.
std::vector<IntVec> positive_q_targets(int rank, int k) {
    std::vector<IntVec> out;
    if (rank == 0) return out;
    IntVec q(static_cast<std::size_t>(rank), Int(0));
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i + 1 == static_cast<std::size_t>(rank)) {
            for (Int last(0);; ++last) {
                q[i] = last;
                if (vec_sum(q) > Int(k)) break;
                if (vec_sum(q) >= 1) out.push_back(q);
            }
            q[i] = 0;
            return;
        }
        for (Int val(0);; ++val) {
            q[i] = val;
            Int partial(0);
            for (std::size_t j = 0; j <= i; ++j) partial += q[j];
            if (partial > Int(k)) break;
            rec(i + 1);
        }
        q[i] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

}  // namespace

SlabFamily slab_family(const Decomposition& dec, const KaehlerData& kd, int k) {
    require(kd.strictly_convex, Errc::malformed_input,
            "slab functions need a strictly convex universal function");
    const int n = dec.dim;
    const int r = kd.rank;
    const int v0 = canonical_vertex(dec, kd);
    const std::size_t nv = dec.vertices.size();

    auto candidates = correction_candidates(dec, kd, v0, k);

    // Canonical window; candidate exponents join the grading support.
    Truncation trunc0 = truncation_for(dec, kd, v0, k, candidates);
    Series f = naive_slab(dec, kd, v0, trunc0);

    SlabFamily fam;
    fam.canonical_vertex = v0;
    fam.order = k;
    fam.trunc = trunc0;

    if (r > 0 && !candidates.empty()) {
        // Per-vertex windows and transport shifts. Corrections of canonical
        // Q-degree <= k reach vertex v with degree lowered by deg ψ̄(v), so
        // conditions there are enforceable only through that reduced depth.
        std::vector<Exponent> shifts(nv);
        std::vector<Truncation> truncs(nv);
        std::vector<int> depth(nv, k);
        for (std::size_t v = 0; v < nv; ++v) {
            shifts[v] = chart_shift(dec, kd, v0, static_cast<int>(v));
            std::vector<Exponent> extra;
            for (const auto& e : candidates) extra.push_back(exp_add(e, shifts[v]));
            truncs[v] = truncation_for(dec, kd, static_cast<int>(v), k, extra);
            Int spread = kd.psibar_degree(static_cast<int>(v)) - kd.psibar_degree(v0);
            if (spread > 0) depth[v] = k - static_cast<int>(spread);
        }
        auto targets = positive_q_targets(r, k);

        // Newton iteration: solve the linearized condition-3 system over all
        // candidates at once; exact convergence in finitely many rounds
        // because corrections live in a finite filtered window.
        const long rounds_cap = 2 * k + 8;
        bool settled = false;
        for (long round = 0; round < rounds_cap; ++round) {
            // Current residuals and inverses per vertex.
            std::vector<Series> logs, invs;
            logs.reserve(nv);
            invs.reserve(nv);
            for (std::size_t v = 0; v < nv; ++v) {
                Series fv(truncs[v]);
                for (const auto& [e, c] : f.terms()) fv.add_term(exp_add(e, shifts[v]), c);
                require(fv.constant_term(n, r) == 1, Errc::internal,
                        "family member lost its constant term");
                logs.push_back(log_series(fv, n, r));
                invs.push_back(power(fv, -1, n, r));
            }
            bool clean = true;
            for (std::size_t v = 0; v < nv && clean; ++v)
                clean = pure_q_above_zero(logs[v], depth[v]).is_zero();
            if (clean) {
                settled = true;
                break;
            }

            RatMat a;
            RatVec b;
            for (std::size_t v = 0; v < nv; ++v) {
                for (const auto& q : targets) {
                    if (vec_sum(q) > Int(depth[v])) continue;
                    Exponent target{zero_vec(static_cast<std::size_t>(n)), Int(0), q};
                    RatVec row(candidates.size(), Rat(0));
                    bool nonzero_row = false;
                    for (std::size_t j = 0; j < candidates.size(); ++j) {
                        Exponent shifted = exp_add(candidates[j], shifts[v]);
                        Rat coef = invs[v].coeff(exp_sub(target, shifted));
                        if (coef != 0) nonzero_row = true;
                        row[j] = coef;
                    }
                    Rat resid = logs[v].coeff(target);
                    if (!nonzero_row && resid == 0) continue;
                    a.push_back(std::move(row));
                    b.push_back(-resid);
                }
            }
            LinearSolve sol = solve_exact(std::move(a), std::move(b));
            require(sol.consistent && sol.unique, Errc::truncation_overflow,
                    std::string("the order-") + std::to_string(k) +
                        " correction space cannot satisfy the slab conditions (" +
                        (sol.consistent ? "underdetermined" : "inconsistent") +
                        "); raise the order beyond the universal-function degree spread");
            for (std::size_t j = 0; j < candidates.size(); ++j) {
                if (sol.solution[j] == 0) continue;
                f.add_term(candidates[j], sol.solution[j]);
            }
        }
        if (!settled) {
            // Full recomputation as the final word.
            for (std::size_t v = 0; v < nv; ++v) {
                Series fv(truncs[v]);
                for (const auto& [e, c] : f.terms()) fv.add_term(exp_add(e, shifts[v]), c);
                require(pure_q_above_zero(log_series(fv, n, r), depth[v]).is_zero(),
                        Errc::truncation_overflow, "slab family solve did not converge");
            }
        }
    }

    assert_integral(f, "slab family");
    for (const auto& e : candidates)
        if (f.coeff(e) != 0) fam.corrections.push_back(e);

    fam.members.reserve(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        Exponent shift = chart_shift(dec, kd, v0, static_cast<int>(v));
        fam.members.push_back(monomial_mul(f, shift, Rat(1)));
    }
    return fam;
}

SlabFunction slab_function(const Decomposition& dec, const KaehlerData& kd, int v, int k) {
    SlabFamily fam = slab_family(dec, kd, k);
    SlabFunction out;
    out.vertex = v;
    out.order = k;
    out.f = fam.at(v);
    // The pure-Q correction is read at the canonical vertex, where it is the
    // normalization series g.
    Series g = pure_q_part(fam.at(fam.canonical_vertex));
    g.add_term(zero_exponent(dec.dim, kd.rank), Rat(-1));
    out.g = g;
    return out;
}

namespace {

// Find an integer grading >= 1 on the support of f - 1; nullopt if none.
std::optional<std::pair<IntVec, IntVec>> support_grading(const Series& f, int n, int r) {
    std::vector<IntVec> support;
    for (const auto& [e, c] : f.terms()) {
        if (vec_is_zero(e.m) && e.r == 0 && vec_is_zero(e.q)) continue;
        IntVec s = e.m;
        s.insert(s.end(), e.q.begin(), e.q.end());
        support.push_back(std::move(s));
    }
    auto ell = dual_interior_point(support, n + r);
    if (!ell) return std::nullopt;
    IntVec wm(ell->begin(), ell->begin() + n);
    IntVec wq(ell->begin() + n, ell->end());
    return std::make_pair(wm, wq);
}

// Condition 3 at one vertex: rebuild a window from the member's own support.
bool condition3_holds(const Series& fv, int n, int r, int k, std::string& detail) {
    auto grading = support_grading(fv, n, r);
    if (!grading) {
        detail = "no positive grading on the support; cannot certify";
        return false;
    }
    Truncation t;
    t.weight_m = grading->first;
    t.weight_q = grading->second;
    Int max_wq(0);
    for (const auto& w : t.weight_q)
        if (w > max_wq) max_wq = w;
    t.max_order = Int(k) * (max_wq > 0 ? max_wq : Int(0));
    t.use_qdeg = false;
    t.m_inf_max = 0;
    Series windowed(t);
    for (const auto& [e, c] : fv.terms()) windowed.add_term(e, c);
    Series bad = pure_q_above_zero(log_series(windowed, n, r), k);
    if (!bad.is_zero()) {
        detail = "log has pure-Q terms: " + series_to_text(bad);
        return false;
    }
    return true;
}

}  // namespace

ConditionReport verify_family(const Decomposition& dec, const KaehlerData& kd,
                              const SlabFamily& family) {
    const int n = dec.dim;
    const int r = kd.rank;
    const int k = family.order;
    ConditionReport rep;
    auto add = [&](ConditionEntry e) {
        rep.all_pass = rep.all_pass && e.pass;
        rep.entries.push_back(std::move(e));
    };

    for (std::size_t v = 0; v < dec.vertices.size(); ++v) {
        const Series& fv = family.members[v];
        ConditionEntry e1;
        e1.condition = 1;
        e1.vertex = static_cast<int>(v);
        e1.pass = (fv.constant_term(n, r) == 1);
        e1.detail = e1.pass ? "constant term 1" : "constant term != 1";
        add(std::move(e1));

        ConditionEntry e0;
        e0.condition = 0;
        e0.vertex = static_cast<int>(v);
        e0.pass = true;
        for (const auto& [e, c] : fv.terms()) {
            if (e.r != 0 || !in_vertex_monoid(dec, kd, static_cast<int>(v), e.m, e.q)) {
                e0.pass = false;
                e0.detail = "exponent " + exponent_str(e) + " outside the vertex monoid";
                break;
            }
        }
        if (e0.pass) e0.detail = "support inside the vertex monoid";
        add(std::move(e0));

        // Corrections of canonical Q-degree <= k certify this vertex only
        // through the transport-shifted depth.
        Int spread = kd.psibar_degree(static_cast<int>(v)) -
                     kd.psibar_degree(family.canonical_vertex);
        int depth = (spread > 0) ? k - static_cast<int>(spread) : k;
        ConditionEntry e3;
        e3.condition = 3;
        e3.vertex = static_cast<int>(v);
        e3.pass = condition3_holds(fv, n, r, depth, e3.detail);
        if (e3.pass) e3.detail = "log has no pure-Q terms through order " + std::to_string(depth);
        add(std::move(e3));
    }

    for (std::size_t v = 0; v < dec.vertices.size(); ++v) {
        for (std::size_t w = 0; w < dec.vertices.size(); ++w) {
            if (v == w || !adjacent_vertices(dec, static_cast<int>(v), static_cast<int>(w))) continue;
            ConditionEntry e2;
            e2.condition = 2;
            e2.vertex = static_cast<int>(v);
            e2.vertex_other = static_cast<int>(w);
            Series moved = transport_slab(family.members[v], dec, kd, static_cast<int>(v),
                                          static_cast<int>(w));
            e2.pass = moved.same_terms(family.members[w]);
            e2.detail = e2.pass ? "transport matches" : "transport mismatch";
            add(std::move(e2));
        }
    }

    ConditionEntry e4;
    e4.condition = 4;
    e4.vertex = -1;
    e4.pass = true;
    e4.detail = "one slab function per vertex by construction";
    add(std::move(e4));
    return rep;
}

ConditionReport verify_conditions(const Decomposition& dec, const KaehlerData& kd, int k) {
    return verify_family(dec, kd, slab_family(dec, kd, k));
}

bool cone_contains(const Decomposition& dec, const KaehlerData& kd, const IntVec& m, const IntVec& q,
                   const Int& d) {
    if (d < 0) return false;
    if (d == 0) return vec_is_zero(m) && vec_nonneg(q);
    // m ∈ d·σ and q - d·ψ̄(m/d) ∈ N^r, checked inside one containing cell.
    for (const auto& cell : dec.cells) {
        std::vector<IntVec> gens;
        for (int idx : cell) {
            IntVec g = dec.vertices[static_cast<std::size_t>(idx)];
            g.push_back(Int(1));
            gens.push_back(std::move(g));
        }
        IntVec x = m;
        x.push_back(d);
        const std::size_t nn = x.size();
        IntMat cols(nn, IntVec(gens.size()));
        for (std::size_t i = 0; i < nn; ++i)
            for (std::size_t j = 0; j < gens.size(); ++j) cols[i][j] = gens[j][i];
        auto sol = solve_unique(cols, x);
        if (!sol) continue;
        bool inside = true;
        for (const auto& lam : *sol)
            if (lam < 0) inside = false;
        if (!inside) continue;
        // d·ψ̄(m/d) = Σ λ_i ψ̄(w_i) with λ from the homogeneous solve.
        RatVec need(static_cast<std::size_t>(kd.rank), Rat(0));
        for (std::size_t j = 0; j < cell.size(); ++j) {
            const IntVec& pb = kd.psibar_at(cell[j]);
            for (std::size_t i = 0; i < need.size(); ++i) need[i] += (*sol)[j] * Rat(pb[i]);
        }
        for (std::size_t i = 0; i < need.size(); ++i)
            if (Rat(q[i]) < need[i]) return false;
        return true;
    }
    return false;
}

MirrorEquation mirror_equation(const Decomposition& dec, const KaehlerData& kd, int k,
                               const std::optional<IntVec>& q_choice) {
    require(kd.rank >= 1, Errc::rank_zero_q,
            "the mirror equation needs an element q in Q \\ {0}; Q has rank 0");
    const std::size_t r = static_cast<std::size_t>(kd.rank);
    MirrorEquation eq;
    eq.q_choice = q_choice.value_or(unit_vec(r, 0));
    require(eq.q_choice.size() == r && vec_nonneg(eq.q_choice) && !vec_is_zero(eq.q_choice),
            Errc::malformed_input, "q must lie in Q \\ {0}");

    SlabFamily fam = slab_family(dec, kd, k);

    // Homogenize f_v by z^{(v, ψ̄(v), 1)}; independence of v is asserted.
    auto homogenize = [&](int v) {
        std::vector<std::pair<Exponent, Rat>> out;
        const IntVec& vv = dec.vertices[static_cast<std::size_t>(v)];
        for (const auto& [e, c] : fam.at(v).terms()) {
            require(e.r == 0, Errc::internal, "slab series with r != 0");
            Exponent h;
            h.m = vec_add(e.m, vv);
            h.r = 0;
            h.q = vec_add(e.q, kd.psibar_at(v));
            out.push_back({h, c});
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return ExponentLess{}(a.first, b.first); });
        return out;
    };
    eq.homogeneous_f = homogenize(0);
    for (std::size_t v = 1; v < dec.vertices.size(); ++v)
        require(homogenize(static_cast<int>(v)) == eq.homogeneous_f, Errc::internal,
                "homogenization depends on the vertex");

    auto pts = lattice_points(dec);
    for (const auto& m : pts) {
        ThetaGenerator g;
        g.name = "theta_" + vec_str(m);
        g.m = m;
        g.q = kd.psibar_at(dec.vertex_index(m));
        eq.generators.push_back(std::move(g));
        eq.xi_vertices.push_back({m, kd.psibar_at(dec.vertex_index(m))});
    }
    ThetaGenerator u;
    u.name = "U";
    u.apex = true;
    eq.generators.push_back(u);
    ThetaGenerator w;
    w.name = "W";
    w.apex = true;
    eq.generators.push_back(w);

    std::string zq = "z^" + vec_str(eq.q_choice);
    eq.equation_homogeneous = "U*W = " + zq + " * V0 * F";
    int origin = dec.origin_index();
    eq.equation_dehomogenized = "u*w = " + zq + " * (" + series_to_text(fam.at(origin)) + ")";
    return eq;
}

LiftResult enumerate_broken_lines(const Decomposition& dec, const KaehlerData& kd, int v_base,
                                  const Exponent& initial, int k) {
    const int n = dec.dim;
    require(static_cast<int>(initial.m.size()) == n && vec_is_zero(initial.m) && initial.r == -1,
            Errc::malformed_input, "initial monomial must have m̄ = (0, -1)");
    require(static_cast<int>(initial.q.size()) == kd.rank, Errc::malformed_input,
            "initial q arity mismatch");

    SlabFamily fam = slab_family(dec, kd, k);
    const Series& fv = fam.at(v_base);

    LiftResult out;
    out.base_vertex = v_base;
    out.initial = initial;
    out.lift = monomial_mul(fv, initial, Rat(1));

    IntVec up = zero_vec(static_cast<std::size_t>(n));
    up.push_back(Int(1));

    for (const auto& [e, c] : fv.terms()) {
        BrokenLine line;
        line.base_vertex = v_base;
        BrokenLineSegment first;
        first.direction = up;  // derivative is -m̄ of the attached monomial
        first.monomial = initial;
        first.coeff = Rat(1);
        line.segments.push_back(std::move(first));

        Exponent fin = exp_add(initial, e);
        BrokenLineSegment second;
        second.direction = vec_neg(fin.m);
        second.direction.push_back(-fin.r);
        second.monomial = fin;
        second.coeff = c;
        line.segments.push_back(std::move(second));

        line.bends = !vec_is_zero(e.m);
        line.final_exponent = fin;
        line.final_coeff = c;
        out.lines.push_back(std::move(line));
    }
    return out;
}

namespace {

Exponent apply_monodromy(const Exponent& e, const IntVec& dv, const IntVec& dpsi) {
    Exponent out = e;
    out.m = vec_add(e.m, vec_scale(e.r, dv));
    out.q = vec_add(e.q, vec_scale(e.r, dpsi));
    return out;
}

}  // namespace

LiftInvarianceReport lift_invariance_family(const Decomposition& dec, const KaehlerData& kd,
                                            const Exponent& initial, const SlabFamily& family) {
    LiftInvarianceReport rep;
    for (std::size_t v = 0; v < dec.vertices.size(); ++v) {
        for (std::size_t w = 0; w < dec.vertices.size(); ++w) {
            if (v == w || !adjacent_vertices(dec, static_cast<int>(v), static_cast<int>(w))) continue;
            Series lift_v = monomial_mul(family.members[v], initial, Rat(1));
            Series lift_w = monomial_mul(family.members[w], initial, Rat(1));
            // Transport the v-lift with the P-monodromy towards w.
            IntVec dv = vec_sub(dec.vertices[w], dec.vertices[v]);
            IntVec dpsi = vec_sub(kd.psibar_at(static_cast<int>(w)), kd.psibar_at(static_cast<int>(v)));
            Series::TermMap moved;
            for (const auto& [e, c] : lift_v.terms()) moved.emplace(apply_monodromy(e, dv, dpsi), c);
            Series lhs = Series::unchecked(lift_v.trunc(), std::move(moved));
            LiftInvarianceEntry entry;
            entry.v = static_cast<int>(v);
            entry.v_prime = static_cast<int>(w);
            entry.pass = lhs.same_terms(lift_w);
            rep.all_pass = rep.all_pass && entry.pass;
            rep.entries.push_back(entry);
        }
    }
    return rep;
}

LiftInvarianceReport lift_invariance(const Decomposition& dec, const KaehlerData& kd,
                                     const Exponent& initial, int k) {
    return lift_invariance_family(dec, kd, initial, slab_family(dec, kd, k));
}

}  // namespace mirror
