#pragma once

#include <algorithm>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3seg/bundle.hpp"
#include "k3seg/errors.hpp"
#include "k3seg/poly.hpp"
#include "k3seg/reference.hpp"
#include "k3seg/sturm.hpp"
#include "k3seg/tautsegre.hpp"

namespace k3seg {

// ---- family polynomials computed by the engine ----

/// int s_{2k}(F^[k]) in (r, S1, S2), by the recursion.
inline Poly symbolic_top_integral(int k) {
    TautSegreEngine e(SegreData::symbolic());
    return e.top_integral(k);
}

/// Line bundle nH, in t = n^2 (g - 1): r = 1 and S1 = S2 = 2t.
inline Poly line_polynomial(int k) {
    const Poly t2 = Poly(2) * var(Sym::t);
    return SegreData{Poly(1), t2, t2}.specialize(symbolic_top_integral(k));
}

/// Same integral in (n, g).
inline Poly line_polynomial_ng(int k) {
    const Poly n = var(Sym::n), g = var(Sym::g);
    return line_polynomial(k).subst(Sym::t, n * n * (g - Poly(1)));
}

/// E (x) H for a Mukai-Lazarsfeld E of rank r, c1 = H, c2 = d; polynomial in (r, g, d).
inline Poly ml_polynomial(int k) {
    auto e = make_bundle(var(Sym::g), var(Sym::r), Poly(1), var(Sym::d), true);
    return SegreData::of(twist(e, 1)).specialize(symbolic_top_integral(k));
}

/// E (x) H for an Ulrich E of rank 2a on a K3 of genus g = h + 1; polynomial in (a, g).
inline Poly ulrich_polynomial(int k) {
    const Poly a = var(Sym::a), h = var(Sym::g) - Poly(1);
    auto e = make_bundle(var(Sym::g), Poly(2) * a, Poly(3) * a,
                         Poly(9) * a * a * h - Poly(4) * a * (h - Poly(1)), true);
    return SegreData::of(twist(e, 1)).specialize(symbolic_top_integral(k));
}

// ---- conics ----

struct ConicClass {
    enum class Kind { ellipse, parabola, hyperbola, indeterminate };
    Kind kind;
    Poly a, b, c;  // q = a g^2 + b g d + c d^2 + lower terms
    Poly discriminant;
};

inline std::string to_string(ConicClass::Kind k) {
    switch (k) {
        case ConicClass::Kind::ellipse: return "ellipse";
        case ConicClass::Kind::parabola: return "parabola";
        case ConicClass::Kind::hyperbola: return "hyperbola";
        case ConicClass::Kind::indeterminate: return "indeterminate";
    }
    return "?";
}

inline Poly coeff_gd(const Poly& q, unsigned i, unsigned j) {
    return q.coefficient_of(Sym::g, i).coefficient_of(Sym::d, j);
}

/// Classifies a conic in (g, d) whose coefficients may involve other symbols.
inline ConicClass classify_conic(const Poly& q) {
    unsigned deg = 0;
    for (const auto& t : q.terms()) deg = std::max(deg, static_cast<unsigned>(t.exp[Sym::g] + t.exp[Sym::d]));
    if (deg != 2) throw ParameterError("classify_conic needs total degree 2 in (g, d), got " + std::to_string(deg));
    ConicClass c{ConicClass::Kind::indeterminate, coeff_gd(q, 2, 0), coeff_gd(q, 1, 1), coeff_gd(q, 0, 2), Poly()};
    c.discriminant = c.b * c.b - Poly(4) * c.a * c.c;
    if (c.discriminant.is_constant()) {
        int s = c.discriminant.constant().sign();
        c.kind = s < 0 ? ConicClass::Kind::ellipse : (s == 0 ? ConicClass::Kind::parabola : ConicClass::Kind::hyperbola);
    }
    return c;
}

struct ParabolaForm {
    Poly c;  // r^2 + 3r + 4
    Poly beta00, beta10, beta01, beta02;
    std::vector<std::string> label_notes;
};

/// Rewrites q(g, d) with g = G - cD, d = cG + D, c = r^2 + 3r + 4; the quadratic part
/// collapses to beta02 D^2. `r` may be numeric or symbolic.
inline ParabolaForm parabola_normal_form(const Poly& q, const Poly& r) {
    ParabolaForm f;
    f.c = r * r + Poly(3) * r + Poly(4);
    const Poly G = var(Sym::G), D = var(Sym::D);
    Poly qr = q.subst(Sym::r, r);
    Poly p = qr.subst({{Sym::g, G - f.c * D}, {Sym::d, f.c * G + D}});
    auto co = [&](unsigned i, unsigned j) { return p.coefficient_of(Sym::G, i).coefficient_of(Sym::D, j); };
    for (const auto& t : p.terms()) {
        unsigned eg = t.exp[Sym::G], ed = t.exp[Sym::D];
        bool allowed = (eg == 0 && ed <= 2) || (eg == 1 && ed == 0);
        if (!allowed)
            throw InconsistencyError("parabola normal form has a residual term G^" + std::to_string(eg) + " D^" +
                                     std::to_string(ed) + " with coefficient " + co(eg, ed).str());
    }
    f.beta00 = co(0, 0);
    f.beta10 = co(1, 0);
    f.beta01 = co(0, 1);
    f.beta02 = co(0, 2);
    auto printed = reference::ml_k2_beta_printed();
    auto at = [&](const Poly& x) { return x.subst(Sym::r, r); };
    auto note = [&](const std::string& which, const Poly& v) {
        std::vector<std::string> hits;
        if (v == at(printed.first_beta01)) hits.push_back("first printed beta01");
        if (v == at(printed.beta10)) hits.push_back("printed beta10");
        if (v == at(printed.second_beta01)) hits.push_back("second printed beta01");
        if (v == at(printed.beta02)) hits.push_back("printed beta02");
        std::string s = which + " matches ";
        if (hits.empty()) s += "no printed coefficient";
        for (std::size_t i = 0; i < hits.size(); ++i) s += (i ? ", " : "") + hits[i];
        f.label_notes.push_back(s);
    };
    note("beta00", f.beta00);
    note("beta10", f.beta10);
    note("beta01", f.beta01);
    note("beta02", f.beta02);
    return f;
}

// ---- certificates ----

struct EvidenceRecord {
    std::string parameter;
    std::vector<std::pair<std::string, std::string>> values;
    std::vector<std::vector<Rational>> sturm_chain;
    bool pass = false;

    void put(std::string key, std::string value) { values.emplace_back(std::move(key), std::move(value)); }
    const std::string* get(const std::string& key) const {
        for (const auto& [k, v] : values)
            if (k == key) return &v;
        return nullptr;
    }
    friend bool operator==(const EvidenceRecord&, const EvidenceRecord&) = default;
};

struct Certificate {
    enum class Method { factored_threshold, parabola_separation, sturm_root_bound, exhaustive_grid };
    std::string target;
    Method method = Method::sturm_root_bound;
    std::vector<EvidenceRecord> evidence;
    std::vector<std::string> notes;
    bool verdict = false;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

inline std::string to_string(Certificate::Method m) {
    switch (m) {
        case Certificate::Method::factored_threshold: return "factored_threshold";
        case Certificate::Method::parabola_separation: return "parabola_separation";
        case Certificate::Method::sturm_root_bound: return "sturm_root_bound";
        case Certificate::Method::exhaustive_grid: return "exhaustive_grid";
    }
    return "?";
}

inline Certificate::Method method_from_string(const std::string& s) {
    for (auto m : {Certificate::Method::factored_threshold, Certificate::Method::parabola_separation,
                   Certificate::Method::sturm_root_bound, Certificate::Method::exhaustive_grid})
        if (to_string(m) == s) return m;
    throw ParseError("unknown certificate method '" + s + "'");
}

namespace detail {

inline std::vector<std::vector<Rational>> chain_coefficients(const UPoly& p) {
    std::vector<std::vector<Rational>> out;
    for (const auto& q : sturm_chain(p)) out.push_back(q.coefficients());
    return out;
}

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers; results keep index order.
template <class F>
auto parallel_map(long count, unsigned threads, F fn) -> std::vector<decltype(fn(0L))> {
    using R = decltype(fn(0L));
    std::vector<R> out(static_cast<std::size_t>(std::max(0L, count)));
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max(1L, count))));
    if (threads == 1) {
        for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(i);
        return out;
    }
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < threads; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (long i = w; i < count; i += threads) out[static_cast<std::size_t>(i)] = fn(i);
        }));
    }
    for (auto& j : jobs) j.get();
    return out;
}

inline bool verdict_from(const std::vector<EvidenceRecord>& ev) {
    if (ev.empty()) return false;
    for (const auto& e : ev)
        if (!e.pass) return false;
    return true;
}

}  // namespace detail

/// Line bundles nH: the integral in t = n^2 (g - 1) factors with largest root 3 (k = 2) or 6 (k = 3).
inline Certificate certify_line_bundle(int k) {
    if (k != 2 && k != 3) throw UnsupportedError("line bundle certificate exists for k = 2 and k = 3");
    Certificate c;
    c.method = Certificate::Method::factored_threshold;
    const Sym t = Sym::t;
    Poly p = line_polynomial(k);
    Poly closed = SegreData{Poly(1), Poly(2) * var(t), Poly(2) * var(t)}.specialize(closed_form_symbolic(k));
    Poly factored = k == 2 ? reference::line_k2_expansion() : reference::line_k3_factored();
    const long thr = k == 2 ? 3 : 6;
    const long claim_g = k == 2 ? 3 : 5;  // n >= 2 and g > 2 (k = 2) or g > 4 (k = 3)
    c.target = "int s_" + std::to_string(2 * k) + "((nH)^[" + std::to_string(k) + "]) as a polynomial in t = n^2(g-1)";
    UPoly u = UPoly::from(p, t);

    EvidenceRecord form;
    form.parameter = "k=" + std::to_string(k);
    form.put("polynomial", p.str());
    form.put("equals_closed_form", p == closed ? "true" : "false");
    form.put("equals_factored_form", p == factored ? "true" : "false");
    form.put("leading_coefficient", u.leading().str());
    form.pass = p == closed && p == factored && u.leading().sign() > 0;
    c.evidence.push_back(std::move(form));

    EvidenceRecord threshold;
    threshold.parameter = "threshold t=" + std::to_string(thr);
    int above = sturm_count(u, Rational(thr), ExtendedRational::pos_inf());
    Rational at = u(Rational(thr));
    threshold.put("value_at_threshold", at.str());
    threshold.put("roots_above_threshold", std::to_string(above));
    threshold.put("value_at_threshold_plus_1", u(Rational(thr + 1)).str());
    threshold.sturm_chain = detail::chain_coefficients(u);
    threshold.pass = at.is_zero() && above == 0;
    c.evidence.push_back(std::move(threshold));

    EvidenceRecord claim;
    long tmin = 4 * (claim_g - 1);
    claim.parameter = "n>=2, g>=" + std::to_string(claim_g);
    claim.put("min_t", std::to_string(tmin));
    claim.put("value_at_min_t", u(Rational(tmin)).str());
    claim.pass = tmin > thr;
    c.evidence.push_back(std::move(claim));

    c.verdict = detail::verdict_from(c.evidence);
    return c;
}

/// Mukai-Lazarsfeld, k = 2: the zero locus of the integral in the (g, d) plane is a parabola.
/// For r >= 3 it misses the line d = 2g - 2 entirely and lies in d > 2g - 2. For r = 2 it meets
/// the line at g = 11/6 and g = 2, so positivity on d <= 2g - 2 is certified for g >= 3 only,
/// from the restriction to the line plus convexity in d.
inline Certificate certify_ml(long r_lo, long r_hi, unsigned threads = 1) {
    if (r_lo < 2) throw ParameterError("Mukai-Lazarsfeld certificates need r >= 2");
    if (r_hi < r_lo) throw ParameterError("empty rank range");
    Certificate c;
    c.method = Certificate::Method::parabola_separation;
    c.target = "int s_4((E (x) H)^[2]) > 0 for Mukai-Lazarsfeld E with d < 2g - 2, r = " + std::to_string(r_lo) +
               ".." + std::to_string(r_hi);
    const Poly q = ml_polynomial(2);

    EvidenceRecord sym;
    sym.parameter = "symbolic r";
    ConicClass cc = classify_conic(q);
    sym.put("polynomial", q.str());
    sym.put("discriminant", cc.discriminant.str());
    sym.put("classification", to_string(cc.kind));
    sym.put("matches_reference_alpha", q == reference::ml_k2_polynomial() ? "true" : "false");
    sym.pass = cc.kind == ConicClass::Kind::parabola && cc.discriminant.is_zero();
    c.evidence.push_back(std::move(sym));

    auto leg = [&q](long i) {
        const long r = i;
        EvidenceRecord ev;
        ev.parameter = "r=" + std::to_string(r);
        Poly qr = q.subst(Sym::r, Poly(r));
        // (b) the restriction to d = 2g - 2 has no zeros for g > 2 (and none at all once r >= 3)
        Poly line = qr.subst(Sym::d, Poly(2) * var(Sym::g) - Poly(2));
        UPoly u = UPoly::from(line, Sym::g);
        int roots = sturm_count(u, ExtendedRational::neg_inf(), ExtendedRational::pos_inf());
        int roots_in_range = sturm_count(u, Rational(2), ExtendedRational::pos_inf());
        ev.put("restriction_to_d=2g-2", line.str());
        ev.put("leading_coefficient", u.leading().str());
        ev.put("real_roots_on_line", std::to_string(roots));
        ev.put("real_roots_on_line_g>2", std::to_string(roots_in_range));
        if (roots > 0) {
            auto br = max_root_bracket(u, Rational(1, 1 << 20));
            ev.put("max_root_on_line", "(" + br->lo.str() + ", " + br->hi.str() + "]");
        }
        ev.put("parabola_inside_half_plane", roots == 0 ? "true" : "false");
        ev.sturm_chain = detail::chain_coefficients(u);
        // (d) q is convex in d with vertex d*(g) >= 2g - 2 for g >= 3, so on d <= 2g - 2 it is
        // bounded below by its value on the line
        Poly quad_d = qr.coefficient_of(Sym::d, 2);
        Poly lin_d = qr.coefficient_of(Sym::d, 1);
        bool vertex_ok = false;
        if (quad_d.is_constant() && quad_d.constant().sign() > 0 && lin_d.degree_in(Sym::g) <= 1 &&
            lin_d.symbols().size() <= 1) {
            Poly vertex = -lin_d / (Rational(2) * quad_d.constant());
            Poly gap = vertex - (Poly(2) * var(Sym::g) - Poly(2));
            Rational slope = gap.coefficient_of(Sym::g, 1).constant_term();
            Rational at3 = gap.eval_at({{Sym::g, Rational(3)}});
            ev.put("vertex_in_d", vertex.str());
            ev.put("vertex_gap_at_g=3", at3.str());
            vertex_ok = slope.sign() >= 0 && at3.sign() >= 0;
        }
        ev.put("vertex_beyond_line_for_g>=3", vertex_ok ? "true" : "false");
        // (c) a point of the parabola with D = 0
        ParabolaForm pf = parabola_normal_form(q, Poly(r));
        bool sample_ok = false;
        if (!pf.beta10.is_zero() && pf.beta10.is_constant() && pf.beta00.is_constant()) {
            Rational G = -pf.beta00.constant() / pf.beta10.constant();
            Rational gc = G, dc = pf.c.constant() * G;
            Rational on_curve = qr.eval_at({{Sym::g, gc}, {Sym::d, dc}});
            ev.put("sample_point", "(g, d) = (" + gc.str() + ", " + dc.str() + ")");
            ev.put("value_at_sample", on_curve.str());
            ev.put("d_minus_2g_plus_2", (dc - Rational(2) * gc + Rational(2)).str());
            sample_ok = on_curve.is_zero() && dc > Rational(2) * gc - Rational(2);
        }
        ev.put("beta00", pf.beta00.str());
        ev.put("beta10", pf.beta10.str());
        ev.put("beta01", pf.beta01.str());
        ev.put("beta02", pf.beta02.str());
        ev.pass = u.leading().sign() > 0 && roots_in_range == 0 && vertex_ok && sample_ok;
        return ev;
    };
    for (auto& ev : detail::parallel_map(r_hi - r_lo + 1, threads, [&](long i) { return leg(r_lo + i); }))
        c.evidence.push_back(std::move(ev));
    c.verdict = detail::verdict_from(c.evidence);
    return c;
}

/// Ulrich, k = 2 or 3: for each a the integral is a polynomial in g with positive leading
/// coefficient and largest real root below 2, hence positive for every genus g >= 3.
inline Certificate certify_ulrich(int k, long a_lo, long a_hi, const Rational& width = Rational(1, 1024),
                                  unsigned threads = 1) {
    if (k != 2 && k != 3) throw UnsupportedError("Ulrich certificate exists for k = 2 and k = 3");
    if (a_lo < 1) throw ParameterError("Ulrich certificates need a >= 1");
    if (a_hi < a_lo) throw ParameterError("empty a range");
    Certificate c;
    c.method = Certificate::Method::sturm_root_bound;
    c.target = "int s_" + std::to_string(2 * k) + "((E (x) H)^[" + std::to_string(k) + "]) > 0 for Ulrich E of rank 2a, a = " +
               std::to_string(a_lo) + ".." + std::to_string(a_hi) + ", g >= 3";
    const Poly p = ulrich_polynomial(k);
    const Poly ref = k == 2 ? reference::ulrich_k2_simplified() : reference::ulrich_k3_polynomial();
    auto leg = [&](long a) {
        EvidenceRecord ev;
        ev.parameter = "a=" + std::to_string(a);
        Poly pa = p.subst(Sym::a, Poly(a));
        UPoly u = UPoly::from(pa, Sym::g);
        ev.put("polynomial", pa.str());
        ev.put("leading_coefficient", u.leading().str());
        auto br = max_root_bracket(u, width);
        bool below = true;
        if (br) {
            ev.put("max_root_bracket", "(" + br->lo.str() + ", " + br->hi.str() + "]");
            below = br->hi < Rational(2);
        } else {
            ev.put("max_root_bracket", "no real roots");
        }
        int above = sturm_count(u, Rational(2), ExtendedRational::pos_inf());
        ev.put("value_at_2", u(Rational(2)).str());
        ev.put("roots_above_2", std::to_string(above));
        ev.sturm_chain = detail::chain_coefficients(u);
        // comparison against the reference polynomial
        Poly ra = ref.subst(Sym::a, Poly(a));
        UPoly ru = UPoly::from(ra, Sym::g);
        std::string cmp;
        if (ru.degree() == u.degree() && !ru.is_zero()) {
            Rational scale = ru.leading() / u.leading();
            bool prop = true;
            for (int i = 0; i <= u.degree(); ++i)
                if (ru.coefficients()[static_cast<std::size_t>(i)] != scale * u.coefficients()[static_cast<std::size_t>(i)])
                    prop = false;
            cmp = prop ? (scale == Rational(1) ? "equal" : "reference = " + scale.str() + " * computed") : "mismatch";
        } else {
            cmp = "mismatch";
        }
        ev.put("reference_comparison", cmp);
        ev.pass = u.leading().sign() > 0 && below && above == 0 && u(Rational(2)).sign() > 0;
        return ev;
    };
    for (auto& ev : detail::parallel_map(a_hi - a_lo + 1, threads, [&](long i) { return leg(a_lo + i); }))
        c.evidence.push_back(std::move(ev));
    c.verdict = detail::verdict_from(c.evidence);
    return c;
}

}  // namespace k3seg
