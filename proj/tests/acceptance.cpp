// One PASS/FAIL line per acceptance criterion, with wall-clock limits.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "k3seg/k3seg.hpp"

using namespace k3seg;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string note;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

int failures = 0;

double check(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) o.require(false, "over time limit");
    if (!o.ok) ++failures;
    std::printf("%s %2d %s (%.2fs%s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
                limit_s > 0 ? (", limit " + std::to_string(static_cast<int>(limit_s)) + "s").c_str() : "",
                o.note.empty() ? "" : ": ", o.note.c_str());
    return secs;
}

const Poly r = var(Sym::r), g = var(Sym::g), d = var(Sym::d), n = var(Sym::n), a = var(Sym::a), h = var(Sym::h);

bool has_key(const EvidenceRecord& e, const std::string& key, const std::string& value) {
    auto v = e.get(key);
    return v && *v == value;
}

}  // namespace

int main() {
    check(1, "identity suite: nine Fock-space evaluations, symbolic in S1, S2", 1, [](Outcome& o) {
        auto rows = identity_suite();
        o.require(rows.size() == 9, "expected nine identities");
        for (const auto& row : rows) o.require(row.pass, row.name);
    });

    check(2, "closed form k = 2 equals the recursion in (r, S1, S2)", 5, [](Outcome& o) {
        TautSegreEngine e(SegreData::symbolic());
        o.require(e.top_integral(2) == closed_form_symbolic(2), "top integral differs");
    });

    check(3, "closed form k = 3 equals the recursion in (r, S1, S2)", 60, [](Outcome& o) {
        TautSegreEngine e(SegreData::symbolic());
        o.require(e.top_integral(3) == closed_form_symbolic(3), "top integral differs");
    });

    check(4, "line bundles: k = 2, 3 forms and the flagged k = 3 expansion", 0, [](Outcome& o) {
        const Poly gm1 = g - Poly(1), n2 = n * n;
        SegreData line = SegreData::of(line_bundle(g, n));
        o.require(top_segre_integral(line, 2) == Poly(2) * (n2 * n2 * gm1 * gm1 - Poly(5) * n2 * gm1 + Poly(6)), "k = 2");
        // (4/3)(g-1)^3 (n^2 - 4/(g-1))(n^2 - 5/(g-1))(n^2 - 6/(g-1)) with the (g-1) factors absorbed
        const Poly t = n2 * gm1;
        Poly factored = Poly(Rational(4, 3)) * (t - Poly(4)) * (t - Poly(5)) * (t - Poly(6));
        o.require(top_segre_integral(line, 3) == factored, "k = 3");
        bool flagged = false;
        for (const auto& e : detect_errata())
            if (e.id == "line_k3_expansion" && e.detected && e.kind == Erratum::Kind::erratum) flagged = true;
        o.require(flagged, "printed k = 3 expansion not flagged");
    });

    check(5, "spot values 24, 1760, 3696 by recursion and closed form", 0, [](Outcome& o) {
        struct Spot {
            BundleInvariants b;
            int k;
            long value;
        };
        const Spot spots[] = {{line_bundle(7, 1), 2, 24},
                              {line_bundle(5, 2), 3, 1760},
                              {twist(make_bundle(6, 3, 1, 6, true), 1), 2, 3696}};
        for (const auto& s : spots) {
            SegreData data = SegreData::of(s.b);
            o.require(top_segre_integral(data, s.k) == Poly(s.value), "recursion " + std::to_string(s.value));
            o.require(closed_form(data, s.k) == Poly(s.value), "closed form " + std::to_string(s.value));
        }
    });

    check(6, "Mukai arithmetic for tangent, ML, Ulrich and exceptional triples", 0, [](Outcome& o) {
        auto tx = make_bundle(g, Poly(2), Poly(2) * n, Poly(2) * n * n * (g - Poly(1)) + Poly(24));
        auto vt = mukai_vector(tx);
        o.require(mukai_pairing(vt, vt) == Poly(88), "<v(T_X), v(T_X)> != 88");
        o.require(moduli_dim(vt) == Poly(90), "T_X moduli dim != 90");
        auto ml = mukai_vector(make_bundle(g, r, Poly(1), d));
        o.require(moduli_dim(ml) == Poly(2) * rho(g, r, d), "ML dim != 2 rho");
        auto ul = mukai_vector(make_bundle(h + Poly(1), Poly(2) * a, Poly(3) * a,
                                           Poly(9) * a * a * h - Poly(4) * a * (h - Poly(1))));
        o.require(moduli_dim(ul) == Poly(8) * a * a + Poly(2) * a * a * h + Poly(2), "Ulrich dim");
        for (auto [gv, rv, dv] : {std::tuple{6L, 3L, 6L}, {9L, 3L, 8L}, {10L, 5L, 12L}, {12L, 3L, 10L}}) {
            auto v = mukai_vector(make_bundle(gv, rv, 1, dv));
            o.require(mukai_pairing(v, v) == Poly(-2), "exceptional triple pairing");
            o.require(exceptional_check(gv, rv, dv), "exceptional_check");
        }
    });

    check(7, "tangent n0 table for g = 2..12 and the four big-threshold cases", 0, [](Outcome& o) {
        const long table[] = {4, 3, 2, 2, 2, 2, 2, 2, 1, 2, 1};
        for (long gv = 2; gv <= 12; ++gv) o.require(tangent_n0(gv) == table[gv - 2], "n0 at g = " + std::to_string(gv));
        for (long gv = 2; gv <= 100; ++gv) {
            long want = gv == 2 ? 5 : gv == 3 ? 4 : (gv <= 9 || gv == 11) ? 3 : 2;
            o.require(tangent_big_threshold(gv) == want, "threshold at g = " + std::to_string(gv));
        }
    });

    check(8, "ML k = 2 coefficients match the printed alpha coefficients", 0, [](Outcome& o) {
        Poly q = ml_polynomial(2);
        auto al = reference::ml_k2_alpha();
        o.require(coeff_gd(q, 0, 0) == al.a00, "alpha00");
        o.require(coeff_gd(q, 1, 0) == al.a10, "alpha10");
        o.require(coeff_gd(q, 0, 1) == al.a01, "alpha01");
        o.require(coeff_gd(q, 1, 1) == al.a11, "alpha11");
        o.require(coeff_gd(q, 2, 0) == al.a20, "alpha20");
        o.require(coeff_gd(q, 0, 2) == al.a02, "alpha02");
        o.require(coeff_gd(q, 0, 1) == (Poly(3) * r * r + Poly(9) * r + Poly(11)) / Rational(2), "alpha01 formula");
        o.require(coeff_gd(q, 2, 0) == pow(r * r + Poly(3) * r + Poly(4), 2) / Rational(2), "alpha20 formula");
        o.require(q == reference::ml_k2_polynomial(), "full polynomial");
    });

    check(9, "certificates: ML r = 2..50, Ulrich a = 1..20 at k = 2, 3, line thresholds", 300, [](Outcome& o) {
        Certificate ml = certify_ml(2, 50, 4);
        o.require(ml.verdict, "certify_ml");
        o.require(has_key(ml.evidence.front(), "discriminant", "0"), "discriminant not identically 0");
        for (const auto& e : ml.evidence) {
            if (e.parameter == "symbolic r") continue;
            // r = 2 meets d = 2g - 2 only at g = 11/6 and g = 2, outside the range g >= 3
            const char* key = e.parameter == "r=2" ? "real_roots_on_line_g>2" : "real_roots_on_line";
            o.require(has_key(e, key, "0"), "roots on d = 2g - 2 at " + e.parameter);
            o.require(e.get("sample_point") != nullptr, "no half-plane witness at " + e.parameter);
        }
        for (int k : {2, 3}) {
            Certificate u = certify_ulrich(k, 1, 20, Rational(1, 1024), 4);
            o.require(u.verdict, "certify_ulrich k = " + std::to_string(k));
            for (const auto& e : u.evidence) o.require(has_key(e, "roots_above_2", "0"), "root above 2");
            if (k == 3)
                for (const auto& e : u.evidence)
                    if (e.parameter == "a=1") o.require(has_key(e, "value_at_2", "146"), "p(2) != 146");
        }
        for (int k : {2, 3}) {
            Certificate c = certify_line_bundle(k);
            o.require(c.verdict, "certify_line_bundle");
            const Rational thr(k == 2 ? 3 : 6);
            o.require(line_polynomial(k).eval_at({{Sym::t, thr}}).is_zero(), "threshold not a root");
            o.require(sturm_count(line_polynomial(k), Sym::t, thr, ExtendedRational::pos_inf()) == 0, "root above threshold");
        }
    });

    check(10, "very ampleness grid and the (2, 1, 2) failure", 0, [](Outcome& o) {
        for (long k : {2L, 3L})
            for (long gv = 2 * k - 1; gv <= 60; ++gv)
                for (long nv = 1; nv <= 10; ++nv)
                    o.require(very_ample_order_check(gv, nv, k).value,
                              "(g, n, k) = (" + std::to_string(gv) + ", " + std::to_string(nv) + ", " + std::to_string(k) + ")");
        o.require(!very_ample_order_check(2, 1, 2).value, "(2, 1, 2) should fail");
    });

    check(11, "total and graded Segre classes agree on random numeric data", 0, [](Outcome& o) {
        std::mt19937 rng(20261016);
        std::uniform_int_distribution<long> rank(1, 4), s(-100, 100);
        for (int iter = 0; iter < 8; ++iter) {
            SegreData data{Poly(rank(rng)), Poly(s(rng)), Poly(s(rng))};
            TautSegreEngine e(data);
            for (int k = 0; k <= 4; ++k) {
                const FockState& tot = e.total(k);
                FockState sum(k);
                for (int dd = 0; dd <= 2 * k; ++dd) {
                    const FockState& piece = e.segre_class(k, dd);
                    o.require(piece == tot.piece(2 * dd), "degree mismatch");
                    sum += piece;
                }
                o.require(sum == tot, "graded pieces do not sum to the total");
            }
            for (int dd = 0; dd <= 2; ++dd)
                o.require(e.segre_class(1, dd) == e.fock().apply_q(1, e.surface_segre(dd), FockState::vacuum()),
                          "k = 1 differs from the surface class");
        }
    });

    std::printf("%s\n", failures == 0 ? "all criteria pass" : (std::to_string(failures) + " criteria fail").c_str());
    return failures == 0 ? 0 : 1;
}
