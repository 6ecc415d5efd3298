#include "catch_amalgamated.hpp"

#include "k3seg/errata.hpp"
#include "k3seg/positivity.hpp"
#include "k3seg/reference.hpp"

using namespace k3seg;

namespace {

const Poly r = var(Sym::r), g = var(Sym::g), d = var(Sym::d), t = var(Sym::t), a = var(Sym::a);

std::string value(const EvidenceRecord& e, const std::string& key) {
    auto v = e.get(key);
    REQUIRE(v);
    return *v;
}

const EvidenceRecord& leg(const Certificate& c, const std::string& parameter) {
    for (const auto& e : c.evidence)
        if (e.parameter == parameter) return e;
    FAIL("no evidence for " << parameter);
    throw;
}

}  // namespace

TEST_CASE("conic classification") {
    auto e = classify_conic(g * g + d * d);
    CHECK(e.kind == ConicClass::Kind::ellipse);
    CHECK(e.discriminant == Poly(-4));
    CHECK(classify_conic(g * d + g).kind == ConicClass::Kind::hyperbola);
    CHECK(classify_conic(pow(g - d, 2) + g).kind == ConicClass::Kind::parabola);
    CHECK(classify_conic(r * g * g + d * d).kind == ConicClass::Kind::indeterminate);
    CHECK_THROWS_AS(classify_conic(g + d), ParameterError);
    CHECK_THROWS_AS(classify_conic(g * g * d), ParameterError);

    auto ml = classify_conic(ml_polynomial(2));
    const Poly c = r * r + Poly(3) * r + Poly(4);
    CHECK(ml.a == c * c / Rational(2));
    CHECK(ml.b == -c);
    CHECK(ml.c == Poly(Rational(1, 2)));
    CHECK(ml.discriminant.is_zero());
    CHECK(ml.kind == ConicClass::Kind::parabola);
}

TEST_CASE("ML k = 2 integral matches the reference alpha coefficients") {
    Poly q = ml_polynomial(2);
    CHECK(q == reference::ml_k2_polynomial());
    auto al = reference::ml_k2_alpha();
    CHECK(coeff_gd(q, 0, 1) == (Poly(3) * r * r + Poly(9) * r + Poly(11)) / Rational(2));
    CHECK(coeff_gd(q, 2, 0) == pow(r * r + Poly(3) * r + Poly(4), 2) / Rational(2));
    CHECK(coeff_gd(q, 0, 0) == al.a00);
    CHECK(coeff_gd(q, 1, 0) == al.a10);
    CHECK(coeff_gd(q, 1, 1) == al.a11);
    CHECK(coeff_gd(q, 0, 2) == al.a02);
}

TEST_CASE("parabola normal form") {
    const Poly q = ml_polynomial(2);
    auto printed = reference::ml_k2_beta_printed();
    ParabolaForm sym = parabola_normal_form(q, r);
    CHECK(sym.beta10 == -(r + Poly(2)) * pow(r + Poly(1), 3) / Rational(2));
    CHECK(sym.beta02 == printed.beta02);
    CHECK(sym.beta00 == printed.first_beta01);
    CHECK(sym.beta01 == printed.second_beta01);
    REQUIRE(sym.label_notes.size() == 4);
    CHECK(sym.label_notes[0] == "beta00 matches first printed beta01");
    CHECK(sym.label_notes[2] == "beta01 matches second printed beta01");
    for (long rv = 2; rv <= 10; ++rv) {
        ParabolaForm f = parabola_normal_form(q, Poly(rv));
        CHECK(f.beta10 == Poly(Rational(-(rv + 2) * (rv + 1) * (rv + 1) * (rv + 1), 2)));
        // direct expansion oracle: the substituted polynomial has no G^2, GD or D G^k terms
        const Poly cc(rv * rv + 3 * rv + 4);
        Poly p = q.subst(Sym::r, Poly(rv))
                     .subst({{Sym::g, var(Sym::G) - cc * var(Sym::D)}, {Sym::d, cc * var(Sym::G) + var(Sym::D)}});
        CHECK(p.coefficient_of(Sym::G, 2).is_zero());
        CHECK(p.coefficient_of(Sym::G, 1).coefficient_of(Sym::D, 1).is_zero());
        CHECK(p.degree_in(Sym::G) == 1);
    }
    // a polynomial that is not a parabola in these coordinates leaves cross terms
    CHECK_THROWS_AS(parabola_normal_form(g * g + d * d, Poly(2)), InconsistencyError);
}

TEST_CASE("line bundle certificates") {
    CHECK(line_polynomial(2) == reference::line_k2_expansion());
    CHECK(line_polynomial(2) == Poly(2) * (t - Poly(2)) * (t - Poly(3)));
    CHECK(line_polynomial(3) == reference::line_k3_factored());
    CHECK(line_polynomial(3) != reference::line_k3_expansion_printed());
    CHECK(line_polynomial(3) == Poly(Rational(4, 3)) * pow(t, 3) - Poly(20) * t * t + Poly(Rational(296, 3)) * t -
                                    Poly(160));
    const Poly n = var(Sym::n), gm1 = g - Poly(1);
    CHECK(line_polynomial_ng(2) == Poly(2) * (pow(n, 4) * gm1 * gm1 - Poly(5) * n * n * gm1 + Poly(6)));

    for (int k : {2, 3}) {
        Certificate c = certify_line_bundle(k);
        CHECK(c.verdict);
        CHECK(c.method == Certificate::Method::factored_threshold);
        const auto& thr = c.evidence.at(1);
        CHECK(value(thr, "value_at_threshold") == "0");
        CHECK(value(thr, "roots_above_threshold") == "0");
    }
    // k = 2, n = 1, g = 3: t = 2 is a root; n = 2, g = 3: t = 8 > 3
    CHECK(line_polynomial(2).eval_at({{Sym::t, Rational(2)}}).is_zero());
    CHECK(line_polynomial(2).eval_at({{Sym::t, Rational(8)}}).sign() > 0);
    CHECK(line_polynomial(3).eval_at({{Sym::t, Rational(16)}}) == Rational(1760));
    CHECK(value(certify_line_bundle(3).evidence.at(2), "min_t") == "16");
    CHECK_THROWS_AS(certify_line_bundle(4), UnsupportedError);
}

TEST_CASE("Mukai-Lazarsfeld certificate") {
    Certificate c = certify_ml(2, 12);
    CHECK(c.verdict);
    CHECK(c.evidence.size() == 12);
    CHECK(value(c.evidence.front(), "discriminant") == "0");
    CHECK(value(c.evidence.front(), "classification") == "parabola");
    CHECK(value(c.evidence.front(), "matches_reference_alpha") == "true");

    const auto& r3 = leg(c, "r=3");
    CHECK(r3.pass);
    CHECK(value(r3, "real_roots_on_line") == "0");
    CHECK(value(r3, "parabola_inside_half_plane") == "true");
    CHECK(value(r3, "value_at_sample") == "0");

    // at r = 2 the parabola touches d = 2g - 2 at g = 11/6 and g = 2, outside g >= 3
    const auto& r2 = leg(c, "r=2");
    CHECK(r2.pass);
    CHECK(value(r2, "real_roots_on_line") == "2");
    CHECK(value(r2, "real_roots_on_line_g>2") == "0");
    CHECK(value(r2, "parabola_inside_half_plane") == "false");
    Poly line2 = ml_polynomial(2).subst({{Sym::r, Poly(2)}, {Sym::d, Poly(2) * g - Poly(2)}});
    CHECK(line2.eval_at({{Sym::g, Rational(11, 6)}}).is_zero());
    CHECK(line2.eval_at({{Sym::g, Rational(2)}}).is_zero());

    for (long rv = 3; rv <= 12; ++rv) CHECK(value(leg(c, "r=" + std::to_string(rv)), "real_roots_on_line") == "0");

    CHECK_THROWS_AS(certify_ml(1, 5), ParameterError);
    CHECK_THROWS_AS(certify_ml(5, 4), ParameterError);
}

TEST_CASE("direct positivity of the ML integral on a grid below the line") {
    // independent of the certificate: evaluate on all integer (g, d) with g >= 3, 1 <= d < 2g - 2
    const Poly q = ml_polynomial(2);
    for (long rv = 2; rv <= 6; ++rv)
        for (long gv = 3; gv <= 25; ++gv)
            for (long dv = 1; dv < 2 * gv - 2; ++dv)
                CHECK(q.eval_at({{Sym::r, Rational(rv)}, {Sym::g, Rational(gv)}, {Sym::d, Rational(dv)}}).sign() > 0);
}

TEST_CASE("Ulrich certificates") {
    Poly p2 = ulrich_polynomial(2).subst(Sym::a, Poly(1));
    CHECK(p2 == Poly(Rational(1369, 2)) * g * g - Poly(Rational(3815, 2)) * g + Poly(1317));
    CHECK(a * reference::ulrich_k2_simplified() == Poly(2) * ulrich_polynomial(2));
    CHECK(ulrich_polynomial(3) == reference::ulrich_k3_polynomial());

    Certificate c2 = certify_ulrich(2, 1, 6);
    CHECK(c2.verdict);
    CHECK(value(leg(c2, "a=1"), "reference_comparison") == "reference = 2 * computed");
    CHECK(value(leg(c2, "a=2"), "reference_comparison") == "equal");
    CHECK(value(leg(c2, "a=4"), "reference_comparison") == "reference = 1/2 * computed");

    Certificate c3 = certify_ulrich(3, 1, 6);
    CHECK(c3.verdict);
    const auto& a1 = leg(c3, "a=1");
    CHECK(value(a1, "value_at_2") == "146");
    CHECK(value(a1, "roots_above_2") == "0");
    CHECK(value(a1, "reference_comparison") == "equal");
    CHECK(value(a1, "leading_coefficient") == "50653/6");

    CHECK_THROWS_AS(certify_ulrich(4, 1, 2), UnsupportedError);
    CHECK_THROWS_AS(certify_ulrich(2, 0, 2), ParameterError);
}

TEST_CASE("certificates are deterministic and independent of the thread count") {
    CHECK(certify_ml(2, 8, 1) == certify_ml(2, 8, 1));
    CHECK(certify_ml(2, 8, 1) == certify_ml(2, 8, 4));
    CHECK(certify_ulrich(3, 1, 5, Rational(1, 1024), 1) == certify_ulrich(3, 1, 5, Rational(1, 1024), 3));
    CHECK(certify_line_bundle(3) == certify_line_bundle(3));
}

TEST_CASE("detected discrepancies with reference formulas") {
    auto errata = detect_errata();
    REQUIRE(errata.size() == 5);
    std::map<std::string, Erratum> by_id;
    for (const auto& e : errata) by_id.emplace(e.id, e);
    CHECK(by_id.at("line_k3_expansion").detected);
    CHECK(by_id.at("line_k3_expansion").kind == Erratum::Kind::erratum);
    CHECK(by_id.at("line_k3_expansion").computed == line_polynomial(3).str());
    CHECK(by_id.at("ulrich_mukai_vector").detected);
    CHECK(by_id.at("ulrich_mukai_vector").computed == "s = " + reference::ulrich_mukai_s().str());
    CHECK(by_id.at("ml_beta_label").detected);
    CHECK(by_id.at("ulrich_k2_scale").kind == Erratum::Kind::informational);
    CHECK(by_id.at("ml_r2_line_restriction").detected);
    CHECK(by_id.at("ml_r2_line_restriction").computed.find("g = 11/6, 2") != std::string::npos);
}
