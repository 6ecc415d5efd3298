#pragma once

#include <string>
#include <vector>

#include "k3seg/bundle.hpp"
#include "k3seg/positivity.hpp"
#include "k3seg/reference.hpp"

namespace k3seg {

/// A discrepancy between a reference formula and the engine's computation. Every entry is
/// recomputed on each call; `detected` is false when the two agree.
struct Erratum {
    enum class Kind { erratum, informational };
    std::string id;
    std::string subject;
    std::string printed;
    std::string computed;
    Kind kind = Kind::erratum;
    bool detected = false;

    friend bool operator==(const Erratum&, const Erratum&) = default;
};

inline std::string to_string(Erratum::Kind k) { return k == Erratum::Kind::erratum ? "erratum" : "informational"; }

inline std::vector<Erratum> detect_errata() {
    std::vector<Erratum> out;

    {
        Poly computed = line_polynomial(3);
        Poly printed = reference::line_k3_expansion_printed();
        Poly factored = reference::line_k3_factored();
        Erratum e{"line_k3_expansion",
                  "expanded k=3 line-bundle integral in t = n^2(g-1); the factored form next to it is " + factored.str(),
                  printed.str(), computed.str(), Erratum::Kind::erratum, printed != computed};
        out.push_back(std::move(e));
    }
    {
        const Poly a = var(Sym::a), h = var(Sym::h);
        auto b = make_bundle(h + Poly(1), Poly(2) * a, Poly(3) * a, Poly(9) * a * a * h - Poly(4) * a * (h - Poly(1)));
        Poly s = mukai_vector(b).s;
        Poly variant = reference::ulrich_mukai_s_variant();
        out.push_back({"ulrich_mukai_vector", "third entry of the Ulrich Mukai vector (2a, 3aH, s) in the summary statement",
                       "s = " + variant.str(), "s = " + s.str(), Erratum::Kind::erratum, variant != s});
    }
    {
        ParabolaForm pf = parabola_normal_form(ml_polynomial(2), var(Sym::r));
        auto printed = reference::ml_k2_beta_printed();
        bool dup = pf.beta00 == printed.first_beta01;
        out.push_back({"ml_beta_label",
                       "labels of the parabola normal-form coefficients: beta01 is listed twice",
                       "beta01 = " + printed.first_beta01.str() + "; beta01 = " + printed.second_beta01.str(),
                       "beta00 = " + pf.beta00.str() + "; beta01 = " + pf.beta01.str(), Erratum::Kind::erratum, dup});
    }
    {
        Poly computed = ulrich_polynomial(2);
        Poly printed = reference::ulrich_k2_simplified();
        bool scaled = var(Sym::a) * printed == Poly(2) * computed;
        out.push_back({"ulrich_k2_scale",
                       "simplified k=2 Ulrich inequality versus the raw integral (a positive rescaling does not affect positivity)",
                       printed.str(), computed.str() + (scaled ? "  [reference = (2/a) * computed]" : ""),
                       Erratum::Kind::informational, printed != computed});
    }
    {
        Poly line = ml_polynomial(2).subst({{Sym::r, Poly(2)}, {Sym::d, Poly(2) * var(Sym::g) - Poly(2)}});
        int roots = sturm_count(line, Sym::g, ExtendedRational::neg_inf(), ExtendedRational::pos_inf());
        std::string where;
        for (const Rational& x : {Rational(11, 6), Rational(2)})
            if (line.eval_at({{Sym::g, x}}).is_zero()) where += (where.empty() ? "g = " : ", ") + x.str();
        out.push_back({"ml_r2_line_restriction",
                       "Mukai-Lazarsfeld k=2 integral along d = 2g-2 is claimed to have no real zeros for every r",
                       "no real zeros",
                       line.str() + " has " + std::to_string(roots) + " real roots" + (where.empty() ? "" : " (" + where + ")"),
                       Erratum::Kind::informational, roots > 0});
    }
    return out;
}

}  // namespace k3seg
