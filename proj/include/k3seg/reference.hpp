#pragma once

// Reference formulas as they appear in the literature, kept verbatim (including
// misprints) so that computed results can be compared against them.

#include "k3seg/poly.hpp"

namespace k3seg::reference {

inline Poly r_() { return var(Sym::r); }
inline Poly a_() { return var(Sym::a); }
inline Poly g_() { return var(Sym::g); }
inline Poly t_() { return var(Sym::t); }

/// Coefficients of int s4((E (x) H)^[2]) for Mukai-Lazarsfeld E, in the monomials
/// 1, g, d, gd, g^2, d^2.
struct MlK2Alpha {
    Poly a00, a10, a01, a11, a20, a02;
};

inline MlK2Alpha ml_k2_alpha() {
    const Poly r = r_(), r2 = r * r, r3 = r2 * r, r4 = r3 * r;
    const Poly c = r2 + Poly(3) * r + Poly(4);
    return {
        (Poly(4) * r4 + Poly(23) * r3 + Poly(53) * r2 + Poly(58) * r + Poly(30)) / Rational(2),
        -(Poly(4) * r4 + Poly(23) * r3 + Poly(59) * r2 + Poly(76) * r + Poly(46)) / Rational(2),
        (Poly(3) * r2 + Poly(9) * r + Poly(11)) / Rational(2),
        -c,
        c * c / Rational(2),
        Poly(Rational(1, 2)),
    };
}

inline Poly ml_k2_polynomial() {
    auto al = ml_k2_alpha();
    const Poly g = g_(), d = var(Sym::d);
    return al.a00 + al.a10 * g + al.a01 * d + al.a11 * g * d + al.a20 * g * g + al.a02 * d * d;
}

/// The four coefficients listed after the parabola change of variables, in the printed
/// order. The first and third are both labelled beta_{0,1} in the source.
struct MlK2BetaPrinted {
    Poly first_beta01, beta10, second_beta01, beta02;
};

inline MlK2BetaPrinted ml_k2_beta_printed() {
    const Poly r = r_(), r2 = r * r, r3 = r2 * r, r4 = r3 * r, r5 = r4 * r, r6 = r5 * r;
    const Poly sq = r4 + Poly(6) * r3 + Poly(17) * r2 + Poly(24) * r + Poly(17);
    return {
        (Poly(4) * r4 + Poly(23) * r3 + Poly(53) * r2 + Poly(58) * r + Poly(30)) / Rational(2),
        -(r + Poly(2)) * pow(r + Poly(1), 3) / Rational(2),
        (Poly(4) * r6 + Poly(35) * r5 + Poly(144) * r4 + Poly(345) * r3 + Poly(513) * r2 + Poly(451) * r + Poly(195)) /
            Rational(2),
        sq * sq / Rational(2),
    };
}

/// The "after simplification" k = 2 Ulrich polynomial in (a, g).
inline Poly ulrich_k2_simplified() {
    const Poly a = a_(), g = g_(), a2 = a * a, a3 = a2 * a;
    const Poly c = Poly(25) * a + Poly(12);
    return (Poly(60) + Poly(521) * a + Poly(1212) * a2 + Poly(841) * a3) -
           (Poly(36) + Poly(581) * a + Poly(1748) * a2 + Poly(1450) * a3) * g + a * c * c * g * g;
}

/// k = 3 Ulrich coefficients alpha_0..alpha_3 of g^0..g^3.
inline std::vector<Poly> ulrich_k3_alpha() {
    const Poly a = a_(), a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a;
    const Poly c = Poly(25) * a + Poly(12);
    return {
        -(Poly(11979) * a5 + Poly(28116) * a4 + Poly(25173) * a3 + Poly(10678) * a2 + Poly(2132) * a + Poly(160)) * a /
            Rational(2),
        (Poly(81675) * a5 + Poly(167652) * a4 + Poly(126918) * a3 + Poly(42834) * a2 + Poly(6020) * a + Poly(240)) * a /
            Rational(6),
        -c * (Poly(825) * a3 + Poly(1048) * a2 + Poly(389) * a + Poly(36)) * a2 / Rational(2),
        pow(c, 3) * a3 / Rational(6),
    };
}

inline Poly ulrich_k3_polynomial() {
    auto al = ulrich_k3_alpha();
    Poly out;
    for (std::size_t i = 0; i < al.size(); ++i) out += al[i] * Poly::var(Sym::g, static_cast<unsigned>(i));
    return out;
}

/// Line bundles, t = n^2 (g - 1).
inline Poly line_k2_expansion() {
    const Poly t = t_();
    return Poly(2) * (t * t - Poly(5) * t + Poly(6));
}

inline Poly line_k3_factored() {
    const Poly t = t_();
    return Poly(Rational(4, 3)) * (t - Poly(4)) * (t - Poly(5)) * (t - Poly(6));
}

/// Expansion printed next to the factored form; it does not agree with it.
inline Poly line_k3_expansion_printed() {
    const Poly t = t_();
    return (Poly(4) * t * t * t + Poly(3) * t * t + Poly(684) * t - Poly(480)) / Rational(3);
}

/// Mukai vector third entry for Ulrich bundles: the value consistent with the invariants,
/// 2a(2h - 1), and an alternative 2a(h - 1) that appears in a summary statement.
inline Poly ulrich_mukai_s() { return Poly(2) * a_() * (Poly(2) * var(Sym::h) - Poly(1)); }
inline Poly ulrich_mukai_s_variant() { return Poly(2) * a_() * (var(Sym::h) - Poly(1)); }

}  // namespace k3seg::reference
