#pragma once

#include <optional>
#include <string>

#include "k3seg/errors.hpp"
#include "k3seg/poly.hpp"
#include "k3seg/surface.hpp"

namespace k3seg {

/// Numerical data of a vector bundle on a Picard-rank-one K3: c1 = lambda * H.
struct BundleInvariants {
    Poly rank;
    Poly lambda;
    Poly c2;  // integral of c2
    ModelPtr context;
    bool globally_generated = false;

    const Poly& genus() const { return context->genus(); }
    Poly h_square() const { return context->h_square(); }

    friend bool operator==(const BundleInvariants& a, const BundleInvariants& b) {
        return a.rank == b.rank && a.lambda == b.lambda && a.c2 == b.c2 && a.globally_generated == b.globally_generated &&
               *a.context == *b.context;
    }
};

inline BundleInvariants make_bundle(const Poly& genus, const Poly& rank, const Poly& lambda, const Poly& c2,
                                    bool globally_generated = false) {
    return {rank, lambda, c2, SurfaceModel::k3(genus), globally_generated};
}

inline BundleInvariants line_bundle(const Poly& genus, const Poly& n) { return make_bundle(genus, 1, n, 0); }

/// Integrated Segre numbers S1 = int s1^2 and S2 = int s2.
struct SegreNumbers {
    Poly s1_square;
    Poly s2;
    friend bool operator==(const SegreNumbers&, const SegreNumbers&) = default;
};

inline Poly c1_square(const BundleInvariants& b) { return b.lambda * b.lambda * b.h_square(); }

/// s1 = -c1 and s2 = c1^2 - c2.
inline SegreNumbers segre_from_chern(const BundleInvariants& b) {
    Poly c1sq = c1_square(b);
    return {c1sq, c1sq - b.c2};
}

/// E (x) mH: c1 shifts by r m H and c2 by (r-1) c1 . mH + C(r,2) (mH)^2.
inline BundleInvariants twist(const BundleInvariants& b, const Poly& m) {
    BundleInvariants out = b;
    Poly hh = b.h_square();
    out.lambda = b.lambda + b.rank * m;
    out.c2 = b.c2 + (b.rank - Poly(1)) * b.lambda * m * hh + binom_poly(b.rank, 2) * m * m * hh;
    return out;
}

inline BundleInvariants twist(const BundleInvariants& b, long m) { return twist(b, Poly(m)); }

/// Mukai vector (r, c1, chi - r) with c1 recorded by its multiple of H.
struct MukaiVector {
    Poly r;
    Poly lambda;
    Poly s;
    Poly genus;
    friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
};

inline MukaiVector mukai_vector(const BundleInvariants& b) {
    return {b.rank, b.lambda, c1_square(b) / Rational(2) - b.c2 + b.rank, b.genus()};
}

inline Poly mukai_pairing(const MukaiVector& v, const MukaiVector& w) {
    if (v.genus != w.genus) throw ParameterError("Mukai vectors from different genus contexts");
    Poly hh = Poly(2) * v.genus - Poly(2);
    return v.lambda * w.lambda * hh - v.r * w.s - w.r * v.s;
}

inline Poly moduli_dim(const MukaiVector& v) { return Poly(2) + mukai_pairing(v, v); }

/// Hirzebruch-Riemann-Roch on a K3: chi = c1^2/2 - c2 + 2r.
inline Poly euler_char(const BundleInvariants& b) { return c1_square(b) / Rational(2) - b.c2 + Poly(2) * b.rank; }

inline Poly slope(const BundleInvariants& b) {
    if (b.rank.is_zero()) throw ParameterError("slope of a rank-zero bundle");
    if (!b.rank.is_constant()) throw UnsupportedError("slope needs a numeric rank");
    return b.lambda * b.h_square() / b.rank.constant();
}

struct SurfaceBigness {
    enum class Status { big, not_big, not_applicable, undetermined };
    Status status;
    Poly s2;

    bool is_big() const { return status == Status::big; }
};

inline std::string to_string(SurfaceBigness::Status s) {
    switch (s) {
        case SurfaceBigness::Status::big: return "big";
        case SurfaceBigness::Status::not_big: return "not_big";
        case SurfaceBigness::Status::not_applicable: return "not_applicable";
        case SurfaceBigness::Status::undetermined: return "undetermined";
    }
    return "?";
}

/// Numerical bigness for nef bundles on a surface: big iff int s2 > 0. Only applies to
/// globally generated bundles; otherwise the verdict is "not applicable", never "not big".
inline SurfaceBigness big_on_surface(const BundleInvariants& b) {
    Poly s2 = segre_from_chern(b).s2;
    if (!b.globally_generated) return {SurfaceBigness::Status::not_applicable, s2};
    if (!s2.is_constant()) return {SurfaceBigness::Status::undetermined, s2};
    return {s2.constant().sign() > 0 ? SurfaceBigness::Status::big : SurfaceBigness::Status::not_big, s2};
}

/// h^0(mH) = m^2 (g-1) + 2 (ample twists, m >= 1).
inline Poly h0_line(const Poly& genus, const Poly& m) { return m * m * (genus - Poly(1)) + Poly(2); }

/// h^0(F^[k] (x) D_k(mH)) = h^0(F (x) mH) * dim S^{k-1} H^0(mH), with h^0(F (x) mH) taken from
/// its Euler characteristic. The caller asserts vanishing of higher cohomology of F (x) mH.
inline Poly h0_tautological_twist(const BundleInvariants& b, const Poly& m, long k, bool higher_cohomology_vanishes) {
    if (k < 1) throw ParameterError("h0_tautological_twist needs k >= 1");
    if (!higher_cohomology_vanishes)
        throw UnsupportedError("h0 from chi needs vanishing higher cohomology of the twisted bundle");
    Poly h0_twisted = euler_char(twist(b, m));
    Poly h0_l = h0_line(b.genus(), m);
    return h0_twisted * binom_poly(h0_l + Poly(k - 2), k - 1);
}

/// Same count when only a value (or lower bound) for h^0(F (x) mH) is known.
inline Poly h0_tautological_from_sections(const Poly& h0_twisted, const Poly& genus, const Poly& m, long k) {
    if (k < 1) throw ParameterError("h0_tautological_from_sections needs k >= 1");
    return h0_twisted * binom_poly(h0_line(genus, m) + Poly(k - 2), k - 1);
}

}  // namespace k3seg
