#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "k3seg/errors.hpp"
#include "k3seg/poly.hpp"
#include "k3seg/rational.hpp"

namespace k3seg {

/// Dense univariate polynomial, coefficient i multiplies x^i; no trailing zeros.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

    static UPoly from(const Poly& p, Sym s) { return UPoly(dense_coefficients(p, s)); }

    Poly to_poly(Sym s) const {
        Poly out;
        for (std::size_t i = 0; i < c_.size(); ++i) out += Poly(c_[i]) * Poly::var(s, static_cast<unsigned>(i));
        return out;
    }

    const std::vector<Rational>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& leading() const { return c_.back(); }

    Rational operator()(const Rational& x) const {
        Rational v;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
        return v;
    }

    UPoly derivative() const {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
        return UPoly(std::move(d));
    }

    UPoly operator-() const {
        UPoly o = *this;
        for (auto& x : o.c_) x = -x;
        return o;
    }

    /// Euclidean division; returns (quotient, remainder).
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
        if (d.is_zero()) throw ParameterError("polynomial division by zero");
        std::vector<Rational> rem = c_;
        std::vector<Rational> quo(c_.size() >= d.c_.size() ? c_.size() - d.c_.size() + 1 : 0);
        for (int i = static_cast<int>(rem.size()) - 1; i >= d.degree(); --i) {
            Rational f = rem[static_cast<std::size_t>(i)] / d.leading();
            if (f.is_zero()) continue;
            std::size_t shift = static_cast<std::size_t>(i - d.degree());
            quo[shift] = f;
            for (std::size_t j = 0; j < d.c_.size(); ++j) rem[shift + j] -= f * d.c_[j];
        }
        return {UPoly(std::move(quo)), UPoly(std::move(rem))};
    }

    UPoly monic() const {
        UPoly o = *this;
        if (!is_zero()) {
            Rational l = leading();
            for (auto& x : o.c_) x /= l;
        }
        return o;
    }

    friend bool operator==(const UPoly&, const UPoly&) = default;

private:
    std::vector<Rational> c_;

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

inline UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline UPoly squarefree_part(const UPoly& p) {
    if (p.degree() < 1) return p;
    return p.divmod(gcd(p, p.derivative())).first;
}

/// Sturm chain of the squarefree part of p: p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i).
inline std::vector<UPoly> sturm_chain(const UPoly& p) {
    if (p.is_zero()) throw ParameterError("Sturm chain of the zero polynomial");
    std::vector<UPoly> chain{squarefree_part(p)};
    if (chain[0].degree() < 1) return chain;
    chain.push_back(chain[0].derivative());
    while (true) {
        UPoly r = -chain[chain.size() - 2].divmod(chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back(std::move(r));
    }
    return chain;
}

/// A point of the extended real line: a rational, or -inf / +inf.
struct ExtendedRational {
    enum class Kind { neg_inf, finite, pos_inf };
    Kind kind = Kind::finite;
    Rational value;

    static ExtendedRational neg_inf() { return {Kind::neg_inf, {}}; }
    static ExtendedRational pos_inf() { return {Kind::pos_inf, {}}; }
    ExtendedRational() = default;
    ExtendedRational(Kind k, Rational v) : kind(k), value(std::move(v)) {}
    ExtendedRational(const Rational& v) : value(v) {}  // NOLINT(google-explicit-constructor)
    ExtendedRational(long v) : value(v) {}             // NOLINT(google-explicit-constructor)
};

inline int sign_at(const UPoly& p, const ExtendedRational& x) {
    if (p.is_zero()) return 0;
    switch (x.kind) {
        case ExtendedRational::Kind::finite: return p(x.value).sign();
        case ExtendedRational::Kind::pos_inf: return p.leading().sign();
        case ExtendedRational::Kind::neg_inf: return p.degree() % 2 ? -p.leading().sign() : p.leading().sign();
    }
    return 0;
}

inline int sign_variations(const std::vector<UPoly>& chain, const ExtendedRational& x) {
    int v = 0, last = 0;
    for (const auto& q : chain) {
        int s = sign_at(q, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

/// Number of distinct real roots of p in (lo, hi].
inline int sturm_count(const UPoly& p, const ExtendedRational& lo, const ExtendedRational& hi) {
    if (p.is_zero()) throw ParameterError("sturm_count of the zero polynomial");
    auto chain = sturm_chain(p);
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

inline int sturm_count(const Poly& p, Sym s, const ExtendedRational& lo, const ExtendedRational& hi) {
    return sturm_count(UPoly::from(p, s), lo, hi);
}

/// Every real root satisfies |x| < 1 + max |a_i / a_n|.
inline Rational cauchy_bound(const UPoly& p) {
    Rational m;
    for (int i = 0; i < p.degree(); ++i) {
        Rational q = (p.coefficients()[static_cast<std::size_t>(i)] / p.leading()).abs();
        if (q > m) m = q;
    }
    return m + Rational(1);
}

struct RootBracket {
    Rational lo;  // the root lies in (lo, hi]
    Rational hi;
};

/// Rational interval (lo, hi] of length <= width containing the largest real root, or
/// nullopt when p has no real roots.
inline std::optional<RootBracket> max_root_bracket(const UPoly& p, const Rational& width) {
    if (p.is_zero()) throw ParameterError("max_root_bracket of the zero polynomial");
    if (width.sign() <= 0) throw ParameterError("bracket width must be positive");
    auto chain = sturm_chain(p);
    auto count = [&](const ExtendedRational& a, const ExtendedRational& b) {
        return sign_variations(chain, a) - sign_variations(chain, b);
    };
    if (count(ExtendedRational::neg_inf(), ExtendedRational::pos_inf()) == 0) return std::nullopt;
    Rational b = cauchy_bound(p);
    RootBracket br{-b, b};
    // invariant: a root in (lo, hi], none in (hi, inf)
    while (br.hi - br.lo > width) {
        Rational mid = (br.lo + br.hi) / Rational(2);
        if (count(mid, br.hi) > 0) br.lo = mid;
        else br.hi = mid;
    }
    return br;
}

inline std::optional<RootBracket> max_root_bracket(const Poly& p, Sym s, const Rational& width) {
    return max_root_bracket(UPoly::from(p, s), width);
}

}  // namespace k3seg
