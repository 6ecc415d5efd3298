#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "k3seg/bundle.hpp"
#include "k3seg/errors.hpp"
#include "k3seg/poly.hpp"

namespace k3seg {

enum class FamilyKind { tangent_twist, line_bundle, mukai_lazarsfeld, ulrich };

inline std::string to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::tangent_twist: return "tangent";
        case FamilyKind::line_bundle: return "line";
        case FamilyKind::mukai_lazarsfeld: return "ml";
        case FamilyKind::ulrich: return "ulrich";
    }
    return "?";
}

inline FamilyKind family_kind_from_string(const std::string& s) {
    if (s == "tangent") return FamilyKind::tangent_twist;
    if (s == "line") return FamilyKind::line_bundle;
    if (s == "ml") return FamilyKind::mukai_lazarsfeld;
    if (s == "ulrich") return FamilyKind::ulrich;
    throw ParameterError("unknown family '" + s + "' (expected tangent, line, ml or ulrich)");
}

/// A family together with its integer parameters: tangent (g, n), line (g, n), ml (g, r, d), ulrich (h, a).
struct FamilySpec {
    FamilyKind kind;
    std::map<std::string, long> params;

    long get(const std::string& key) const {
        auto it = params.find(key);
        if (it == params.end()) throw ParameterError(to_string(kind) + " family needs parameter '" + key + "'");
        return it->second;
    }

    void validate() const {
        std::vector<std::string> keys;
        switch (kind) {
            case FamilyKind::tangent_twist:
            case FamilyKind::line_bundle: keys = {"g", "n"}; break;
            case FamilyKind::mukai_lazarsfeld: keys = {"g", "r", "d"}; break;
            case FamilyKind::ulrich: keys = {"h", "a"}; break;
        }
        for (const auto& k : keys) get(k);
        for (const auto& [k, v] : params)
            if (std::find(keys.begin(), keys.end(), k) == keys.end())
                throw ParameterError("parameter '" + k + "' does not belong to the " + to_string(kind) + " family");
    }

    long genus() const { return kind == FamilyKind::ulrich ? get("h") + 1 : get("g"); }

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

struct Fact {
    enum class Source { computed, cited };
    std::string name;
    std::string value;
    Source source = Source::computed;
    std::string anchor;  // the hypothesis or the literature fact behind the value

    friend bool operator==(const Fact&, const Fact&) = default;
};

inline std::string to_string(Fact::Source s) { return s == Fact::Source::computed ? "computed" : "cited"; }

struct FamilyReport {
    FamilySpec spec;
    BundleInvariants invariants;
    MukaiVector mukai;
    std::vector<Fact> facts;
    std::map<std::string, Poly> numbers;  // chi, h0 bounds, moduli dimension, ...

    const Fact* fact(const std::string& name) const {
        for (const auto& f : facts)
            if (f.name == name) return &f;
        return nullptr;
    }

    friend bool operator==(const FamilyReport& a, const FamilyReport& b) {
        return a.spec == b.spec && a.invariants == b.invariants && a.mukai == b.mukai && a.facts == b.facts &&
               a.numbers == b.numbers;
    }
};

namespace detail {

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline Fact computed(std::string name, bool v, std::string anchor) {
    return {std::move(name), bool_str(v), Fact::Source::computed, std::move(anchor)};
}

inline Fact cited(std::string name, std::string value, std::string anchor) {
    return {std::move(name), std::move(value), Fact::Source::cited, std::move(anchor)};
}

inline void require_genus(long g) {
    if (g < 2) throw ParameterError("genus must be at least 2, got " + std::to_string(g));
}

}  // namespace detail

/// Smallest n with h^0(T_X(n)) > 0 guaranteed.
inline long tangent_n0(long g) {
    detail::require_genus(g);
    if (g == 2) return 4;
    if (g == 3) return 3;
    if (g <= 9) return 2;
    if (g == 10) return 1;
    if (g == 11) return 2;
    return 1;
}

inline long tangent_big_threshold(long g) { return tangent_n0(g) + 1; }

/// Known values of h^0 and h^1 of T_X(1) for a general polarized K3 (Beauville).
struct BeauvilleFacts {
    std::optional<long> h0;
    std::optional<long> h1;
    std::optional<long> h1_lower_bound;
};

inline BeauvilleFacts beauville_h0_h1(long g) {
    detail::require_genus(g);
    BeauvilleFacts f;
    if (g <= 9 || g == 11) f.h0 = 0;
    if (g == 10) f.h0 = 1;
    if (g == 11 || g >= 13) f.h1 = 0;
    if (g == 12) f.h1_lower_bound = 1;
    return f;
}

/// Brill-Noether number of a g^{r-1}_d on a curve of genus g.
inline Poly rho(const Poly& g, const Poly& r, const Poly& d) { return g - r * (r - Poly(1) + g - d); }
inline long rho(long g, long r, long d) { return g - r * (r - 1 + g - d); }

inline FamilyReport tangent_twist(long g, long n) {
    detail::require_genus(g);
    if (n < 0) throw ParameterError("tangent twist needs n >= 0");
    FamilyReport rep;
    rep.spec = {FamilyKind::tangent_twist, {{"g", g}, {"n", n}}};
    const Poly G(g), N(n);
    rep.invariants = make_bundle(G, Poly(2), Poly(2) * N, Poly(2) * N * N * (G - Poly(1)) + Poly(24));
    rep.mukai = mukai_vector(rep.invariants);
    Poly chi = euler_char(rep.invariants);
    Rational chi_v = chi.constant();
    rep.numbers["chi"] = chi;
    rep.numbers["h0_lower"] = chi_v.sign() > 0 ? chi : Poly();
    rep.numbers["moduli_dim"] = moduli_dim(rep.mukai);
    long thr = tangent_big_threshold(g);
    rep.facts.push_back(detail::computed("effective_by_chi", chi_v.sign() > 0, "h^0 >= chi since h^2(T_X(n)) = h^0(Omega_X(-n)) = 0"));
    rep.facts.push_back(detail::cited("stable_by_citation", "true", "T_X is slope stable for a K3 with Pic = ZH"));
    rep.facts.push_back(detail::computed("big", n >= thr,
                                         "T_X(n) big once n >= n0(g) + 1 = " + std::to_string(thr) +
                                             ", via sections of T_X(n0) and an ample twist"));
    return rep;
}

inline FamilyReport line_bundle_family(long g, long n) {
    detail::require_genus(g);
    if (n < 1) throw ParameterError("line bundle family needs n >= 1");
    FamilyReport rep;
    rep.spec = {FamilyKind::line_bundle, {{"g", g}, {"n", n}}};
    rep.invariants = line_bundle(Poly(g), Poly(n));
    rep.invariants.globally_generated = true;
    rep.mukai = mukai_vector(rep.invariants);
    rep.numbers["chi"] = euler_char(rep.invariants);
    rep.numbers["h0"] = h0_line(Poly(g), Poly(n));
    rep.numbers["moduli_dim"] = moduli_dim(rep.mukai);
    rep.facts.push_back(detail::cited("gg_on_X", "true", "nH is base point free for an ample generator H on a K3 of genus >= 2 with Pic = ZH"));
    return rep;
}

inline FamilyReport ml_bundle(long g, long r, long d) {
    if (g < 3) throw ParameterError("Mukai-Lazarsfeld family needs g >= 3");
    if (r < 2) throw ParameterError("Mukai-Lazarsfeld family needs r >= 2");
    if (d < 1) throw ParameterError("Mukai-Lazarsfeld family needs d >= 1");
    FamilyReport rep;
    rep.spec = {FamilyKind::mukai_lazarsfeld, {{"g", g}, {"r", r}, {"d", d}}};
    rep.invariants = make_bundle(Poly(g), Poly(r), Poly(1), Poly(d), true);
    rep.mukai = mukai_vector(rep.invariants);
    long rh = rho(g, r, d);
    rep.numbers["rho"] = Poly(rh);
    rep.numbers["chi"] = euler_char(rep.invariants);
    rep.numbers["h0"] = Poly(2 * r + g - d - 1);
    rep.numbers["moduli_dim"] = moduli_dim(rep.mukai);
    rep.facts.push_back(detail::computed("rho_nonneg", rh >= 0, "a g^{r-1}_d exists on a Brill-Noether general curve in |H| iff rho >= 0"));
    rep.facts.push_back(detail::computed("d_lt_2g-2", d < 2 * g - 2, "int s2 > 0 needs d < 2g - 2"));
    rep.facts.push_back(detail::cited("gg_on_X", "true", "dual of the kernel of evaluation of a complete base point free g^{r-1}_d is globally generated"));
    rep.facts.push_back(detail::cited("stable_by_citation", detail::bool_str(rh >= 0),
                                      "Mukai-Lazarsfeld bundles on a K3 with Pic = ZH are stable (Lazarsfeld, Mukai)"));
    rep.facts.push_back(detail::cited("h1_vanishes", "true", "h^1(E) = h^2(E) = 0 for Mukai-Lazarsfeld bundles of a complete linear series"));
    return rep;
}

/// True iff gcd(r, 2g - 2) = 1 and r d = (r - 1)(g + r): the induced Mukai vector is rigid.
inline bool exceptional_check(long g, long r, long d) {
    return std::gcd(r, 2 * g - 2) == 1 && r * d == (r - 1) * (g + r);
}

inline FamilyReport ulrich_bundle(long h, long a) {
    if (h < 2) throw ParameterError("Ulrich family needs h >= 2");
    if (a < 1) throw ParameterError("Ulrich family needs a >= 1");
    FamilyReport rep;
    rep.spec = {FamilyKind::ulrich, {{"h", h}, {"a", a}}};
    const long g = h + 1;
    rep.invariants = make_bundle(Poly(g), Poly(2 * a), Poly(3 * a), Poly(9 * a * a * h - 4 * a * (h - 1)), true);
    rep.mukai = mukai_vector(rep.invariants);
    rep.numbers["chi"] = euler_char(rep.invariants);
    rep.numbers["h0"] = Poly(2 * (2 * a) * (g - 1));
    rep.numbers["moduli_dim"] = moduli_dim(rep.mukai);
    rep.numbers["chi_E(-1)"] = euler_char(twist(rep.invariants, -1));
    rep.numbers["chi_E(-2)"] = euler_char(twist(rep.invariants, -2));
    rep.facts.push_back(detail::cited("exists_by_citation", "true",
                                      "stable Ulrich bundles of rank 2a with c1 = 3aH exist on a general K3 of genus h + 1 (Faenzi; Aprodu-Farkas-Ortega)"));
    rep.facts.push_back(detail::computed("gg_on_X", true, "Ulrich bundles are 0-regular, hence globally generated"));
    return rep;
}

inline FamilyReport make_family(const FamilySpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case FamilyKind::tangent_twist: return tangent_twist(spec.get("g"), spec.get("n"));
        case FamilyKind::line_bundle: return line_bundle_family(spec.get("g"), spec.get("n"));
        case FamilyKind::mukai_lazarsfeld: return ml_bundle(spec.get("g"), spec.get("r"), spec.get("d"));
        case FamilyKind::ulrich: return ulrich_bundle(spec.get("h"), spec.get("a"));
    }
    throw ParameterError("unknown family kind");
}

struct VeryAmpleCheck {
    bool value = false;
    bool degree_ok = false;       // n^2 (2g - 2) >= 4(k - 1)
    std::vector<long> witnesses;  // m violating the chain 2m^2H^2 <= nmH^2 <= m^2H^2 + k <= 2k
};

/// Numerical (k-1)-very ampleness of nH on a K3 with Pic = ZH (Knutsen), divisors D = mH.
inline VeryAmpleCheck very_ample_order_check(long g, long n, long k) {
    detail::require_genus(g);
    if (n < 1) throw ParameterError("very_ample_order_check needs n >= 1");
    if (k < 1) throw ParameterError("very_ample_order_check needs k >= 1");
    const long hh = 2 * g - 2;
    VeryAmpleCheck out;
    out.degree_ok = n * n * hh >= 4 * (k - 1);
    for (long m = 1; m * m * hh <= k; ++m) {
        long d2 = m * m * hh;
        if (2 * d2 <= n * m * hh && n * m * hh <= d2 + k && d2 + k <= 2 * k) out.witnesses.push_back(m);
    }
    out.value = out.degree_ok && out.witnesses.empty();
    return out;
}

struct GgVerdict {
    bool value = false;
    std::vector<std::string> chain;
};

/// Global generation of the tautological bundle on X^[k]: G^[k] is globally generated when
/// G is globally generated and the twisting line bundle is (k-1)-very ample. Mukai-Lazarsfeld
/// and Ulrich families are taken as E (x) H.
inline GgVerdict taut_gg_check(const FamilySpec& spec, long k) {
    if (k < 2) throw ParameterError("taut_gg_check needs k >= 2");
    spec.validate();
    GgVerdict v;
    auto va_line = [&](long g, long n) {
        VeryAmpleCheck c = very_ample_order_check(g, n, k);
        std::string what = std::to_string(n) + "H is " + std::to_string(k - 1) + "-very ample";
        if (!c.degree_ok) what += ": fails (nH)^2 >= 4(k-1)";
        else if (!c.witnesses.empty()) what += ": fails, divisor mH with m = " + std::to_string(c.witnesses.front()) + " violates Knutsen's chain";
        v.chain.push_back(what + " [" + (c.value ? "true" : "false") + "; Knutsen's criterion]");
        return c.value;
    };
    switch (spec.kind) {
        case FamilyKind::line_bundle: {
            v.chain.push_back("O^[k] (x) D(L) is globally generated iff L is (k-1)-very ample [Catanese-Goettsche]");
            v.value = va_line(spec.get("g"), spec.get("n"));
            return v;
        }
        case FamilyKind::mukai_lazarsfeld:
        case FamilyKind::ulrich: {
            FamilyReport rep = make_family(spec);
            bool gg = rep.invariants.globally_generated;
            v.chain.push_back("E globally generated [" + std::string(gg ? "true" : "false") + "; asserted by the family]");
            v.chain.push_back("(E (x) L)^[k] is globally generated if E is and L is (k-1)-very ample");
            bool va = va_line(spec.genus(), 1);
            v.value = gg && va;
            return v;
        }
        case FamilyKind::tangent_twist:
            throw UnsupportedError("global generation of T_X(n)^[k] is not decided by this criterion");
    }
    throw ParameterError("unknown family kind");
}

}  // namespace k3seg
