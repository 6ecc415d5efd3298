#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "k3seg/errors.hpp"
#include "k3seg/rational.hpp"

namespace k3seg {

/// The fixed alphabet of indeterminates. The enumeration order is the variable
/// order used by the graded-lex term order.
enum class Sym : std::uint8_t { r, g, d, n, a, h, S1, S2, t, G, D };

inline constexpr std::size_t kSymCount = 11;

inline constexpr std::array<std::string_view, kSymCount> kSymNames{
    "r", "g", "d", "n", "a", "h", "S1", "S2", "t", "G", "D"};

inline constexpr std::array<std::string_view, kSymCount> kSymTex{
    "r", "g", "d", "n", "a", "h", "S_{1}", "S_{2}", "t", "G", "D"};

inline std::string_view name_of(Sym s) { return kSymNames[static_cast<std::size_t>(s)]; }

inline std::optional<Sym> sym_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kSymCount; ++i)
        if (kSymNames[i] == name) return static_cast<Sym>(i);
    return std::nullopt;
}

struct Exponents {
    std::array<std::uint16_t, kSymCount> e{};

    unsigned total() const {
        unsigned s = 0;
        for (auto x : e) s += x;
        return s;
    }
    std::uint16_t operator[](Sym s) const { return e[static_cast<std::size_t>(s)]; }
    std::uint16_t& operator[](Sym s) { return e[static_cast<std::size_t>(s)]; }

    friend bool operator==(const Exponents&, const Exponents&) = default;

    friend Exponents operator+(const Exponents& a, const Exponents& b) {
        Exponents out;
        for (std::size_t i = 0; i < kSymCount; ++i) out.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
        return out;
    }
};

/// Graded lexicographic order: total degree first, then lex in symbol order.
inline bool grlex_less(const Exponents& a, const Exponents& b) {
    unsigned ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    return a.e < b.e;
}

struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const { return grlex_less(b, a); }
};

/// Sparse multivariate polynomial with exact rational coefficients. Terms are kept
/// sorted by decreasing graded-lex order with no zero coefficients, so two equal
/// polynomials always have identical representations.
class Poly {
public:
    struct Term {
        Exponents exp;
        Rational coef;
        friend bool operator==(const Term&, const Term&) = default;
    };

    Poly() = default;
    Poly(const Rational& c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) terms_.push_back({Exponents{}, c});
    }
    Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    Poly(int c) : Poly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

    static Poly var(Sym s, unsigned power = 1) {
        Poly p;
        Exponents ex;
        ex[s] = static_cast<std::uint16_t>(power);
        p.terms_.push_back({ex, Rational(1)});
        return p;
    }

    static Poly monomial(const Exponents& ex, const Rational& c) {
        Poly p;
        if (!c.is_zero()) p.terms_.push_back({ex, c});
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.total() == 0); }

    /// Value of a constant polynomial; throws if any indeterminate survives.
    Rational constant() const {
        if (!is_constant()) throw ParameterError("polynomial '" + str() + "' is not constant");
        return terms_.empty() ? Rational(0) : terms_[0].coef;
    }

    /// The constant term (coefficient of the empty monomial).
    Rational constant_term() const {
        if (!terms_.empty() && terms_.back().exp.total() == 0) return terms_.back().coef;
        return Rational(0);
    }

    unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().exp.total(); }

    unsigned degree_in(Sym s) const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max<unsigned>(d, t.exp[s]);
        return d;
    }

    /// Indeterminates that actually occur, in symbol order.
    std::vector<Sym> symbols() const {
        std::array<bool, kSymCount> seen{};
        for (const auto& t : terms_)
            for (std::size_t i = 0; i < kSymCount; ++i)
                if (t.exp.e[i]) seen[i] = true;
        std::vector<Sym> out;
        for (std::size_t i = 0; i < kSymCount; ++i)
            if (seen[i]) out.push_back(static_cast<Sym>(i));
        return out;
    }

    /// Coefficients of powers of `s`; entry i multiplies s^i.
    std::vector<Poly> coefficients_in(Sym s) const {
        std::vector<Poly> out(degree_in(s) + 1);
        std::vector<std::vector<Term>> buckets(out.size());
        for (const auto& t : terms_) {
            Term u = t;
            u.exp[s] = 0;
            buckets[t.exp[s]].push_back(u);
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = from_unsorted(std::move(buckets[i]));
        return out;
    }

    Poly coefficient_of(Sym s, unsigned power) const {
        auto cs = coefficients_in(s);
        return power < cs.size() ? cs[power] : Poly();
    }

    Poly& operator+=(const Poly& o) { terms_ = merge(terms_, o.terms_, false); return *this; }
    Poly& operator-=(const Poly& o) { terms_ = merge(terms_, o.terms_, true); return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    Poly& operator*=(const Rational& c) {
        if (c.is_zero()) { terms_.clear(); return *this; }
        for (auto& t : terms_) t.coef *= c;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& t : a.terms_) t.coef = -t.coef;
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_constant()) { Poly out = b; out *= a.terms_[0].coef; return out; }
        if (b.is_constant()) { Poly out = a; out *= b.terms_[0].coef; return out; }
        std::vector<Term> prods;
        prods.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) prods.push_back({x.exp + y.exp, x.coef * y.coef});
        return from_unsorted(std::move(prods));
    }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator/(Poly a, const Rational& c) {
        if (c.is_zero()) throw ParameterError("polynomial division by zero");
        return a *= Rational(1) / c;
    }

    friend bool operator==(const Poly&, const Poly&) = default;

    /// Substitutes polynomials for indeterminates; unbound symbols survive.
    Poly subst(const std::map<Sym, Poly>& bindings) const {
        if (bindings.empty()) return *this;
        std::map<std::pair<Sym, unsigned>, Poly> powers;
        auto power_of = [&](Sym s, unsigned e) -> const Poly& {
            auto key = std::make_pair(s, e);
            auto it = powers.find(key);
            if (it != powers.end()) return it->second;
            Poly v = pow(bindings.at(s), e);
            return powers.emplace(key, std::move(v)).first->second;
        };
        Poly out;
        for (const auto& t : terms_) {
            Exponents kept = t.exp;
            Poly factor(t.coef);
            for (const auto& [s, _] : bindings) {
                unsigned e = t.exp[s];
                if (e == 0) continue;
                kept[s] = 0;
                factor = factor * power_of(s, e);
            }
            out += factor * monomial(kept, Rational(1));
        }
        return out;
    }

    Poly subst(Sym s, const Poly& value) const { return subst(std::map<Sym, Poly>{{s, value}}); }

    /// Evaluates at rational points; the result is constant iff every occurring symbol is bound.
    Poly eval(const std::map<Sym, Rational>& point) const {
        std::map<Sym, Poly> b;
        for (const auto& [s, v] : point) b.emplace(s, Poly(v));
        return subst(b);
    }

    Rational eval_at(const std::map<Sym, Rational>& point) const { return eval(point).constant(); }

    friend Poly pow(const Poly& base, long e) {
        if (e < 0) throw UnsupportedError("polynomial power with negative exponent");
        Poly out(1), b = base;
        auto k = static_cast<unsigned long>(e);
        while (k) {
            if (k & 1UL) out = out * b;
            k >>= 1UL;
            if (k) b = b * b;
        }
        return out;
    }

    /// Derivative with respect to `s`.
    Poly derivative(Sym s) const {
        std::vector<Term> out;
        for (const auto& t : terms_) {
            if (t.exp[s] == 0) continue;
            Term u = t;
            u.coef *= Rational(static_cast<long>(t.exp[s]));
            u.exp[s] = static_cast<std::uint16_t>(t.exp[s] - 1);
            out.push_back(u);
        }
        return from_unsorted(std::move(out));
    }

    std::string str() const { return render(false); }
    std::string tex() const { return render(true); }

    static Poly parse(std::string_view text);

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

private:
    std::vector<Term> terms_;

    static Poly from_unsorted(std::vector<Term> ts) {
        std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return grlex_less(y.exp, x.exp); });
        Poly p;
        for (auto& t : ts) {
            if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
                p.terms_.back().coef += t.coef;
                if (p.terms_.back().coef.is_zero()) p.terms_.pop_back();
            } else if (!t.coef.is_zero()) {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    static std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
        std::vector<Term> out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && grlex_less(b[j].exp, a[i].exp))) {
                out.push_back(a[i++]);
            } else if (i == a.size() || grlex_less(a[i].exp, b[j].exp)) {
                Term t = b[j++];
                if (negate_b) t.coef = -t.coef;
                out.push_back(std::move(t));
            } else {
                Rational c = negate_b ? a[i].coef - b[j].coef : a[i].coef + b[j].coef;
                if (!c.is_zero()) out.push_back({a[i].exp, std::move(c)});
                ++i;
                ++j;
            }
        }
        return out;
    }

    static std::string render_coef(const Rational& c, bool tex) {
        if (!tex || c.is_integer()) return c.str();
        return "\\frac{" + c.num().get_str() + "}{" + c.den().get_str() + "}";
    }

    std::string render(bool tex) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            Rational mag = t.coef.abs();
            if (first) {
                if (t.coef.sign() < 0) os << '-';
            } else {
                os << (t.coef.sign() < 0 ? " - " : " + ");
            }
            first = false;
            std::vector<std::string> parts;
            bool unit = mag == Rational(1);
            if (!unit || t.exp.total() == 0) parts.push_back(render_coef(mag, tex));
            for (std::size_t i = 0; i < kSymCount; ++i) {
                unsigned e = t.exp.e[i];
                if (!e) continue;
                std::string s(tex ? kSymTex[i] : kSymNames[i]);
                if (e > 1) s += tex ? "^{" + std::to_string(e) + "}" : "^" + std::to_string(e);
                parts.push_back(std::move(s));
            }
            for (std::size_t k = 0; k < parts.size(); ++k) {
                if (k) os << (tex ? " " : "*");
                os << parts[k];
            }
        }
        return os.str();
    }
};

namespace detail {

// Recursive-descent reader for both the plain grammar ("1/2*t^2 - 5*t + 12") and
// the TeX rendering ("\frac{1}{2} t^{2} - 5 t + 12"). Juxtaposition multiplies.
class PolyReader {
public:
    explicit PolyReader(std::string_view s) : s_(s) {}

    Poly run() {
        Poly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek_is(std::string_view lit) {
        skip();
        return s_.substr(pos_, lit.size()) == lit;
    }
    bool accept(std::string_view lit) {
        if (!peek_is(lit)) return false;
        pos_ += lit.size();
        return true;
    }
    void expect(std::string_view lit) {
        if (!accept(lit)) fail("expected '" + std::string(lit) + "'");
    }

    Poly expr() {
        Poly out;
        bool neg = false;
        if (accept("-")) neg = true;
        else accept("+");
        Poly t = term();
        out = neg ? -t : t;
        for (;;) {
            if (accept("+")) out += term();
            else if (accept("-")) out -= term();
            else break;
        }
        return out;
    }

    bool starts_factor() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
               c == '(' || c == '\\';
    }

    Poly term() {
        Poly out = power();
        for (;;) {
            if (accept("*") || accept("\\cdot")) {
                out = out * power();
            } else if (starts_factor() && !peek_is("\\cdot")) {
                out = out * power();
            } else {
                break;
            }
        }
        return out;
    }

    unsigned integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
    }

    std::string digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(s_.substr(start, pos_ - start));
    }

    Poly power() {
        Poly base = atom();
        if (accept("^")) {
            unsigned e;
            if (accept("{")) {
                e = integer();
                expect("}");
            } else {
                e = integer();
            }
            base = pow(base, e);
        }
        return base;
    }

    Poly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (accept("(")) {
            Poly p = expr();
            expect(")");
            return p;
        }
        if (accept("\\frac")) {
            expect("{");
            Poly num = expr();
            expect("}");
            expect("{");
            Poly den = expr();
            expect("}");
            if (!den.is_constant() || den.is_zero()) fail("\\frac denominator must be a nonzero number");
            return num / den.constant();
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            std::size_t save = pos_;
            if (accept("/")) {
                skip();
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    std::string den = digits();
                    return Poly(Rational::parse(num + "/" + den));
                }
                pos_ = save;
            }
            return Poly(Rational::parse(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            ++pos_;
            if (c == 'S') {
                accept("_");
                bool braced = accept("{");
                unsigned idx = integer();
                if (braced) expect("}");
                if (idx == 1) return Poly::var(Sym::S1);
                if (idx == 2) return Poly::var(Sym::S2);
                fail("unknown symbol S" + std::to_string(idx));
            }
            auto s = sym_from_name(std::string_view(&c, 1));
            if (!s) fail(std::string("unknown symbol '") + c + "'");
            return Poly::var(*s);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace detail

inline Poly Poly::parse(std::string_view text) { return detail::PolyReader(text).run(); }

inline Poly var(Sym s) { return Poly::var(s); }

/// C(x, m) = x (x-1) ... (x-m+1) / m! for a polynomial argument x.
inline Poly binom_poly(const Poly& x, long m) {
    if (m < 0) throw ParameterError("binomial with negative lower index");
    Poly out(1);
    for (long l = 0; l < m; ++l) out = out * (x - Poly(l));
    return out / Rational(factorial(static_cast<unsigned long>(m)));
}

/// C(r - 1 + i, m) as a degree-m polynomial in r.
inline Poly binom_in_r(long top_offset, long choose) {
    if (choose < 0) throw ParameterError("binom_in_r: negative lower index");
    if (choose > top_offset) throw ParameterError("binom_in_r: lower index exceeds offset");
    return binom_poly(var(Sym::r) + Poly(top_offset - 1), choose);
}

/// Univariate view: dense coefficients (index = power) of a polynomial in a single symbol.
/// Throws if any other symbol occurs.
inline std::vector<Rational> dense_coefficients(const Poly& p, Sym s) {
    for (Sym other : p.symbols())
        if (other != s) throw ParameterError("polynomial '" + p.str() + "' is not univariate in " + std::string(name_of(s)));
    std::vector<Rational> out(p.degree_in(s) + 1, Rational(0));
    for (const auto& t : p.terms()) out[t.exp[s]] = t.coef;
    return out;
}

}  // namespace k3seg
