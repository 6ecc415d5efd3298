#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "k3seg/errors.hpp"
#include "k3seg/poly.hpp"
#include "k3seg/surface.hpp"

namespace k3seg {

enum class ClassKind : std::uint8_t { one = 0, gen = 1, point = 2 };

/// One creation operator q_n(c) with c the unit, a named 2-class, or the point class.
struct Factor {
    int n = 1;
    ClassKind kind = ClassKind::one;
    std::uint16_t gen = 0;

    int degree() const { return 2 * (n - 1) + 2 * static_cast<int>(kind); }

    friend bool operator==(const Factor&, const Factor&) = default;
    friend auto operator<=>(const Factor& a, const Factor& b) {
        return std::tie(a.n, a.kind, a.gen) <=> std::tie(b.n, b.kind, b.gen);
    }
};

/// Product of commuting creation operators applied to the vacuum, in canonical order.
/// `pairs` holds formal diagonal factors sum_i q_a(e_i) q_b(e_i^dual) over a basis of H^2;
/// each is recorded by its index pair (a <= b).
struct NakajimaMonomial {
    std::vector<Factor> factors;
    std::vector<std::pair<int, int>> pairs;

    int weight() const {
        int w = 0;
        for (const auto& f : factors) w += f.n;
        for (const auto& [a, b] : pairs) w += a + b;
        return w;
    }

    int degree() const {
        int d = 0;
        for (const auto& f : factors) d += f.degree();
        for (const auto& [a, b] : pairs) d += 2 * (a - 1) + 2 + 2 * (b - 1) + 2;
        return d;
    }

    void canonicalize() {
        std::sort(factors.begin(), factors.end());
        for (auto& [a, b] : pairs)
            if (a > b) std::swap(a, b);
        std::sort(pairs.begin(), pairs.end());
    }

    friend bool operator==(const NakajimaMonomial&, const NakajimaMonomial&) = default;
    friend bool operator<(const NakajimaMonomial& x, const NakajimaMonomial& y) {
        return std::tie(x.factors, x.pairs) < std::tie(y.factors, y.pairs);
    }
};

struct MonomialHash {
    std::size_t operator()(const NakajimaMonomial& m) const noexcept {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
        for (const auto& f : m.factors)
            mix((static_cast<std::size_t>(f.n) << 24) ^ (static_cast<std::size_t>(f.kind) << 16) ^ f.gen);
        mix(0xfeed);
        for (const auto& [a, b] : m.pairs) mix((static_cast<std::size_t>(a) << 16) ^ static_cast<std::size_t>(b));
        return h;
    }
};

/// A finite linear combination of Nakajima monomials of a fixed weight k, i.e. an
/// element of the cohomology of the Hilbert scheme of k points.
class FockState {
public:
    using Map = std::unordered_map<NakajimaMonomial, Poly, MonomialHash>;

    explicit FockState(int weight = 0) : weight_(weight) {}

    static FockState vacuum() {
        FockState s(0);
        s.terms_.emplace(NakajimaMonomial{}, Poly(1));
        return s;
    }

    int weight() const { return weight_; }
    const Map& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    void add(NakajimaMonomial m, const Poly& c) {
        if (c.is_zero()) return;
        m.canonicalize();
        if (m.weight() != weight_)
            throw ParameterError("monomial of weight " + std::to_string(m.weight()) + " added to a weight-" +
                                 std::to_string(weight_) + " state");
        auto [it, inserted] = terms_.try_emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly coefficient(NakajimaMonomial m) const {
        m.canonicalize();
        auto it = terms_.find(m);
        return it == terms_.end() ? Poly() : it->second;
    }

    /// Terms sorted by canonical monomial order.
    std::vector<std::pair<NakajimaMonomial, Poly>> sorted_terms() const {
        std::vector<std::pair<NakajimaMonomial, Poly>> out(terms_.begin(), terms_.end());
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return out;
    }

    /// The homogeneous piece of the given cohomological degree.
    FockState piece(int degree) const {
        FockState out(weight_);
        for (const auto& [m, c] : terms_)
            if (m.degree() == degree) out.terms_.emplace(m, c);
        return out;
    }

    /// Drops every term of cohomological degree above `max_degree`.
    FockState truncated(int max_degree) const {
        FockState out(weight_);
        for (const auto& [m, c] : terms_)
            if (m.degree() <= max_degree) out.terms_.emplace(m, c);
        return out;
    }

    std::optional<int> homogeneous_degree() const {
        std::optional<int> d;
        for (const auto& [m, c] : terms_) {
            if (d && *d != m.degree()) return std::nullopt;
            d = m.degree();
        }
        return d;
    }

    FockState& operator+=(const FockState& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) weight_ = o.weight_;
        if (o.weight_ != weight_) throw ParameterError("adding Fock states of different weights");
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    FockState& operator-=(const FockState& o) { return *this += o * Poly(-1); }
    friend FockState operator+(FockState a, const FockState& b) { return a += b; }
    friend FockState operator-(FockState a, const FockState& b) { return a -= b; }
    friend FockState operator*(const FockState& a, const Poly& c) {
        FockState out(a.weight_);
        if (c.is_zero()) return out;
        for (const auto& [m, x] : a.terms_) out.terms_.emplace(m, x * c);
        return out;
    }
    friend FockState operator*(const Poly& c, const FockState& a) { return a * c; }

    friend bool operator==(const FockState& a, const FockState& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.weight_ == b.weight_ && a.terms_ == b.terms_;
    }

private:
    int weight_;
    Map terms_;
};

/// Sign convention of the Heisenberg relation [q_m(a), q_n(b)] = eps(m) m delta_{m+n,0} (a.b).
enum class CommutatorSign {
    plain,        // eps(m) = 1
    alternating,  // eps(m) = (-1)^(m-1)
};

inline constexpr CommutatorSign kDefaultCommutatorSign = CommutatorSign::plain;

struct OperatorSpec {
    enum class Kind { q, q_derived, virasoro, boundary, annihilation };
    Kind kind = Kind::q;
    int index = 1;
    int order = 0;
    std::optional<SurfaceClass> cls;
};

/// Operators on the Fock space of a K3 surface. Creation operators commute; annihilators
/// are moved to the right with the Heisenberg relation; the boundary operator acts on a
/// creation monomial as the sum of single-factor replacements q_n -> q_n' = n L_n.
class FockEngine {
public:
    explicit FockEngine(ModelPtr model, CommutatorSign sign = kDefaultCommutatorSign)
        : model_(std::move(model)), sign_(sign) {
        model_->require_k3();
    }

    const ModelPtr& model() const { return model_; }
    CommutatorSign sign() const { return sign_; }

    FockState apply_q(int n, const SurfaceClass& alpha, const FockState& s) const {
        if (n <= 0) throw ParameterError("apply_q needs n >= 1; use apply_annihilation");
        check_model(alpha);
        FockState out(s.weight() + n);
        auto comps = components(alpha);
        for (const auto& [m, c] : s.terms()) {
            for (const auto& [tag, coef] : comps) {
                NakajimaMonomial nm = m;
                nm.factors.push_back(factor_of(n, tag));
                out.add(std::move(nm), c * coef);
            }
        }
        return out;
    }

    FockState apply_annihilation(int n, const SurfaceClass& beta, const FockState& s) const {
        if (n <= 0) throw ParameterError("apply_annihilation needs n >= 1");
        check_model(beta);
        FockState out(s.weight() - n);
        if (s.weight() < n) return out;
        auto comps = components(beta);
        for (const auto& [m, c] : s.terms()) {
            int label = 0;
            Ext ext = to_ext(m, label);
            for (const auto& [tag, coef] : comps) {
                for (std::size_t j = 0; j < ext.size(); ++j) {
                    if (ext[j].n != n) continue;
                    auto hit = contract(ext, j, tag, std::nullopt);
                    if (!hit) continue;
                    out.add(from_ext(hit->second), c * coef * hit->first * commutator_factor(n));
                }
            }
        }
        return out;
    }

    /// L_n(alpha) = 1/2 sum_nu :q_nu q_{n-nu}: delta_*(alpha), n >= 1.
    FockState apply_virasoro(int n, const SurfaceClass& alpha, const FockState& s) const {
        if (n <= 0) throw UnsupportedError("only positive Virasoro indices are implemented");
        check_model(alpha);
        FockState out(s.weight() + n);
        auto comps = components(alpha);
        for (const auto& [m, c] : s.terms()) {
            int label = 0;
            Ext ext = to_ext(m, label);
            for (const auto& [tag, coef] : comps) {
                virasoro_ext(n, tag, c * coef, ext, label, [&](const Poly& k, Ext&& e) { out.add(from_ext(e), k); });
            }
        }
        return out;
    }

    /// Cup product with c1 of the tautological bundle of the structure sheaf.
    FockState apply_boundary(const FockState& s, int max_degree = -1) const {
        FockState out(s.weight());
        for (const auto& [m, c] : s.terms()) {
            int label = 0;
            Ext ext = to_ext(m, label);
            for (std::size_t i = 0; i < ext.size(); ++i) {
                Ext prefix(ext.begin(), ext.begin() + static_cast<std::ptrdiff_t>(i));
                Ext suffix(ext.begin() + static_cast<std::ptrdiff_t>(i) + 1, ext.end());
                Poly coef = c * Poly(ext[i].n);
                virasoro_ext(ext[i].n, ext[i].tag, coef, suffix, label, [&](const Poly& k, Ext&& e) {
                    e.insert(e.end(), prefix.begin(), prefix.end());
                    NakajimaMonomial nm = from_ext(e);
                    if (max_degree >= 0 && nm.degree() > max_degree) return;
                    out.add(std::move(nm), k);
                });
            }
        }
        return out;
    }

    FockState apply_boundary_power(const FockState& s, int power, int max_degree = -1) const {
        FockState out = s;
        for (int i = 0; i < power; ++i) out = apply_boundary(out, max_degree);
        return out;
    }

    /// q_n^{(nu)}(alpha) = [d, q_n^{(nu-1)}(alpha)], expanded as
    /// sum_l (-1)^l C(nu, l) d^{nu-l} q_n(alpha) d^l.
    FockState apply_derived_q(int n, int order, const SurfaceClass& alpha, const FockState& s) const {
        if (order < 0) throw ParameterError("derived order must be non-negative");
        FockState out(s.weight() + n);
        FockState dl = s;
        for (int l = 0; l <= order; ++l) {
            if (l > 0) dl = apply_boundary(dl);
            FockState term = apply_boundary_power(apply_q(n, alpha, dl), order - l);
            Rational c(binomial(order, l));
            if (l % 2) c = -c;
            out += term * Poly(c);
        }
        return out;
    }

    /// Derived operator through the literal commutator recursion; exponential in `order`,
    /// kept as an independent check of apply_derived_q.
    FockState apply_derived_q_recursive(int n, int order, const SurfaceClass& alpha, const FockState& s) const {
        if (order == 0) return apply_q(n, alpha, s);
        return apply_boundary(apply_derived_q_recursive(n, order - 1, alpha, s)) -
               apply_derived_q_recursive(n, order - 1, alpha, apply_boundary(s));
    }

    FockState apply(const OperatorSpec& op, const FockState& s) const {
        auto need_class = [&]() -> const SurfaceClass& {
            if (!op.cls) throw ParameterError("operator needs a surface class");
            return *op.cls;
        };
        switch (op.kind) {
            case OperatorSpec::Kind::q: return apply_q(op.index, need_class(), s);
            case OperatorSpec::Kind::q_derived: return apply_derived_q(op.index, op.order, need_class(), s);
            case OperatorSpec::Kind::virasoro: return apply_virasoro(op.index, need_class(), s);
            case OperatorSpec::Kind::annihilation: return apply_annihilation(op.index, need_class(), s);
            case OperatorSpec::Kind::boundary:
                if (op.cls) throw ParameterError("boundary operator carries no class");
                return apply_boundary(s);
        }
        throw ParameterError("unknown operator kind");
    }

    /// Applies sum over Kunneth components of q_{n1}(x) q_{n2}(y) for a diagonal tensor.
    FockState apply_pair_creators(int n1, int n2, const DiagonalTensor& t, const FockState& s) const {
        FockState out(s.weight() + n1 + n2);
        for (const auto& [x, y] : t.pure_terms) out += apply_q(n1, x, apply_q(n2, y, s));
        if (t.middle && !t.middle->is_zero()) {
            for (const auto& [m, c] : s.terms()) {
                NakajimaMonomial nm = m;
                nm.pairs.emplace_back(n1, n2);
                out.add(std::move(nm), c * *t.middle);
            }
        }
        return out;
    }

    /// Coefficient of q_1([x])^k; the engine normalizes its integral to 1 for every k.
    static Poly integrate(const FockState& s) {
        return s.coefficient(point_power(s.weight()));
    }

    static NakajimaMonomial point_power(int k) {
        NakajimaMonomial m;
        m.factors.assign(static_cast<std::size_t>(k), Factor{1, ClassKind::point, 0});
        return m;
    }

    /// (1/k!) q_1(1)^k |0>.
    FockState unit(int k) const {
        FockState s = FockState::vacuum();
        auto one = SurfaceClass::unit(model_);
        for (int i = 0; i < k; ++i) s = apply_q(1, one, s);
        return s * Poly(Rational(1) / Rational(factorial(static_cast<unsigned long>(k))));
    }

    /// One line per monomial, `coef * q_{n}(class) ...`, in canonical order.
    std::string dump(const FockState& s) const {
        std::ostringstream os;
        for (const auto& [m, c] : s.sorted_terms()) {
            std::string cs = c.str();
            if (c.size() > 1) cs = "(" + cs + ")";
            os << cs << " *";
            if (m.factors.empty() && m.pairs.empty()) os << " |0>";
            for (const auto& f : m.factors) os << " q_{" << f.n << "}(" << class_name(f) << ")";
            int idx = 1;
            for (const auto& [a, b] : m.pairs) {
                os << " q_{" << a << "}(e_" << idx << ") q_{" << b << "}(e^" << idx << ")";
                ++idx;
            }
            os << '\n';
        }
        return os.str();
    }

    std::string class_name(const Factor& f) const {
        switch (f.kind) {
            case ClassKind::one: return "1";
            case ClassKind::point: return "[x]";
            case ClassKind::gen: return model_->generator_name(f.gen);
        }
        return "?";
    }

private:
    ModelPtr model_;
    CommutatorSign sign_;

    // Working form of a monomial in which each formal diagonal factor is split into two
    // halves sharing a label.
    struct Tag {
        enum class Kind : std::uint8_t { one, gen, point, half };
        Kind kind = Kind::one;
        int id = 0;
        friend bool operator==(const Tag&, const Tag&) = default;
    };
    struct ExtFactor {
        int n;
        Tag tag;
    };
    using Ext = std::vector<ExtFactor>;
    using Emit = std::function<void(const Poly&, Ext&&)>;

    void check_model(const SurfaceClass& c) const {
        if (c.model() != model_ && !(*c.model() == *model_))
            throw ParameterError("surface class belongs to a different model than the engine");
    }

    static std::vector<std::pair<Tag, Poly>> components(const SurfaceClass& a) {
        std::vector<std::pair<Tag, Poly>> out;
        if (a.has_deg0()) out.push_back({Tag{Tag::Kind::one, 0}, a.deg0()});
        for (std::size_t i = 0; i < a.deg2().size(); ++i)
            if (!a.deg2()[i].is_zero()) out.push_back({Tag{Tag::Kind::gen, static_cast<int>(i)}, a.deg2()[i]});
        if (a.has_deg4()) out.push_back({Tag{Tag::Kind::point, 0}, a.deg4()});
        return out;
    }

    static Factor factor_of(int n, const Tag& t) {
        switch (t.kind) {
            case Tag::Kind::one: return {n, ClassKind::one, 0};
            case Tag::Kind::point: return {n, ClassKind::point, 0};
            case Tag::Kind::gen: return {n, ClassKind::gen, static_cast<std::uint16_t>(t.id)};
            case Tag::Kind::half: break;
        }
        throw InconsistencyError("formal diagonal half cannot be a plain factor");
    }

    static Ext to_ext(const NakajimaMonomial& m, int& next_label) {
        Ext e;
        e.reserve(m.factors.size() + 2 * m.pairs.size());
        for (const auto& f : m.factors) {
            Tag t;
            t.kind = f.kind == ClassKind::one ? Tag::Kind::one : (f.kind == ClassKind::point ? Tag::Kind::point : Tag::Kind::gen);
            t.id = f.gen;
            e.push_back({f.n, t});
        }
        for (const auto& [a, b] : m.pairs) {
            int lab = next_label++;
            e.push_back({a, Tag{Tag::Kind::half, lab}});
            e.push_back({b, Tag{Tag::Kind::half, lab}});
        }
        return e;
    }

    static NakajimaMonomial from_ext(const Ext& e) {
        NakajimaMonomial m;
        std::map<int, std::vector<int>> halves;
        for (const auto& f : e) {
            if (f.tag.kind == Tag::Kind::half) halves[f.tag.id].push_back(f.n);
            else m.factors.push_back(factor_of(f.n, f.tag));
        }
        for (const auto& [lab, ns] : halves) {
            if (ns.size() != 2) throw InconsistencyError("unpaired formal diagonal factor");
            m.pairs.emplace_back(ns[0], ns[1]);
        }
        m.canonicalize();
        return m;
    }

    Rational commutator_factor(int m) const {
        // [q_{-m}(x), q_m(y)] = eps(-m) (-m) (x.y)
        if (sign_ == CommutatorSign::plain) return Rational(-m);
        return Rational(m % 2 == 0 ? m : -m);
    }

    static void rename_half(Ext& e, int from, const Tag& to) {
        for (auto& f : e)
            if (f.tag.kind == Tag::Kind::half && f.tag.id == from) {
                f.tag = to;
                return;
            }
        throw InconsistencyError("dangling formal diagonal label");
    }

    /// Contracts annihilator class `x` against factor j of `state`; the optional creator is
    /// appended to the result first. Returns the scalar and the remaining factors.
    std::optional<std::pair<Poly, Ext>> contract(const Ext& state, std::size_t j, const Tag& x,
                                                 const std::optional<ExtFactor>& creator) const {
        const Tag target = state[j].tag;
        Ext res;
        res.reserve(state.size() + 1);
        if (creator) res.push_back(*creator);
        for (std::size_t i = 0; i < state.size(); ++i)
            if (i != j) res.push_back(state[i]);
        using K = Tag::Kind;
        switch (x.kind) {
            case K::one:
                if (target.kind == K::point) return std::make_pair(Poly(1), std::move(res));
                return std::nullopt;
            case K::point:
                if (target.kind == K::one) return std::make_pair(Poly(1), std::move(res));
                return std::nullopt;
            case K::gen:
                if (target.kind == K::gen) {
                    const Poly& g = model_->gram(static_cast<std::size_t>(x.id), static_cast<std::size_t>(target.id));
                    if (g.is_zero()) return std::nullopt;
                    return std::make_pair(g, std::move(res));
                }
                if (target.kind == K::half) {
                    rename_half(res, target.id, x);
                    return std::make_pair(Poly(1), std::move(res));
                }
                return std::nullopt;
            case K::half:
                if (target.kind == K::gen) {
                    rename_half(res, x.id, target);
                    return std::make_pair(Poly(1), std::move(res));
                }
                if (target.kind == K::half) {
                    if (target.id == x.id) return std::make_pair(Poly(model_->middle_trace()), std::move(res));
                    rename_half(res, target.id, x);
                    return std::make_pair(Poly(1), std::move(res));
                }
                return std::nullopt;
        }
        return std::nullopt;
    }

    /// Emits the terms of L_n(tag) applied to the monomial `state`.
    void virasoro_ext(int n, const Tag& alpha, const Poly& coef, const Ext& state, int& next_label,
                      const Emit& emit) const {
        using K = Tag::Kind;
        const Tag pt{K::point, 0};
        std::vector<std::pair<Tag, Tag>> diag;
        switch (alpha.kind) {
            case K::point: diag = {{pt, pt}}; break;
            case K::gen:
            case K::half: diag = {{alpha, pt}, {pt, alpha}}; break;
            case K::one: {
                Tag mid{K::half, next_label++};
                diag = {{alpha, pt}, {pt, alpha}, {mid, mid}};
                break;
            }
        }
        Poly half = coef / Rational(2);
        for (const auto& [x, y] : diag) {
            for (int nu = 1; nu < n; ++nu) {
                Ext e = state;
                e.push_back({nu, x});
                e.push_back({n - nu, y});
                emit(half, std::move(e));
            }
            for (std::size_t j = 0; j < state.size(); ++j) {
                int m = state[j].n;
                Poly k = half * Poly(commutator_factor(m));
                // nu = -m: q_{n+m}(y) q_{-m}(x);  nu = n+m: q_{n+m}(x) q_{-m}(y)
                if (auto hit = contract(state, j, x, ExtFactor{n + m, y})) emit(k * hit->first, std::move(hit->second));
                if (auto hit = contract(state, j, y, ExtFactor{n + m, x})) emit(k * hit->first, std::move(hit->second));
            }
        }
    }
};

}  // namespace k3seg
