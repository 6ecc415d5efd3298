#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "k3seg/bundle.hpp"
#include "k3seg/errors.hpp"
#include "k3seg/fock.hpp"
#include "k3seg/poly.hpp"
#include "k3seg/surface.hpp"

namespace k3seg {

/// Segre data of a bundle F on a K3 as it enters the tautological recursion: the rank
/// and the two integrals S1 = int s1(F)^2, S2 = int s2(F). Any entry may be symbolic.
struct SegreData {
    Poly rank;
    Poly s1_square;
    Poly s2;

    static SegreData symbolic() { return {var(Sym::r), var(Sym::S1), var(Sym::S2)}; }

    static SegreData of(const BundleInvariants& b) {
        SegreNumbers s = segre_from_chern(b);
        return {b.rank, s.s1_square, s.s2};
    }

    /// Replaces r, S1, S2 in a symbolic result by this data.
    Poly specialize(const Poly& p) const {
        return p.subst({{Sym::r, rank}, {Sym::S1, s1_square}, {Sym::S2, s2}});
    }

    friend bool operator==(const SegreData&, const SegreData&) = default;
};

struct TautSegreResult {
    enum class Provenance { recursion, closed_form };

    int k = 0;
    std::map<int, FockState> classes;  // d -> s_d, cohomological degree 2d
    std::optional<Poly> integral;      // int s_{2k}
    Provenance provenance = Provenance::recursion;
};

inline std::string to_string(TautSegreResult::Provenance p) {
    return p == TautSegreResult::Provenance::recursion ? "recursion" : "closed_form";
}

/// s(F^[k]) = (1/k) sum_{i=0}^{2k} sum_{j<=min(i,2)} (-1)^{i-j} C(r-1+i, i-j) q_1^{(i-j)}(s_j(F)) s(F^[k-1]).
/// The surface is modelled with a single named 2-class s1 of square S1, which is all the
/// recursion ever sees of F.
class TautSegreEngine {
public:
    explicit TautSegreEngine(SegreData data, CommutatorSign sign = kDefaultCommutatorSign)
        : data_(std::move(data)),
          model_(SurfaceModel::k3_abstract(data_.s1_square)),
          fock_(model_, sign),
          s_{SurfaceClass::unit(model_), SurfaceClass::generator(model_, 0),
             SurfaceClass::point(model_, data_.s2)} {
        totals_.push_back(FockState::vacuum());
    }

    const SegreData& data() const { return data_; }
    const FockEngine& fock() const { return fock_; }
    const SurfaceClass& surface_segre(int j) const { return s_.at(static_cast<std::size_t>(j)); }

    /// Full s(F^[k]), memoized across k. Horner evaluation in powers of the boundary
    /// operator, pruning terms that cannot reach degree 4k.
    const FockState& total(int k) {
        if (k < 0) throw ParameterError("k must be non-negative");
        while (static_cast<int>(totals_.size()) <= k) totals_.push_back(step(static_cast<int>(totals_.size())));
        return totals_[static_cast<std::size_t>(k)];
    }

    /// s_d(F^[k]) through the graded recursion, i from max(0, d - 2(k-1)) to d.
    const FockState& segre_class(int k, int d) {
        if (k < 0) throw ParameterError("k must be non-negative");
        if (d < 0 || d > 2 * k) throw ParameterError("degree d=" + std::to_string(d) + " outside 0..2k");
        auto key = std::make_pair(k, d);
        if (auto it = graded_.find(key); it != graded_.end()) return it->second;
        FockState out(k);
        if (k == 0) {
            out = FockState::vacuum();
        } else {
            for (int i = std::max(0, d - 2 * (k - 1)); i <= d; ++i) {
                const FockState& prev = segre_class(k - 1, d - i);
                if (prev.is_zero()) continue;
                for (int j = 0; j <= std::min(i, 2); ++j) {
                    Poly c = binom_in_r(i, i - j).subst(Sym::r, data_.rank);
                    if ((i - j) % 2) c = -c;
                    out += fock_.apply_derived_q(1, i - j, s_[static_cast<std::size_t>(j)], prev) * c;
                }
            }
            out = out * Poly(Rational(1, k));
        }
        return graded_.emplace(key, std::move(out)).first->second;
    }

    Poly top_integral(int k) {
        if (k < 1) throw ParameterError("top_segre_integral needs k >= 1");
        return FockEngine::integrate(segre_class(k, 2 * k));
    }

    TautSegreResult result(int k) {
        TautSegreResult r;
        r.k = k;
        const FockState& t = total(k);
        for (int d = 0; d <= 2 * k; ++d) r.classes.emplace(d, t.piece(2 * d));
        if (k >= 1) r.integral = FockEngine::integrate(t);
        return r;
    }

private:
    SegreData data_;
    ModelPtr model_;
    FockEngine fock_;
    std::vector<SurfaceClass> s_;
    std::vector<FockState> totals_;
    std::map<std::pair<int, int>, FockState> graded_;

    // Coefficient of q_1^{(nu)}(s_j) in the double sum.
    Poly coefficient(int nu, int j) const {
        Poly c = binom_in_r(nu + j, nu).subst(Sym::r, data_.rank);
        return nu % 2 ? -c : c;
    }

    FockState step(int k) {
        const FockState& prev = totals_[static_cast<std::size_t>(k - 1)];
        const int top = 2 * k;  // largest i
        std::vector<FockState> dl{prev};
        for (int l = 1; l <= top; ++l) {
            dl.push_back(fock_.apply_boundary(dl.back()));
            if (dl.back().is_zero()) break;
        }
        // A[j][l] = q_1(s_j) d^l s(F^[k-1])
        std::vector<std::vector<FockState>> a(3);
        for (int j = 0; j <= 2; ++j)
            for (const auto& x : dl) a[static_cast<std::size_t>(j)].push_back(fock_.apply_q(1, s_[static_cast<std::size_t>(j)], x));
        // q^{(nu)} = sum_l (-1)^l C(nu,l) d^{nu-l} q d^l; regroup by p = nu - l.
        std::vector<FockState> b(static_cast<std::size_t>(top) + 1, FockState(k));
        for (int j = 0; j <= 2; ++j) {
            const auto& aj = a[static_cast<std::size_t>(j)];
            for (int l = 0; l < static_cast<int>(aj.size()); ++l) {
                if (aj[static_cast<std::size_t>(l)].is_zero()) continue;
                for (int p = 0; p + l + j <= top; ++p) {
                    Poly c = coefficient(p + l, j) * Poly(Rational(binomial(p + l, l)));
                    if (l % 2) c = -c;
                    b[static_cast<std::size_t>(p)] += aj[static_cast<std::size_t>(l)] * c;
                }
            }
        }
        FockState acc = b[static_cast<std::size_t>(top)].truncated(4 * k - 2 * top);
        for (int p = top - 1; p >= 0; --p) {
            acc = b[static_cast<std::size_t>(p)].truncated(4 * k - 2 * p) + fock_.apply_boundary(acc, 4 * k - 2 * p);
        }
        return acc * Poly(Rational(1, k));
    }
};

inline TautSegreResult total_segre_taut(const SegreData& data, int k) {
    if (k < 0) throw ParameterError("k must be non-negative");
    TautSegreEngine e(data);
    return e.result(k);
}

inline FockState segre_class_taut(const SegreData& data, int k, int d) {
    TautSegreEngine e(data);
    return e.segre_class(k, d);
}

inline Poly top_segre_integral(const SegreData& data, int k) {
    TautSegreEngine e(data);
    return e.top_integral(k);
}

/// Closed formulas for int s_4(F^[2]) and int s_6(F^[3]) in (r, S1, S2), independent of the engine.
inline Poly closed_form_symbolic(int k) {
    const Poly r = var(Sym::r), S1 = var(Sym::S1), S2 = var(Sym::S2);
    const Poly r2 = r * r, r3 = r2 * r, r4 = r3 * r;
    const Poly quad = r2 + Poly(3) * r + Poly(3);
    if (k == 2) {
        return Poly(12) * binom_poly(r + Poly(3), 4) - binom_poly(r + Poly(2), 2) * S1 / Rational(2) -
               quad * S2 / Rational(2) + S2 * S2 / Rational(2);
    }
    if (k == 3) {
        const Poly c22 = binom_poly(r + Poly(2), 2);
        return Poly(-2) * (Poly(4) * r3 + Poly(21) * r2 + Poly(35) * r + Poly(20)) * binom_poly(r + Poly(2), 3) +
               c22 * (Poly(3) * r2 + Poly(8) * r + Poly(6)) * S1 / Rational(3) +
               (Poly(6) * r4 + Poly(35) * r3 + Poly(72) * r2 + Poly(61) * r + Poly(20)) * S2 / Rational(6) -
               c22 * S1 * S2 / Rational(2) - quad * S2 * S2 / Rational(2) + S2 * S2 * S2 / Rational(6);
    }
    throw UnsupportedError("closed formulas exist only for k = 2 and k = 3");
}

inline Poly closed_form(const SegreData& data, int k) { return data.specialize(closed_form_symbolic(k)); }

struct IdentityCheck {
    std::string name;
    std::string lhs;
    std::string rhs;
    bool pass = false;
};

/// The nine evaluations q_1^{(a)}(s_i) q_1(s_j)|0> with a + i + j = 4 that make up the k = 2 integral.
inline std::vector<IdentityCheck> identity_suite(CommutatorSign sign = kDefaultCommutatorSign) {
    auto model = SurfaceModel::k3_abstract(var(Sym::S1));
    FockEngine e(model, sign);
    const Poly S1 = var(Sym::S1), S2 = var(Sym::S2);
    const SurfaceClass s[3] = {SurfaceClass::unit(model), SurfaceClass::generator(model, 0),
                               SurfaceClass::point(model, S2)};
    const FockState vac = FockState::vacuum();
    const FockState xx = e.apply_q(1, SurfaceClass::point(model), e.apply_q(1, SurfaceClass::point(model), vac));
    struct Row {
        int order, i, j;
        Poly expected;
    };
    const Row rows[] = {
        {2, 0, 2, -S2}, {1, 1, 2, Poly()}, {0, 2, 2, S2 * S2}, {3, 0, 1, Poly()}, {2, 1, 1, -S1},
        {1, 2, 1, Poly()}, {4, 0, 0, Poly(24)}, {3, 1, 0, Poly()}, {2, 2, 0, -S2},
    };
    const char* names[] = {"1", "s1", "s2"};
    std::vector<IdentityCheck> out;
    for (const auto& row : rows) {
        FockState lhs = e.apply_derived_q(1, row.order, s[row.i], e.apply_q(1, s[row.j], vac));
        FockState rhs = xx * row.expected;
        IdentityCheck c;
        c.name = "q1^(" + std::to_string(row.order) + ")(" + names[row.i] + ") q1(" + names[row.j] + ")";
        c.lhs = e.dump(lhs);
        c.rhs = e.dump(rhs);
        c.pass = lhs == rhs;
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace k3seg
