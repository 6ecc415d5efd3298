#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3seg/errors.hpp"
#include "k3seg/poly.hpp"

namespace k3seg {

/// Cohomology model of a polarized surface with only even cohomology: a rank-one
/// H^0 and H^4, and a set of named degree-2 classes with an exact Gram matrix. The
/// remaining part of H^2 is never enumerated; it only enters through the trace of
/// the diagonal class, which equals b2 = euler - 2 for a surface with b1 = b3 = 0.
class SurfaceModel {
public:
    /// K3 of (possibly symbolic) genus g with the polarization H, H^2 = 2g - 2.
    static std::shared_ptr<const SurfaceModel> k3(const Poly& genus) {
        auto m = std::make_shared<SurfaceModel>();
        m->genus_ = genus;
        m->names_ = {"H"};
        m->gram_ = {{Poly(2) * genus - Poly(2)}};
        return m;
    }

    /// K3 whose only named 2-class is an abstract s1 with s1.s1 = `s1_square`.
    static std::shared_ptr<const SurfaceModel> k3_abstract(const Poly& s1_square, const Poly& genus = var(Sym::g)) {
        auto m = std::make_shared<SurfaceModel>();
        m->genus_ = genus;
        m->names_ = {"s1"};
        m->gram_ = {{s1_square}};
        return m;
    }

    /// K3 with generators {H, s1}; `s1_dot_h` is the declared pairing s1.H.
    static std::shared_ptr<const SurfaceModel> k3_extended(const Poly& genus, const Poly& s1_square,
                                                           const Poly& s1_dot_h) {
        auto m = std::make_shared<SurfaceModel>();
        m->genus_ = genus;
        m->names_ = {"H", "s1"};
        Poly hh = Poly(2) * genus - Poly(2);
        m->gram_ = {{hh, s1_dot_h}, {s1_dot_h, s1_square}};
        return m;
    }

    /// A generic model; used to check that non-K3 data is rejected where K3 semantics are required.
    static std::shared_ptr<const SurfaceModel> custom(const Poly& genus, std::vector<std::string> names,
                                                      std::vector<std::vector<Poly>> gram, long euler) {
        if (gram.size() != names.size()) throw ParameterError("Gram matrix size does not match generator count");
        for (std::size_t i = 0; i < gram.size(); ++i) {
            if (gram[i].size() != names.size()) throw ParameterError("Gram matrix is not square");
            for (std::size_t j = 0; j < i; ++j)
                if (gram[i][j] != gram[j][i]) throw ParameterError("Gram matrix is not symmetric");
        }
        auto m = std::make_shared<SurfaceModel>();
        m->genus_ = genus;
        m->names_ = std::move(names);
        m->gram_ = std::move(gram);
        m->euler_ = euler;
        return m;
    }

    const Poly& genus() const { return genus_; }
    Poly h_square() const { return Poly(2) * genus_ - Poly(2); }
    long euler() const { return euler_; }
    long middle_trace() const { return euler_ - 2; }
    std::size_t generator_count() const { return names_.size(); }
    const std::string& generator_name(std::size_t i) const { return names_.at(i); }
    const Poly& gram(std::size_t i, std::size_t j) const { return gram_.at(i).at(j); }

    std::optional<std::size_t> find_generator(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    bool is_k3() const { return euler_ == 24; }

    void require_k3() const {
        if (!is_k3())
            throw UnsupportedError("surface with euler number " + std::to_string(euler_) +
                                   " rejected: operator relations assume a K3 (euler 24, trivial canonical class)");
    }

    friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;

private:
    Poly genus_;
    std::vector<std::string> names_;
    std::vector<std::vector<Poly>> gram_;
    long euler_ = 24;
};

using ModelPtr = std::shared_ptr<const SurfaceModel>;

/// A class in H^0 + H^2 + H^4; deg2 is a coefficient vector over the model's named generators
/// and deg4 a multiple of the point class [x].
class SurfaceClass {
public:
    explicit SurfaceClass(ModelPtr model)
        : model_(std::move(model)), deg2_(model_->generator_count()) {}

    static SurfaceClass unit(const ModelPtr& m, const Poly& c = Poly(1)) {
        SurfaceClass s(m);
        s.deg0_ = c;
        return s;
    }
    static SurfaceClass point(const ModelPtr& m, const Poly& c = Poly(1)) {
        SurfaceClass s(m);
        s.deg4_ = c;
        return s;
    }
    static SurfaceClass generator(const ModelPtr& m, std::size_t i, const Poly& c = Poly(1)) {
        SurfaceClass s(m);
        s.deg2_.at(i) = c;
        return s;
    }
    static SurfaceClass generator(const ModelPtr& m, const std::string& name, const Poly& c = Poly(1)) {
        auto i = m->find_generator(name);
        if (!i) throw ParameterError("model has no generator named '" + name + "'");
        return generator(m, *i, c);
    }

    const ModelPtr& model() const { return model_; }
    const Poly& deg0() const { return deg0_; }
    const std::vector<Poly>& deg2() const { return deg2_; }
    const Poly& deg4() const { return deg4_; }

    bool has_deg0() const { return !deg0_.is_zero(); }
    bool has_deg2() const {
        for (const auto& c : deg2_)
            if (!c.is_zero()) return true;
        return false;
    }
    bool has_deg4() const { return !deg4_.is_zero(); }
    bool is_zero() const { return !has_deg0() && !has_deg2() && !has_deg4(); }

    /// Cohomological degree of a nonzero homogeneous class; nullopt for zero or mixed classes.
    std::optional<int> homogeneous_degree() const {
        int count = int(has_deg0()) + int(has_deg2()) + int(has_deg4());
        if (count != 1) return std::nullopt;
        return has_deg0() ? 0 : (has_deg2() ? 2 : 4);
    }

    SurfaceClass& operator+=(const SurfaceClass& o) {
        check_same(o);
        deg0_ += o.deg0_;
        for (std::size_t i = 0; i < deg2_.size(); ++i) deg2_[i] += o.deg2_[i];
        deg4_ += o.deg4_;
        return *this;
    }
    friend SurfaceClass operator+(SurfaceClass a, const SurfaceClass& b) { return a += b; }
    friend SurfaceClass operator*(const Poly& c, SurfaceClass a) {
        a.deg0_ = c * a.deg0_;
        for (auto& x : a.deg2_) x = c * x;
        a.deg4_ = c * a.deg4_;
        return a;
    }

    friend bool operator==(const SurfaceClass& a, const SurfaceClass& b) {
        return *a.model_ == *b.model_ && a.deg0_ == b.deg0_ && a.deg2_ == b.deg2_ && a.deg4_ == b.deg4_;
    }

    void check_same(const SurfaceClass& o) const {
        if (model_ != o.model_ && !(*model_ == *o.model_))
            throw ParameterError("surface classes belong to different models");
    }

    std::string str() const {
        std::vector<std::string> parts;
        if (has_deg0()) parts.push_back("(" + deg0_.str() + ")*1");
        for (std::size_t i = 0; i < deg2_.size(); ++i)
            if (!deg2_[i].is_zero()) parts.push_back("(" + deg2_[i].str() + ")*" + model_->generator_name(i));
        if (has_deg4()) parts.push_back("(" + deg4_.str() + ")*[x]");
        if (parts.empty()) return "0";
        std::string out = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
        return out;
    }

private:
    ModelPtr model_;
    Poly deg0_;
    std::vector<Poly> deg2_;
    Poly deg4_;
};

/// Intersection pairing of two degree-2 coefficient vectors.
inline Poly pair_deg2(const SurfaceModel& m, const std::vector<Poly>& x, const std::vector<Poly>& y) {
    Poly out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (y[j].is_zero()) continue;
            out += x[i] * y[j] * m.gram(i, j);
        }
    }
    return out;
}

inline SurfaceClass cup(const SurfaceClass& a, const SurfaceClass& b) {
    a.check_same(b);
    const auto& m = a.model();
    SurfaceClass out(m);
    Poly d0 = a.deg0() * b.deg0();
    std::vector<Poly> d2(m->generator_count());
    for (std::size_t i = 0; i < d2.size(); ++i) d2[i] = a.deg0() * b.deg2()[i] + a.deg2()[i] * b.deg0();
    Poly d4 = a.deg0() * b.deg4() + a.deg4() * b.deg0() + pair_deg2(*m, a.deg2(), b.deg2());
    out = SurfaceClass::unit(m, d0) + SurfaceClass::point(m, d4);
    for (std::size_t i = 0; i < d2.size(); ++i)
        if (!d2[i].is_zero()) out += SurfaceClass::generator(m, i, d2[i]);
    return out;
}

inline Poly integrate_surface(const SurfaceClass& a) { return a.deg4(); }

/// Push-forward of a class along the diagonal, kept in factored form. `pure_terms` are
/// explicit Kunneth components with the coefficient folded into the first slot; `middle`
/// is the coefficient of the formal H^2 (x) H^2 diagonal (sum of e_i (x) e_i^dual).
struct DiagonalTensor {
    std::vector<std::pair<SurfaceClass, SurfaceClass>> pure_terms;
    std::optional<Poly> middle;
    long middle_trace = 22;

    /// Contracts the middle term with a degree-2 class: sum_i (beta . e_i) e_i^dual = beta.
    SurfaceClass contract_middle(const SurfaceClass& beta) const {
        if (beta.homogeneous_degree().value_or(2) != 2)
            throw ParameterError("middle diagonal term contracts only against degree-2 classes");
        if (!middle) return SurfaceClass(beta.model());
        return *middle * beta;
    }

    /// Sum over all Kunneth components of the integral of the product of both slots.
    Poly full_trace() const {
        Poly out;
        for (const auto& [x, y] : pure_terms) out += integrate_surface(cup(x, y));
        if (middle) out += *middle * Poly(middle_trace);
        return out;
    }
};

inline DiagonalTensor diagonal_push(const SurfaceClass& a) {
    auto deg = a.homogeneous_degree();
    const auto& m = a.model();
    DiagonalTensor out;
    out.middle_trace = m->middle_trace();
    if (a.is_zero()) return out;
    if (!deg) throw ParameterError("diagonal_push needs a homogeneous class");
    auto pt = SurfaceClass::point(m);
    if (*deg == 4) {
        out.pure_terms.emplace_back(a, pt);
    } else if (*deg == 2) {
        out.pure_terms.emplace_back(a, pt);
        out.pure_terms.emplace_back(pt, a);
    } else {
        out.pure_terms.emplace_back(a, pt);
        out.pure_terms.emplace_back(SurfaceClass::point(m, a.deg0()), SurfaceClass::unit(m));
        out.middle = a.deg0();
    }
    return out;
}

}  // namespace k3seg
