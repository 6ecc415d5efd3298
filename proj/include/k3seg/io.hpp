#pragma once

// JSON encoding of every result type. All numbers are written as strings (exact
// rationals or polynomials); from_json inverts to_json exactly.

#include <json.hpp>

#include <string>
#include <vector>

#include "k3seg/bundle.hpp"
#include "k3seg/errata.hpp"
#include "k3seg/families.hpp"
#include "k3seg/fock.hpp"
#include "k3seg/positivity.hpp"
#include "k3seg/surface.hpp"
#include "k3seg/tautsegre.hpp"

namespace k3seg {

using json = nlohmann::ordered_json;

inline void to_json(json& j, const Rational& q) { j = q.str(); }
inline void from_json(const json& j, Rational& q) { q = Rational::parse(j.get<std::string>()); }

inline void to_json(json& j, const Poly& p) { j = p.str(); }
inline void from_json(const json& j, Poly& p) { p = Poly::parse(j.get<std::string>()); }

inline json model_to_json(const SurfaceModel& m) {
    json names = json::array(), gram = json::array();
    for (std::size_t i = 0; i < m.generator_count(); ++i) {
        names.push_back(m.generator_name(i));
        json row = json::array();
        for (std::size_t k = 0; k < m.generator_count(); ++k) row.push_back(m.gram(i, k));
        gram.push_back(row);
    }
    return {{"genus", m.genus()}, {"generators", names}, {"gram", gram}, {"euler", std::to_string(m.euler())}};
}

inline ModelPtr model_from_json(const json& j) {
    std::vector<std::vector<Poly>> gram;
    for (const auto& row : j.at("gram")) gram.push_back(row.get<std::vector<Poly>>());
    return SurfaceModel::custom(j.at("genus").get<Poly>(), j.at("generators").get<std::vector<std::string>>(),
                                std::move(gram), std::stol(j.at("euler").get<std::string>()));
}

inline void to_json(json& j, const BundleInvariants& b) {
    j = {{"rank", b.rank},
         {"lambda", b.lambda},
         {"c2", b.c2},
         {"globally_generated", b.globally_generated},
         {"surface", model_to_json(*b.context)}};
}
inline void from_json(const json& j, BundleInvariants& b) {
    b.rank = j.at("rank").get<Poly>();
    b.lambda = j.at("lambda").get<Poly>();
    b.c2 = j.at("c2").get<Poly>();
    b.globally_generated = j.at("globally_generated").get<bool>();
    b.context = model_from_json(j.at("surface"));
}

inline void to_json(json& j, const MukaiVector& v) {
    j = {{"r", v.r}, {"lambda", v.lambda}, {"s", v.s}, {"genus", v.genus}};
}
inline void from_json(const json& j, MukaiVector& v) {
    v = {j.at("r").get<Poly>(), j.at("lambda").get<Poly>(), j.at("s").get<Poly>(), j.at("genus").get<Poly>()};
}

inline void to_json(json& j, const FamilySpec& s) {
    json p = json::object();
    for (const auto& [k, v] : s.params) p[k] = std::to_string(v);
    j = {{"kind", to_string(s.kind)}, {"parameters", p}};
}
inline void from_json(const json& j, FamilySpec& s) {
    s.kind = family_kind_from_string(j.at("kind").get<std::string>());
    s.params.clear();
    for (const auto& [k, v] : j.at("parameters").items()) s.params[k] = std::stol(v.get<std::string>());
}

inline void to_json(json& j, const Fact& f) {
    j = {{"name", f.name}, {"value", f.value}, {"source", to_string(f.source)}, {"anchor", f.anchor}};
}
inline void from_json(const json& j, Fact& f) {
    f.name = j.at("name").get<std::string>();
    f.value = j.at("value").get<std::string>();
    std::string src = j.at("source").get<std::string>();
    if (src != "computed" && src != "cited") throw ParseError("fact source must be computed or cited");
    f.source = src == "computed" ? Fact::Source::computed : Fact::Source::cited;
    f.anchor = j.at("anchor").get<std::string>();
}

inline void to_json(json& j, const FamilyReport& r) {
    json nums = json::object();
    for (const auto& [k, v] : r.numbers) nums[k] = v;
    j = {{"spec", r.spec}, {"invariants", r.invariants}, {"mukai", r.mukai}, {"facts", r.facts}, {"numbers", nums}};
}
inline void from_json(const json& j, FamilyReport& r) {
    r.spec = j.at("spec").get<FamilySpec>();
    r.invariants = j.at("invariants").get<BundleInvariants>();
    r.mukai = j.at("mukai").get<MukaiVector>();
    r.facts = j.at("facts").get<std::vector<Fact>>();
    r.numbers.clear();
    for (const auto& [k, v] : j.at("numbers").items()) r.numbers[k] = v.get<Poly>();
}

inline std::string class_code(const Factor& f) {
    switch (f.kind) {
        case ClassKind::one: return "1";
        case ClassKind::point: return "[x]";
        case ClassKind::gen: return "e" + std::to_string(f.gen);
    }
    return "?";
}

inline Factor factor_from_code(int n, const std::string& c) {
    if (c == "1") return {n, ClassKind::one, 0};
    if (c == "[x]") return {n, ClassKind::point, 0};
    if (c.size() > 1 && c[0] == 'e') return {n, ClassKind::gen, static_cast<std::uint16_t>(std::stoul(c.substr(1)))};
    throw ParseError("unknown class code '" + c + "'");
}

inline void to_json(json& j, const FockState& s) {
    json terms = json::array();
    for (const auto& [m, c] : s.sorted_terms()) {
        json fs = json::array(), ps = json::array();
        for (const auto& f : m.factors) fs.push_back({std::to_string(f.n), class_code(f)});
        for (const auto& [a, b] : m.pairs) ps.push_back({std::to_string(a), std::to_string(b)});
        terms.push_back({{"coef", c}, {"factors", fs}, {"pairs", ps}});
    }
    j = {{"weight", std::to_string(s.weight())}, {"terms", terms}};
}
inline void from_json(const json& j, FockState& s) {
    s = FockState(std::stoi(j.at("weight").get<std::string>()));
    for (const auto& t : j.at("terms")) {
        NakajimaMonomial m;
        for (const auto& f : t.at("factors"))
            m.factors.push_back(factor_from_code(std::stoi(f.at(0).get<std::string>()), f.at(1).get<std::string>()));
        for (const auto& p : t.at("pairs"))
            m.pairs.emplace_back(std::stoi(p.at(0).get<std::string>()), std::stoi(p.at(1).get<std::string>()));
        s.add(std::move(m), t.at("coef").get<Poly>());
    }
}

inline void to_json(json& j, const TautSegreResult& r) {
    json classes = json::object();
    for (const auto& [d, st] : r.classes) classes[std::to_string(d)] = st;
    j = {{"k", std::to_string(r.k)},
         {"d", std::to_string(2 * r.k)},
         {"integral", r.integral ? json(*r.integral) : json(nullptr)},
         {"provenance", to_string(r.provenance)},
         {"classes", classes}};
}
inline void from_json(const json& j, TautSegreResult& r) {
    r.k = std::stoi(j.at("k").get<std::string>());
    r.integral.reset();
    if (!j.at("integral").is_null()) r.integral = j.at("integral").get<Poly>();
    std::string p = j.at("provenance").get<std::string>();
    r.provenance = p == "closed_form" ? TautSegreResult::Provenance::closed_form : TautSegreResult::Provenance::recursion;
    r.classes.clear();
    for (const auto& [d, st] : j.at("classes").items()) r.classes.emplace(std::stoi(d), st.get<FockState>());
}

inline void to_json(json& j, const EvidenceRecord& e) {
    json vals = json::array();
    for (const auto& [k, v] : e.values) vals.push_back({k, v});
    j = {{"parameter", e.parameter}, {"values", vals}, {"sturm_chain", e.sturm_chain}, {"pass", e.pass}};
}
inline void from_json(const json& j, EvidenceRecord& e) {
    e.parameter = j.at("parameter").get<std::string>();
    e.values.clear();
    for (const auto& kv : j.at("values")) e.values.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
    e.sturm_chain = j.at("sturm_chain").get<std::vector<std::vector<Rational>>>();
    e.pass = j.at("pass").get<bool>();
}

inline void to_json(json& j, const Certificate& c) {
    j = {{"target", c.target},
         {"method", to_string(c.method)},
         {"verdict", c.verdict},
         {"notes", c.notes},
         {"evidence", c.evidence}};
}
inline void from_json(const json& j, Certificate& c) {
    c.target = j.at("target").get<std::string>();
    c.method = method_from_string(j.at("method").get<std::string>());
    c.verdict = j.at("verdict").get<bool>();
    c.notes = j.at("notes").get<std::vector<std::string>>();
    c.evidence = j.at("evidence").get<std::vector<EvidenceRecord>>();
}

inline void to_json(json& j, const IdentityCheck& c) {
    j = {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}};
}
inline void from_json(const json& j, IdentityCheck& c) {
    c = {j.at("name").get<std::string>(), j.at("lhs").get<std::string>(), j.at("rhs").get<std::string>(),
         j.at("pass").get<bool>()};
}

inline void to_json(json& j, const Erratum& e) {
    j = {{"id", e.id},         {"subject", e.subject},           {"printed", e.printed},
         {"computed", e.computed}, {"kind", to_string(e.kind)}, {"detected", e.detected}};
}
inline void from_json(const json& j, Erratum& e) {
    e.id = j.at("id").get<std::string>();
    e.subject = j.at("subject").get<std::string>();
    e.printed = j.at("printed").get<std::string>();
    e.computed = j.at("computed").get<std::string>();
    e.kind = j.at("kind").get<std::string>() == "erratum" ? Erratum::Kind::erratum : Erratum::Kind::informational;
    e.detected = j.at("detected").get<bool>();
}

inline void to_json(json& j, const VeryAmpleCheck& v) {
    json w = json::array();
    for (long m : v.witnesses) w.push_back(std::to_string(m));
    j = {{"value", v.value}, {"degree_ok", v.degree_ok}, {"witnesses", w}};
}
inline void from_json(const json& j, VeryAmpleCheck& v) {
    v.value = j.at("value").get<bool>();
    v.degree_ok = j.at("degree_ok").get<bool>();
    v.witnesses.clear();
    for (const auto& w : j.at("witnesses")) v.witnesses.push_back(std::stol(w.get<std::string>()));
}

inline void to_json(json& j, const GgVerdict& v) { j = {{"value", v.value}, {"chain", v.chain}}; }
inline void from_json(const json& j, GgVerdict& v) {
    v.value = j.at("value").get<bool>();
    v.chain = j.at("chain").get<std::vector<std::string>>();
}

}  // namespace k3seg
