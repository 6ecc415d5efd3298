// Command-line front end: segre, family, certify, identities, errata.

#include <CLI11.hpp>

#include <array>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "k3seg/k3seg.hpp"

using namespace k3seg;

namespace {

enum Exit { kOk = 0, kUsage = 1, kVerdictFalse = 2, kInconsistent = 3 };

struct Options {
    std::string format = "text";
    bool report_errata = false;
    unsigned threads = 1;

    std::string family;
    std::optional<long> g, n, r, d, a, h;
    std::optional<std::string> s1, s2;
    int k = 2;
    std::optional<long> twist;
    bool symbolic = false;
    bool top = false;
    bool closed = false;

    long r_min = 2, r_max = 50, a_min = 1, a_max = 20;
    std::string width = "1/1024";
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string tex_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '_' || c == '&' || c == '%' || c == '#') out += '\\';
        out += c;
    }
    return out;
}

void emit_errata(const Options& o, json* doc) {
    if (!o.report_errata) return;
    auto errata = detect_errata();
    if (doc) {
        (*doc)["errata"] = errata;
        return;
    }
    if (o.format == "csv") {
        std::cout << "id,kind,detected,printed,computed\n";
        for (const auto& e : errata)
            std::cout << e.id << ',' << to_string(e.kind) << ',' << (e.detected ? "true" : "false") << ','
                      << csv_field(e.printed) << ',' << csv_field(e.computed) << '\n';
        return;
    }
    std::cout << (o.format == "tex" ? "% errata\n" : "errata:\n");
    for (const auto& e : errata) {
        std::string lead = o.format == "tex" ? "% " : "  ";
        std::cout << lead << e.id << " [" << to_string(e.kind) << (e.detected ? ", detected" : ", not detected") << "]: "
                  << e.subject << '\n'
                  << lead << "    reference: " << e.printed << '\n'
                  << lead << "    computed:  " << e.computed << '\n';
    }
}

// ---- segre ----

Poly param(const std::optional<long>& v, Sym s, bool symbolic, const std::string& name) {
    if (v) return Poly(*v);
    if (symbolic) return var(s);
    throw ParameterError("missing --" + name + " (or pass --symbolic)");
}

BundleInvariants bundle_for(const Options& o, Poly& twist_out) {
    const bool sym = o.symbolic;
    if (o.family == "generic") throw InconsistencyError("generic family has no bundle");
    FamilyKind kind = family_kind_from_string(o.family);
    if (!sym) {
        FamilySpec spec{kind, {}};
        auto set = [&](const char* key, const std::optional<long>& v) {
            if (v) spec.params[key] = *v;
        };
        set("g", o.g), set("n", o.n), set("r", o.r), set("d", o.d), set("a", o.a), set("h", o.h);
        BundleInvariants b = make_family(spec).invariants;
        long m = o.twist.value_or(kind == FamilyKind::mukai_lazarsfeld || kind == FamilyKind::ulrich ? 1 : 0);
        twist_out = Poly(m);
        return b;
    }
    long m = o.twist.value_or(kind == FamilyKind::mukai_lazarsfeld || kind == FamilyKind::ulrich ? 1 : 0);
    twist_out = Poly(m);
    switch (kind) {
        case FamilyKind::line_bundle: {
            Poly g = param(o.g, Sym::g, true, "g"), n = param(o.n, Sym::n, true, "n");
            return make_bundle(g, Poly(1), n, Poly(), true);
        }
        case FamilyKind::tangent_twist: {
            Poly g = param(o.g, Sym::g, true, "g"), n = param(o.n, Sym::n, true, "n");
            return make_bundle(g, Poly(2), Poly(2) * n, Poly(2) * n * n * (g - Poly(1)) + Poly(24));
        }
        case FamilyKind::mukai_lazarsfeld: {
            Poly g = param(o.g, Sym::g, true, "g"), r = param(o.r, Sym::r, true, "r"), d = param(o.d, Sym::d, true, "d");
            return make_bundle(g, r, Poly(1), d, true);
        }
        case FamilyKind::ulrich: {
            Poly a = param(o.a, Sym::a, true, "a");
            Poly g = o.h ? Poly(*o.h + 1) : param(o.g, Sym::g, true, "g");
            Poly h = g - Poly(1);
            return make_bundle(g, Poly(2) * a, Poly(3) * a, Poly(9) * a * a * h - Poly(4) * a * (h - Poly(1)), true);
        }
    }
    throw ParameterError("unknown family");
}

SegreData segre_data_for(const Options& o) {
    if (o.family == "generic") {
        SegreData s = SegreData::symbolic();
        if (o.r) s.rank = Poly(*o.r);
        if (o.s1) s.s1_square = Poly::parse(*o.s1);
        if (o.s2) s.s2 = Poly::parse(*o.s2);
        if (!o.symbolic && !(o.r && o.s1 && o.s2))
            throw ParameterError("generic family needs --r, --s1 and --s2 (or pass --symbolic)");
        return s;
    }
    if (o.s1 || o.s2) throw ParameterError("--s1/--s2 only apply to the generic family");
    Poly m;
    BundleInvariants b = bundle_for(o, m);
    return SegreData::of(twist(b, m));
}

int cmd_segre(const Options& o) {
    if (o.k < 0) throw ParameterError("--k must be non-negative");
    if (o.top && o.k < 1) throw ParameterError("--top needs k >= 1");
    SegreData data = segre_data_for(o);
    TautSegreResult res;
    res.k = o.k;
    if (o.closed) {
        if (!o.top) throw ParameterError("--closed-form only produces the top integral; add --top");
        res.integral = closed_form(data, o.k);
        res.provenance = TautSegreResult::Provenance::closed_form;
    } else if (o.top) {
        Poly rec = data.specialize(symbolic_top_integral(o.k));
        if (o.k == 2 || o.k == 3) {
            Poly cf = closed_form(data, o.k);
            if (rec != cf)
                throw InconsistencyError("recursion gives " + rec.str() + " but the closed formula gives " + cf.str());
        }
        res.integral = rec;
    } else {
        TautSegreEngine eng(data);
        res = eng.result(o.k);
    }

    if (o.format == "json") {
        json doc = res;
        if (o.top) doc.erase("classes");
        doc["family"] = o.family;
        emit_errata(o, &doc);
        std::cout << doc.dump(2) << '\n';
        return kOk;
    }
    if (o.top) {
        const Poly& v = *res.integral;
        if (o.format == "csv") std::cout << "k,d,integral,provenance\n"
                                         << res.k << ',' << 2 * res.k << ',' << csv_field(v.str()) << ','
                                         << to_string(res.provenance) << '\n';
        else if (o.format == "tex") std::cout << v.tex() << '\n';
        else std::cout << v.str() << '\n';
    } else {
        TautSegreEngine eng(data);
        if (o.format == "csv") std::cout << "d,coefficient,monomial\n";
        for (const auto& [d, st] : res.classes) {
            if (o.format == "text") std::cout << "s_" << d << ":\n";
            if (o.format == "tex") std::cout << "s_{" << d << "} &= ";
            bool first = true;
            for (const auto& [mono, c] : st.sorted_terms()) {
                NakajimaMonomial single = mono;
                FockState one(st.weight());
                one.add(single, Poly(1));
                std::string line = eng.fock().dump(one);
                std::string mono_txt = line.substr(line.find('*') + 2);
                mono_txt.pop_back();
                if (o.format == "csv") std::cout << d << ',' << csv_field(c.str()) << ',' << csv_field(mono_txt) << '\n';
                else if (o.format == "tex") std::cout << (first ? "" : " + ") << "\\left(" << c.tex() << "\\right) " << mono_txt;
                else std::cout << "  " << (c.size() > 1 ? "(" + c.str() + ")" : c.str()) << " * " << mono_txt << '\n';
                first = false;
            }
            if (st.is_zero() && o.format == "text") std::cout << "  0\n";
            if (o.format == "tex") std::cout << (first ? "0" : "") << " \\\\\n";
        }
        if (res.integral && o.format == "text") std::cout << "integral: " << res.integral->str() << '\n';
    }
    emit_errata(o, nullptr);
    return kOk;
}

// ---- family ----

int cmd_family(const Options& o) {
    FamilySpec spec{family_kind_from_string(o.family), {}};
    auto set = [&](const char* key, const std::optional<long>& v) {
        if (v) spec.params[key] = *v;
    };
    set("g", o.g), set("n", o.n), set("r", o.r), set("d", o.d), set("a", o.a), set("h", o.h);
    FamilyReport rep = make_family(spec);
    std::vector<std::pair<std::string, std::string>> extra;
    if (spec.kind == FamilyKind::mukai_lazarsfeld) {
        bool ex = exceptional_check(spec.get("g"), spec.get("r"), spec.get("d"));
        extra.emplace_back("exceptional", ex ? "true" : "false");
        extra.emplace_back("mukai_square", mukai_pairing(rep.mukai, rep.mukai).str());
    }
    if (spec.kind == FamilyKind::tangent_twist) {
        long g = spec.get("g");
        extra.emplace_back("n0", std::to_string(tangent_n0(g)));
        extra.emplace_back("big_threshold", std::to_string(tangent_big_threshold(g)));
        BeauvilleFacts bf = beauville_h0_h1(g);
        extra.emplace_back("h0_T(1)", bf.h0 ? std::to_string(*bf.h0) : "unknown");
        extra.emplace_back("h1_T(1)", bf.h1 ? std::to_string(*bf.h1)
                                            : (bf.h1_lower_bound ? ">= " + std::to_string(*bf.h1_lower_bound) : "unknown"));
    }
    SurfaceBigness big = big_on_surface(rep.invariants);
    extra.emplace_back("big_on_surface", to_string(big.status));
    std::optional<GgVerdict> gg;
    if (spec.kind != FamilyKind::tangent_twist && o.k >= 2) gg = taut_gg_check(spec, o.k);

    if (o.format == "json") {
        json doc = rep;
        json ex = json::object();
        for (const auto& [k, v] : extra) ex[k] = v;
        doc["extra"] = ex;
        if (gg) doc["tautological_gg"] = *gg, doc["tautological_gg"]["k"] = std::to_string(o.k);
        emit_errata(o, &doc);
        std::cout << doc.dump(2) << '\n';
        return kOk;
    }
    std::vector<std::array<std::string, 3>> rows;
    rows.push_back({"family", to_string(spec.kind), "computed"});
    rows.push_back({"rank", rep.invariants.rank.str(), "computed"});
    rows.push_back({"c1", "(" + rep.invariants.lambda.str() + ")H", "computed"});
    rows.push_back({"c2", rep.invariants.c2.str(), "computed"});
    rows.push_back({"mukai_vector", "(" + rep.mukai.r.str() + ", " + rep.mukai.lambda.str() + "H, " + rep.mukai.s.str() + ")", "computed"});
    for (const auto& [k, v] : rep.numbers) rows.push_back({k, v.str(), "computed"});
    for (const auto& [k, v] : extra) rows.push_back({k, v, "computed"});
    for (const auto& f : rep.facts) rows.push_back({f.name, f.value, to_string(f.source) + ": " + f.anchor});
    if (gg) {
        rows.push_back({"tautological_gg_k" + std::to_string(o.k), gg->value ? "true" : "false", "computed"});
        for (const auto& c : gg->chain) rows.push_back({"  because", c, "chain"});
    }
    if (o.format == "csv") {
        std::cout << "name,value,source\n";
        for (const auto& r : rows) std::cout << csv_field(r[0]) << ',' << csv_field(r[1]) << ',' << csv_field(r[2]) << '\n';
    } else if (o.format == "tex") {
        std::cout << "\\begin{tabular}{lll}\n";
        for (const auto& r : rows) std::cout << tex_escape(r[0]) << " & " << tex_escape(r[1]) << " & " << tex_escape(r[2]) << " \\\\\n";
        std::cout << "\\end{tabular}\n";
    } else {
        for (const auto& r : rows) std::cout << r[0] << ": " << r[1] << (r[2] == "computed" ? "" : "  [" + r[2] + "]") << '\n';
    }
    emit_errata(o, nullptr);
    return kOk;
}

// ---- certify ----

void render_certificate(const Options& o, const Certificate& c, json* doc) {
    if (doc) {
        *doc = c;
        return;
    }
    if (o.format == "csv") {
        std::cout << "parameter,pass,key,value\n";
        for (const auto& e : c.evidence)
            for (const auto& [k, v] : e.values)
                std::cout << csv_field(e.parameter) << ',' << (e.pass ? "true" : "false") << ',' << csv_field(k) << ','
                          << csv_field(v) << '\n';
        return;
    }
    if (o.format == "tex") {
        std::cout << "% " << c.target << "\n\\begin{tabular}{llp{0.6\\textwidth}}\n";
        for (const auto& e : c.evidence) {
            std::string vals;
            for (const auto& [k, v] : e.values)
                if (k != "polynomial" && k != "restriction_to_d=2g-2") vals += tex_escape(k) + " $=$ " + tex_escape(v) + "; ";
            std::cout << tex_escape(e.parameter) << " & " << (e.pass ? "pass" : "FAIL") << " & " << vals << " \\\\\n";
        }
        std::cout << "\\end{tabular}\n% verdict: " << (c.verdict ? "true" : "false") << '\n';
        return;
    }
    std::cout << c.target << "\nmethod: " << to_string(c.method) << '\n';
    for (const auto& e : c.evidence) {
        std::cout << "  " << (e.pass ? "pass " : "FAIL ") << e.parameter;
        for (const auto& [k, v] : e.values)
            if (v.size() < 80) std::cout << "  " << k << "=" << v;
        std::cout << '\n';
    }
    for (const auto& n : c.notes) std::cout << "note: " << n << '\n';
    std::cout << "verdict: " << (c.verdict ? "true" : "false") << '\n';
}

int cmd_certify(const Options& o) {
    Certificate c;
    if (o.family == "line") {
        c = certify_line_bundle(o.k);
        if (o.n || o.g) {
            if (!(o.n && o.g)) throw ParameterError("explicit line-bundle check needs both --n and --g");
            if (*o.g < 2 || *o.n < 1) throw ParameterError("need g >= 2 and n >= 1");
            const long thr = o.k == 2 ? 3 : 6;
            long t = *o.n * *o.n * (*o.g - 1);
            Rational v = line_polynomial(o.k).eval_at({{Sym::t, Rational(t)}});
            EvidenceRecord ev;
            ev.parameter = "n=" + std::to_string(*o.n) + ", g=" + std::to_string(*o.g);
            ev.put("t", std::to_string(t));
            ev.put("integral", v.str());
            ev.put("threshold", std::to_string(thr));
            ev.put("boundary_witness", "t=" + std::to_string(thr) + " gives 0");
            ev.pass = t > thr;
            c.evidence.push_back(std::move(ev));
            c.verdict = c.verdict && c.evidence.back().pass;
        }
    } else if (o.family == "ml") {
        if (o.k != 2) throw UnsupportedError("Mukai-Lazarsfeld certificate exists for k = 2 only");
        c = certify_ml(o.r_min, o.r_max, o.threads);
    } else if (o.family == "ulrich") {
        c = certify_ulrich(o.k, o.a_min, o.a_max, Rational::parse(o.width), o.threads);
    } else {
        throw ParameterError("certify needs line, ml or ulrich");
    }
    if (o.format == "json") {
        json doc;
        render_certificate(o, c, &doc);
        emit_errata(o, &doc);
        std::cout << doc.dump(2) << '\n';
    } else {
        render_certificate(o, c, nullptr);
        emit_errata(o, nullptr);
    }
    return c.verdict ? kOk : kVerdictFalse;
}

// ---- identities ----

int cmd_identities(const Options& o) {
    auto suite = identity_suite();
    int passed = 0;
    for (const auto& c : suite) passed += c.pass;
    if (o.format == "json") {
        json doc = {{"identities", suite}, {"passed", std::to_string(passed)}, {"total", std::to_string(suite.size())}};
        emit_errata(o, &doc);
        std::cout << doc.dump(2) << '\n';
    } else {
        if (o.format == "csv") std::cout << "identity,pass,lhs\n";
        if (o.format == "tex") std::cout << "\\begin{tabular}{ll}\n";
        for (const auto& c : suite) {
            std::string lhs = c.lhs.empty() ? "0" : c.lhs.substr(0, c.lhs.size() - 1);
            if (o.format == "csv") std::cout << csv_field(c.name) << ',' << (c.pass ? "true" : "false") << ',' << csv_field(lhs) << '\n';
            else if (o.format == "tex") std::cout << tex_escape(c.name) << " & " << tex_escape(lhs) << " \\\\\n";
            else std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " = " << lhs << '\n';
        }
        if (o.format == "tex") std::cout << "\\end{tabular}\n";
        if (o.format == "text") std::cout << passed << "/" << suite.size() << " pass\n";
        emit_errata(o, nullptr);
    }
    return passed == static_cast<int>(suite.size()) ? kOk : kInconsistent;
}

int cmd_errata(Options o) {
    o.report_errata = true;
    if (o.format == "json") {
        json doc = json::object();
        emit_errata(o, &doc);
        std::cout << doc.dump(2) << '\n';
    } else {
        emit_errata(o, nullptr);
    }
    return kOk;
}

void add_params(CLI::App* sub, Options& o) {
    sub->add_option("--g", o.g, "genus");
    sub->add_option("--n", o.n, "twist of H (line, tangent)");
    sub->add_option("--r", o.r, "rank (ml, generic)");
    sub->add_option("--d", o.d, "degree of the linear series (ml)");
    sub->add_option("--a", o.a, "Ulrich rank parameter, rank 2a");
    sub->add_option("--h", o.h, "Ulrich parameter, g = h + 1");
    sub->add_option("--k", o.k, "number of points");
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Segre classes of tautological bundles on Hilbert schemes of points of a K3 surface"};
    app.require_subcommand(1);
    // --h is the Ulrich parameter, so help is long-form only
    app.set_help_flag("--help", "print this help message and exit");
    app.fallthrough();
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "csv", "tex"}));
    app.add_flag("--report-errata", o.report_errata, "append detected discrepancies with reference formulas");
    app.add_option("--threads", o.threads, "worker threads for certificate legs")->check(CLI::Range(1u, 256u));

    auto* segre = app.add_subcommand("segre", "Segre classes of F^[k] for a family member F");
    segre->add_option("--family", o.family, "line, tangent, ml, ulrich or generic")
        ->required()
        ->check(CLI::IsMember({"line", "tangent", "ml", "ulrich", "generic"}));
    add_params(segre, o);
    segre->add_option("--s1", o.s1, "int s1^2 (generic family)");
    segre->add_option("--s2", o.s2, "int s2 (generic family)");
    segre->add_option("--twist", o.twist, "use F = E(m); default 1 for ml and ulrich, 0 otherwise");
    segre->add_flag("--symbolic", o.symbolic, "keep omitted parameters as indeterminates");
    segre->add_flag("--top", o.top, "only the top integral");
    segre->add_flag("--closed-form", o.closed, "evaluate the closed formula (k = 2, 3) instead of the recursion");

    auto* family = app.add_subcommand("family", "invariants and validity facts of a family member");
    family->add_option("kind", o.family, "tangent, line, ml or ulrich")
        ->required()
        ->check(CLI::IsMember({"tangent", "line", "ml", "ulrich"}));
    add_params(family, o);

    auto* certify = app.add_subcommand("certify", "exact positivity certificate");
    certify->add_option("kind", o.family, "line, ml or ulrich")->required()->check(CLI::IsMember({"line", "ml", "ulrich"}));
    certify->add_option("--k", o.k, "number of points (2 or 3)");
    certify->add_option("--n", o.n, "line bundle: explicit n to test");
    certify->add_option("--g", o.g, "line bundle: explicit genus to test");
    certify->add_option("--r-min", o.r_min, "smallest rank (ml)");
    certify->add_option("--r-max", o.r_max, "largest rank (ml)");
    certify->add_option("--a-min", o.a_min, "smallest a (ulrich)");
    certify->add_option("--a-max", o.a_max, "largest a (ulrich)");
    certify->add_option("--width", o.width, "root bracket width, a rational");

    auto* identities = app.add_subcommand("identities", "the nine operator evaluations behind the k = 2 integral");
    auto* errata = app.add_subcommand("errata", "list detected discrepancies with reference formulas");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*segre) return cmd_segre(o);
        if (*family) return cmd_family(o);
        if (*certify) return cmd_certify(o);
        if (*identities) return cmd_identities(o);
        if (*errata) return cmd_errata(o);
    } catch (const InconsistencyError& e) {
        std::cerr << "internal inconsistency: " << e.what() << '\n';
        return kInconsistent;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInconsistent;
    }
    return kUsage;
}
