#include "catch_amalgamated.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "k3seg/io.hpp"

using namespace k3seg;

namespace {

struct Run {
    std::string out;
    int code = -1;
};

Run run(const std::string& args) {
    std::string cmd = std::string(K3SEG_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    Run r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("segre top integrals") {
    auto a = run("segre --family line --g 7 --n 1 --k 2 --top");
    CHECK(a.code == 0);
    CHECK(a.out == "24\n");
    auto b = run("segre --family ml --g 6 --r 3 --d 6 --k 2 --top");
    CHECK(b.code == 0);
    CHECK(b.out == "3696\n");
    auto c = run("segre --family line --g 5 --n 2 --k 3 --top --closed-form");
    CHECK(c.code == 0);
    CHECK(c.out == "1760\n");
}

TEST_CASE("symbolic mode keeps omitted parameters") {
    auto tex = run("--format tex segre --family line --k 2 --symbolic --top");
    CHECK(tex.code == 0);
    CHECK(contains(tex.out, "2 g^{2} n^{4}"));
    auto gen = run("segre --family generic --k 2 --symbolic --top");
    REQUIRE(gen.code == 0);
    CHECK(Poly::parse(gen.out.substr(0, gen.out.size() - 1)) == closed_form_symbolic(2));
}

TEST_CASE("JSON output parses back into result types") {
    auto s = run("--format json segre --family ml --g 6 --r 3 --d 6 --k 2");
    REQUIRE(s.code == 0);
    TautSegreResult res = json::parse(s.out).get<TautSegreResult>();
    REQUIRE(res.integral);
    CHECK(*res.integral == Poly(3696));
    CHECK(res.classes.size() == 5);

    auto f = run("--format json family ulrich --h 2 --a 1");
    REQUIRE(f.code == 0);
    FamilyReport rep = json::parse(f.out).get<FamilyReport>();
    CHECK(rep == ulrich_bundle(2, 1));
    CHECK(rep.numbers.at("moduli_dim") == Poly(14));

    auto c = run("--format json certify ml --r-max 5");
    REQUIRE(c.code == 0);
    CHECK(json::parse(c.out).get<Certificate>() == certify_ml(2, 5));
}

TEST_CASE("family reports") {
    auto t = run("family tangent --g 2 --n 5");
    CHECK(t.code == 0);
    CHECK(contains(t.out, "big: true"));
    CHECK(contains(t.out, "moduli_dim: 90"));
    auto u = run("family ulrich --h 2 --a 1");
    CHECK(contains(u.out, "moduli_dim: 14"));
    auto m = run("family ml --g 6 --r 3 --d 6");
    CHECK(contains(m.out, "exceptional: true"));
    CHECK(contains(m.out, "moduli_dim: 0"));
}

TEST_CASE("certificates and exit codes") {
    CHECK(run("certify ulrich --k 3 --a-max 20").code == 0);
    CHECK(run("certify ml --r-max 6").code == 0);
    auto bad = run("certify line --k 3 --n 1 --g 3");
    CHECK(bad.code == 2);
    CHECK(contains(bad.out, "boundary_witness=t=6 gives 0"));
    CHECK(run("certify line --k 3 --n 2 --g 5").code == 0);
    auto id = run("identities");
    CHECK(id.code == 0);
    CHECK(contains(id.out, "9/9 pass"));
}

TEST_CASE("errata report") {
    auto e = run("errata");
    CHECK(e.code == 0);
    CHECK(contains(e.out, "line_k3_expansion"));
    CHECK(contains(e.out, "ulrich_mukai_vector"));
    CHECK(contains(e.out, "ml_beta_label"));
    auto with = run("--report-errata segre --family line --g 7 --n 1 --k 2 --top");
    CHECK(with.code == 0);
    CHECK(contains(with.out, "24\n"));
    CHECK(contains(with.out, "line_k3_expansion"));
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run("").code == 1);
    CHECK(run("segre").code == 1);
    CHECK(run("segre --family ml --g 6 --k 2 --top").code == 1);
    CHECK(run("segre --family line --g 1 --n 1 --k 2 --top").code == 1);
    CHECK(run("--format yaml identities").code == 1);
    CHECK(run("certify ml --r-min 5 --r-max 4").code == 1);
    CHECK(run("family nonsense").code == 1);
    CHECK(run("--help").code == 0);
}
