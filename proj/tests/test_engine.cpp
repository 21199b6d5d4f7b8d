#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "aode/engine.hpp"
#include "aode/parser.hpp"
#include "aode/render.hpp"
#include "generators.hpp"

using namespace aode;
using namespace aode::testing;

namespace {

const char* const kKamke = "y^2*y''^2 - 2*y*y'^2*y'' + y'^4 - y''^2 - y'^2";
const char* const kCritical = "x*y*y'' - x*y'^2 + y*y'";
const char* const kTwoPole =
    "x^2*(x-1)^2*y''^2 + 4*x^2*(x-1)*y'*y'' - 4*x*(x-1)*y*y'' + 4*x^2*y'^2 - 8*x*y*y' + 4*y^2 - 2*(x-1)*y''";
const char* const kNoBound = "x^3*y*D(y,3) + x*y*y'' - x*y'^2 + y*y'";
const char* const kEuler = "x^2*y'' + x*y' - y";

std::set<std::string> rendered(const std::vector<SolutionFamily>& fams) {
  std::set<std::string> out;
  for (const SolutionFamily& f : fams) out.insert(render(f));
  return out;
}

bool all_verified(const std::vector<SolutionFamily>& fams) {
  return std::all_of(fams.begin(), fams.end(), [](const SolutionFamily& f) { return f.verified; });
}

/// Every family of `big` lies inside some family of `small`: a generic member
/// (parameters set to distinct primes) specializes into it.
bool covered(const std::vector<SolutionFamily>& big, const std::vector<SolutionFamily>& small) {
  static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  for (const SolutionFamily& f : big) {
    ParamRFunc member = f.expr;
    for (std::size_t v = 0; v < f.params.size(); ++v) member = member.substituted(v, MPoly(Rat(primes[v % 10])));
    member = member.reduced();
    std::vector<Rat> num;
    for (const MPoly& c : member.num().coeffs()) num.push_back(c.constant_term());
    const RFunc z(UPoly(std::move(num)), expand(member.den()));
    const bool inside = std::any_of(small.begin(), small.end(), [&](const SolutionFamily& g) {
      return specializes_to(g, z);
    });
    if (!inside) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("poly_degree_bound examples") {
  CHECK(poly_degree_bound(parse_diffpoly(kKamke)) == 1);
  CHECK(poly_degree_bound(parse_diffpoly("y'' - x*y")) == 0);
  CHECK(poly_degree_bound(parse_diffpoly("y''")) == 1);
  CHECK_THROWS_AS(poly_degree_bound(parse_diffpoly(kCritical)), CriticalEquationError);
}

TEST_CASE("polynomial_solutions examples") {
  const SolveReport k = polynomial_solutions(parse_diffpoly(kKamke));
  CHECK(k.complete);
  CHECK(rendered(k.families) == std::set<std::string>{"t1", "x + t1", "-x + t1"});
  CHECK(all_verified(k.families));
  for (const SolutionFamily& f : k.families) {
    CHECK(f.params == std::vector<std::string>{"t1"});
    CHECK(f.constraints.empty());
  }

  const SolveReport l = polynomial_solutions(parse_diffpoly("y' - y"));
  CHECK(l.complete);
  CHECK(rendered(l.families) == std::set<std::string>{"0"});

  const SolveReport c = polynomial_solutions(parse_diffpoly(kCritical));
  CHECK_FALSE(c.complete);
  CHECK(c.families.empty());
  CHECK(c.diagnostics == std::vector<std::string>{"Critical"});

  const SolveReport s = polynomial_solutions(parse_diffpoly("y''"));
  CHECK(rendered(s.families) == std::set<std::string>{"t1*x + t2"});
}

TEST_CASE("rational_solutions examples") {
  const SolveReport s = rational_solutions(parse_diffpoly(kTwoPole));
  CHECK(s.complete);
  CHECK(rendered(s.families) == std::set<std::string>{"t1*x", "1/(x - 1) + t1*x"});
  CHECK(all_verified(s.families));
  REQUIRE(s.bounds.size() == 3);
  CHECK(s.bounds[0].place == "x");
  CHECK(s.bounds[0].bound == std::optional<unsigned long>(0));
  CHECK(s.bounds[1].place == "x - 1");
  CHECK(s.bounds[1].bound == std::optional<unsigned long>(1));
  CHECK(s.bounds[2].place == "infinity");
  CHECK(s.bounds[2].bound == std::optional<unsigned long>(1));

  const SolveReport e = rational_solutions(parse_diffpoly(kEuler));
  CHECK(e.complete);
  CHECK(rendered(e.families) == std::set<std::string>{"t1/x + t2*x"});

  const SolveReport t = rational_solutions(parse_diffpoly(kNoBound));
  CHECK_FALSE(t.complete);
  CHECK(t.diagnostics == std::vector<std::string>{"ZeroIndicialAtFactor(x)"});
  CHECK(t.families.empty());

  const SolveReport k = rational_solutions(parse_diffpoly(kKamke));
  CHECK_FALSE(k.complete);
  CHECK(k.diagnostics == std::vector<std::string>{"NotMaximallyComparable"});
}

TEST_CASE("order cap lets a solve proceed without a bound") {
  EngineOptions opts;
  opts.order_cap = 1;
  const SolveReport t = rational_solutions(parse_diffpoly(kNoBound), opts);
  CHECK_FALSE(t.complete);
  CHECK(t.bounds.front().from_cap);
  CHECK_FALSE(t.families.empty());
  CHECK(all_verified(t.families));

  const SolveReport c = polynomial_solutions(parse_diffpoly(kCritical), opts);
  CHECK_FALSE(c.complete);
  // c x^n solves it for every n; the cap admits n <= 1
  CHECK(covered(polynomial_solutions(parse_diffpoly("y'")).families, c.families));
  CHECK(covered(polynomial_solutions(parse_diffpoly("x*y' - y")).families, c.families));
  CHECK(all_verified(c.families));
}

TEST_CASE("caps raise structured errors") {
  EngineOptions few;
  few.max_unknowns = 2;
  CHECK_THROWS_AS(rational_solutions(parse_diffpoly(kTwoPole), few), CapExceededError);
  EngineOptions small;
  small.max_bound = 0;
  CHECK_THROWS_AS(polynomial_solutions(parse_diffpoly("y''"), small), CapExceededError);
}

TEST_CASE("extract_system examples") {
  const std::vector<MPoly> g = extract_system(parse_diffpoly("y' - y"), make_ansatz({}, 1));
  const MPoly c0 = MPoly::variable(0);
  const MPoly c1 = MPoly::variable(1);
  REQUIRE(g.size() == 2);
  const std::set<std::string> got{g[0].monic() == (c1 - c0).monic() ? "a" : g[0] == c1.monic() ? "b" : "?",
                                  g[1].monic() == (c1 - c0).monic() ? "a" : g[1] == c1.monic() ? "b" : "?"};
  CHECK(got == std::set<std::string>{"a", "b"});

  const Ansatz a0 = make_ansatz({}, 0);
  CHECK(extract_system(parse_diffpoly("y'"), a0).empty());
  const auto fam = solve_ansatz(parse_diffpoly("y'"), a0);
  CHECK(rendered(fam) == std::set<std::string>{"t1"});

  const DiffPoly K = parse_diffpoly(kKamke);
  const SolveOutcome out = solve_system(extract_system(K, make_ansatz({}, 1)), {0, 1});
  REQUIRE(out.families.size() == 3);
  std::set<std::string> c1_values;
  for (const AlgebraicFamily& f : out.families) {
    CHECK(f.free == std::vector<std::size_t>{0});
    c1_values.insert(f.assignments.at(1).constant_term().get_str());
  }
  CHECK(c1_values == std::set<std::string>{"-1", "0", "1"});
}

TEST_CASE("ansatz layout") {
  const Ansatz a = make_ansatz({{up({0, 1}), 2}, {up({1, 0, 1}), 1}}, 1);
  CHECK(a.unknowns == 2 + 2 + 2);
  CHECK(a.names == std::vector<std::string>{"a1_1_0", "a1_2_0", "a2_1_0", "a2_1_1", "c0", "c1"});
  CHECK(a.z.den().size() == 2);
}

TEST_CASE("verify examples") {
  const MPoly t1 = MPoly::variable(0);
  const MPoly t2 = MPoly::variable(1);
  // t1*x + t2/x
  const ParamRFunc z = ParamRFunc(XPoly({MPoly(), t1})) + ParamRFunc(XPoly::constant(t2), FactoredDen{{up({0, 1}), 1}});
  CHECK(verify(parse_diffpoly(kEuler), z, {}));
  CHECK_FALSE(verify(parse_diffpoly("y' - y"), ParamRFunc(lift(up({0, 1}))), {}));
  const ParamRFunc w = as_param(RFunc(up({1}), up({-1, 1}))) + ParamRFunc(XPoly({MPoly(), t1}));
  CHECK(verify(parse_diffpoly(kTwoPole), w, {}));
  // t1 with t1^2 + 1 = 0 solves y^2 + 1 only modulo the constraint
  const DiffPoly sq = parse_diffpoly("y'^2 + y^2 + 1");
  CHECK_FALSE(verify(sq, ParamRFunc(XPoly::constant(t1)), {}));
  CHECK(verify(sq, ParamRFunc(XPoly::constant(t1)), {t1 * t1 + MPoly(Rat(1))}));
}

TEST_CASE("constrained branches are reported and verified") {
  const SolveReport r = polynomial_solutions(parse_diffpoly("y'^2 + y^2 + 1"));
  REQUIRE(r.families.size() == 1);
  CHECK(r.families[0].verified);
  CHECK(render_constraints(r.families[0]) == std::vector<std::string>{"t1^2 + 1"});
}

TEST_CASE("enlarged ansatz finds nothing new") {
  const DiffPoly S = parse_diffpoly(kTwoPole);
  const auto base = rational_solutions(S).families;
  const auto big = solve_ansatz(S, make_ansatz({{up({0, 1}), 1}, {up({-1, 1}), 2}}, 3));
  CHECK(all_verified(big));
  CHECK(covered(big, base));

  const DiffPoly E = parse_diffpoly(kEuler);
  const auto ebase = rational_solutions(E).families;
  const auto ebig = solve_ansatz(E, make_ansatz({{up({0, 1}), 2}}, 3));
  CHECK(covered(ebig, ebase));

  const DiffPoly K = parse_diffpoly(kKamke);
  const auto kbase = polynomial_solutions(K).families;
  const auto kbig = solve_ansatz(K, make_ansatz({}, 3));
  CHECK(covered(kbig, kbase));
}

TEST_CASE("generators never exceed the total degree") {
  Rng rng(31);
  for (int iter = 0; iter < 150; ++iter) {
    const DiffPoly F = random_diffpoly(rng, 2);
    std::vector<AnsatzPole> poles;
    if (uniform(rng, 0, 1)) poles.push_back({upoly_linear(Rat(uniform(rng, -2, 2))), 1});
    if (uniform(rng, 0, 2) == 0) poles.push_back({up({1, 0, 1}), 1});
    const Ansatz a = make_ansatz(poles, static_cast<unsigned long>(uniform(rng, 0, 2)));
    for (const MPoly& g : extract_system(F, a)) CHECK(g.total_degree() <= F.total_degree());
  }
}

TEST_CASE("planted rational solutions are recovered") {
  const PlantedRun run = run_planted(41, 200);
  INFO(run.misses.size() << " misses; first: " << (run.misses.empty() ? "" : run.misses.front()));
  CHECK(run.accepted - run.capped >= 200);
  CHECK(run.recovered == run.accepted - run.capped);
  CHECK(run.unverified == 0);
}
