#include <catch_amalgamated.hpp>

#include <random>

#include "aode/analysis.hpp"
#include "aode/parser.hpp"
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

UPoly t_poly(std::initializer_list<long> c) { return up(c); }

ExpVec random_expvec(Rng& rng, std::size_t len, long max_entry) {
  std::vector<unsigned> e(len);
  for (auto& v : e) v = static_cast<unsigned>(uniform(rng, 0, max_entry));
  return ExpVec(std::move(e));
}

/// All vectors of the given length with entry sum <= bound.
void enumerate_box(std::size_t len, unsigned bound, std::vector<unsigned>& cur, std::vector<ExpVec>& out) {
  if (cur.size() == len) {
    out.emplace_back(cur);
    return;
  }
  unsigned used = 0;
  for (unsigned v : cur) used += v;
  for (unsigned v = 0; used + v <= bound; ++v) {
    cur.push_back(v);
    enumerate_box(len, bound, cur, out);
    cur.pop_back();
  }
}

/// rho (rho-1) ... (rho-k+1) evaluated at rho = -t, built as a product of linear factors.
UPoly falling_at_minus_t(std::size_t k) {
  UPoly out = upoly_const(1);
  for (std::size_t j = 0; j < k; ++j) out *= UPoly(std::vector<Rat>{Rat(-static_cast<long>(j)), Rat(-1)});
  return out;
}

}  // namespace

TEST_CASE("newton_data examples") {
  const DiffPoly K = parse_diffpoly(kKamke);
  const NewtonData nk = newton_data(K, Point::infinity());
  CHECK(nk.m == -4);
  CHECK(nk.M == supports(K).D);

  const DiffPoly E = parse_diffpoly(kEuler);
  const NewtonData ne = newton_data(E, Point::finite(0));
  CHECK(ne.m == 0);
  CHECK(ne.M == supports(E).E);

  const NewtonData nl = newton_data(parse_diffpoly("y' - y"), Point::infinity());
  CHECK(nl.m == 0);
  CHECK(nl.M == std::set<ExpVec>{ExpVec{1, 0}});
}

TEST_CASE("indicial_polynomial examples") {
  CHECK(indicial_polynomial(parse_diffpoly(kKamke), Point::infinity()).rational() == t_poly({0, 0, 1}));
  const IndicialPoly crit = indicial_polynomial(parse_diffpoly(kCritical), Point::infinity());
  CHECK(crit.is_zero());
  CHECK(render(crit) == "0");
  CHECK(indicial_polynomial(parse_diffpoly(kEuler), Point::finite(0)).rational() == t_poly({-1, 0, 1}));

  const DiffPoly S = parse_diffpoly(kTwoPole);
  CHECK(indicial_polynomial(S, Point::finite(0)).rational() == t_poly({0, 0, 1, 2, 1}));
  CHECK(indicial_polynomial(S, Point::finite(1)).rational() == t_poly({0, 0, 1, -2, 1}));
  CHECK(indicial_polynomial(S, Point::infinity()).rational() == t_poly({4, -4, -3, 2, 1}));

  const DiffPoly T = parse_diffpoly(kNoBound);
  CHECK(indicial_polynomial(T, Point::finite(0)).is_zero());
  CHECK(indicial_polynomial(T, Point::infinity()).rational() == t_poly({0, 2, -3, 1}));

  // the literal printed variant does not vanish
  CHECK(indicial_polynomial(parse_diffpoly("x^3*y*D(y,3) + x*y*y' - x*y'^2 + y*y'"), Point::finite(0)).rational() ==
        t_poly({0, -1, -1}));

  CHECK(indicial_polynomial(parse_diffpoly("y''"), Point::infinity()).rational() == t_poly({0, -1, 1}));
  CHECK(indicial_polynomial(parse_diffpoly("y'' - x*y"), Point::infinity()).rational() == t_poly({-1}));
}

TEST_CASE("indicial_polynomial at an algebraic factor") {
  // x (x^2 - 2) y' - y at x^2 - 2: lowest coefficient a * p'(a) = 2 a^2 = 4
  const IndicialPoly P = indicial_polynomial(parse_diffpoly("x*(x^2 - 2)*y' - y"), Point::factor(up({-2, 0, 1})));
  CHECK(P.modulus == up({-2, 0, 1}));
  CHECK(P == IndicialPoly{up({-2, 0, 1}), {t_poly({-1, -4})}});
  CHECK(integer_root_bound(P) == 0);
  CHECK(render(P) == "-4*t - 1");

  // y = 1/(x^2 + 1): 2a (1 - t) at a root a, so t = 1
  const IndicialPoly Q = indicial_polynomial(parse_diffpoly("(x^2 + 1)*y' + 2*x*y"), Point::factor(up({1, 0, 1})));
  CHECK(Q == IndicialPoly{up({1, 0, 1}), {UPoly(), t_poly({2, -2})}});
  CHECK(integer_root_bound(Q) == 1);
  CHECK(render(Q) == "(-2*x)*t + (2*x)");
}

TEST_CASE("b_bound examples") {
  CHECK(b_bound(parse_diffpoly(kKamke), Point::infinity()) == std::optional<Rat>(Rat(1)));
  CHECK_FALSE(b_bound(parse_diffpoly("y' - y"), Point::infinity()).has_value());
  const auto b = b_bound(parse_diffpoly(kTwoPole), Point::finite(1));
  CHECK(b.has_value());
}

TEST_CASE("integer_root_bound examples") {
  CHECK(integer_root_bound(t_poly({-1, 0, 1})) == 1);
  CHECK(integer_root_bound(t_poly({0, 0, 1})) == 0);
  CHECK(integer_root_bound(t_poly({-1})) == 0);
  CHECK(integer_root_bound(t_poly({-6, 5, -1})) == 3);
  CHECK_THROWS_AS(integer_root_bound(UPoly()), ZeroIndicialError);
}

TEST_CASE("laurent_order_bound examples") {
  const DiffPoly S = parse_diffpoly(kTwoPole);
  CHECK(laurent_order_bound(S, Point::finite(0)) == 0);
  CHECK(laurent_order_bound(S, Point::finite(1)) == 1);
  CHECK(laurent_order_bound(S, Point::infinity()) == 1);
  CHECK(laurent_order_bound(parse_diffpoly(kKamke), Point::infinity()) == 1);
  CHECK(laurent_order_bound(parse_diffpoly(kEuler), Point::finite(0)) == 1);
  CHECK_THROWS_AS(laurent_order_bound(parse_diffpoly(kNoBound), Point::finite(0)), ZeroIndicialError);
}

TEST_CASE("compare_gg examples") {
  CHECK(compare_gg(ExpVec{0, 0, 2}, ExpVec{0, 1, 1}) == Dominance::FirstDominates);
  CHECK(compare_gg(ExpVec{0, 1, 1}, ExpVec{0, 0, 2}) == Dominance::SecondDominates);
  CHECK(compare_gg(ExpVec{2, 0}, ExpVec{0, 1}) == Dominance::Incomparable);
  CHECK(compare_gg(ExpVec{1, 2, 3}, ExpVec{1, 2, 3}) == Dominance::Equal);
  // equal statistics, different tuples
  CHECK(compare_gg(ExpVec{1, 0, 1}, ExpVec{0, 2, 0}) == Dominance::Incomparable);
  CHECK_THROWS_AS(compare_gg(ExpVec{1, 0}, ExpVec{1, 0, 0}), UsageError);
  CHECK(to_string(Dominance::Incomparable) == "Incomparable");
}

TEST_CASE("greatest_element examples") {
  CHECK(greatest_element(parse_diffpoly(kTwoPole)) == std::optional<ExpVec>(ExpVec{0, 0, 2}));
  CHECK_FALSE(greatest_element(parse_diffpoly(kKamke)).has_value());
  CHECK(greatest_element(parse_diffpoly(kNoBound)) == std::optional<ExpVec>(ExpVec{1, 0, 0, 1}));
}

TEST_CASE("classify examples") {
  const Classification crit = classify(parse_diffpoly(kCritical));
  CHECK_FALSE(crit.noncritical);

  const Classification s = classify(parse_diffpoly(kTwoPole));
  CHECK(s.noncritical);
  CHECK(s.maximally_comparable);
  CHECK(s.completely == std::optional<bool>(true));
  CHECK(s.greatest == std::optional<ExpVec>(ExpVec{0, 0, 2}));
  CHECK(s.highest_coefficient == std::optional<UPoly>(up({0, 0, 1, -2, 1})));
  REQUIRE(s.pole_candidates.size() == 2);
  CHECK(s.pole_candidates[0].factor == up({0, 1}));
  CHECK(s.pole_candidates[0].order_bound == std::optional<unsigned long>(0));
  CHECK(s.pole_candidates[1].factor == up({-1, 1}));
  CHECK(s.pole_candidates[1].order_bound == std::optional<unsigned long>(1));

  const Classification k = classify(parse_diffpoly(kKamke));
  CHECK(k.noncritical);
  CHECK_FALSE(k.maximally_comparable);
  CHECK_FALSE(k.completely.has_value());
  CHECK(k.pole_candidates.empty());

  const Classification t = classify(parse_diffpoly(kNoBound));
  CHECK(t.maximally_comparable);
  CHECK(t.completely == std::optional<bool>(false));
  REQUIRE(t.pole_candidates.size() == 1);
  CHECK(t.pole_candidates[0].indicial.is_zero());
  CHECK_FALSE(t.pole_candidates[0].order_bound.has_value());

  const Classification l = classify(parse_diffpoly("y' - y"));
  CHECK(l.noncritical);
  CHECK(l.greatest == std::optional<ExpVec>(ExpVec{0, 1}));
  CHECK(l.d_totally_ordered);
}

TEST_CASE("order axioms on random exponent vectors") {
  Rng rng(21);
  for (int iter = 0; iter < 3000; ++iter) {
    const std::size_t len = static_cast<std::size_t>(uniform(rng, 1, 4));
    const ExpVec I = random_expvec(rng, len, 3);
    const ExpVec J = random_expvec(rng, len, 3);
    const ExpVec K = random_expvec(rng, len, 3);
    CHECK_FALSE(dominates(I, I));
    if (dominates(I, J)) {
      CHECK_FALSE(dominates(J, I));
      if (dominates(J, K)) CHECK(dominates(I, K));
    }
  }
}

TEST_CASE("vectors of large norm dominate; incomparables fit in a box") {
  Rng rng(22);
  for (int iter = 0; iter < 60; ++iter) {
    const std::size_t len = static_cast<std::size_t>(uniform(rng, 1, 3));
    const ExpVec I = random_expvec(rng, len, 2);
    const unsigned bound = norm(I) + inf_norm(I);
    std::vector<ExpVec> box;
    std::vector<unsigned> cur;
    enumerate_box(len, bound + 2, cur, box);
    for (const ExpVec& J : box) {
      const Dominance d = compare_gg(J, I);
      if (d == Dominance::Incomparable) CHECK(norm(J) <= bound);
      if (norm(J) > bound) CHECK(d == Dominance::FirstDominates);
    }
    for (int s = 0; s < 50; ++s) {
      ExpVec J = random_expvec(rng, len, 8);
      if (norm(J) > bound) CHECK(compare_gg(J, I) == Dominance::FirstDominates);
    }
  }
}

TEST_CASE("greatest element dominates every other exponent") {
  Rng rng(23);
  int found = 0;
  for (int iter = 0; iter < 400; ++iter) {
    const DiffPoly F = random_diffpoly(rng, 3);
    const auto g = greatest_element(F);
    if (!g) continue;
    ++found;
    for (const auto& [J, f] : F.terms()) {
      if (!(J == *g)) CHECK(compare_gg(*g, J) == Dominance::FirstDominates);
    }
  }
  CHECK(found > 20);
}

TEST_CASE("linear equations match the Frobenius indicial polynomial") {
  Rng rng(24);
  for (int iter = 0; iter < 200; ++iter) {
    const Rat x0(uniform(rng, -2, 2));
    const UPoly lin = upoly_linear(x0);
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
    Lowered raw;
    std::vector<UPoly> f(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      f[k] = small_poly(rng, 2, 3, k == n);
      if (!f[k].is_zero()) f[k] *= pow(lin, static_cast<unsigned>(uniform(rng, 0, static_cast<long>(k) + 1)));
      raw += Lowered::derivative(k).scaled_by(RFunc(f[k]));
    }
    const DiffPoly F = normalize(raw.terms());
    // Frobenius: shift s = min over k of (mult_k - k); sum the lowest coefficients
    std::vector<std::optional<std::pair<long, Rat>>> data(n + 1);
    long s = 0;
    bool first = true;
    for (std::size_t k = 0; k <= n; ++k) {
      UPoly g = F.coeff(Lowered::derivative(k).terms().begin()->first.resized(F.order() + 1));
      if (g.is_zero()) continue;
      long mult = 0;
      while (evaluate(g, x0) == 0) {
        g = divmod(g, lin).first;
        ++mult;
      }
      data[k] = std::make_pair(mult - static_cast<long>(k), evaluate(g, x0));
      if (first || mult - static_cast<long>(k) < s) s = mult - static_cast<long>(k);
      first = false;
    }
    UPoly expected;
    for (std::size_t k = 0; k <= n; ++k) {
      if (data[k] && data[k]->first == s) expected += falling_at_minus_t(k).scaled(data[k]->second);
    }
    CHECK(indicial_polynomial(F, Point::finite(x0)).rational() == expected);
  }
}

TEST_CASE("structural classes are noncritical") {
  for (NoncriticalClass cls : noncritical_classes()) {
    Rng rng(25 + static_cast<unsigned>(cls));
    int critical = 0;
    for (int iter = 0; iter < 500; ++iter) {
      const DiffPoly F = random_in_class(rng, cls);
      if (!classify(F).noncritical) ++critical;
    }
    INFO(name(cls));
    CHECK(critical == 0);
  }
}

TEST_CASE("totally ordered top degree part gives nonzero indicial polynomials") {
  Rng rng(26);
  int hits = 0;
  for (int iter = 0; iter < 600; ++iter) {
    const DiffPoly F = iter % 2 ? random_diffpoly(rng, 3)
                                : planted_equation(rng, random_rational(rng), static_cast<std::size_t>(uniform(rng, 1, 2)),
                                                   static_cast<unsigned>(uniform(rng, 1, 3)));
    const Classification c = classify(F);
    if (!c.d_totally_ordered || !c.maximally_comparable) continue;
    ++hits;
    CHECK(c.completely == std::optional<bool>(true));
    for (const PoleCandidate& p : c.pole_candidates) CHECK_FALSE(p.indicial.is_zero());
  }
  CHECK(hits > 50);
}
