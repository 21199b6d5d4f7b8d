#include <catch_amalgamated.hpp>

#include <random>

#include "aode/parser.hpp"
#include "generators.hpp"

using namespace aode;
using namespace aode::testing;

namespace {

RFunc to_rfunc(const ParamRFunc& z) {
  std::vector<Rat> c;
  for (const MPoly& a : z.num().coeffs()) {
    REQUIRE(a.is_constant());
    c.push_back(a.constant_term());
  }
  return RFunc(UPoly(std::move(c)), expand(z.den()));
}

RFunc eval_raw(const RawTerms& raw, const RFunc& z, std::size_t order) {
  std::vector<RFunc> ders{z};
  for (std::size_t k = 0; k < order; ++k) ders.push_back(rfunc_derivative(ders.back()));
  RFunc total;
  for (const auto& [I, f] : raw) {
    RFunc term = f;
    for (std::size_t k = 0; k <= order; ++k) {
      for (unsigned e = 0; e < I[k]; ++e) term = term * ders[k];
    }
    total += term;
  }
  return total;
}

bool same(const ParamRFunc& a, const ParamRFunc& b) { return (a - b).reduced().is_zero(); }

/// Formal total derivative of F with respect to x.
RawTerms total_derivative(const DiffPoly& F) {
  RawTerms out;
  auto add = [&](const ExpVec& I, const RFunc& c) {
    auto [it, fresh] = out.emplace(I, c);
    if (!fresh) it->second += c;
  };
  const std::size_t n = F.order();
  for (const auto& [I, f] : F.terms()) {
    add(I.resized(n + 2), RFunc(derivative(f)));
    for (std::size_t k = 0; k <= n; ++k) {
      if (I[k] == 0) continue;
      std::vector<unsigned> e = I.resized(n + 2).entries();
      e[k] -= 1;
      e[k + 1] += 1;
      add(ExpVec(std::move(e)), RFunc(f.scaled(Rat(I[k]))));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("normalize examples") {
  RawTerms raw{{ExpVec{0, 1}, RFunc(up({1}))}, {ExpVec{1, 0}, RFunc(up({-1}), up({0, 1}))}};
  const DiffPoly F = normalize(raw);
  CHECK(F.order() == 1);
  CHECK(F.terms().size() == 2);
  CHECK(F.coeff(ExpVec{0, 1}) == up({0, 1}));
  CHECK(F.coeff(ExpVec{1, 0}) == up({-1}));

  const DiffPoly K = parse_diffpoly("y^2*y''^2 - 2*y*y'^2*y'' + y'^4 - y''^2 - y'^2");
  CHECK(K.order() == 2);
  CHECK(K.terms().size() == 5);
  CHECK(K.coeff(ExpVec{2, 0, 2}) == up({1}));
  CHECK(K.coeff(ExpVec{1, 2, 1}) == up({-2}));
  CHECK(K.coeff(ExpVec{0, 4, 0}) == up({1}));
  CHECK(K.coeff(ExpVec{0, 0, 2}) == up({-1}));
  CHECK(K.coeff(ExpVec{0, 2, 0}) == up({-1}));

  CHECK_THROWS_AS(normalize(RawTerms{{ExpVec{0}, RFunc(up({0, 1}))}}), NotADifferentialEquationError);
  CHECK_THROWS_AS(normalize(RawTerms{}), DegenerateEquationError);
  CHECK_THROWS_AS(parse_diffpoly("y' - y' + 0*y"), DegenerateEquationError);
}

TEST_CASE("normalize fixes content and sign") {
  RawTerms raw{{ExpVec{0, 1}, RFunc(up({-4}))}, {ExpVec{1}, RFunc(up({6, 2}))}};
  const DiffPoly F = normalize(raw);
  CHECK(F.coeff(ExpVec{0, 1}) == up({2}));
  CHECK(F.coeff(ExpVec{1, 0}) == up({-3, -1}));
  // content includes rational coefficients
  RawTerms half{{ExpVec{0, 0, 1}, RFunc(upoly_const(q(1, 2)))}, {ExpVec{1}, RFunc(upoly_const(q(-1, 3)))}};
  const DiffPoly G = normalize(half);
  CHECK(G.coeff(ExpVec{0, 0, 1}) == up({3}));
  CHECK(G.coeff(ExpVec{1, 0, 0}) == up({-2}));
  // order comes from the surviving terms
  RawTerms cancel{{ExpVec{0, 0, 1}, RFunc(up({1}))}, {ExpVec{1}, RFunc(up({1}))}};
  cancel[ExpVec{0, 0, 1}] += RFunc(up({-1}));
  CHECK(normalize(cancel).order() == 0);
}

TEST_CASE("exp_norms examples") {
  ExpNorms a = exp_norms(ExpVec{2, 0, 2});
  CHECK(a.norm == 4);
  CHECK(a.inf_norm == 4);
  CHECK(a.partials == std::vector<unsigned>{4, 2, 2});
  ExpNorms b = exp_norms(ExpVec{0, 1, 1});
  CHECK(b.norm == 2);
  CHECK(b.inf_norm == 3);
  ExpNorms z = exp_norms(ExpVec{0, 0, 0});
  CHECK(z.norm == 0);
  CHECK(z.inf_norm == 0);
  CHECK(z.partials == std::vector<unsigned>{0, 0, 0});
}

TEST_CASE("supports examples") {
  const Supports k = supports(parse_diffpoly("y^2*y''^2 - 2*y*y'^2*y'' + y'^4 - y''^2 - y'^2"));
  CHECK(k.E.size() == 5);
  CHECK(k.d == 4);
  CHECK(k.D == std::set<ExpVec>{ExpVec{2, 0, 2}, ExpVec{1, 2, 1}, ExpVec{0, 4, 0}});

  const Supports s = supports(parse_diffpoly(
      "x^2*(x-1)^2*y''^2 + 4*x^2*(x-1)*y'*y'' - 4*x*(x-1)*y*y'' + 4*x^2*y'^2 - 8*x*y*y' + 4*y^2 - 2*(x-1)*y''"));
  CHECK(s.E.size() == 7);
  CHECK(s.d == 2);
  CHECK(s.D.size() == 6);
  CHECK(s.D.count(ExpVec{0, 0, 1}) == 0);

  const Supports l = supports(parse_diffpoly("y' - y"));
  CHECK(l.E == std::set<ExpVec>{ExpVec{0, 1}, ExpVec{1, 0}});
  CHECK(l.d == 1);
  CHECK(l.D == l.E);
}

TEST_CASE("evaluate examples") {
  CHECK(evaluate(parse_diffpoly("y' - 1"), ParamRFunc(lift(up({0, 1})))).is_zero());
  CHECK(evaluate(parse_diffpoly("x^2*y'' + x*y' - y"), as_param(RFunc(up({1}), up({0, 1})))).is_zero());

  const MPoly c0 = MPoly::variable(0);
  const MPoly c1 = MPoly::variable(1);
  const ParamRFunc z(XPoly(std::vector<MPoly>{c0, c1}));
  const ParamRFunc v = evaluate(parse_diffpoly("y' - y"), z);
  CHECK(v.den().empty());
  CHECK(v.num() == XPoly(std::vector<MPoly>{c1 - c0, -c1}));
}

TEST_CASE("normalize is idempotent and scales by a y-free factor") {
  Rng rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 0, 2));
    std::vector<std::size_t> orders;
    for (std::size_t k = 0; k <= n; ++k) orders.push_back(k);
    Lowered raw = random_y_poly(rng, orders, 3, static_cast<int>(uniform(rng, 1, 4)), 2, true);
    raw += lconst(RFunc(small_poly(rng, 1), small_poly(rng, 1, 3, true)));
    DiffPoly F;
    try {
      F = normalize(raw.terms());
    } catch (const Error&) {
      continue;
    }
    CHECK(normalize(F) == F);

    // F(z) / F_raw(z) is the same nonzero rational function for every z
    std::optional<RFunc> ratio;
    for (int s = 0; s < 3; ++s) {
      const RFunc z = random_rational(rng);
      const RFunc lhs = to_rfunc(evaluate(F, as_param(z)));
      const RFunc rhs = eval_raw(raw.terms(), z, F.order());
      CHECK(lhs.is_zero() == rhs.is_zero());
      if (rhs.is_zero()) continue;
      const RFunc u = lhs / rhs;
      if (ratio) {
        CHECK(u == *ratio);
      }
      ratio = u;
    }
  }
}

TEST_CASE("evaluate agrees with the total derivative (Leibniz)") {
  Rng rng(12);
  for (int iter = 0; iter < 150; ++iter) {
    const DiffPoly F = random_diffpoly(rng, 2);
    const RFunc z = random_rational(rng);
    const ParamRFunc lhs = derivative(evaluate(F, as_param(z)));
    const RawTerms dF = total_derivative(F);
    const RFunc rhs = eval_raw(dF, z, F.order() + 1);
    CHECK(to_rfunc(lhs.reduced()) == rhs);
  }
}

TEST_CASE("evaluate agrees with the total derivative for parametric z") {
  Rng rng(13);
  const MPoly a = MPoly::variable(0);
  const MPoly b = MPoly::variable(1);
  for (int iter = 0; iter < 40; ++iter) {
    const DiffPoly F = random_diffpoly(rng, 2);
    // a/(x - r) + b*x
    const UPoly p = upoly_linear(Rat(uniform(rng, -2, 2)));
    const ParamRFunc z = ParamRFunc(XPoly::constant(a), FactoredDen{{p, 1}}) + ParamRFunc(XPoly({MPoly(), b}));
    const ParamRFunc lhs = derivative(evaluate(F, z));
    const RawTerms dF = total_derivative(F);
    DiffPoly::TermMap polys;
    // dF has polynomial coefficients already
    for (const auto& [I, f] : dF) polys.emplace(I, f.num());
    const ParamRFunc rhs = evaluate(DiffPoly(F.order() + 1, polys), z);
    CHECK(same(lhs, rhs));
  }
}

TEST_CASE("planted solutions evaluate to zero") {
  Rng rng(14);
  for (int iter = 0; iter < 200; ++iter) {
    const RFunc z0 = random_rational(rng);
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
    const unsigned d = static_cast<unsigned>(uniform(rng, 1, 3));
    const DiffPoly F = planted_equation(rng, z0, n, d);
    CHECK(evaluate(F, as_param(z0)).is_zero());
  }
}

TEST_CASE("norm partials are monotone and sum to the weighted norm") {
  Rng rng(15);
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<unsigned> e(static_cast<std::size_t>(uniform(rng, 1, 6)));
    for (auto& v : e) v = static_cast<unsigned>(uniform(rng, 0, 5));
    const ExpVec I(e);
    const ExpNorms nm = exp_norms(I);
    REQUIRE(nm.partials.size() == e.size());
    CHECK(nm.partials[0] == nm.norm);
    unsigned sum = 0;
    for (std::size_t r = 0; r < e.size(); ++r) {
      if (r + 1 < e.size()) CHECK(nm.partials[r] >= nm.partials[r + 1]);
      if (r >= 1) sum += nm.partials[r];
    }
    CHECK(nm.inf_norm == sum);
  }
}
