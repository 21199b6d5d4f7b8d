#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aode/diffpoly.hpp"
#include "aode/factor.hpp"

namespace aode {

/// A place: a monic irreducible factor p(x), or infinity.
class Point {
 public:
  static Point infinity() { return Point(); }
  static Point factor(UPoly p) {
    if (p.degree() < 1) throw UsageError("a point needs a nonconstant factor");
    return Point(monic(p));
  }
  static Point finite(const Rat& x0) { return Point(upoly_linear(x0)); }

  bool is_infinity() const { return p_.is_zero(); }
  const UPoly& modulus() const { return p_; }

  friend bool operator==(const Point& a, const Point& b) { return a.p_ == b.p_; }

 private:
  Point() = default;
  explicit Point(UPoly p) : p_(std::move(p)) {}
  UPoly p_;
};

inline std::string render(const Point& pt) { return pt.is_infinity() ? "infinity" : render(pt.modulus()); }

/// Polynomial in t with coefficients in Q[x]/(p), stored as
/// P(t) = sum_j P_j(t) alpha^j with alpha the class of x. At infinity and at
/// rational points there is a single component.
struct IndicialPoly {
  UPoly modulus;                  // zero at infinity
  std::vector<UPoly> components;  // P_0, P_1, ...

  bool is_zero() const {
    return std::all_of(components.begin(), components.end(), [](const UPoly& c) { return c.is_zero(); });
  }

  /// Coefficient polynomial in t when the point is rational or infinite.
  UPoly rational() const { return components.empty() ? UPoly() : components.front(); }

  /// Coefficient of t^k as an element of Q[x]/(p), written as a polynomial in x.
  UPoly coeff(std::size_t k) const {
    std::vector<Rat> c(components.size());
    for (std::size_t j = 0; j < components.size(); ++j) c[j] = components[j].coeff(k);
    return UPoly(std::move(c));
  }

  int degree() const {
    int d = -1;
    for (const UPoly& c : components) d = std::max(d, c.degree());
    return d;
  }
};

inline bool operator==(const IndicialPoly& a, const IndicialPoly& b) {
  auto trimmed = [](std::vector<UPoly> c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    return c;
  };
  return a.modulus == b.modulus && trimmed(a.components) == trimmed(b.components);
}

/// Text in t; algebraic coefficients are shown as polynomials in x.
inline std::string render(const IndicialPoly& P) {
  if (P.components.size() <= 1) return render(P.rational(), "t");
  std::string out;
  for (int k = P.degree(); k >= 0; --k) {
    const UPoly c = P.coeff(static_cast<std::size_t>(k));
    if (c.is_zero()) continue;
    std::string body;
    bool negative = false;
    if (c.degree() == 0) {
      negative = sgn(c[0]) < 0;
      const Rat mag = abs(c[0]);
      if (k == 0 || mag != 1) body = mag.get_str();
    } else {
      body = "(" + render(c) + ")";
    }
    if (k > 0) {
      if (!body.empty()) body += "*";
      body += "t";
      if (k > 1) body += "^" + std::to_string(k);
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out.empty() ? "0" : out;
}

struct NewtonData {
  long m = 0;
  std::set<ExpVec> M;
};

namespace detail {

/// ord_pt(f_I) + ||I||_inf at a finite point, ord_inf(f_I) - ||I||_inf at infinity.
inline long newton_weight(const ExpVec& I, const UPoly& f, const Point& pt) {
  if (pt.is_infinity()) return static_cast<long>(ord_at_infinity(RFunc(f))) - static_cast<long>(inf_norm(I));
  return static_cast<long>(ord_at_factor(f, pt.modulus())) + static_cast<long>(inf_norm(I));
}

}  // namespace detail

inline NewtonData newton_data(const DiffPoly& F, const Point& pt) {
  const unsigned d = F.total_degree();
  NewtonData out;
  bool first = true;
  for (const auto& [I, f] : F.terms()) {
    if (norm(I) != d) continue;
    const long w = detail::newton_weight(I, f, pt);
    if (first || w > out.m) {
      out.m = w;
      out.M.clear();
      first = false;
    }
    if (w == out.m) out.M.insert(I);
  }
  return out;
}

inline IndicialPoly indicial_polynomial(const DiffPoly& F, const Point& pt) {
  const NewtonData nd = newton_data(F, pt);
  const std::size_t n = F.order();
  IndicialPoly P;
  P.modulus = pt.is_infinity() ? UPoly() : pt.modulus();
  const std::size_t width = pt.is_infinity() ? 1 : static_cast<std::size_t>(pt.modulus().degree());
  P.components.assign(width, UPoly());
  const UPoly t = upoly_x();
  for (const ExpVec& I : nd.M) {
    UPoly T = upoly_const(1);
    for (std::size_t r = 0; r < n; ++r) {
      const unsigned e = partial_norm(I, r + 1);
      if (e == 0) continue;
      const UPoly lin = pt.is_infinity() ? t - upoly_const(Rat(static_cast<long>(r)))
                                         : -t - upoly_const(Rat(static_cast<long>(r)));
      T *= pow(lin, e);
    }
    const UPoly& f = F.coeff(I);
    if (pt.is_infinity()) {
      P.components[0] += T.scaled(lowest_coeff_at_infinity(RFunc(f)));
    } else {
      // f/(x - a)^mu at a root a equals (f/p^mu)(a) * p'(a)^mu
      Residue c = lowest_coeff_at_factor(f, pt.modulus());
      const Residue dp(pt.modulus(), derivative(pt.modulus()));
      for (unsigned k = multiplicity(f, pt.modulus()); k > 0; --k) c = c * dp;
      for (std::size_t j = 0; j < width; ++j) {
        const Rat cj = c.value().coeff(j);
        if (!is_zero(cj)) P.components[j] += T.scaled(cj);
      }
    }
  }
  return P;
}

/// b-bound from terms of non-maximal degree; absent when E(F) = D(F).
inline std::optional<Rat> b_bound(const DiffPoly& F, const Point& pt) {
  const unsigned d = F.total_degree();
  const long m = newton_data(F, pt).m;
  std::optional<Rat> best;
  for (const auto& [I, f] : F.terms()) {
    if (norm(I) == d) continue;
    Rat value(detail::newton_weight(I, f, pt) - m, static_cast<long>(d - norm(I)));
    value.canonicalize();
    if (!best || value > *best) best = value;
  }
  return best;
}

/// Largest positive integer root, or 0. For algebraic coefficients the
/// roots common to every component are used.
inline unsigned long integer_root_bound(const IndicialPoly& P) {
  if (P.is_zero()) throw ZeroIndicialError("indicial polynomial is zero");
  UPoly g;
  for (const UPoly& c : P.components) g = gcd(g, c);
  if (g.degree() < 1) return 0;
  unsigned long best = 0;
  for (const Int& r : integer_roots(g)) {
    if (r > 0 && r.fits_ulong_p() && r.get_ui() > best) best = r.get_ui();
  }
  return best;
}

inline unsigned long integer_root_bound(const UPoly& P) {
  return integer_root_bound(IndicialPoly{UPoly(), {P}});
}

/// max(largest positive integer root of the indicial polynomial, floor(b), 0).
inline unsigned long laurent_order_bound(const DiffPoly& F, const Point& pt) {
  const IndicialPoly P = indicial_polynomial(F, pt);
  if (P.is_zero()) throw ZeroIndicialError("indicial polynomial at " + render(pt) + " is zero");
  unsigned long r = integer_root_bound(P);
  if (auto b = b_bound(F, pt)) {
    const Int fb = floor_rat(*b);
    if (fb > 0 && fb.fits_ulong_p()) r = std::max(r, fb.get_ui());
  }
  return r;
}

enum class Dominance { FirstDominates, SecondDominates, Equal, Incomparable };

inline std::string to_string(Dominance d) {
  switch (d) {
    case Dominance::FirstDominates: return "FirstDominates";
    case Dominance::SecondDominates: return "SecondDominates";
    case Dominance::Equal: return "Equal";
    case Dominance::Incomparable: return "Incomparable";
  }
  return "";
}

/// I >> J iff ||I|| >= ||J|| and ||I|| + ||I||_inf > ||J|| + ||J||_inf.
inline bool dominates(const ExpVec& I, const ExpVec& J) {
  return norm(I) >= norm(J) && norm(I) + inf_norm(I) > norm(J) + inf_norm(J);
}

inline Dominance compare_gg(const ExpVec& I, const ExpVec& J) {
  if (I.size() != J.size()) throw UsageError("exponent vectors of different lengths");
  if (I.entries() == J.entries()) return Dominance::Equal;
  if (dominates(I, J)) return Dominance::FirstDominates;
  if (dominates(J, I)) return Dominance::SecondDominates;
  return Dominance::Incomparable;
}

inline std::optional<ExpVec> greatest_element(const std::set<ExpVec>& S) {
  for (const ExpVec& I : S) {
    bool ok = true;
    for (const ExpVec& J : S) {
      if (!(I == J) && !dominates(I, J)) {
        ok = false;
        break;
      }
    }
    if (ok) return I;
  }
  return std::nullopt;
}

inline std::optional<ExpVec> greatest_element(const DiffPoly& F) { return greatest_element(supports(F).E); }

/// True when every pair of distinct elements is comparable.
inline bool is_chain(const std::set<ExpVec>& S) {
  for (auto i = S.begin(); i != S.end(); ++i) {
    for (auto j = std::next(i); j != S.end(); ++j) {
      if (!dominates(*i, *j) && !dominates(*j, *i)) return false;
    }
  }
  return true;
}

struct PoleCandidate {
  UPoly factor;
  IndicialPoly indicial;
  NewtonData newton;
  std::optional<Rat> b;
  std::optional<unsigned long> order_bound;  // absent when the indicial polynomial vanishes
};

struct Classification {
  std::size_t order = 0;
  unsigned total_degree = 0;
  bool noncritical = false;
  IndicialPoly indicial_at_infinity;
  std::optional<ExpVec> greatest;
  std::optional<UPoly> highest_coefficient;
  bool maximally_comparable = false;
  std::optional<bool> completely;
  bool d_totally_ordered = false;
  std::vector<PoleCandidate> pole_candidates;
};

inline PoleCandidate analyze_factor(const DiffPoly& F, const UPoly& p) {
  const Point pt = Point::factor(p);
  PoleCandidate c;
  c.factor = pt.modulus();
  c.indicial = indicial_polynomial(F, pt);
  c.newton = newton_data(F, pt);
  c.b = b_bound(F, pt);
  if (!c.indicial.is_zero()) c.order_bound = laurent_order_bound(F, pt);
  return c;
}

inline Classification classify(const DiffPoly& F, const FactorOptions& fopts = {}) {
  if (F.is_zero()) throw DegenerateEquationError();
  Classification c;
  const Supports s = supports(F);
  c.order = F.order();
  c.total_degree = s.d;
  c.indicial_at_infinity = indicial_polynomial(F, Point::infinity());
  c.noncritical = !c.indicial_at_infinity.is_zero();
  c.d_totally_ordered = is_chain(s.D);
  c.greatest = greatest_element(s.E);
  c.maximally_comparable = c.greatest.has_value();
  if (c.maximally_comparable) {
    const UPoly& f = F.coeff(*c.greatest);
    c.highest_coefficient = f;
    bool all = true;
    for (const auto& [p, mult] : factor_irreducible(f, fopts).factors) {
      c.pole_candidates.push_back(analyze_factor(F, p));
      all = all && !c.pole_candidates.back().indicial.is_zero();
    }
    c.completely = all;
  }
  return c;
}

}  // namespace aode
