#pragma once

#include <compare>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "aode/poly.hpp"
#include "aode/rational.hpp"

namespace aode {

/// Univariate polynomial over Q in x.
using UPoly = Poly<Rat>;
/// Univariate polynomial over Z (Hensel lifting, primitive parts).
using ZPoly = Poly<Int>;

inline UPoly upoly_x() { return UPoly::monomial(Rat(1), 1); }
inline UPoly upoly_const(const Rat& a) { return UPoly::constant(a); }

/// x - a.
inline UPoly upoly_linear(const Rat& a) { return UPoly(std::vector<Rat>{Rat(-a), Rat(1)}); }

inline UPoly monic(const UPoly& p) {
  if (p.is_zero()) return p;
  Rat inv = 1 / p.leading();
  return p.scaled(inv);
}

inline UPoly exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
  return q;
}

/// Monic gcd; gcd(0, 0) = 0.
inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = monic(r);
  }
  return monic(a);
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
inline std::tuple<UPoly, UPoly, UPoly> ext_gcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b;
  UPoly s0 = upoly_const(1), s1;
  UPoly t0, t1 = upoly_const(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rat inv = 1 / r0.leading();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

/// Scale to a primitive integer polynomial with positive leading coefficient.
inline ZPoly integer_primitive(const UPoly& p) {
  if (p.is_zero()) return ZPoly();
  Int den = 1;
  for (const Rat& c : p.coeffs()) den = lcm(den, c.get_den());
  std::vector<Int> z(p.size());
  Int g = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    z[i] = p[i].get_num() * (den / p[i].get_den());
    g = gcd(g, z[i]);
  }
  if (z.back() < 0) g = -g;
  for (Int& c : z) c /= g;
  return ZPoly(std::move(z));
}

inline UPoly to_upoly(const ZPoly& p) {
  std::vector<Rat> c(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) c[i] = Rat(p[i]);
  return UPoly(std::move(c));
}

/// Canonical total order: degree first, then coefficients from the constant
/// term upward compared by (|c|, c). Used for factor lists and map keys.
struct UPolyLess {
  bool operator()(const UPoly& a, const UPoly& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t k = 0; k < a.size(); ++k) {
      const Rat abs_a = abs(a[k]);
      const Rat abs_b = abs(b[k]);
      const int c = cmp(abs_a, abs_b);
      if (c != 0) return c < 0;
      if (a[k] != b[k]) return a[k] < b[k];
    }
    return false;
  }
};

namespace detail {

template <typename T>
std::string render_terms(const std::vector<std::pair<std::size_t, T>>& terms, const std::string& var) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms) {
    const bool negative = sgn(c) < 0;
    const T mag = abs(c);
    std::string body;
    if (k == 0) {
      body = mag.get_str();
    } else {
      if (mag != 1) body = mag.get_str() + "*";
      body += var;
      if (k > 1) body += "^" + std::to_string(k);
    }
    if (first) {
      out = (negative ? "-" : "") + body;
      first = false;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out;
}

}  // namespace detail

/// Canonical text, descending powers with explicit '*', e.g. "-1/2*x^3 + x - 2".
inline std::string render(const UPoly& p, const std::string& var = "x") {
  std::vector<std::pair<std::size_t, Rat>> terms;
  for (std::size_t k = p.size(); k-- > 0;) {
    if (!is_zero(p[k])) terms.emplace_back(k, p[k]);
  }
  return detail::render_terms(terms, var);
}

inline std::string render(const ZPoly& p, const std::string& var = "x") {
  return render(to_upoly(p), var);
}

}  // namespace aode
