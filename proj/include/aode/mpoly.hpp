#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aode/rational.hpp"

namespace aode {

/// Exponent vector of a monomial in the unknowns x0, x1, ...; trailing zeros
/// are never stored, so std::vector's ordering is lex with x0 > x1 > ...
using Monomial = std::vector<unsigned>;

namespace mono {

inline void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

inline unsigned exponent(const Monomial& m, std::size_t var) { return var < m.size() ? m[var] : 0; }

inline Monomial mul(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

/// True iff a divides b.
inline bool divides(const Monomial& a, const Monomial& b) {
  if (a.size() > b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

/// b / a, assuming divides(a, b).
inline Monomial div(const Monomial& b, const Monomial& a) {
  Monomial r = b;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= a[i];
  trim(r);
  return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::max(exponent(a, i), exponent(b, i));
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != 0 && b[i] != 0) return false;
  }
  return true;
}

inline unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (unsigned e : m) d += e;
  return d;
}

}  // namespace mono

/// Sparse multivariate polynomial over Q in lex order (x0 > x1 > ...).
/// Terms are kept in descending monomial order, so begin() is the leading term.
class MPoly {
 public:
  using TermMap = std::map<Monomial, Rat, std::greater<>>;

  MPoly() = default;
  explicit MPoly(const Rat& c) {
    if (!aode::is_zero(c)) terms_.emplace(Monomial{}, c);
  }

  static MPoly variable(std::size_t var) {
    Monomial m(var + 1, 0);
    m[var] = 1;
    return term(std::move(m), Rat(1));
  }

  static MPoly term(Monomial m, const Rat& c) {
    MPoly p;
    mono::trim(m);
    if (!aode::is_zero(c)) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

  Rat constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rat(0) : it->second;
  }

  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rat& leading_coeff() const { return terms_.begin()->second; }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, mono::total_degree(m));
    return d;
  }

  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, mono::exponent(m, var));
    return d;
  }

  bool involves(std::size_t var) const { return degree_in(var) > 0; }

  std::set<std::size_t> variables() const {
    std::set<std::size_t> vars;
    for (const auto& [m, c] : terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] > 0) vars.insert(i);
      }
    }
    return vars;
  }

  MPoly monic() const {
    if (is_zero()) return *this;
    return scaled(1 / leading_coeff());
  }

  MPoly scaled(const Rat& s) const {
    if (aode::is_zero(s)) return MPoly();
    MPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, c * s);
    return r;
  }

  /// this += c * m * other.
  void add_scaled_product(const Rat& c, const Monomial& m, const MPoly& other) {
    for (const auto& [om, oc] : other.terms_) add_term(mono::mul(m, om), c * oc);
  }

  void add_term(Monomial m, const Rat& c) {
    if (aode::is_zero(c)) return;
    mono::trim(m);
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (aode::is_zero(it->second)) terms_.erase(it);
    }
  }

  MPoly operator-() const { return scaled(Rat(-1)); }

  MPoly& operator+=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, Rat(-c));
    return *this;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [m, c] : a.terms_) r.add_scaled_product(c, m, b);
    return r;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  /// Replace x_var by value.
  MPoly substitute(std::size_t var, const MPoly& value) const {
    MPoly r;
    std::vector<MPoly> powers{MPoly(Rat(1))};
    for (const auto& [m, c] : terms_) {
      const unsigned e = mono::exponent(m, var);
      if (e == 0) {
        r.add_term(m, c);
        continue;
      }
      while (powers.size() <= e) powers.push_back(powers.back() * value);
      Monomial rest = m;
      rest[var] = 0;
      mono::trim(rest);
      r.add_scaled_product(c, rest, powers[e]);
    }
    return r;
  }

  /// Rename variables: x_i becomes x_{map[i]}.
  MPoly renamed(const std::vector<std::size_t>& map) const {
    MPoly r;
    for (const auto& [m, c] : terms_) {
      Monomial nm;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (nm.size() <= map[i]) nm.resize(map[i] + 1, 0);
        nm[map[i]] += m[i];
      }
      r.add_term(std::move(nm), c);
    }
    return r;
  }

 private:
  TermMap terms_;
};

inline bool is_zero(const MPoly& p) { return p.is_zero(); }

/// Text form using the given variable names, terms in descending lex order.
inline std::string render(const MPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = sgn(c) < 0;
    const Rat mag = abs(c);
    std::string body;
    std::string vars;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += names.at(i);
      if (m[i] > 1) vars += "^" + std::to_string(m[i]);
    }
    if (vars.empty()) {
      body = mag.get_str();
    } else {
      body = (mag == 1 ? "" : mag.get_str() + "*") + vars;
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

}  // namespace aode
