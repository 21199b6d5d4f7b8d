#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "aode/errors.hpp"
#include "aode/rfunc.hpp"

namespace aode {

/// Exponent vector (i0, ..., in): powers of y, y', ..., y^(n) in one monomial.
///
/// Ordered reverse-lexicographically, so the highest derivative is the most
/// significant entry. Vectors of different lengths compare as if padded with
/// zeros.
class ExpVec {
 public:
  ExpVec() = default;
  explicit ExpVec(std::vector<unsigned> e) : e_(std::move(e)) {}
  ExpVec(std::initializer_list<unsigned> e) : e_(e) {}

  std::size_t size() const { return e_.size(); }
  unsigned operator[](std::size_t k) const { return k < e_.size() ? e_[k] : 0; }
  const std::vector<unsigned>& entries() const { return e_; }

  /// Highest k with a nonzero entry, or -1 for the zero vector.
  int top() const {
    for (std::size_t k = e_.size(); k-- > 0;) {
      if (e_[k] != 0) return static_cast<int>(k);
    }
    return -1;
  }

  bool is_zero() const { return top() < 0; }

  ExpVec resized(std::size_t len) const {
    std::vector<unsigned> e(len, 0);
    for (std::size_t k = 0; k < std::min(len, e_.size()); ++k) e[k] = e_[k];
    return ExpVec(std::move(e));
  }

  friend std::strong_ordering operator<=>(const ExpVec& a, const ExpVec& b) {
    const std::size_t len = std::max(a.size(), b.size());
    for (std::size_t k = len; k-- > 0;) {
      if (a[k] != b[k]) return a[k] <=> b[k];
    }
    return std::strong_ordering::equal;
  }
  friend bool operator==(const ExpVec& a, const ExpVec& b) { return (a <=> b) == 0; }

 private:
  std::vector<unsigned> e_;
};

/// ||I||_r = i_r + ... + i_n.
inline unsigned partial_norm(const ExpVec& I, std::size_t r) {
  unsigned s = 0;
  for (std::size_t k = r; k < I.size(); ++k) s += I[k];
  return s;
}

inline unsigned norm(const ExpVec& I) { return partial_norm(I, 0); }

/// ||I||_inf = i1 + 2 i2 + ... + n in.
inline unsigned inf_norm(const ExpVec& I) {
  unsigned s = 0;
  for (std::size_t k = 1; k < I.size(); ++k) s += static_cast<unsigned>(k) * I[k];
  return s;
}

struct ExpNorms {
  unsigned norm = 0;
  std::vector<unsigned> partials;  // ||I||_r for r = 0..n
  unsigned inf_norm = 0;
};

inline ExpNorms exp_norms(const ExpVec& I) {
  ExpNorms out;
  out.norm = norm(I);
  out.inf_norm = inf_norm(I);
  for (std::size_t r = 0; r < I.size(); ++r) out.partials.push_back(partial_norm(I, r));
  return out;
}

/// Terms with rational-function coefficients, as produced by the parser.
using RawTerms = std::map<ExpVec, RFunc>;

/// Differential polynomial with polynomial coefficients in x.
class DiffPoly {
 public:
  using TermMap = std::map<ExpVec, UPoly>;

  DiffPoly() = default;
  /// Takes terms as given; use normalize() for canonical form.
  DiffPoly(std::size_t order, TermMap terms) : order_(order) {
    for (auto& [I, f] : terms) {
      if (!f.is_zero()) terms_.emplace(I.resized(order + 1), std::move(f));
    }
  }

  std::size_t order() const { return order_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  const UPoly& coeff(const ExpVec& I) const {
    static const UPoly zero;
    auto it = terms_.find(I);
    return it == terms_.end() ? zero : it->second;
  }

  /// d(F): maximal total degree in y and its derivatives.
  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [I, f] : terms_) d = std::max(d, norm(I));
    return d;
  }

  friend bool operator==(const DiffPoly& a, const DiffPoly& b) {
    return a.order_ == b.order_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t order_ = 0;
  TermMap terms_;
};

/// Clear denominators, drop zeros, and fix the integer content and sign.
///
/// The sign is chosen so that the coefficient of the largest exponent vector
/// has a positive leading coefficient. The order is recomputed from the
/// surviving terms.
inline DiffPoly normalize(const RawTerms& raw) {
  UPoly clear = upoly_const(1);
  bool any = false;
  for (const auto& [I, f] : raw) {
    if (f.is_zero()) continue;
    any = true;
    clear = clear * exact_div(f.den(), gcd(clear, f.den()));
  }
  if (!any) throw DegenerateEquationError();

  int top = -1;
  for (const auto& [I, f] : raw) {
    if (!f.is_zero()) top = std::max(top, I.top());
  }
  if (top < 0) throw NotADifferentialEquationError();
  const std::size_t order = static_cast<std::size_t>(top);

  std::map<ExpVec, UPoly> polys;
  for (const auto& [I, f] : raw) {
    if (f.is_zero()) continue;
    UPoly p = exact_div(f.num() * clear, f.den());
    auto [it, fresh] = polys.emplace(I.resized(order + 1), p);
    if (!fresh) it->second += p;
  }
  for (auto it = polys.begin(); it != polys.end();) {
    it = it->second.is_zero() ? polys.erase(it) : std::next(it);
  }
  if (polys.empty()) throw DegenerateEquationError();

  Int den = 1;
  Int num_gcd = 0;
  for (const auto& [I, p] : polys) {
    for (const Rat& c : p.coeffs()) {
      den = lcm(den, c.get_den());
      num_gcd = gcd(num_gcd, c.get_num());
    }
  }
  Rat scale(den, num_gcd);
  scale.canonicalize();
  if (sgn(polys.rbegin()->second.leading()) < 0) scale = -scale;
  for (auto& [I, p] : polys) p = p.scaled(scale);
  return DiffPoly(order, std::move(polys));
}

inline DiffPoly normalize(const DiffPoly& F) {
  RawTerms raw;
  for (const auto& [I, f] : F.terms()) raw.emplace(I, RFunc(f));
  return normalize(raw);
}

struct Supports {
  std::set<ExpVec> E;
  unsigned d = 0;
  std::set<ExpVec> D;
};

inline Supports supports(const DiffPoly& F) {
  Supports s;
  s.d = F.total_degree();
  for (const auto& [I, f] : F.terms()) {
    s.E.insert(I);
    if (norm(I) == s.d) s.D.insert(I);
  }
  return s;
}

}  // namespace aode
