#pragma once

#include <string>
#include <utility>

#include "aode/errors.hpp"
#include "aode/upoly.hpp"

namespace aode {

/// Rational function num/den over Q with den monic and gcd(num, den) = 1.
class RFunc {
 public:
  RFunc() : den_(upoly_const(1)) {}
  RFunc(UPoly num) : num_(std::move(num)), den_(upoly_const(1)) {}  // NOLINT(google-explicit-constructor)
  RFunc(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  friend RFunc operator+(const RFunc& a, const RFunc& b) {
    return RFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RFunc operator-(const RFunc& a, const RFunc& b) {
    return RFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RFunc operator*(const RFunc& a, const RFunc& b) {
    return RFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RFunc operator/(const RFunc& a, const RFunc& b) {
    if (b.is_zero()) throw std::domain_error("rational function division by zero");
    return RFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RFunc operator-() const { return RFunc(-num_, den_); }

  RFunc& operator+=(const RFunc& o) { return *this = *this + o; }
  RFunc& operator-=(const RFunc& o) { return *this = *this - o; }
  RFunc& operator*=(const RFunc& o) { return *this = *this * o; }

  friend bool operator==(const RFunc& a, const RFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  void canonicalize() {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = upoly_const(1);
      return;
    }
    UPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    Rat lead = den_.leading();
    if (lead != 1) {
      Rat inv = 1 / lead;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  UPoly num_;
  UPoly den_;
};

inline bool is_zero(const RFunc& f) { return f.is_zero(); }

inline std::string render(const RFunc& f, const std::string& var = "x") {
  if (f.is_polynomial()) return render(f.num(), var);
  auto wrap = [&](const UPoly& p) {
    std::string s = render(p, var);
    return p.term_count() > 1 || (p.term_count() == 1 && sgn(p.leading()) < 0) ? "(" + s + ")" : s;
  };
  return wrap(f.num()) + "/" + wrap(f.den());
}

/// Element of Q[x]/(p) for a monic irreducible modulus p.
class Residue {
 public:
  Residue(UPoly modulus, const UPoly& value) : modulus_(std::move(modulus)) {
    value_ = divmod(value, modulus_).second;
  }

  const UPoly& modulus() const { return modulus_; }
  const UPoly& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }

  friend Residue operator+(const Residue& a, const Residue& b) {
    a.check(b);
    return Residue(a.modulus_, a.value_ + b.value_);
  }
  friend Residue operator-(const Residue& a, const Residue& b) {
    a.check(b);
    return Residue(a.modulus_, a.value_ - b.value_);
  }
  friend Residue operator*(const Residue& a, const Residue& b) {
    a.check(b);
    return Residue(a.modulus_, a.value_ * b.value_);
  }
  friend bool operator==(const Residue& a, const Residue& b) {
    return a.modulus_ == b.modulus_ && a.value_ == b.value_;
  }

  Residue inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero residue");
    auto [g, s, t] = ext_gcd(value_, modulus_);
    return Residue(modulus_, s);
  }

 private:
  void check(const Residue& o) const {
    if (modulus_ != o.modulus_) throw UsageError("residues with different moduli");
  }

  UPoly modulus_;
  UPoly value_;
};

// Order conventions: for f = c*(x - x0)^k + ..., ord_{x0}(f) = -k, so a pole
// has positive order. At infinity ord(f) = deg(num) - deg(den), i.e. the
// exponent of the leading term in x. Every routine below follows these signs.

/// Multiplicity of the irreducible factor p in the nonzero polynomial f.
inline unsigned multiplicity(const UPoly& f, const UPoly& p) {
  if (f.is_zero()) throw UndefinedOrderError();
  unsigned mu = 0;
  UPoly g = f;
  for (;;) {
    auto [q, r] = divmod(g, p);
    if (!r.is_zero()) break;
    g = std::move(q);
    ++mu;
  }
  return mu;
}

/// ord at the roots of p: -(multiplicity of p in f).
inline int ord_at_factor(const UPoly& f, const UPoly& p) { return -static_cast<int>(multiplicity(f, p)); }

inline int ord_at_factor(const RFunc& f, const UPoly& p) {
  if (f.is_zero()) throw UndefinedOrderError();
  return ord_at_factor(f.num(), p) - ord_at_factor(f.den(), p);
}

/// (f / p^mu) mod p: the lowest coefficient at the roots of p.
inline Residue lowest_coeff_at_factor(const UPoly& f, const UPoly& p) {
  const unsigned mu = multiplicity(f, p);
  return Residue(p, exact_div(f, pow(p, mu)));
}

inline Residue lowest_coeff_at_factor(const RFunc& f, const UPoly& p) {
  if (f.is_zero()) throw UndefinedOrderError();
  Residue num = lowest_coeff_at_factor(f.num(), p);
  Residue den = lowest_coeff_at_factor(f.den(), p);
  return num * den.inverse();
}

inline int ord_at_infinity(const RFunc& f) {
  if (f.is_zero()) throw UndefinedOrderError();
  return f.num().degree() - f.den().degree();
}

inline Rat lowest_coeff_at_infinity(const RFunc& f) {
  if (f.is_zero()) throw UndefinedOrderError();
  return f.num().leading() / f.den().leading();
}

}  // namespace aode
