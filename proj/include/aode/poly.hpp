#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aode/rational.hpp"

namespace aode {

namespace detail {
template <typename R>
bool coeff_is_zero(const R& a) {
  return is_zero(a);
}
}  // namespace detail

/// Dense univariate polynomial over a commutative ring R.
///
/// Coefficients are stored by ascending exponent with no trailing zeros, so
/// the zero polynomial has an empty coefficient vector and degree() == -1
/// (the sentinel standing in for minus infinity). R{} must be the ring zero
/// and a free function is_zero(const R&) must be visible.
template <typename R>
class Poly {
 public:
  using coeff_type = R;

  Poly() = default;
  explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(R a) { return Poly(std::vector<R>{std::move(a)}); }

  static Poly monomial(R a, std::size_t k) {
    if (detail::coeff_is_zero(a)) return Poly();
    std::vector<R> c(k + 1);
    c[k] = std::move(a);
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }

  const std::vector<R>& coeffs() const { return c_; }

  /// Coefficient of x^k, zero outside the stored range.
  R coeff(std::size_t k) const { return k < c_.size() ? c_[k] : R{}; }
  const R& operator[](std::size_t k) const { return c_[k]; }

  const R& leading() const {
    if (c_.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
    return c_.back();
  }

  /// Number of nonzero coefficients.
  std::size_t term_count() const {
    std::size_t n = 0;
    for (const R& a : c_) n += detail::coeff_is_zero(a) ? 0 : 1;
    return n;
  }

  Poly operator-() const {
    std::vector<R> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return Poly(std::move(c));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }

  Poly& operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<R> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (detail::coeff_is_zero(b.c_[j])) continue;
        c[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return Poly(std::move(c));
  }

  /// Multiply every coefficient by a scalar.
  Poly scaled(const R& s) const {
    std::vector<R> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * s;
    return Poly(std::move(c));
  }

  /// Multiply by x^k.
  Poly shifted(std::size_t k) const {
    if (is_zero()) return Poly();
    std::vector<R> c(k);
    c.insert(c.end(), c_.begin(), c_.end());
    return Poly(std::move(c));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<R> c_;
};

template <typename R>
bool is_zero(const Poly<R>& p) {
  return p.is_zero();
}

template <typename R>
Poly<R> derivative(const Poly<R>& p) {
  if (p.degree() < 1) return Poly<R>();
  std::vector<R> c(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) {
    c[k - 1] = p[k] * R(static_cast<unsigned long>(k));
  }
  return Poly<R>(std::move(c));
}

/// Horner evaluation at a point of a ring S that R embeds into.
template <typename R, typename S>
S evaluate(const Poly<R>& p, const S& at) {
  S acc{};
  for (std::size_t k = p.size(); k-- > 0;) {
    acc = acc * at;
    acc += p[k];
  }
  return acc;
}

template <typename R>
Poly<R> pow(const Poly<R>& base, unsigned e) {
  Poly<R> result = Poly<R>::constant(R(1));
  Poly<R> b = base;
  while (e > 0) {
    if (e & 1U) result *= b;
    e >>= 1U;
    if (e > 0) b *= b;
  }
  return result;
}

/// Quotient and remainder; the divisor's leading coefficient must be
/// invertible in R (any nonzero element over a field, or 1 over Z).
template <typename R>
std::pair<Poly<R>, Poly<R>> divmod(const Poly<R>& a, const Poly<R>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly<R>(), a};
  std::vector<R> rem = a.coeffs();
  std::vector<R> quo(rem.size() - b.size() + 1);
  const R& lead = b.leading();
  const std::size_t db = b.size() - 1;
  for (std::size_t k = quo.size(); k-- > 0;) {
    R q = rem[k + db] / lead;
    if (detail::coeff_is_zero(q)) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b[j];
    quo[k] = std::move(q);
  }
  rem.resize(db);
  return {Poly<R>(std::move(quo)), Poly<R>(std::move(rem))};
}

/// Substitute inner for the variable: p(inner(x)).
template <typename R>
Poly<R> compose(const Poly<R>& p, const Poly<R>& inner) {
  Poly<R> acc;
  for (std::size_t k = p.size(); k-- > 0;) {
    acc = acc * inner + Poly<R>::constant(p[k]);
  }
  return acc;
}

}  // namespace aode
