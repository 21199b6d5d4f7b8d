#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "aode/diffpoly.hpp"
#include "aode/mpoly.hpp"

namespace aode {

/// Polynomial in x with parameter-polynomial coefficients.
using XPoly = Poly<MPoly>;

inline XPoly lift(const UPoly& p) {
  std::vector<MPoly> c;
  c.reserve(p.size());
  for (const Rat& a : p.coeffs()) c.emplace_back(a);
  return XPoly(std::move(c));
}

inline XPoly scale(const XPoly& p, const UPoly& q) { return p * lift(q); }

/// Quotient and remainder by a monic parameter-free divisor.
inline std::pair<XPoly, XPoly> divmod_monic(const XPoly& a, const UPoly& b) {
  if (b.is_zero() || b.leading() != 1) throw std::domain_error("divmod_monic needs a monic divisor");
  if (a.degree() < b.degree()) return {XPoly(), a};
  std::vector<MPoly> rem = a.coeffs();
  std::vector<MPoly> quo(rem.size() - b.size() + 1);
  const std::size_t db = b.size() - 1;
  for (std::size_t k = quo.size(); k-- > 0;) {
    MPoly q = rem[k + db];
    if (q.is_zero()) continue;
    for (std::size_t j = 0; j < db; ++j) {
      if (!is_zero(b[j])) rem[k + j] -= q.scaled(b[j]);
    }
    rem[k + db] = MPoly();
    quo[k] = std::move(q);
  }
  rem.resize(db);
  return {XPoly(std::move(quo)), XPoly(std::move(rem))};
}

inline XPoly substitute(const XPoly& p, std::size_t var, const MPoly& value) {
  std::vector<MPoly> c;
  c.reserve(p.size());
  for (const MPoly& a : p.coeffs()) c.push_back(a.substitute(var, value));
  return XPoly(std::move(c));
}

/// Denominator kept as a power product of pairwise coprime monic bases.
using FactoredDen = std::map<UPoly, unsigned, UPolyLess>;

inline UPoly expand(const FactoredDen& den) {
  UPoly out = upoly_const(1);
  for (const auto& [q, e] : den) out *= pow(q, e);
  return out;
}

/// Rational function in x whose numerator carries parameters.
///
/// The denominator is parameter-free. All bases ever combined must be
/// pairwise coprime (irreducible factors satisfy this).
class ParamRFunc {
 public:
  ParamRFunc() = default;
  ParamRFunc(XPoly num) : num_(std::move(num)) {}  // NOLINT(google-explicit-constructor)
  ParamRFunc(XPoly num, FactoredDen den) : num_(std::move(num)), den_(std::move(den)) { drop_units(); }

  static ParamRFunc from_rfunc(const RFunc& f, const std::vector<std::pair<UPoly, unsigned>>& den_factors) {
    return ParamRFunc(lift(f.num()), FactoredDen(den_factors.begin(), den_factors.end()));
  }

  const XPoly& num() const { return num_; }
  const FactoredDen& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend ParamRFunc operator+(const ParamRFunc& a, const ParamRFunc& b) {
    FactoredDen den = a.den_;
    for (const auto& [q, e] : b.den_) {
      unsigned& slot = den[q];
      slot = std::max(slot, e);
    }
    return ParamRFunc(a.lifted_to(den) + b.lifted_to(den), den);
  }
  friend ParamRFunc operator-(const ParamRFunc& a, const ParamRFunc& b) { return a + (-b); }
  ParamRFunc operator-() const { return ParamRFunc(-num_, den_); }

  friend ParamRFunc operator*(const ParamRFunc& a, const ParamRFunc& b) {
    FactoredDen den = a.den_;
    for (const auto& [q, e] : b.den_) den[q] += e;
    return ParamRFunc(a.num_ * b.num_, den);
  }

  ParamRFunc& operator+=(const ParamRFunc& o) { return *this = *this + o; }
  ParamRFunc& operator*=(const ParamRFunc& o) { return *this = *this * o; }

  /// Cancel base powers dividing the numerator.
  ParamRFunc reduced() const {
    ParamRFunc out = *this;
    if (out.num_.is_zero()) return ParamRFunc();
    for (auto& [q, e] : out.den_) {
      while (e > 0) {
        auto [quo, rem] = divmod_monic(out.num_, q);
        if (!rem.is_zero()) break;
        out.num_ = std::move(quo);
        --e;
      }
    }
    out.drop_units();
    return out;
  }

  ParamRFunc substituted(std::size_t var, const MPoly& value) const {
    return ParamRFunc(substitute(num_, var, value), den_);
  }

 private:
  XPoly lifted_to(const FactoredDen& den) const {
    UPoly extra = upoly_const(1);
    for (const auto& [q, e] : den) {
      auto it = den_.find(q);
      const unsigned have = it == den_.end() ? 0 : it->second;
      if (e > have) extra *= pow(q, e - have);
    }
    return extra.degree() == 0 ? num_ : scale(num_, extra);
  }

  void drop_units() {
    for (auto it = den_.begin(); it != den_.end();) {
      it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
  }

  XPoly num_;
  FactoredDen den_;
};

/// z' via the quotient rule with the denominator kept factored:
/// (N/Q~)' = (N' Q - N sum e_i q_i' Q/q_i) / (Q~ Q), Q the product of bases.
inline ParamRFunc derivative(const ParamRFunc& z) {
  if (z.den().empty()) return ParamRFunc(derivative(z.num()));
  UPoly Q = upoly_const(1);
  for (const auto& [q, e] : z.den()) Q *= q;
  UPoly S;
  for (const auto& [q, e] : z.den()) {
    S += exact_div(Q, q) * derivative(q).scaled(Rat(e));
  }
  XPoly num = scale(derivative(z.num()), Q) - scale(z.num(), S);
  FactoredDen den = z.den();
  for (auto& [q, e] : den) ++e;
  return ParamRFunc(std::move(num), std::move(den));
}

/// F(z) with the derivatives of z formed symbolically.
inline ParamRFunc evaluate(const DiffPoly& F, const ParamRFunc& z) {
  const std::size_t n = F.order();
  std::vector<ParamRFunc> ders{z};
  for (std::size_t k = 1; k <= n; ++k) ders.push_back(derivative(ders.back()));
  std::vector<std::vector<ParamRFunc>> powers(n + 1);
  auto power = [&](std::size_t k, unsigned e) -> const ParamRFunc& {
    auto& cache = powers[k];
    if (cache.empty()) cache.push_back(ParamRFunc(XPoly::constant(MPoly(Rat(1)))));
    while (cache.size() <= e) cache.push_back(cache.back() * ders[k]);
    return cache[e];
  };
  ParamRFunc total;
  for (const auto& [I, f] : F.terms()) {
    ParamRFunc term(lift(f));
    for (std::size_t k = 0; k <= n; ++k) {
      if (I[k] > 0) term *= power(k, I[k]);
    }
    total += term;
  }
  return total.reduced();
}

/// One partial-fraction block a(x) / q(x)^j with deg a < deg q.
struct PoleBlock {
  UPoly base;
  unsigned power = 0;
  XPoly num;
};

struct PartialFractions {
  std::vector<PoleBlock> blocks;  // by base, then power ascending
  XPoly poly;
};

/// Partial fractions over the factored denominator.
inline PartialFractions partial_fractions(const ParamRFunc& z) {
  PartialFractions out;
  const ParamRFunc r = z.reduced();
  const UPoly full = expand(r.den());
  auto [quo, rem] = divmod_monic(r.num(), full);
  out.poly = std::move(quo);
  for (const auto& [q, e] : r.den()) {
    const UPoly qe = pow(q, e);
    const UPoly cofactor = exact_div(full, qe);
    auto [g, s, t] = ext_gcd(cofactor, qe);
    // s * cofactor = 1 mod qe
    XPoly local = divmod_monic(scale(rem, s), qe).second;
    std::vector<XPoly> digits;
    for (unsigned j = 0; j < e; ++j) {
      auto [next, digit] = divmod_monic(local, q);
      digits.push_back(std::move(digit));
      local = std::move(next);
    }
    // local = sum digits[k] q^k over q^e, so digits[k] sits over q^(e-k)
    for (unsigned j = 1; j <= e; ++j) {
      const XPoly& a = digits[e - j];
      if (!a.is_zero()) out.blocks.push_back({q, j, a});
    }
  }
  return out;
}

}  // namespace aode
