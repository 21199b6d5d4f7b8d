#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "aode/errors.hpp"
#include "aode/upoly.hpp"

namespace aode {

struct FactorOptions {
  /// Largest degree handed to modular factorization.
  int degree_cap = 30;
};

/// Monic irreducible factors with multiplicities and the leading coefficient.
struct Factorization {
  Rat unit;
  std::vector<std::pair<UPoly, unsigned>> factors;
};

/// Yun's algorithm. Parts are monic, squarefree, pairwise coprime and listed
/// by increasing multiplicity; the rational unit is dropped.
inline std::vector<std::pair<UPoly, unsigned>> squarefree_factorization(const UPoly& f) {
  if (f.is_zero()) throw UndefinedOrderError();
  std::vector<std::pair<UPoly, unsigned>> parts;
  const UPoly g = monic(f);
  if (g.degree() < 1) return parts;
  const UPoly dg = derivative(g);
  const UPoly a0 = gcd(g, dg);
  UPoly b = exact_div(g, a0);
  UPoly c = exact_div(dg, a0);
  UPoly d = c - derivative(b);
  for (unsigned i = 1; b.degree() > 0; ++i) {
    UPoly a = gcd(b, d);
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = c - derivative(b);
    if (a.degree() > 0) parts.emplace_back(std::move(a), i);
  }
  return parts;
}

/// Distinct rational roots, ascending, via the rational-root theorem.
inline std::vector<Rat> rational_roots(const UPoly& f) {
  if (f.is_zero()) throw UndefinedOrderError();
  std::vector<Rat> roots;
  ZPoly z = integer_primitive(f);
  std::size_t shift = 0;
  while (shift < z.size() && is_zero(z[shift])) ++shift;
  if (shift > 0) {
    roots.emplace_back(0);
    z = ZPoly(std::vector<Int>(z.coeffs().begin() + static_cast<std::ptrdiff_t>(shift), z.coeffs().end()));
  }
  if (z.degree() >= 1) {
    const UPoly q = to_upoly(z);
    Rat bound = 0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
      Rat r = make_rat(abs(z[i]), abs(z.leading()));
      if (r > bound) bound = r;
    }
    bound += 1;
    const std::vector<Int> num_divs = positive_divisors(z[0]);
    const std::vector<Int> den_divs = positive_divisors(z.leading());
    for (const Int& den : den_divs) {
      for (const Int& num : num_divs) {
        Rat cand = make_rat(num, den);
        if (cand > bound) break;
        for (int sign : {1, -1}) {
          Rat r = sign > 0 ? cand : Rat(-cand);
          if (is_zero(evaluate(q, r))) roots.push_back(r);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Distinct integer roots, ascending.
inline std::vector<Int> integer_roots(const UPoly& f) {
  std::vector<Int> out;
  for (const Rat& r : rational_roots(f)) {
    if (is_integer(r)) out.push_back(r.get_num());
  }
  return out;
}

namespace detail::fp {

using u64 = std::uint64_t;
using FpPoly = std::vector<u64>;

inline u64 mulmod(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}

inline u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1U;
  }
  return r;
}

inline u64 inverse(u64 a, u64 p) { return powmod(a, p - 2, p); }

inline void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

inline FpPoly from_z(const ZPoly& z, u64 p) {
  FpPoly a(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) a[i] = mpz_fdiv_ui(z[i].get_mpz_t(), p);
  trim(a);
  return a;
}

inline ZPoly to_z(const FpPoly& a) {
  std::vector<Int> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = Int(static_cast<unsigned long>(a[i]));
  return ZPoly(std::move(c));
}

inline FpPoly sub(FpPoly a, const FpPoly& b, u64 p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline FpPoly mul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  trim(c);
  return c;
}

inline std::pair<FpPoly, FpPoly> divmod(FpPoly a, const FpPoly& b, u64 p) {
  const int db = deg(b);
  if (deg(a) < db) return {{}, a};
  FpPoly q(a.size() - b.size() + 1, 0);
  const u64 inv = inverse(b.back(), p);
  for (int k = deg(a) - db; k >= 0; --k) {
    const u64 coef = mulmod(a[static_cast<std::size_t>(k + db)], inv, p);
    q[static_cast<std::size_t>(k)] = coef;
    if (coef == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& slot = a[static_cast<std::size_t>(k + j)];
      slot = (slot + p - mulmod(coef, b[static_cast<std::size_t>(j)], p)) % p;
    }
  }
  a.resize(static_cast<std::size_t>(db));
  trim(a);
  trim(q);
  return {q, a};
}

inline FpPoly make_monic(FpPoly a, u64 p) {
  if (a.empty()) return a;
  const u64 inv = inverse(a.back(), p);
  for (u64& c : a) c = mulmod(c, inv, p);
  return a;
}

inline FpPoly gcd(FpPoly a, FpPoly b, u64 p) {
  while (!b.empty()) {
    FpPoly r = divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), p);
}

/// s*a + t*b = 1 for coprime a, b.
inline std::pair<FpPoly, FpPoly> bezout(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, sub(s0, mul(q, s1, p), p));
    t0 = std::exchange(t1, sub(t0, mul(q, t1, p), p));
  }
  const u64 inv = inverse(r0.back(), p);
  for (u64& c : s0) c = mulmod(c, inv, p);
  for (u64& c : t0) c = mulmod(c, inv, p);
  return {s0, t0};
}

inline FpPoly derivative(const FpPoly& a, u64 p) {
  FpPoly d;
  for (std::size_t k = 1; k < a.size(); ++k) d.push_back(mulmod(a[k], k % p, p));
  trim(d);
  return d;
}

/// base^e mod modulus.
inline FpPoly powmod(FpPoly base, Int e, const FpPoly& modulus, u64 p) {
  FpPoly r{1};
  base = divmod(base, modulus, p).second;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t()) != 0) r = divmod(mul(r, base, p), modulus, p).second;
    e >>= 1;
    if (e > 0) base = divmod(mul(base, base, p), modulus, p).second;
  }
  return r;
}

inline void equal_degree_split(const FpPoly& f, int d, u64 p, std::mt19937_64& rng,
                               std::vector<FpPoly>& out) {
  if (deg(f) == d) {
    out.push_back(f);
    return;
  }
  Int e = pow_int(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> coin(0, p - 1);
  for (;;) {
    FpPoly a(static_cast<std::size_t>(deg(f)));
    for (u64& c : a) c = coin(rng);
    trim(a);
    if (deg(a) < 1) continue;
    FpPoly b = sub(powmod(a, e, f, p), FpPoly{1}, p);
    FpPoly g = gcd(f, b, p);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      equal_degree_split(g, d, p, rng, out);
      equal_degree_split(divmod(f, g, p).first, d, p, rng, out);
      return;
    }
  }
}

/// Monic irreducible factors of a monic squarefree polynomial over F_p, p odd.
inline std::vector<FpPoly> factor_squarefree(FpPoly f, u64 p) {
  std::vector<FpPoly> out;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ p);
  FpPoly h{0, 1};
  const FpPoly x{0, 1};
  for (int i = 1; 2 * i <= deg(f); ++i) {
    h = powmod(h, Int(static_cast<unsigned long>(p)), f, p);
    FpPoly g = gcd(f, sub(h, x, p), p);
    if (deg(g) > 0) {
      equal_degree_split(g, i, p, rng, out);
      f = divmod(f, g, p).first;
      h = divmod(h, f, p).second;
    }
  }
  if (deg(f) > 0) out.push_back(make_monic(f, p));
  std::sort(out.begin(), out.end(), [](const FpPoly& a, const FpPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace detail::fp

namespace detail {

inline ZPoly reduce_mod(const ZPoly& a, const Int& m) {
  std::vector<Int> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod_pos(a[i], m);
  return ZPoly(std::move(c));
}

inline ZPoly reduce_sym(const ZPoly& a, const Int& m) {
  std::vector<Int> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod_sym(a[i], m);
  return ZPoly(std::move(c));
}

struct HenselPair {
  ZPoly g, h, s, t;
};

/// One quadratic Hensel step: f = g*h, s*g + t*h = 1 mod m  ->  mod m^2.
/// f, g, h monic.
inline HenselPair hensel_step(const ZPoly& f, const HenselPair& in, const Int& m) {
  const Int mm = m * m;
  const ZPoly e = reduce_mod(f - in.g * in.h, mm);
  auto [q, r] = divmod(reduce_mod(in.s * e, mm), in.h);
  HenselPair out;
  out.g = reduce_mod(in.g + in.t * e + q * in.g, mm);
  out.h = reduce_mod(in.h + r, mm);
  const ZPoly b = reduce_mod(in.s * out.g + in.t * out.h - ZPoly::constant(Int(1)), mm);
  auto [c, d] = divmod(reduce_mod(in.s * b, mm), out.h);
  out.s = reduce_mod(in.s - d, mm);
  out.t = reduce_mod(in.t - in.t * b - c * out.g, mm);
  return out;
}

/// Lift a monic factorization f = prod(factors) mod p to mod `target`, a power of p.
inline std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<fp::FpPoly>& factors,
                                      std::uint64_t p, const Int& target) {
  if (factors.size() == 1) return {reduce_mod(f, target)};
  const std::size_t half = factors.size() / 2;
  fp::FpPoly g0{1}, h0{1};
  for (std::size_t i = 0; i < half; ++i) g0 = fp::mul(g0, factors[i], p);
  for (std::size_t i = half; i < factors.size(); ++i) h0 = fp::mul(h0, factors[i], p);
  auto [s0, t0] = fp::bezout(g0, h0, p);
  HenselPair pair{fp::to_z(g0), fp::to_z(h0), fp::to_z(s0), fp::to_z(t0)};
  Int m = static_cast<unsigned long>(p);
  while (m < target) {
    pair = hensel_step(f, pair, m);
    m *= m;
  }
  std::vector<fp::FpPoly> left(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<fp::FpPoly> right(factors.begin() + static_cast<std::ptrdiff_t>(half), factors.end());
  std::vector<ZPoly> out = hensel_lift(reduce_mod(pair.g, target), left, p, target);
  std::vector<ZPoly> more = hensel_lift(reduce_mod(pair.h, target), right, p, target);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

inline bool is_prime_small(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Factor a monic squarefree integer polynomial of degree >= 2 over Z.
inline std::vector<ZPoly> zassenhaus_monic(const ZPoly& f) {
  std::uint64_t best_p = 0;
  std::vector<fp::FpPoly> best;
  int good = 0;
  for (std::uint64_t p = 3; good < 3; p += 2) {
    if (!is_prime_small(p)) continue;
    const fp::FpPoly fp_f = fp::from_z(f, p);
    if (fp::deg(fp::gcd(fp_f, fp::derivative(fp_f, p), p)) != 0) continue;
    ++good;
    std::vector<fp::FpPoly> facs = fp::factor_squarefree(fp_f, p);
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
  }
  if (best.size() == 1) return {f};

  Int norm2 = 0;
  for (const Int& c : f.coeffs()) norm2 += c * c;
  Int root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  const Int bound = pow_int(Int(2), static_cast<unsigned long>(f.degree())) * (root + 1);
  Int modulus = static_cast<unsigned long>(best_p);
  while (modulus <= 2 * bound) modulus *= modulus;

  std::vector<ZPoly> lifted = hensel_lift(f, best, best_p, modulus);
  std::vector<ZPoly> result;
  ZPoly rest = f;
  for (std::size_t size = 1; 2 * size <= lifted.size();) {
    bool found = false;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      ZPoly cand = ZPoly::constant(Int(1));
      for (std::size_t i : idx) cand = reduce_mod(cand * lifted[i], modulus);
      cand = reduce_sym(cand, modulus);
      auto [q, r] = divmod(rest, cand);
      if (r.is_zero()) {
        result.push_back(cand);
        rest = q;
        for (std::size_t k = idx.size(); k-- > 0;) {
          lifted.erase(lifted.begin() + static_cast<std::ptrdiff_t>(idx[k]));
        }
        found = true;
        break;
      }
      // next combination
      std::size_t k = size;
      while (k > 0 && idx[k - 1] == lifted.size() - size + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++size;
  }
  if (rest.degree() > 0) result.push_back(rest);
  return result;
}

/// Irreducible monic factors over Q of a monic squarefree polynomial with no
/// rational roots.
inline std::vector<UPoly> factor_no_linear(const UPoly& h, const FactorOptions& opts) {
  if (h.degree() <= 3) return {h};
  if (h.degree() > opts.degree_cap) {
    throw CapExceededError("factorization degree cap exceeded (degree " + std::to_string(h.degree()) +
                           " > " + std::to_string(opts.degree_cap) + ")");
  }
  const ZPoly prim = integer_primitive(h);
  const Int a = prim.leading();
  const std::size_t n = static_cast<std::size_t>(prim.degree());
  std::vector<Int> g(n + 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = prim[i] * pow_int(a, n - 1 - i);
  g[n] = 1;
  std::vector<UPoly> out;
  for (const ZPoly& fac : zassenhaus_monic(ZPoly(std::move(g)))) {
    // undo x -> x/a
    std::vector<Rat> c(fac.size());
    for (std::size_t i = 0; i < fac.size(); ++i) c[i] = Rat(fac[i] * pow_int(a, i));
    out.push_back(monic(UPoly(std::move(c))));
  }
  return out;
}

}  // namespace detail

/// f = unit * prod(factor^multiplicity), factors monic irreducible over Q in
/// UPolyLess order.
inline Factorization factor_irreducible(const UPoly& f, const FactorOptions& opts = {}) {
  if (f.is_zero()) throw UndefinedOrderError();
  Factorization out{f.leading(), {}};
  for (auto& [part, mult] : squarefree_factorization(f)) {
    UPoly rest = part;
    for (const Rat& r : rational_roots(part)) {
      UPoly lin = upoly_linear(r);
      rest = exact_div(rest, lin);
      out.factors.emplace_back(std::move(lin), mult);
    }
    if (rest.degree() < 1) continue;
    for (UPoly& fac : detail::factor_no_linear(rest, opts)) out.factors.emplace_back(std::move(fac), mult);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return UPolyLess{}(a.first, b.first); });
  return out;
}

inline UPoly expand(const Factorization& fac) {
  UPoly acc = upoly_const(fac.unit);
  for (const auto& [p, m] : fac.factors) acc *= pow(p, m);
  return acc;
}

inline bool is_irreducible(const UPoly& p, const FactorOptions& opts = {}) {
  if (p.degree() < 1) return false;
  const Factorization fac = factor_irreducible(p, opts);
  return fac.factors.size() == 1 && fac.factors.front().second == 1;
}

}  // namespace aode
