#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace aode {

using Int = mpz_class;
using Rat = mpq_class;

inline bool is_zero(const Int& a) { return sgn(a) == 0; }
inline bool is_zero(const Rat& a) { return sgn(a) == 0; }

inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& a) { return a.get_den() == 1; }

inline Int floor_rat(const Rat& a) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  return q;
}

inline std::string to_string(const Int& a) { return a.get_str(); }
inline std::string to_string(const Rat& a) { return a.get_str(); }

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
  Rat r(1);
  Rat b = base;
  while (e > 0) {
    if (e & 1U) r *= b;
    b *= b;
    e >>= 1U;
  }
  return r;
}

/// Nonnegative residue of a modulo m (m > 0).
inline Int mod_pos(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Residue of a modulo m in (-m/2, m/2].
inline Int mod_sym(const Int& a, const Int& m) {
  Int r = mod_pos(a, m);
  if (2 * r > m) r -= m;
  return r;
}

namespace detail {

inline Int pollard_brent(const Int& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return Int(2);
  Int y = seed % 1000 + 2;
  Int c = seed % 97 + 1;
  Int m = 64;
  Int g = 1, r = 1, q = 1, x, ys;
  auto f = [&](const Int& v) { return mod_pos(v * v + c, n); };
  while (g == 1) {
    x = y;
    for (Int i = 0; i < r; ++i) y = f(y);
    Int k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (Int i = 0; i < m && i < r - k; ++i) {
        y = f(y);
        Int diff = x - y;
        q = mod_pos(q * abs(diff), n);
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      Int diff = x - ys;
      g = gcd(abs(diff), n);
    } while (g == 1);
  }
  return g;
}

inline void collect_prime_factors(const Int& n, std::vector<Int>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    out.push_back(n);
    return;
  }
  for (unsigned long seed = 1;; ++seed) {
    Int d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      collect_prime_factors(d, out);
      Int rest = n / d;
      collect_prime_factors(rest, out);
      return;
    }
  }
}

}  // namespace detail

/// Prime factorization of |n| (n != 0) as (prime, exponent), ascending primes.
inline std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n) {
  Int m = abs(n);
  std::vector<Int> primes;
  for (unsigned long p = 2; p < 1000 && m > 1; ++p) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
      primes.emplace_back(static_cast<unsigned long>(p));
      m /= p;
    }
  }
  detail::collect_prime_factors(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Int, unsigned>> out;
  for (const Int& p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1U);
    }
  }
  return out;
}

/// All positive divisors of |n| (n != 0), ascending.
inline std::vector<Int> positive_divisors(const Int& n) {
  std::vector<Int> divs{Int(1)};
  for (const auto& [p, e] : factor_integer(n)) {
    const std::size_t base = divs.size();
    Int pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace aode
