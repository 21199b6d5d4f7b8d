#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "aode/engine.hpp"

namespace aode {

namespace detail {

/// Signed pieces joined as "a + b - c".
inline std::string join_signed(const std::vector<std::pair<bool, std::string>>& pieces) {
  if (pieces.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& [negative, body] = pieces[i];
    if (i == 0) {
      out = (negative ? "-" : "") + body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out;
}

inline std::string derivative_name(std::size_t k) {
  if (k <= 3) return "y" + std::string(k, '\'');
  return "D(y," + std::to_string(k) + ")";
}

inline std::string power_suffix(unsigned long e) { return e > 1 ? "^" + std::to_string(e) : ""; }

/// Sign and magnitude text of coef * rest, where rest may be empty.
inline std::pair<bool, std::string> scaled_piece(const Rat& coef, const std::string& rest) {
  const bool negative = sgn(coef) < 0;
  const Rat mag = abs(coef);
  if (rest.empty()) return {negative, mag.get_str()};
  if (mag == 1) return {negative, rest};
  return {negative, mag.get_str() + "*" + rest};
}

inline std::string x_power(std::size_t k) {
  if (k == 0) return "";
  return "x" + power_suffix(k);
}

/// Pieces of a polynomial in x with parameter coefficients, descending in x.
inline std::vector<std::pair<bool, std::string>> xpoly_pieces(const XPoly& p, const std::vector<std::string>& names) {
  std::vector<std::pair<bool, std::string>> pieces;
  for (std::size_t k = p.size(); k-- > 0;) {
    const MPoly& c = p[k];
    if (c.is_zero()) continue;
    if (c.terms().size() == 1) {
      const auto& [m, coef] = *c.terms().begin();
      std::string rest = render(MPoly::term(m, Rat(1)), names);
      if (rest == "1") rest.clear();
      const std::string xs = x_power(k);
      if (!rest.empty() && !xs.empty()) rest += "*";
      pieces.push_back(scaled_piece(coef, rest + xs));
    } else if (k == 0) {
      // a bare parameter polynomial: reuse its own signed terms
      for (const auto& [m, coef] : c.terms()) {
        std::string rest = render(MPoly::term(m, Rat(1)), names);
        if (rest == "1") rest.clear();
        pieces.push_back(scaled_piece(coef, rest));
      }
    } else {
      pieces.emplace_back(false, "(" + render(c, names) + ")*" + x_power(k));
    }
  }
  return pieces;
}

inline std::string base_power(const UPoly& q, unsigned j) {
  std::string b = render(q);
  const bool simple = q.degree() == 1 && q.coeff(0) == 0 && q.leading() == 1;
  if (!simple) b = "(" + b + ")";
  return b + power_suffix(j);
}

}  // namespace detail

/// Canonical text of a differential polynomial, largest exponent first.
inline std::string render(const DiffPoly& F) {
  std::vector<std::pair<bool, std::string>> pieces;
  for (auto it = F.terms().rbegin(); it != F.terms().rend(); ++it) {
    const auto& [I, f] = *it;
    std::string ys;
    for (std::size_t k = 0; k < I.size(); ++k) {
      if (I[k] == 0) continue;
      if (!ys.empty()) ys += "*";
      ys += detail::derivative_name(k) + detail::power_suffix(I[k]);
    }
    const int nonzero = static_cast<int>(std::count_if(f.coeffs().begin(), f.coeffs().end(),
                                                       [](const Rat& c) { return !is_zero(c); }));
    if (nonzero == 1) {
      const std::string xs = detail::x_power(static_cast<std::size_t>(f.degree()));
      std::string rest = xs;
      if (!xs.empty() && !ys.empty()) rest += "*";
      rest += ys;
      pieces.push_back(detail::scaled_piece(f.leading(), rest));
    } else {
      const bool negative = sgn(f.leading()) < 0;
      std::string body = "(" + render(negative ? -f : f) + ")";
      if (!ys.empty()) body += "*" + ys;
      pieces.emplace_back(negative, body);
    }
  }
  return detail::join_signed(pieces);
}

/// Pole blocks first (by factor, then power), then the polynomial part.
inline std::string render_expr(const ParamRFunc& z, const std::vector<std::string>& names) {
  const PartialFractions pf = partial_fractions(z);
  std::vector<std::pair<bool, std::string>> pieces;
  for (const PoleBlock& b : pf.blocks) {
    const std::string den = detail::base_power(b.base, b.power);
    auto num = detail::xpoly_pieces(b.num, names);
    if (num.size() == 1) {
      pieces.emplace_back(num[0].first, num[0].second + "/" + den);
    } else {
      pieces.emplace_back(false, "(" + detail::join_signed(num) + ")/" + den);
    }
  }
  for (auto& piece : detail::xpoly_pieces(pf.poly, names)) pieces.push_back(std::move(piece));
  return detail::join_signed(pieces);
}

inline std::string render(const SolutionFamily& fam) { return render_expr(fam.expr, fam.params); }

inline std::vector<std::string> render_constraints(const SolutionFamily& fam) {
  std::vector<std::string> out;
  for (const MPoly& c : fam.constraints) out.push_back(render(c, fam.params));
  return out;
}

inline std::string render(const ExpVec& I) {
  std::string out = "(";
  for (std::size_t k = 0; k < I.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(I[k]);
  }
  return out + ")";
}

}  // namespace aode
