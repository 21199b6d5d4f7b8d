#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aode/errors.hpp"
#include "aode/mpoly.hpp"

namespace aode {

struct GroebnerOptions {
  /// Budget of single reduction steps per computation.
  std::size_t max_reductions = 1'000'000;
};

/// Reduced lex Groebner basis: every element monic, sorted by descending
/// leading monomial. The zero ideal has no elements; the unit ideal is {1}.
struct GroebnerBasis {
  std::vector<MPoly> polys;

  bool is_unit() const { return polys.size() == 1 && polys.front().is_constant(); }
  bool is_zero_ideal() const { return polys.empty(); }
};

namespace detail {

class ReductionBudget {
 public:
  explicit ReductionBudget(std::size_t limit) : left_(limit) {}
  void spend() {
    if (left_ == 0) throw CapExceededError("Groebner reduction budget exhausted");
    --left_;
  }

 private:
  std::size_t left_;
};

inline MPoly normal_form(const MPoly& f, const std::vector<MPoly>& basis, ReductionBudget& budget) {
  MPoly rem;
  MPoly p = f;
  while (!p.is_zero()) {
    const Monomial lm = p.leading_monomial();
    const Rat lc = p.leading_coeff();
    const MPoly* divisor = nullptr;
    for (const MPoly& g : basis) {
      if (!g.is_zero() && mono::divides(g.leading_monomial(), lm)) {
        divisor = &g;
        break;
      }
    }
    if (divisor == nullptr) {
      rem.add_term(lm, lc);
      p.add_term(lm, Rat(-lc));
      continue;
    }
    budget.spend();
    p.add_scaled_product(Rat(-lc / divisor->leading_coeff()), mono::div(lm, divisor->leading_monomial()),
                         *divisor);
  }
  return rem;
}

}  // namespace detail

/// Remainder of full multivariate division by the basis elements (lex).
inline MPoly normal_form(const MPoly& f, const std::vector<MPoly>& basis, const GroebnerOptions& opts = {}) {
  detail::ReductionBudget budget(opts.max_reductions);
  return detail::normal_form(f, basis, budget);
}

inline MPoly normal_form(const MPoly& f, const GroebnerBasis& basis, const GroebnerOptions& opts = {}) {
  return normal_form(f, basis.polys, opts);
}

inline MPoly s_polynomial(const MPoly& f, const MPoly& g) {
  const Monomial l = mono::lcm(f.leading_monomial(), g.leading_monomial());
  MPoly s;
  s.add_scaled_product(1 / f.leading_coeff(), mono::div(l, f.leading_monomial()), f);
  s.add_scaled_product(-1 / g.leading_coeff(), mono::div(l, g.leading_monomial()), g);
  return s;
}

/// Buchberger's algorithm with the normal selection strategy and the
/// coprime-leading-monomial and chain criteria.
inline GroebnerBasis buchberger(const std::vector<MPoly>& gens, const GroebnerOptions& opts = {}) {
  detail::ReductionBudget budget(opts.max_reductions);
  std::vector<MPoly> basis;
  std::set<std::pair<std::size_t, std::size_t>> pending;

  auto add = [&](MPoly h) {
    if (h.is_constant()) {
      basis = {MPoly(Rat(1))};
      pending.clear();
      return false;
    }
    const std::size_t j = basis.size();
    basis.push_back(h.monic());
    for (std::size_t i = 0; i < j; ++i) pending.emplace(i, j);
    return true;
  };

  for (const MPoly& g : gens) {
    MPoly h = detail::normal_form(g, basis, budget);
    if (h.is_zero()) continue;
    if (!add(std::move(h))) return {basis};
  }

  while (!pending.empty()) {
    auto best = pending.begin();
    Monomial best_lcm = mono::lcm(basis[best->first].leading_monomial(), basis[best->second].leading_monomial());
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Monomial l = mono::lcm(basis[it->first].leading_monomial(), basis[it->second].leading_monomial());
      if (l < best_lcm) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    const auto [i, j] = *best;
    pending.erase(best);

    const Monomial& lm_i = basis[i].leading_monomial();
    const Monomial& lm_j = basis[j].leading_monomial();
    if (mono::coprime(lm_i, lm_j)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (!mono::divides(basis[k].leading_monomial(), best_lcm)) continue;
      const auto ik = std::minmax(i, k);
      const auto jk = std::minmax(j, k);
      chain = pending.count({ik.first, ik.second}) == 0 && pending.count({jk.first, jk.second}) == 0;
    }
    if (chain) continue;

    MPoly h = detail::normal_form(s_polynomial(basis[i], basis[j]), basis, budget);
    if (h.is_zero()) continue;
    if (!add(std::move(h))) return {basis};
  }

  // minimal basis
  std::vector<MPoly> minimal;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < basis.size() && !redundant; ++b) {
      if (a == b) continue;
      const Monomial& la = basis[a].leading_monomial();
      const Monomial& lb = basis[b].leading_monomial();
      redundant = mono::divides(lb, la) && (lb != la || b < a);
    }
    if (!redundant) minimal.push_back(basis[a]);
  }
  // interreduce
  std::vector<MPoly> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<MPoly> others;
    for (std::size_t b = 0; b < minimal.size(); ++b) {
      if (b != a) others.push_back(minimal[b]);
    }
    const Monomial lm = minimal[a].leading_monomial();
    MPoly tail = minimal[a];
    tail.add_term(lm, Rat(-tail.leading_coeff()));
    MPoly r = detail::normal_form(tail, others, budget);
    r.add_term(lm, Rat(1));
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const MPoly& a, const MPoly& b) { return a.leading_monomial() > b.leading_monomial(); });
  return {reduced};
}

}  // namespace aode
