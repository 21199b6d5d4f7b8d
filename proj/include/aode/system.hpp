#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "aode/factor.hpp"
#include "aode/groebner.hpp"
#include "aode/mpoly.hpp"

namespace aode {

/// Explicit solution family: every unknown not in `free` is assigned a
/// polynomial in the free unknowns.
struct AlgebraicFamily {
  std::map<std::size_t, MPoly> assignments;
  std::vector<std::size_t> free;
};

/// A branch that could not be triangularized over Q: the determined unknowns
/// are assigned, the rest must satisfy `constraints` (a reduced lex basis).
struct ConstrainedBranch {
  std::map<std::size_t, MPoly> assignments;
  std::vector<std::size_t> undetermined;
  std::vector<MPoly> constraints;
};

struct SolveOutcome {
  std::vector<AlgebraicFamily> families;
  std::vector<ConstrainedBranch> constrained;
  bool inconsistent = false;
};

namespace detail {

inline UPoly as_univariate(const MPoly& p, std::size_t var) {
  std::vector<Rat> c(p.degree_in(var) + 1);
  for (const auto& [m, coeff] : p.terms()) c[mono::exponent(m, var)] += coeff;
  return UPoly(std::move(c));
}

inline MPoly from_univariate(const UPoly& p, std::size_t var) {
  MPoly r;
  for (std::size_t k = 0; k < p.size(); ++k) {
    Monomial m(var + 1, 0);
    m[var] = static_cast<unsigned>(k);
    r.add_term(std::move(m), p[k]);
  }
  return r;
}

/// a / b when b divides a exactly.
inline std::optional<MPoly> exact_quotient(MPoly a, const MPoly& b) {
  MPoly q;
  while (!a.is_zero()) {
    const Monomial& lm = a.leading_monomial();
    if (!mono::divides(b.leading_monomial(), lm)) return std::nullopt;
    const Monomial m = mono::div(lm, b.leading_monomial());
    const Rat c = a.leading_coeff() / b.leading_coeff();
    q.add_term(m, c);
    a.add_scaled_product(-c, m, b);
  }
  return q;
}

/// g = lead * v^k + tail with k the degree of g in v.
inline std::pair<MPoly, MPoly> split_leading(const MPoly& g, std::size_t v) {
  const unsigned k = g.degree_in(v);
  Monomial vk(v + 1, 0);
  vk[v] = k;
  MPoly lead;
  MPoly tail;
  for (const auto& [m, c] : g.terms()) {
    if (mono::exponent(m, v) == k) {
      lead.add_term(mono::div(m, vk), c);
    } else {
      tail.add_term(m, c);
    }
  }
  return {lead, tail};
}

class TriangularSolver {
 public:
  TriangularSolver(std::size_t count, const GroebnerOptions& opts) : count_(count), opts_(opts) {}

  SolveOutcome run(const std::vector<MPoly>& gens) {
    std::vector<std::size_t> all(count_);
    for (std::size_t i = 0; i < count_; ++i) all[i] = i;
    const GroebnerBasis top = buchberger(gens, opts_);
    if (top.is_unit()) {
      out_.inconsistent = true;
      return out_;
    }
    branch(top.polys, all, {});
    dedupe();
    return out_;
  }

 private:
  using Assign = std::map<std::size_t, MPoly>;

  static bool within(const MPoly& g, std::size_t v, const std::set<std::size_t>& free) {
    for (std::size_t u : g.variables()) {
      if (u != v && free.count(u) == 0) return false;
    }
    return true;
  }

  void record_constrained(const std::vector<MPoly>& basis, const std::vector<std::size_t>& undetermined,
                          const Assign& assign) {
    out_.constrained.push_back({assign, undetermined, basis});
  }

  /// Fix v := value, then continue on the remaining unknowns.
  void assign_and_recurse(const std::vector<MPoly>& basis, std::vector<std::size_t> undetermined, Assign assign,
                          std::size_t v, const MPoly& value) {
    std::vector<MPoly> gens;
    for (const MPoly& g : basis) gens.push_back(g.substitute(v, value));
    for (auto& [u, expr] : assign) expr = expr.substitute(v, value);
    assign[v] = value;
    undetermined.erase(std::find(undetermined.begin(), undetermined.end(), v));
    const GroebnerBasis next = buchberger(gens, opts_);
    if (next.is_unit()) return;
    branch(next.polys, undetermined, assign);
  }

  void branch(const std::vector<MPoly>& basis, const std::vector<std::size_t>& undetermined, const Assign& assign) {
    std::set<std::size_t> free;
    for (auto it = undetermined.rbegin(); it != undetermined.rend(); ++it) {
      const std::size_t v = *it;
      std::vector<const MPoly*> local;
      for (const MPoly& g : basis) {
        if (g.involves(v) && within(g, v, free)) local.push_back(&g);
      }
      if (local.empty()) {
        free.insert(v);
        continue;
      }
      const MPoly* eliminant = nullptr;
      for (const MPoly* g : local) {
        if (g->variables().size() == 1 && (eliminant == nullptr || g->degree_in(v) < eliminant->degree_in(v))) {
          eliminant = g;
        }
      }
      if (eliminant != nullptr) {
        UPoly rest = as_univariate(*eliminant, v);
        for (const Rat& r : rational_roots(rest)) {
          const UPoly lin = upoly_linear(r);
          while (divmod(rest, lin).second.is_zero()) rest = exact_div(rest, lin);
          assign_and_recurse(basis, undetermined, assign, v, MPoly(r));
        }
        if (rest.degree() > 0) {
          std::vector<MPoly> gens = basis;
          gens.push_back(from_univariate(rest, v));
          const GroebnerBasis residue = buchberger(gens, opts_);
          if (!residue.is_unit()) record_constrained(residue.polys, undetermined, assign);
        }
        return;
      }
      std::sort(local.begin(), local.end(),
                [v](const MPoly* a, const MPoly* b) { return a->degree_in(v) < b->degree_in(v); });
      for (const MPoly* g : local) {
        if (g->degree_in(v) != 1) continue;
        auto [lead, tail] = split_leading(*g, v);
        if (!lead.is_constant()) continue;
        assign_and_recurse(basis, undetermined, assign, v, tail.scaled(Rat(-1 / lead.constant_term())));
        return;
      }
      // Leading coefficient in the free unknowns: split on whether it vanishes.
      for (const MPoly* g : local) {
        auto [lead, tail] = split_leading(*g, v);
        if (lead.is_constant()) continue;
        std::vector<MPoly> gens = basis;
        gens.push_back(lead);
        const GroebnerBasis vanishing = buchberger(gens, opts_);
        if (!vanishing.is_unit()) branch(vanishing.polys, undetermined, assign);
        if (g->degree_in(v) == 1) {
          if (auto q = exact_quotient(tail, lead)) {
            assign_and_recurse(basis, undetermined, assign, v, -*q);
            return;
          }
        }
        record_constrained(basis, undetermined, assign);
        return;
      }
      record_constrained(basis, undetermined, assign);
      return;
    }
    // every remaining unknown is free; the basis must be empty here
    if (!basis.empty()) {
      record_constrained(basis, undetermined, assign);
      return;
    }
    AlgebraicFamily fam;
    fam.assignments = assign;
    fam.free = undetermined;
    out_.families.push_back(std::move(fam));
  }

  void dedupe() {
    std::vector<AlgebraicFamily> fams;
    for (auto& f : out_.families) {
      const bool seen = std::any_of(fams.begin(), fams.end(), [&](const AlgebraicFamily& o) {
        return o.free == f.free && o.assignments == f.assignments;
      });
      if (!seen) fams.push_back(std::move(f));
    }
    out_.families = std::move(fams);
    std::vector<ConstrainedBranch> cons;
    for (auto& c : out_.constrained) {
      const bool seen = std::any_of(cons.begin(), cons.end(), [&](const ConstrainedBranch& o) {
        return o.undetermined == c.undetermined && o.assignments == c.assignments && o.constraints == c.constraints;
      });
      if (!seen) cons.push_back(std::move(c));
    }
    out_.constrained = std::move(cons);
  }

  std::size_t count_;
  GroebnerOptions opts_;
  SolveOutcome out_;
};

}  // namespace detail

/// Solve gens = 0 over Q with a lex basis whose variable order is `unknowns`
/// (first = largest). Unknowns are variable indices of the generators.
/// Eliminants are split over their rational roots; branches left with an
/// irrational eliminant or a nonlinear parametric relation are reported as
/// constrained rather than dropped.
inline SolveOutcome solve_system(const std::vector<MPoly>& gens, const std::vector<std::size_t>& unknowns,
                                 const GroebnerOptions& opts = {}) {
  std::size_t top = 0;
  for (std::size_t u : unknowns) top = std::max(top, u + 1);
  for (const MPoly& g : gens) {
    for (std::size_t u : g.variables()) top = std::max(top, u + 1);
  }
  // internal index k <-> unknowns[k]
  std::vector<std::size_t> to_internal(top, unknowns.size());
  for (std::size_t k = 0; k < unknowns.size(); ++k) to_internal[unknowns[k]] = k;
  for (const MPoly& g : gens) {
    for (std::size_t u : g.variables()) {
      if (to_internal[u] == unknowns.size()) throw UsageError("generator involves a variable outside the unknowns");
    }
  }
  std::vector<MPoly> internal;
  for (const MPoly& g : gens) {
    if (!g.is_zero()) internal.push_back(g.renamed(to_internal));
  }
  SolveOutcome res = detail::TriangularSolver(unknowns.size(), opts).run(internal);

  auto back = [&](const MPoly& p) { return p.renamed(unknowns); };
  auto back_assign = [&](const std::map<std::size_t, MPoly>& a) {
    std::map<std::size_t, MPoly> out;
    for (const auto& [k, v] : a) out.emplace(unknowns[k], back(v));
    return out;
  };
  auto back_list = [&](const std::vector<std::size_t>& ks) {
    std::vector<std::size_t> out;
    for (std::size_t k : ks) out.push_back(unknowns[k]);
    return out;
  };
  for (auto& fam : res.families) {
    fam.assignments = back_assign(fam.assignments);
    fam.free = back_list(fam.free);
  }
  for (auto& br : res.constrained) {
    br.assignments = back_assign(br.assignments);
    br.undetermined = back_list(br.undetermined);
    for (MPoly& c : br.constraints) c = back(c);
  }
  return res;
}

}  // namespace aode
