#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aode/analysis.hpp"
#include "aode/param_rfunc.hpp"
#include "aode/system.hpp"

namespace aode {

struct EngineOptions {
  std::size_t max_unknowns = 64;
  unsigned long max_bound = 50;
  /// Used in place of a missing bound (zero indicial polynomial or critical
  /// equation). Results are then only complete up to the cap.
  std::optional<unsigned long> order_cap;
  GroebnerOptions groebner;
  FactorOptions factor;
};

struct AnsatzPole {
  UPoly factor;
  unsigned long order = 0;
};

/// sum_i sum_{j<=r_i} a_ij(x)/p_i^j + sum_{k<=N} c_k x^k with fresh unknowns.
///
/// Unknowns are numbered pole blocks first (factor order, j ascending,
/// coefficient of x^k ascending), then c_0..c_N.
struct Ansatz {
  std::vector<AnsatzPole> poles;
  std::optional<unsigned long> degree;  // absent: no polynomial part
  std::size_t unknowns = 0;
  std::vector<std::string> names;
  ParamRFunc z;
};

inline Ansatz make_ansatz(std::vector<AnsatzPole> poles, std::optional<unsigned long> degree) {
  Ansatz a;
  a.poles = std::move(poles);
  a.degree = degree;
  std::size_t next = 0;
  for (std::size_t i = 0; i < a.poles.size(); ++i) {
    const AnsatzPole& pole = a.poles[i];
    for (unsigned long j = 1; j <= pole.order; ++j) {
      std::vector<MPoly> coeffs;
      for (int k = 0; k < pole.factor.degree(); ++k) {
        coeffs.push_back(MPoly::variable(next++));
        a.names.push_back("a" + std::to_string(i + 1) + "_" + std::to_string(j) + "_" + std::to_string(k));
      }
      a.z += ParamRFunc(XPoly(std::move(coeffs)), FactoredDen{{pole.factor, static_cast<unsigned>(j)}});
    }
  }
  if (degree) {
    std::vector<MPoly> coeffs;
    for (unsigned long k = 0; k <= *degree; ++k) {
      coeffs.push_back(MPoly::variable(next++));
      a.names.push_back("c" + std::to_string(k));
    }
    a.z += ParamRFunc(XPoly(std::move(coeffs)));
  }
  a.unknowns = next;
  return a;
}

/// x-coefficients of the numerator of F(z).
inline std::vector<MPoly> extract_system(const DiffPoly& F, const ParamRFunc& z) {
  const ParamRFunc value = evaluate(F, z);
  std::vector<MPoly> gens;
  std::set<std::vector<std::pair<Monomial, std::string>>> seen;
  for (const MPoly& c : value.num().coeffs()) {
    if (c.is_zero()) continue;
    const MPoly m = c.monic();
    std::vector<std::pair<Monomial, std::string>> key;
    for (const auto& [mono, coeff] : m.terms()) key.emplace_back(mono, coeff.get_str());
    if (seen.insert(key).second) gens.push_back(m);
  }
  return gens;
}

inline std::vector<MPoly> extract_system(const DiffPoly& F, const Ansatz& a) { return extract_system(F, a.z); }

struct SolutionFamily {
  ParamRFunc expr;                  // parameters numbered 0..k-1
  std::vector<std::string> params;  // t1, t2, ...
  std::vector<MPoly> constraints;   // empty for explicit families
  bool verified = false;
};

/// True iff F(expr) vanishes modulo the constraint ideal.
inline bool verify(const DiffPoly& F, const ParamRFunc& expr, const std::vector<MPoly>& constraints,
                   const GroebnerOptions& gopts = {}) {
  const ParamRFunc value = evaluate(F, expr);
  if (constraints.empty()) return value.is_zero();
  const GroebnerBasis gb = buchberger(constraints, gopts);
  for (const MPoly& c : value.num().coeffs()) {
    if (!normal_form(c, gb).is_zero()) return false;
  }
  return true;
}

inline bool verify(const DiffPoly& F, const SolutionFamily& fam, const GroebnerOptions& gopts = {}) {
  return verify(F, fam.expr, fam.constraints, gopts);
}

namespace detail {

inline void note_vars(const MPoly& p, std::vector<std::size_t>& order, std::set<std::size_t>& seen) {
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] != 0 && seen.insert(v).second) order.push_back(v);
    }
  }
}

inline void note_vars(const XPoly& p, std::vector<std::size_t>& order, std::set<std::size_t>& seen) {
  for (std::size_t k = p.size(); k-- > 0;) note_vars(p[k], order, seen);
}

/// Rename parameters to 0..k-1 in the order they appear when rendered.
inline SolutionFamily canonical_family(const ParamRFunc& expr, const std::vector<MPoly>& constraints) {
  std::vector<std::size_t> order;
  std::set<std::size_t> seen;
  const PartialFractions pf = partial_fractions(expr);
  for (const PoleBlock& b : pf.blocks) note_vars(b.num, order, seen);
  note_vars(pf.poly, order, seen);
  for (const MPoly& c : constraints) note_vars(c, order, seen);

  std::size_t top = 0;
  for (std::size_t v : order) top = std::max(top, v + 1);
  std::vector<std::size_t> map(top, 0);
  for (std::size_t i = 0; i < order.size(); ++i) map[order[i]] = i;

  auto rename = [&](const XPoly& p) {
    std::vector<MPoly> c;
    for (const MPoly& a : p.coeffs()) c.push_back(a.renamed(map));
    return XPoly(std::move(c));
  };
  const ParamRFunc r = expr.reduced();
  SolutionFamily fam;
  fam.expr = ParamRFunc(rename(r.num()), r.den());
  for (const MPoly& c : constraints) fam.constraints.push_back(c.renamed(map));
  for (std::size_t i = 0; i < order.size(); ++i) fam.params.push_back("t" + std::to_string(i + 1));
  return fam;
}

}  // namespace detail

/// Solve the ansatz system and turn each branch into a verified family.
///
/// Throws std::logic_error when a family fails verification: that is a bug,
/// never an output.
inline std::vector<SolutionFamily> solve_ansatz(const DiffPoly& F, const Ansatz& a, const EngineOptions& opts = {}) {
  if (a.unknowns > opts.max_unknowns) {
    throw CapExceededError("ansatz needs " + std::to_string(a.unknowns) + " unknowns, cap is " +
                           std::to_string(opts.max_unknowns));
  }
  std::vector<std::size_t> unknowns(a.unknowns);
  for (std::size_t i = 0; i < a.unknowns; ++i) unknowns[i] = i;
  const SolveOutcome out = solve_system(extract_system(F, a), unknowns, opts.groebner);

  std::vector<SolutionFamily> fams;
  auto finish = [&](const std::map<std::size_t, MPoly>& assignments, const std::vector<MPoly>& constraints) {
    ParamRFunc expr = a.z;
    for (const auto& [v, value] : assignments) expr = expr.substituted(v, value);
    SolutionFamily fam = detail::canonical_family(expr, constraints);
    fam.verified = verify(F, fam, opts.groebner);
    if (!fam.verified) throw std::logic_error("solution family failed verification");
    fams.push_back(std::move(fam));
  };
  for (const AlgebraicFamily& f : out.families) finish(f.assignments, {});
  for (const ConstrainedBranch& b : out.constrained) finish(b.assignments, b.constraints);
  return fams;
}

/// max(largest positive integer root of the indicial polynomial at infinity, floor(b_inf), 0).
inline unsigned long poly_degree_bound(const DiffPoly& F) {
  if (indicial_polynomial(F, Point::infinity()).is_zero()) {
    throw CriticalEquationError();
  }
  return laurent_order_bound(F, Point::infinity());
}

struct PlaceBound {
  std::string place;  // "infinity" or the factor
  std::optional<unsigned long> bound;
  bool from_cap = false;
};

struct SolveReport {
  Classification classification;
  std::string mode;
  std::vector<PlaceBound> bounds;
  std::vector<SolutionFamily> families;
  std::vector<std::string> diagnostics;
  bool complete = false;
};

namespace detail {

inline void check_bound(unsigned long b, const EngineOptions& opts) {
  if (b > opts.max_bound) {
    throw CapExceededError("order bound " + std::to_string(b) + " exceeds cap " + std::to_string(opts.max_bound));
  }
}

/// Bound at infinity, falling back to the user cap for critical equations.
inline std::optional<unsigned long> infinity_bound(const DiffPoly& F, SolveReport& rep, const EngineOptions& opts) {
  PlaceBound pb{"infinity", std::nullopt, false};
  if (rep.classification.noncritical) {
    pb.bound = poly_degree_bound(F);
  } else {
    rep.diagnostics.push_back("Critical");
    rep.complete = false;
    if (opts.order_cap) {
      pb.bound = *opts.order_cap;
      pb.from_cap = true;
    }
  }
  if (pb.bound) check_bound(*pb.bound, opts);
  rep.bounds.push_back(pb);
  return pb.bound;
}

}  // namespace detail

inline SolveReport polynomial_solutions(const DiffPoly& F, const EngineOptions& opts = {}) {
  SolveReport rep;
  rep.mode = "poly";
  rep.classification = classify(F, opts.factor);
  rep.complete = true;
  const auto N = detail::infinity_bound(F, rep, opts);
  if (!N) return rep;
  rep.families = solve_ansatz(F, make_ansatz({}, *N), opts);
  return rep;
}

inline SolveReport rational_solutions(const DiffPoly& F, const EngineOptions& opts = {}) {
  SolveReport rep;
  rep.mode = "rational";
  rep.classification = classify(F, opts.factor);
  rep.complete = true;
  if (!rep.classification.maximally_comparable) {
    rep.diagnostics.push_back("NotMaximallyComparable");
    rep.complete = false;
    return rep;
  }
  bool missing = false;
  std::vector<AnsatzPole> poles;
  for (const PoleCandidate& c : rep.classification.pole_candidates) {
    PlaceBound pb{render(c.factor), c.order_bound, false};
    if (!c.order_bound) {
      rep.diagnostics.push_back("ZeroIndicialAtFactor(" + render(c.factor) + ")");
      rep.complete = false;
      if (opts.order_cap) {
        pb.bound = *opts.order_cap;
        pb.from_cap = true;
      } else {
        missing = true;
      }
    }
    if (pb.bound) {
      detail::check_bound(*pb.bound, opts);
      if (*pb.bound > 0) poles.push_back({c.factor, *pb.bound});
    }
    rep.bounds.push_back(pb);
  }
  const auto N = detail::infinity_bound(F, rep, opts);
  if (missing || !N) return rep;
  rep.families = solve_ansatz(F, make_ansatz(std::move(poles), *N), opts);
  return rep;
}

}  // namespace aode
