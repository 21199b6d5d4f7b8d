#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aode/corpus.hpp"

namespace aode::cli {

enum ExitCode : int { Ok = 0, Incomplete = 1, InputError = 2, CapError = 3 };

/// A y-free polynomial written in the equation language.
inline UPoly parse_upoly(const std::string& text) {
  const RawTerms raw = parse_equation(text);
  if (raw.empty()) return UPoly();
  if (raw.size() != 1 || !raw.begin()->first.is_zero()) throw UsageError("'" + text + "' must not involve y");
  const RFunc& f = raw.begin()->second;
  if (!f.is_polynomial()) throw UsageError("'" + text + "' is not a polynomial");
  return f.num();
}

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

inline std::string exponents_text(const std::set<ExpVec>& S) {
  std::string out;
  for (const ExpVec& I : S) out += (out.empty() ? "" : " ") + render(I);
  return out.empty() ? "(none)" : out;
}

inline void print_classification(std::ostream& out, const DiffPoly& F, const Classification& c) {
  out << "equation: " << render(F) << " = 0\n";
  out << "order: " << c.order << "\n";
  out << "total degree: " << c.total_degree << "\n";
  out << "noncritical: " << yes_no(c.noncritical) << "\n";
  out << "indicial polynomial at infinity: " << render(c.indicial_at_infinity) << "\n";
  out << "maximally comparable: " << yes_no(c.maximally_comparable) << "\n";
  if (c.greatest) {
    out << "greatest exponent: " << render(*c.greatest) << "\n";
    out << "highest coefficient: " << render(*c.highest_coefficient) << "\n";
    out << "completely maximally comparable: " << yes_no(c.completely.value_or(false)) << "\n";
    out << "pole candidates:";
    if (c.pole_candidates.empty()) out << " none";
    out << "\n";
    for (const PoleCandidate& p : c.pole_candidates) {
      out << "  " << render(p.factor) << ": indicial " << render(p.indicial) << ", order bound "
          << (p.order_bound ? std::to_string(*p.order_bound) : "unknown") << "\n";
    }
  }
  out << "D totally ordered: " << yes_no(c.d_totally_ordered) << "\n";
}

inline void print_report(std::ostream& out, const SolveReport& r) {
  out << "mode: " << r.mode << "\n";
  out << "bounds:";
  for (const PlaceBound& b : r.bounds) {
    out << " " << b.place << "=" << (b.bound ? std::to_string(*b.bound) : "unknown") << (b.from_cap ? "(cap)" : "");
  }
  out << "\n";
  out << "complete: " << yes_no(r.complete) << "\n";
  out << "families:";
  if (r.families.empty()) out << " none";
  out << "\n";
  for (const SolutionFamily& f : r.families) {
    out << "  " << render(f);
    const auto cons = render_constraints(f);
    if (!cons.empty()) {
      out << "  where";
      for (std::size_t i = 0; i < cons.size(); ++i) out << (i ? ", " : " ") << cons[i] << " = 0";
    }
    out << "\n";
  }
  for (const std::string& d : r.diagnostics) out << "diagnostic: " << d << "\n";
}

inline void print_place(std::ostream& out, const DiffPoly& F, const PlaceAnalysis& a) {
  const Supports s = supports(F);
  out << "equation: " << render(F) << " = 0\n";
  out << "E: " << exponents_text(s.E) << "\n";
  out << "D: " << exponents_text(s.D) << "\n";
  out << "d: " << s.d << "\n";
  out << "point: " << render(a.point) << "\n";
  out << "m: " << a.newton.m << "\n";
  out << "M: " << exponents_text(a.newton.M) << "\n";
  out << "indicial polynomial: " << render(a.indicial) << "\n";
  out << "b: " << (a.b ? a.b->get_str() : "none") << "\n";
  out << "order bound: " << (a.order_bound ? std::to_string(*a.order_bound) : "unknown") << "\n";
}

inline void print_stats(std::ostream& out, const CorpusStats& s) {
  out << "entries: " << s.entries << "\n";
  out << "classified: " << s.classified << "\n";
  auto line = [&](const char* name, std::size_t k) {
    std::ostringstream pct;
    pct.setf(std::ios::fixed);
    pct.precision(2);
    pct << percent(k, s.classified);
    out << name << ": " << k << " (" << pct.str() << "%)\n";
  };
  line("noncritical", s.noncritical);
  line("maximally comparable", s.maximally_comparable);
  line("completely maximally comparable", s.completely);
  for (const CorpusFailure& f : s.failures) out << "failure: line " << f.line << " [" << f.id << "] " << f.error << "\n";
  for (const LabelMismatch& m : s.mismatches) {
    auto show = [](const std::optional<bool>& v) { return v ? yes_no(*v) : std::string("null"); };
    out << "mismatch: " << m.id << " " << m.label << " expected " << show(m.expected) << ", got " << show(m.actual)
        << "\n";
  }
  if (s.mismatches.empty()) out << "all recorded labels match\n";
}

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Exact classification and rational solving of algebraic ODEs", "aode"};
  app.require_subcommand(1);

  std::string equation;
  bool json = false;

  auto* classify_cmd = app.add_subcommand("classify", "Noncritical / maximally comparable classification");
  classify_cmd->add_option("equation", equation, "Equation, or - to read it from stdin")->required();
  classify_cmd->add_flag("--json", json, "Emit JSON");

  std::string mode = "rational";
  std::optional<unsigned long> order_cap;
  EngineOptions eopts;
  auto* solve_cmd = app.add_subcommand("solve", "Polynomial or rational solutions");
  solve_cmd->add_option("equation", equation, "Equation, or - to read it from stdin")->required();
  solve_cmd->add_option("--mode", mode, "poly or rational")->check(CLI::IsMember({"poly", "rational"}));
  solve_cmd->add_flag("--json", json, "Emit JSON");
  solve_cmd->add_option("--order-cap", order_cap, "Order bound to use where none can be computed");
  solve_cmd->add_option("--max-unknowns", eopts.max_unknowns, "Cap on ansatz unknowns");
  solve_cmd->add_option("--max-bound", eopts.max_bound, "Cap on order and degree bounds");

  std::string point_text;
  std::string factor_text;
  bool at_infinity = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Supports, Newton data, indicial polynomial and bounds at a place");
  analyze_cmd->add_option("equation", equation, "Equation, or - to read it from stdin")->required();
  auto* point_opt = analyze_cmd->add_option("--point", point_text, "Rational point x0");
  auto* factor_opt = analyze_cmd->add_option("--factor", factor_text, "Irreducible polynomial p(x)");
  auto* inf_opt = analyze_cmd->add_flag("--infinity", at_infinity, "Analyze at infinity");
  point_opt->excludes(factor_opt)->excludes(inf_opt);
  factor_opt->excludes(inf_opt);
  analyze_cmd->add_flag("--json", json, "Emit JSON");

  std::string corpus_path;
  unsigned jobs = 1;
  auto* stats_cmd = app.add_subcommand("stats", "Aggregate classification over a corpus file");
  stats_cmd->add_option("--corpus", corpus_path, "Corpus file")->required();
  stats_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1U, 1024U));
  stats_cmd->add_flag("--json", json, "Emit JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : InputError;
  }

  try {
    if (equation == "-") {
      std::ostringstream buf;
      buf << in.rdbuf();
      equation = buf.str();
    }
    if (*classify_cmd) {
      const DiffPoly F = parse_diffpoly(equation);
      const Classification c = classify(F);
      if (json) {
        out << to_json(c).dump(2) << "\n";
      } else {
        print_classification(out, F, c);
      }
      return Ok;
    }
    if (*solve_cmd) {
      const DiffPoly F = parse_diffpoly(equation);
      eopts.order_cap = order_cap;
      const SolveReport r = mode == "poly" ? polynomial_solutions(F, eopts) : rational_solutions(F, eopts);
      if (json) {
        out << to_json(r).dump(2) << "\n";
      } else {
        print_report(out, r);
      }
      return r.complete ? Ok : Incomplete;
    }
    if (*analyze_cmd) {
      const DiffPoly F = parse_diffpoly(equation);
      Point pt = Point::infinity();
      if (!point_text.empty()) {
        const UPoly v = parse_upoly(point_text);
        if (v.degree() > 0) throw UsageError("--point expects a rational number");
        pt = Point::finite(v.coeff(0));
      } else if (!factor_text.empty()) {
        const UPoly p = parse_upoly(factor_text);
        if (p.degree() < 1 || !is_irreducible(p)) throw UsageError("--factor expects an irreducible polynomial in x");
        pt = Point::factor(p);
      } else if (!at_infinity) {
        throw UsageError("analyze needs one of --point, --factor, --infinity");
      }
      const PlaceAnalysis a = analyze_place(F, pt);
      if (json) {
        out << to_json(F, a).dump(2) << "\n";
      } else {
        print_place(out, F, a);
      }
      return Ok;
    }
    if (*stats_cmd) {
      std::ifstream file(corpus_path);
      if (!file) throw UsageError("cannot open corpus file '" + corpus_path + "'");
      const CorpusStats s = corpus_stats(read_corpus(file), jobs);
      if (json) {
        out << to_json(s).dump(2) << "\n";
      } else {
        print_stats(out, s);
      }
      return Ok;
    }
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << "\n";
    return CapError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  }
  return InputError;
}

}  // namespace aode::cli
