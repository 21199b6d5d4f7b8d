#pragma once

#include <json.hpp>

#include "aode/render.hpp"

namespace aode {

using Json = nlohmann::ordered_json;

inline Json exponent_json(const ExpVec& I) {
  Json a = Json::array();
  for (unsigned e : I.entries()) a.push_back(e);
  return a;
}

inline Json to_json(const Classification& c) {
  Json j;
  j["order"] = c.order;
  j["total_degree"] = c.total_degree;
  j["noncritical"] = c.noncritical;
  j["indicial_infinity"] = render(c.indicial_at_infinity);
  j["maximally_comparable"] = c.maximally_comparable;
  j["greatest_exponent"] = c.greatest ? exponent_json(*c.greatest) : Json(nullptr);
  j["highest_coefficient"] = c.highest_coefficient ? Json(render(*c.highest_coefficient)) : Json(nullptr);
  j["completely"] = c.completely ? Json(*c.completely) : Json(nullptr);
  Json poles = Json::array();
  for (const PoleCandidate& p : c.pole_candidates) {
    Json e;
    e["factor"] = render(p.factor);
    e["order_bound"] = p.order_bound ? Json(*p.order_bound) : Json(nullptr);
    poles.push_back(e);
  }
  j["pole_candidates"] = poles;
  j["d_totally_ordered"] = c.d_totally_ordered;
  return j;
}

inline Json to_json(const SolutionFamily& f) {
  Json j;
  j["expr"] = render(f);
  j["parameters"] = f.params;
  j["constraints"] = render_constraints(f);
  j["verified"] = f.verified;
  return j;
}

inline Json to_json(const SolveReport& r) {
  Json j;
  j["complete"] = r.complete;
  Json fams = Json::array();
  for (const SolutionFamily& f : r.families) fams.push_back(to_json(f));
  j["families"] = fams;
  j["diagnostics"] = r.diagnostics;
  return j;
}

/// Local data at one place, as printed by the analyze command.
struct PlaceAnalysis {
  Point point = Point::infinity();
  NewtonData newton;
  IndicialPoly indicial;
  std::optional<Rat> b;
  std::optional<unsigned long> order_bound;
};

inline PlaceAnalysis analyze_place(const DiffPoly& F, const Point& pt) {
  PlaceAnalysis a;
  a.point = pt;
  a.newton = newton_data(F, pt);
  a.indicial = indicial_polynomial(F, pt);
  a.b = b_bound(F, pt);
  if (!a.indicial.is_zero()) a.order_bound = laurent_order_bound(F, pt);
  return a;
}

inline Json to_json(const DiffPoly& F, const PlaceAnalysis& a) {
  const Supports s = supports(F);
  Json j;
  j["equation"] = render(F);
  Json E = Json::array();
  for (const ExpVec& I : s.E) E.push_back(exponent_json(I));
  Json D = Json::array();
  for (const ExpVec& I : s.D) D.push_back(exponent_json(I));
  j["E"] = E;
  j["D"] = D;
  j["d"] = s.d;
  j["point"] = render(a.point);
  j["m"] = a.newton.m;
  Json M = Json::array();
  for (const ExpVec& I : a.newton.M) M.push_back(exponent_json(I));
  j["M"] = M;
  j["indicial"] = render(a.indicial);
  j["b"] = a.b ? Json(a.b->get_str()) : Json(nullptr);
  j["order_bound"] = a.order_bound ? Json(*a.order_bound) : Json(nullptr);
  return j;
}

}  // namespace aode
