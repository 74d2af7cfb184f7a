#pragma once

#include "haarframe/haarframe.hpp"

#include <json.hpp>

#include <string>

namespace haarframe::io {

using nlohmann::json;

inline json rational_json(const Rational& x) { return to_string(x); }

inline json union_json(const IntervalUnion& A) {
  json arr = json::array();
  for (const auto& p : A.parts()) arr.push_back({to_string(p.lo), to_string(p.hi)});
  return arr;
}

inline json params_json(const MapParams& p) {
  return {{"alpha", to_string(p.alpha)}, {"x1", to_string(p.x1)}, {"x2", to_string(p.x2)}};
}

inline json structure_json(const StructureType& t) {
  using Kind = StructureType::Kind;
  json j{{"kind", to_string(t.kind)}};
  switch (t.kind) {
    case Kind::SubsetU:
    case Kind::SubsetV: j["q"] = to_long(t.q); break;
    case Kind::TypeI: j["N"] = t.N; break;
    case Kind::TypeII:
    case Kind::TypeIII:
      j["delta"] = to_string(t.delta);
      j["N"] = t.N;
      j["M"] = t.M;
      break;
    case Kind::Empty: break;
  }
  return j;
}

inline json witness_json(const WitnessSequence& w) {
  json ones = json::array();
  for (long r : w.ones) ones.push_back(r);
  return {{"t0", to_string(w.t0)}, {"period", w.period_K}, {"ones", ones}};
}

inline json symmetric_json(const SymmetricSetResult& e) {
  json j{{"E", union_json(e.E)}, {"case", to_string(e.kind)}};
  if (e.M > 0) {
    j["M"] = e.M;
    j["y_alpha"] = to_string(Rational(e.N_frac, e.M));
  }
  j["Delta"] = to_string(e.Delta);
  if (e.kind == SymmetricSetResult::Case::III) j["delta"] = to_string(e.delta);
  return j;
}

inline json decision_json(const Decision& d) {
  json ev = json::object();
  if (!d.tag.empty()) ev["special_case"] = d.tag;
  if (d.params) ev["map"] = params_json(*d.params);
  if (d.symmetric) ev["symmetric_set"] = symmetric_json(*d.symmetric);
  if (d.witness) {
    ev["witness"] = witness_json(*d.witness);
    ev["witness"]["status"] = "verified";
  }
  if (d.violation) ev["violation"] = {{"n", d.violation->n}, {"family", d.violation->family}};
  return {{"verdict", to_string(d.verdict)}, {"route", to_string(d.route)}, {"evidence", ev}};
}

// Compact single-field summary used in CSV rows (no commas).
inline std::string evidence_text(const Decision& d) {
  std::string s;
  auto add = [&](const std::string& item) { s += (s.empty() ? "" : ";") + item; };
  if (!d.tag.empty()) add("case=" + d.tag);
  if (d.symmetric) add("E-case=" + to_string(d.symmetric->kind));
  if (d.violation)
    add("n=" + std::to_string(d.violation->n) + ";family=" + std::to_string(d.violation->family));
  return s;
}

}  // namespace haarframe::io
