#pragma once

// JSON views of the library's result types (nlohmann/json).

#include <string>
#include <vector>

#include <json.hpp>

#include "nbx/biclique.hpp"
#include "nbx/bounds.hpp"
#include "nbx/constructions.hpp"
#include "nbx/families.hpp"
#include "nbx/search.hpp"

namespace nbx {

using Json = nlohmann::ordered_json;

// Integers that fit are emitted as JSON numbers, larger ones as strings.
inline Json to_json(const Integer& v) {
  if (v >= 0 && v <= Integer(std::numeric_limits<std::int64_t>::max()))
    return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

inline Json to_json(const NeighborlinessReport& r) {
  Json j;
  j["valid"] = r.is_valid;
  j["min_distance"] = r.min_distance ? Json(*r.min_distance) : Json(nullptr);
  j["max_distance"] = r.max_distance ? Json(*r.max_distance) : Json(nullptr);
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back({x.first, x.second, x.distance});
  j["violations"] = std::move(v);
  return j;
}

inline Json to_json(const FragmentPlan& p) {
  return Json{{"k", p.k}, {"d", p.d}, {"m", p.m}, {"a", p.a}};
}

// {value, m, a} for a single plan, {value, parts:[...]} for a product.
inline Json to_json(const MValueResult& r) {
  Json j;
  j["value"] = to_json(r.value);
  if (r.parts.size() == 1) {
    j["m"] = r.parts.front().m;
    j["a"] = r.parts.front().a;
  } else {
    Json parts = Json::array();
    for (const auto& p : r.parts) parts.push_back(to_json(p));
    j["parts"] = std::move(parts);
  }
  return j;
}

inline Json to_json(const MethodValue& m) {
  return Json{{"value", to_json(m.value)}, {"method", m.method}};
}

inline Json to_json(const BoundsEntry& e) {
  return Json{{"k", e.k},
              {"d", e.d},
              {"lower", to_json(e.lower)},
              {"upper", to_json(e.upper)},
              {"exact", e.exact}};
}

inline Json to_json(const std::vector<BoundsEntry>& table) {
  Json j = Json::array();
  for (const auto& e : table) j.push_back(to_json(e));
  return j;
}

inline Json to_json(const PascalFinding& f) {
  return Json{{"k", f.k},
              {"d", f.d},
              {"lower", to_json(f.lhs)},
              {"rhs", to_json(f.rhs)},
              {"slack", f.violation ? Json(nullptr) : to_json(f.slack)},
              {"violation", f.violation}};
}

inline Json to_json(const SearchResult& r) {
  Json w = Json::array();
  for (const auto& x : r.witness) w.push_back(x.str());
  return Json{{"k", r.k},
              {"d", r.d},
              {"optimum", r.optimum},
              {"proven_optimal", r.proven_optimal},
              {"witness", std::move(w)},
              {"stats",
               {{"nodes", r.stats.nodes},
                {"elapsed_secs", r.stats.elapsed_secs},
                {"candidates", r.stats.candidates},
                {"threads", r.stats.threads},
                {"budget_exhausted", r.stats.budget_exhausted},
                {"bound_cutoff", r.stats.bound_cutoff}}}};
}

inline Json to_json(const BicliqueCover& c) {
  Json bs = Json::array();
  for (const auto& b : c.bicliques) bs.push_back(Json{{"L", b.left}, {"R", b.right}});
  return Json{{"n", c.n}, {"bicliques", std::move(bs)}};
}

inline BicliqueCover cover_from_json(const Json& j) {
  BicliqueCover c;
  c.n = j.at("n").get<std::size_t>();
  for (const auto& b : j.at("bicliques"))
    c.bicliques.push_back(
        {b.at("L").get<std::vector<std::size_t>>(), b.at("R").get<std::vector<std::size_t>>()});
  validate(c);
  return c;
}

inline Json to_json(const CoverReport& r) {
  Json h = Json::object();
  for (const auto& [m, count] : r.histogram) h[std::to_string(m)] = count;
  Json bad = Json::array();
  for (const auto& [u, v] : r.bad_edges) bad.push_back({u, v});
  return Json{{"valid", r.valid}, {"histogram", std::move(h)}, {"bad_edges", std::move(bad)}};
}

}  // namespace nbx
