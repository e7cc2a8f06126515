#pragma once

#include <json.hpp>

#include "cyclicbar.hpp"
#include "kgroups.hpp"
#include "witt.hpp"

namespace wittkit {

using Json = nlohmann::ordered_json;

// Numbers beyond 2^53 are emitted as decimal strings so that JSON consumers
// with double-backed numbers stay exact.
inline Json json_int(const Int& x) {
  static const Int kSafe = Int(1) << 53;
  if (x <= kSafe && x >= -kSafe) return Json(x.convert_to<long long>());
  return Json(x.str());
}

inline Int int_from_json(const Json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  return Int(j.get<long long>());
}

// {"p":2,"S":[1,2,3,4],"coords":{"1":1,"2":0,...}}
inline Json json_of(const WittVectorFp& x) {
  Json coords = Json::object();
  for (const auto& [s, a] : x.coords()) coords[std::to_string(s)] = a;
  return Json{{"p", x.prime().value()}, {"S", x.set().members()}, {"coords", coords}};
}

inline WittVectorFp witt_fp_from_json(const Json& j) {
  Prime p(j.at("p").get<long long>());
  TruncationSet S(j.at("S").get<std::vector<long long>>());
  std::map<long long, int> coords;
  for (const auto& [key, val] : j.at("coords").items())
    coords[std::stoll(key)] = val.get<int>();
  return WittVectorFp(p, S, std::move(coords));
}

// {"p":2,"components":[{"j":1,"u":3,"value":5},...]}
inline Json json_of(const PTypicalDecomp& d) {
  Json comps = Json::array();
  for (const auto& [j, c] : d.components())
    comps.push_back(Json{{"j", j}, {"u", c.first}, {"value", json_int(c.second)}});
  return Json{{"p", d.prime().value()}, {"components", comps}};
}

inline PTypicalDecomp decomp_from_json(const Json& j) {
  Prime p(j.at("p").get<long long>());
  std::map<long long, std::pair<int, Int>> comps;
  std::vector<long long> members;
  for (const auto& c : j.at("components")) {
    long long idx = c.at("j").get<long long>();
    int u = c.at("u").get<int>();
    comps[idx] = {u, int_from_json(c.at("value"))};
    Int t = idx;
    for (int k = 0; k < u; ++k) {
      members.push_back(t.convert_to<long long>());
      t *= p.value();
    }
  }
  return PTypicalDecomp(p, TruncationSet(std::move(members)), std::move(comps));
}

// {"p":2,"orders":{"1":2,"3":1}} with zero entries omitted
inline Json json_of(const Divisor& d) {
  Json orders = Json::object();
  for (const auto& [j, o] : d.orders()) orders[std::to_string(j)] = o;
  return Json{{"p", d.prime().value()}, {"orders", orders}};
}

inline Divisor divisor_from_json(const Json& j) {
  Prime p(j.at("p").get<long long>());
  std::map<long long, long long> orders;
  for (const auto& [key, val] : j.at("orders").items())
    orders[std::stoll(key)] = val.get<long long>();
  return Divisor(p, std::move(orders));
}

inline Json json_of(const FinAbPGroup& g) {
  return Json{{"exponents", g.exponents}};
}

inline Json json_of(const TransferMap& t) {
  Json factors = Json::array();
  for (const auto& f : t.factors)
    factors.push_back(
        Json{{"j", f.j}, {"a", f.source_exp}, {"b", f.target_exp}, {"w", f.twist}});
  return Json{{"factors", factors}};
}

// nonzero degrees only: [{"deg":1,"rank":0,"torsion":[2]},...]
inline Json json_of(const Homology& h) {
  Json out = Json::array();
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (h[k].trivial()) continue;
    Json torsion = Json::array();
    for (const Int& t : h[k].torsion) torsion.push_back(json_int(t));
    out.push_back(Json{{"deg", k}, {"rank", h[k].rank}, {"torsion", torsion}});
  }
  return out;
}

}  // namespace wittkit
