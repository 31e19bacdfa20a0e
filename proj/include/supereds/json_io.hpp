#pragma once

#include <json.hpp>

#include "supereds/forms.hpp"
#include "supereds/superpoly.hpp"

namespace supereds::io {

using json = nlohmann::ordered_json;

inline json to_json(const Context& ctx) {
  json gens = json::array();
  for (const auto& g : ctx->generators()) {
    json j;
    j["name"] = g.name;
    j["parity"] = to_string(g.parity);
    j["weight"] = g.weight ? json(*g.weight) : json(nullptr);
    if (g.role == Role::differential) j["role"] = "differential";
    if (g.role == Role::parameter) j["role"] = "parameter";
    if (g.partner) j["partner"] = *g.partner;
    gens.push_back(std::move(j));
  }
  return gens;
}

inline Context context_from_json(const json& gens, bool gaussian) {
  std::vector<Generator> out;
  for (const auto& j : gens) {
    Generator g;
    g.name = j.at("name").get<std::string>();
    std::string p = j.at("parity").get<std::string>();
    if (p != "even" && p != "odd") throw PreconditionError("generator parity must be 'even' or 'odd'");
    g.parity = p == "odd" ? Parity::odd : Parity::even;
    if (j.contains("weight") && !j["weight"].is_null()) g.weight = j["weight"].get<long>();
    if (j.contains("role")) {
      std::string r = j["role"].get<std::string>();
      if (r == "differential") g.role = Role::differential;
      else if (r == "parameter") g.role = Role::parameter;
      else if (r != "coordinate") throw PreconditionError("unknown generator role '" + r + "'");
    }
    if (j.contains("partner")) g.partner = j["partner"].get<std::size_t>();
    out.push_back(std::move(g));
  }
  return make_context(std::move(out), gaussian);
}

/// {"generators": [...], "gaussian": bool, "terms": [[exponents, "scalar"], ...]}
/// with terms in normal (monomial) order.
inline json to_json(const SuperPoly& p) {
  if (!p.context()) throw PreconditionError("cannot serialize a polynomial without context");
  json j;
  j["generators"] = to_json(p.context());
  j["gaussian"] = p.context()->gaussian();
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back(json::array({json(m), c.str()}));
  j["terms"] = std::move(terms);
  return j;
}

inline SuperPoly poly_from_json(const json& j, const Context& ctx) {
  SuperPoly p(ctx);
  Monomial prev;
  bool first = true;
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 2) throw PreconditionError("term must be [exponents, scalar]");
    Monomial m = t[0].get<Monomial>();
    if (m.size() != ctx->size()) throw PreconditionError("exponent vector length does not match generators");
    for (std::size_t k = 0; k < m.size(); ++k)
      if (ctx->is_odd(k) && m[k] > 1) throw PreconditionError("odd exponent greater than 1");
    if (!first && !(prev < m)) throw PreconditionError("terms must be listed in strictly increasing monomial order");
    Scalar c = Scalar::parse(t[1].get<std::string>());
    if (c.is_zero()) throw PreconditionError("zero coefficient stored");
    p.add_term(m, c);
    prev = std::move(m);
    first = false;
  }
  return p;
}

inline SuperPoly poly_from_json(const json& j) {
  bool gaussian = j.contains("gaussian") && j["gaussian"].get<bool>();
  return poly_from_json(j, context_from_json(j.at("generators"), gaussian));
}

/// Forms add a "degree" annotation: an integer or "mixed".
inline json form_to_json(const DifferentialForm& w) {
  json j = to_json(w);
  auto d = form_degree(w);
  j["degree"] = d ? json(*d) : json("mixed");
  return j;
}

inline DifferentialForm form_from_json(const json& j) {
  DifferentialForm w = poly_from_json(j);
  if (j.contains("degree")) {
    auto d = form_degree(w);
    const auto& jd = j["degree"];
    bool ok = jd.is_string() ? (jd.get<std::string>() == "mixed" && !d) : (d && *d == jd.get<std::size_t>());
    if (!ok) throw PreconditionError("degree annotation does not match the form");
  }
  return w;
}

}  // namespace supereds::io
