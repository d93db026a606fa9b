#pragma once

// JSON forms of field configurations, polynomials, and solution reports.
// Shared by the command-line tool and the round-trip tests so that every
// emitted report can be re-checked from its own serialized form.

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kxm/fields.hpp"
#include "kxm/polynomial.hpp"

namespace kxm {

using Json = nlohmann::json;

inline Json field_to_json(const FieldConfig& c) {
  switch (c.kind) {
    case FieldConfig::Kind::rationals:
      return Json{{"kind", "q"}};
    case FieldConfig::Kind::prime:
      return Json{{"kind", "fp"}, {"p", c.p}};
    default:
      return Json{{"kind", "generic"}, {"seed", c.seed}, {"evals", c.evals}, {"p", c.p}};
  }
}

inline FieldConfig field_from_json(const Json& j) {
  FieldConfig c;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "q") {
    c.kind = FieldConfig::Kind::rationals;
  } else if (kind == "fp") {
    c.kind = FieldConfig::Kind::prime;
    c.p = j.at("p").get<std::uint64_t>();
    if (!is_prime_u64(c.p)) throw std::invalid_argument("field json: p is not prime");
  } else if (kind == "generic") {
    c.kind = FieldConfig::Kind::generic;
    c.seed = j.at("seed").get<std::uint64_t>();
    c.evals = j.value("evals", 3u);
    c.p = j.value("p", (1ULL << 61) - 1);
    if (c.evals < 1 || c.evals > 8) throw std::invalid_argument("field json: evals must be 1..8");
  } else {
    throw std::invalid_argument("field json: kind must be q, fp, or generic");
  }
  return c;
}

// Coefficients serialize as the field's literal text, except for the
// evaluation field, whose elements are vectors of residues with no literal
// form; those go out as arrays and come back in bit-exactly.
template <class F>
Json coef_to_json(const F& f, const typename F::Elem& c) {
  return f.to_string(c);
}

inline Json coef_to_json(const EvalField& f, const EvalField::Elem& c) {
  Json a = Json::array();
  for (unsigned i = 0; i < f.evals(); ++i) a.push_back(c.v[i]);
  return a;
}

template <class F>
typename F::Elem coef_from_json(const F& f, const Json& j) {
  return f.parse(j.get<std::string>());
}

inline EvalField::Elem coef_from_json(const EvalField& f, const Json& j) {
  if (j.is_string()) return f.parse(j.get<std::string>());
  if (!j.is_array() || j.size() != f.evals())
    throw std::invalid_argument("coefficient json: expected " + std::to_string(f.evals()) +
                                " evaluation components");
  EvalField::Elem e{};
  for (unsigned i = 0; i < f.evals(); ++i) {
    e.v[i] = j[i].get<std::uint64_t>();
    if (e.v[i] >= f.modulus()) throw std::invalid_argument("coefficient json: component out of range");
  }
  return e;
}

// {"field": {...}, "terms": [{"coef": "3/4", "mono": [0,0,1]}, ...]}
// with monomials as weakly increasing index arrays (normal form).
template <class F>
Json poly_to_json(const Polynomial<F>& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms())
    terms.push_back(Json{{"coef", coef_to_json(p.field(), c)}, {"mono", m.indices()}});
  return Json{{"field", field_to_json(p.field().config())}, {"terms", std::move(terms)}};
}

template <class F>
Polynomial<F> poly_from_json(const F& f, const Json& j) {
  if (j.contains("field") && !(field_from_json(j.at("field")) == f.config()))
    throw std::invalid_argument("polynomial json: field disagrees with the enclosing report");
  std::vector<typename Polynomial<F>::Term> ts;
  for (const Json& t : j.at("terms"))
    ts.emplace_back(Monomial::from_sorted(t.at("mono").get<std::vector<Index>>()),
                    coef_from_json(f, t.at("coef")));
  return Polynomial<F>::from_terms(f, std::move(ts));
}

// --- solution reports --------------------------------------------------------
//
// kind "pair":   a u = b v with (u, v) nonzero
// kind "system": sum_j eqs[i][j] solution[j] = 0 for every i, solution nonzero
// kind "chain":  divisors[i] * quotients[i] = product for every i, product nonzero

namespace detail {

template <class F>
bool verify_report_in(const F& f, const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "pair") {
    if (!j.contains("u") || !j.contains("v"))
      throw std::invalid_argument("report json: no solution recorded, nothing to verify");
    auto a = poly_from_json(f, j.at("a"));
    auto b = poly_from_json(f, j.at("b"));
    auto u = poly_from_json(f, j.at("u"));
    auto v = poly_from_json(f, j.at("v"));
    return !(u.is_zero() && v.is_zero()) && a * u == b * v;
  }
  if (kind == "system") {
    if (!j.contains("solution"))
      throw std::invalid_argument("report json: no solution recorded, nothing to verify");
    std::vector<Polynomial<F>> sol;
    for (const Json& s : j.at("solution")) sol.push_back(poly_from_json(f, s));
    bool nonzero = false;
    for (const auto& s : sol) nonzero = nonzero || !s.is_zero();
    if (!nonzero) return false;
    for (const Json& eq : j.at("eqs")) {
      if (eq.size() != sol.size()) return false;
      Polynomial<F> r = Polynomial<F>::zero(f);
      for (std::size_t t = 0; t < sol.size(); ++t) r = r + poly_from_json(f, eq[t]) * sol[t];
      if (!r.is_zero()) return false;
    }
    return true;
  }
  if (kind == "chain") {
    auto prod = poly_from_json(f, j.at("product"));
    if (prod.is_zero()) return false;
    const Json& ds = j.at("divisors");
    const Json& qs = j.at("quotients");
    if (ds.size() != qs.size() || ds.empty()) return false;
    for (std::size_t t = 0; t < ds.size(); ++t)
      if (!(poly_from_json(f, ds[t]) * poly_from_json(f, qs[t]) == prod)) return false;
    return true;
  }
  throw std::invalid_argument("report json: kind must be pair, system, or chain");
}

}  // namespace detail

// Re-checks a serialized solution report from scratch: reconstructs the field,
// re-parses every polynomial, and re-multiplies.  True means the identity the
// report claims really holds.
inline bool verify_report(const Json& j) {
  FieldConfig c = field_from_json(j.at("field"));
  return with_field(c, [&](const auto& f) { return detail::verify_report_in(f, j); });
}

}  // namespace kxm
