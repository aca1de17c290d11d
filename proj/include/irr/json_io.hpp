#pragma once

// JSON shapes for kernels, recurrences, exact values and reports. Integers
// and rationals are decimal strings; polynomials are arrays of coefficient
// strings indexed by degree.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "irr/beukers.hpp"
#include "irr/diophantine.hpp"
#include "irr/errors.hpp"
#include "irr/exactmath.hpp"
#include "irr/recurrence.hpp"
#include "irr/telescope.hpp"
#include "irr/value.hpp"

namespace irr {

using Json = nlohmann::json;

/// Digits used for BigFloat fields in reports.
inline constexpr int kReportDigits = 20;

inline Json to_json(const Rational& q) { return q.get_str(); }
inline Json to_json(const Integer& z) { return z.get_str(); }
inline Json to_json(const BigFloat& x, int digits = kReportDigits) { return x.to_decimal(digits); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw Error(ErrorKind::InvalidInput, "expected a rational as string or integer, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

inline Json to_json(const Polynomial& p) {
  Json a = Json::array();
  for (int i = 0; i <= p.degree(); ++i) a.push_back(p.coeff(i).get_str());
  return a;
}

inline Polynomial polynomial_from_json(const Json& j, Var v = Var::x) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "polynomial must be an array of coefficients");
  std::vector<Rational> cs;
  for (const auto& c : j) cs.push_back(rational_from_json(c));
  return Polynomial(std::move(cs), v);
}

inline Json to_json(const RationalFunction& f) { return Json{{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

inline RationalFunction rational_function_from_json(const Json& j) {
  if (j.is_array()) return RationalFunction(polynomial_from_json(j));
  if (!j.is_object() || !j.contains("num"))
    throw Error(ErrorKind::InvalidInput, "rational function needs {\"num\": [...], \"den\": [...]}");
  Polynomial den = j.contains("den") ? polynomial_from_json(j.at("den")) : Polynomial::constant(1);
  if (den.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "rational function with zero denominator");
  return RationalFunction(polynomial_from_json(j.at("num")), den);
}

inline Json to_json(const HyperexponentialKernel& k) {
  return Json{{"R", to_json(k.R)}, {"S", to_json(k.S)}, {"lo", to_json(k.lo)}, {"hi", to_json(k.hi)}};
}

inline HyperexponentialKernel kernel_from_json(const Json& j) {
  for (const char* key : {"R", "S", "lo", "hi"})
    if (!j.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("kernel is missing \"") + key + "\"");
  HyperexponentialKernel k{rational_function_from_json(j.at("R")), rational_function_from_json(j.at("S")),
                           rational_from_json(j.at("lo")), rational_from_json(j.at("hi"))};
  k.validate();
  return k;
}

inline Json to_json(const LinearRecurrence& r) {
  Json cs = Json::array();
  for (const auto& c : r.coeffs()) cs.push_back(to_json(c));
  return Json{{"order", r.order()}, {"coeffs", cs}, {"text", r.to_string()}};
}

inline std::vector<Polynomial> recurrence_coeffs_from_json(const Json& j) {
  const Json& cs = j.is_object() ? j.at("coeffs") : j;
  std::vector<Polynomial> out;
  for (const auto& c : cs) out.push_back(polynomial_from_json(c, Var::n));
  return out;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 15];
  return s;
}

inline Json to_json(const TelescoperCertificate& c) {
  Json num = Json::array();
  for (int i = 0; i <= c.num.degree(); ++i) num.push_back(to_json(c.num.coeff(i)));
  Json j{{"num_x_coeffs", num}, {"den_n", to_json(c.den_n)}, {"den_x", to_json(c.den_x)}};
  j["hash"] = hex64(fnv1a(j.dump()));
  return j;
}

inline Json to_json(const TelescoperResult& r) {
  Json j{{"recurrence", to_json(r.recurrence)}, {"certificate", to_json(r.certificate)}};
  j["min_valid_n"] = r.min_valid_n ? Json(*r.min_valid_n) : Json(nullptr);
  j["characteristic_poly"] = to_json(characteristic_poly(r.recurrence));
  return j;
}

inline Json to_json(const ExactValue& v) {
  Json atoms = Json::array();
  for (const auto& [a, c] : v.coords()) atoms.push_back(Json{{"atom", a.to_string()}, {"coeff", c.get_str()}});
  return Json{{"rational", v.rational_part().get_str()}, {"atoms", atoms}, {"text", v.to_string()}};
}

inline Json to_json(const ScalingRule& r) {
  return Json{{"lcm_power", r.lcm_power}, {"lcm_stride", r.lcm_stride}, {"K", to_json(r.K)},
              {"c", to_json(r.c)},        {"verified_upto", r.verified_upto}, {"text", r.to_string()}};
}

inline Json to_json(const DeltaReport& d) {
  return Json{{"n", d.n},
              {"A", to_json(d.A)},
              {"B", to_json(d.B)},
              {"delta", to_json(d.delta)},
              {"measure_estimate", to_json(d.measure_estimate)},
              {"log2_error", d.log2_error}};
}

inline Json to_json(const MeasureBound& m) {
  return Json{{"dominant_log", to_json(m.dominant_log)},
              {"subdominant_log", to_json(m.subdominant_log)},
              {"denom_growth", to_json(m.denom_growth)},
              {"delta", to_json(m.delta)},
              {"mu", to_json(m.mu)},
              {"caveats", m.caveats}};
}

inline Json to_json(const GrowthAnalysis& g) {
  Json roots = Json::array();
  for (std::size_t i = 0; i < g.real_roots.size(); ++i)
    roots.push_back(Json{{"value", g.real_roots[i].value.to_decimal(kReportDigits)},
                         {"log_modulus", to_json(g.log_moduli[i])}});
  return Json{{"char_poly", to_json(g.char_poly)},
              {"roots", roots},
              {"dominant_index", g.dominant_index},
              {"subdominant_index", g.subdominant_index},
              {"dominant_log", to_json(g.dominant_log)},
              {"subdominant_log", to_json(g.subdominant_log)}};
}

inline Json error_json(const Error& e) {
  return Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}, {"exit_code", exit_code(e.kind())}};
}

}  // namespace irr
