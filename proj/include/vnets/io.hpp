/*
   Copyright 2026 The vnets Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/**
 * @file io.hpp
 * @brief JSON and CSV encodings, and parsers for planes, patterns and forms.
 *
 * Field elements are written as integers in the polynomial basis (bit i is the coefficient
 * of w^i). Polynomial text accepts sums of products of numbers, parameters a, b, c and
 * variables, with optional ^k; '-' reads as '+' in characteristic 2.
 */

#pragma once

#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vnets/atlas.hpp"
#include "vnets/errors.hpp"
#include "vnets/gf.hpp"
#include "vnets/invariants.hpp"
#include "vnets/projgeom.hpp"
#include "vnets/verify.hpp"
#include "vnets/veronese.hpp"

namespace vnets::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchema = "vnets.report/1";

// ---------------------------------------------------------------------------
// Encoding

template <std::size_t N>
Json to_json(const Vec<N>& v) {
  Json a = Json::array();
  for (gf::Elem x : v) a.push_back(static_cast<unsigned>(x));
  return a;
}

inline Json to_json(const Subspace5& s) {
  Json rows = Json::array();
  for (const auto& r : s.basis()) rows.push_back(to_json(r));
  return Json{{"rank", s.rank()}, {"rows", rows}, {"key", s.hex_key()}};
}

inline Json to_json(const OD0& o) { return Json(o.counts); }
inline Json to_json(const OD4& o) { return Json(o.counts); }

inline Json to_json(const Signature& s) {
  return Json{{"nucleus_meet_dim", s.nucleus_meet_dim},
              {"od0", to_json(s.od0)},
              {"cubic_type", std::string(to_string(s.cubic))},
              {"cubic_points", s.cubic_points},
              {"od4", to_json(s.od4)}};
}

inline Json to_json(const Parameters& p) {
  Json j = Json::object();
  if (p.a) j["a"] = static_cast<unsigned>(*p.a);
  if (p.b) j["b"] = static_cast<unsigned>(*p.b);
  if (p.c) j["c"] = static_cast<unsigned>(*p.c);
  return j;
}

inline std::string linear_string(const Vec<3>& c) {
  static constexpr std::array<char, 3> kVars = {'x', 'y', 'z'};
  std::string out;
  for (std::size_t k = 0; k < 3; ++k) {
    if (c[k] == 0) continue;
    if (!out.empty()) out += "+";
    if (c[k] != 1) out += std::to_string(c[k]) + "*";
    out += kVars[k];
  }
  return out.empty() ? "0" : out;
}

/// The symmetric 3x3 matrix of linear forms in x, y, z.
inline Json matrix_json(const PlanePattern& p) {
  Json m = Json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < 3; ++j) {
      Vec<3> c{};
      for (std::size_t k = 0; k < 3; ++k) c[k] = sym_matrix(p.coefficient[k])[i][j];
      row.push_back(linear_string(c));
    }
    m.push_back(row);
  }
  return m;
}

inline Json to_json(const OrbitSummary& s) {
  Json j;
  j["label"] = std::string(to_string(s.label));
  j["size"] = s.size ? Json(*s.size) : Json();
  j["stabilizer_order"] = s.stabilizer_order ? Json(*s.stabilizer_order) : Json();
  j["od0"] = to_json(s.signature.od0);
  j["od4"] = to_json(s.signature.od4);
  j["cubic_type"] = std::string(to_string(s.signature.cubic));
  j["cubic_points"] = s.signature.cubic_points;
  j["nucleus_meet_dim"] = s.signature.nucleus_meet_dim;
  j["representative_matrix"] = matrix_json(s.pattern);
  j["parameters"] = to_json(s.parameters);
  return j;
}

inline Json to_json(const Report& r) {
  Json j;
  j["schema"] = std::string(kSchema);
  j["suite"] = r.suite;
  j["q"] = r.q;
  j["modulus"] = r.modulus;
  Json orbits = Json::array();
  for (const auto& o : r.orbits) orbits.push_back(to_json(o));
  j["orbits"] = orbits;
  Json totals = Json::object();
  for (const auto& [k, v] : r.totals) totals[k] = v;
  j["totals"] = totals;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  j["checks"] = checks;
  j["pass"] = r.passed();
  return j;
}

inline Json to_json(const QuadraticForm& f) { return Json{{"coeffs", to_json(f.coeffs)}, {"text", f.to_string()}}; }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

/// One row per orbit.
inline std::string orbits_csv(const Report& r) {
  std::ostringstream out;
  out << "label,size,stabilizer_order,r1,r2n,r2s,r3,h1,h2r,h2i,h3,cubic_type,cubic_points,nucleus_meet_dim,parameters\n";
  for (const auto& o : r.orbits) {
    out << to_string(o.label) << ',' << (o.size ? std::to_string(*o.size) : "") << ','
        << (o.stabilizer_order ? std::to_string(*o.stabilizer_order) : "");
    for (auto v : o.signature.od0.counts) out << ',' << v;
    for (auto v : o.signature.od4.counts) out << ',' << v;
    out << ',' << to_string(o.signature.cubic) << ',' << o.signature.cubic_points << ',' << o.signature.nucleus_meet_dim
        << ',' << csv_field(to_json(o.parameters).dump()) << '\n';
  }
  return out.str();
}

/// One row per check.
inline std::string checks_csv(const Report& r) {
  std::ostringstream out;
  out << "name,pass,details\n";
  for (const auto& c : r.checks) out << csv_field(c.name) << ',' << (c.pass ? "true" : "false") << ',' << csv_field(c.details) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

/// Decimal or 0x-prefixed hexadecimal element of f.
inline gf::Elem parse_elem(const gf::Field& f, std::string_view s) {
  unsigned v = 0;
  int base = 10;
  if (s.starts_with("0x") || s.starts_with("0X")) {
    s.remove_prefix(2);
    base = 16;
  }
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("bad field element '" + std::string(s) + "'");
  if (v >= f.order()) throw UsageError("element " + std::to_string(v) + " is outside GF(" + std::to_string(f.order()) + ")");
  return static_cast<gf::Elem>(v);
}

inline gf::Elem elem_of(const gf::Field& f, const Json& j) {
  if (j.is_number_unsigned() || j.is_number_integer()) {
    const auto v = j.get<long long>();
    if (v < 0 || v >= static_cast<long long>(f.order())) throw UsageError("element " + j.dump() + " is outside the field");
    return static_cast<gf::Elem>(v);
  }
  if (j.is_string()) return parse_elem(f, j.get<std::string>());
  throw UsageError("field elements must be integers or strings, got " + j.dump());
}

/// Parameters from {"a": .., "b": .., "c": ..}.
inline Parameters parameters_of(const gf::Field& f, const Json& j) {
  Parameters p;
  if (j.is_null()) return p;
  if (!j.is_object()) throw UsageError("parameters must be an object");
  for (const auto& [k, v] : j.items()) {
    if (k == "a") p.a = elem_of(f, v);
    else if (k == "b") p.b = elem_of(f, v);
    else if (k == "c") p.c = elem_of(f, v);
    else throw UsageError("unknown parameter '" + k + "'");
  }
  return p;
}

/// Monomial x^e0 y^e1 z^e2 with its coefficient.
struct Term {
  std::array<unsigned, 3> exponents{};
  gf::Elem coeff = 1;
};

/**
 * Sum of products over f. vars names the three variables (longest names are matched first),
 * params supplies a, b, c. A lone "." or "0" is the zero polynomial.
 */
inline std::vector<Term> parse_polynomial(const gf::Field& f, std::string_view text,
                                          const std::array<std::vector<std::string>, 3>& vars, const Parameters& params) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw UsageError("empty polynomial");
  if (s == "." || s == "0") return {};
  std::vector<Term> terms;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw UsageError("cannot parse '" + std::string(text) + "': " + why); };
  auto exponent = [&]() -> unsigned {
    if (i >= s.size() || s[i] != '^') return 1;
    ++i;
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) fail("missing exponent");
    const unsigned k = static_cast<unsigned>(std::stoul(s.substr(i, j - i)));
    i = j;
    return k;
  };
  while (i < s.size()) {
    Term t;
    bool any = false;
    while (i < s.size() && s[i] != '+' && s[i] != '-') {
      if (s[i] == '*') {
        ++i;
        continue;
      }
      any = true;
      if (std::isdigit(static_cast<unsigned char>(s[i]))) {
        std::size_t j = i;
        if (s.compare(i, 2, "0x") == 0 || s.compare(i, 2, "0X") == 0) {
          j += 2;
          while (j < s.size() && std::isxdigit(static_cast<unsigned char>(s[j]))) ++j;
        } else {
          while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        }
        const gf::Elem v = parse_elem(f, std::string_view(s).substr(i, j - i));
        i = j;
        t.coeff = f.mul(t.coeff, f.pow(v, exponent()));
        continue;
      }
      bool matched = false;
      for (std::size_t k = 0; k < 3 && !matched; ++k) {
        for (const auto& name : vars[k]) {
          if (s.compare(i, name.size(), name) == 0) {
            i += name.size();
            t.exponents[k] += exponent();
            matched = true;
            break;
          }
        }
      }
      if (matched) continue;
      const char c = s[i];
      const std::optional<gf::Elem>* slot = c == 'a' ? &params.a : c == 'b' ? &params.b : c == 'c' ? &params.c : nullptr;
      if (!slot) fail(std::string("unexpected '") + c + "'");
      if (!*slot) fail(std::string("parameter ") + c + " has no value");
      ++i;
      t.coeff = f.mul(t.coeff, f.pow(**slot, exponent()));
    }
    if (!any) fail("empty term");
    if (t.coeff != 0) terms.push_back(t);
    if (i < s.size()) {
      ++i;
      if (i == s.size()) fail("trailing sign");
    }
  }
  return terms;
}

inline const std::array<std::vector<std::string>, 3>& xyz_names() {
  static const std::array<std::vector<std::string>, 3> names = {
      std::vector<std::string>{"x"}, std::vector<std::string>{"y"}, std::vector<std::string>{"z"}};
  return names;
}

inline const std::array<std::vector<std::string>, 3>& form_names() {
  static const std::array<std::vector<std::string>, 3> names = {
      std::vector<std::string>{"X0", "x0"}, std::vector<std::string>{"X1", "x1"},
      std::vector<std::string>{"X2", "x2"}};
  return names;
}

/// Linear form in x, y, z as its coefficient vector.
inline Vec<3> parse_linear(const gf::Field& f, std::string_view text, const Parameters& params = {}) {
  Vec<3> out{};
  for (const auto& t : parse_polynomial(f, text, xyz_names(), params)) {
    const unsigned deg = t.exponents[0] + t.exponents[1] + t.exponents[2];
    if (deg != 1) throw UsageError("'" + std::string(text) + "' is not a linear form in x, y, z");
    for (std::size_t k = 0; k < 3; ++k) {
      if (t.exponents[k] == 1) out[k] = f.add(out[k], t.coeff);
    }
  }
  return out;
}

/// Quadratic form in X0, X1, X2.
inline QuadraticForm parse_quadratic(const gf::Field& f, std::string_view text, const Parameters& params = {}) {
  QuadraticForm out;
  for (const auto& t : parse_polynomial(f, text, form_names(), params)) {
    const auto& e = t.exponents;
    if (e[0] + e[1] + e[2] != 2) throw UsageError("'" + std::string(text) + "' is not a quadratic form");
    std::size_t idx = 0;
    if (e[0] == 2) idx = 0;
    else if (e[0] == 1 && e[1] == 1) idx = 1;
    else if (e[0] == 1) idx = 2;
    else if (e[1] == 2) idx = 3;
    else if (e[1] == 1) idx = 4;
    else idx = 5;
    out.coeffs[idx] = f.add(out.coeffs[idx], t.coeff);
  }
  return out;
}

/// A form given as text or as six coefficients (a00, a01, a02, a11, a12, a22).
inline QuadraticForm quadratic_of(const gf::Field& f, const Json& j, const Parameters& params) {
  if (j.is_string()) return parse_quadratic(f, j.get<std::string>(), params);
  if (j.is_array() && j.size() == 6) {
    QuadraticForm out;
    for (std::size_t i = 0; i < 6; ++i) out.coeffs[i] = elem_of(f, j[i]);
    return out;
  }
  throw UsageError("a form must be a string or six coefficients");
}

/// Symmetric 3x3 matrix of linear forms to a pattern; entry (i, j) fills coordinate kSymIndex[i][j].
inline PlanePattern pattern_of_matrix(const gf::Field& f, const Json& m, const Parameters& params) {
  if (!m.is_array() || m.size() != 3) throw UsageError("a pattern matrix has three rows");
  std::array<std::array<Vec<3>, 3>, 3> entry{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!m[i].is_array() || m[i].size() != 3) throw UsageError("a pattern matrix row has three entries");
    for (std::size_t j = 0; j < 3; ++j) {
      entry[i][j] = m[i][j].is_string() ? parse_linear(f, m[i][j].get<std::string>(), params)
                                        : parse_linear(f, m[i][j].dump(), params);
    }
  }
  PlanePattern p;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (entry[i][j] != entry[j][i]) throw UsageError("pattern matrix is not symmetric");
      if (j < i) continue;
      const std::size_t y = kSymIndex[i][j];
      for (std::size_t k = 0; k < 3; ++k) p.coefficient[k][y] = entry[i][j][k];
    }
  }
  return p;
}

/**
 * A plane from {"rows": [[6 ints] x3]}, {"matrix": [[..]], "parameters": {..}} or
 * {"label": "Sigma19", "parameters": {..}}; parameters of a label default to the search.
 */
inline Subspace5 plane_of(const Geometry& geo, const Json& j) {
  const gf::Field& f = geo.field();
  if (!j.is_object()) throw UsageError("plane input must be a JSON object");
  const Parameters params = parameters_of(f, j.value("parameters", Json()));
  if (j.contains("rows")) {
    const auto& rows = j["rows"];
    if (!rows.is_array() || rows.size() != 3) throw UsageError("a plane needs three rows");
    std::array<Vec<6>, 3> v{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!rows[i].is_array() || rows[i].size() != 6) throw UsageError("each row needs six coordinates");
      for (std::size_t k = 0; k < 6; ++k) v[i][k] = elem_of(f, rows[i][k]);
    }
    if (rank_of<6>(f, std::span<const Vec<6>>(v)) != 3) throw UsageError("rows do not span a plane");
    return Subspace5::span(f, std::span<const Vec<6>>(v));
  }
  if (j.contains("matrix")) return pattern_of_matrix(f, j["matrix"], params).plane(f);
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw UsageError("'label' must be a string");
    const auto label = parse_label(j["label"].get<std::string>());
    const auto given = params.empty() ? std::nullopt : std::optional<Parameters>(params);
    return make_representative(geo, label, given).plane;
  }
  throw UsageError("plane input needs 'rows', 'matrix' or 'label'");
}

/// A net from {"forms": [f1, f2, f3], "parameters": {..}}.
inline Net net_of(const gf::Field& f, const Json& j) {
  if (!j.is_object() || !j.contains("forms")) throw UsageError("net input needs 'forms'");
  const auto& forms = j["forms"];
  if (!forms.is_array() || forms.size() != 3) throw UsageError("a net needs exactly three forms");
  const Parameters params = parameters_of(f, j.value("parameters", Json()));
  Net net;
  for (std::size_t i = 0; i < 3; ++i) net.forms[i] = quadratic_of(f, forms[i], params);
  return net;
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace vnets::io
