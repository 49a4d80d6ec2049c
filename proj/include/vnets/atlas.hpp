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
 * @file atlas.hpp
 * @brief The 18 orbit representatives, the plane classifier and the plane/net correspondence.
 *
 * Representatives are symbolic patterns in x, y, z with at most three parameters a, b, c.
 * Parameters come from a first-fit search over GF(q) in element order, and every
 * instantiation is checked against the expected point-orbit distribution before use.
 */

#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vnets/action.hpp"
#include "vnets/errors.hpp"
#include "vnets/gf.hpp"
#include "vnets/invariants.hpp"
#include "vnets/projgeom.hpp"
#include "vnets/veronese.hpp"

namespace vnets {

enum class OrbitLabel : std::uint8_t { S1, S3, S4, S7, S8, S9, S10, S11, S15, SN, S16, S17, S18, S19, S20, S21, S22, S23 };

inline constexpr std::array<OrbitLabel, 18> kAllLabels = {
    OrbitLabel::S1,  OrbitLabel::S3,  OrbitLabel::S4,  OrbitLabel::S7,  OrbitLabel::S8,  OrbitLabel::S9,
    OrbitLabel::S10, OrbitLabel::S11, OrbitLabel::S15, OrbitLabel::SN,  OrbitLabel::S16, OrbitLabel::S17,
    OrbitLabel::S18, OrbitLabel::S19, OrbitLabel::S20, OrbitLabel::S21, OrbitLabel::S22, OrbitLabel::S23};

inline constexpr std::size_t index_of(OrbitLabel l) noexcept { return static_cast<std::size_t>(l); }

inline std::string_view to_string(OrbitLabel l) {
  static constexpr std::array<std::string_view, 18> kNames = {
      "Sigma1",  "Sigma3",  "Sigma4",  "Sigma7",  "Sigma8",  "Sigma9",  "Sigma10", "Sigma11", "Sigma15",
      "SigmaN",  "Sigma16", "Sigma17", "Sigma18", "Sigma19", "Sigma20", "Sigma21", "Sigma22", "Sigma23"};
  return kNames[index_of(l)];
}

/// Accepts "Sigma18", "Sigma_18", "S18", "Σ18", "18" and the same forms with N.
inline OrbitLabel parse_label(std::string_view text) {
  std::string_view s = text;
  for (std::string_view prefix : {"Sigma", "sigma", "\xCE\xA3", "S", "s"}) {
    if (s.starts_with(prefix)) {
      s.remove_prefix(prefix.size());
      break;
    }
  }
  if (s.starts_with('_')) s.remove_prefix(1);
  if (s == "N" || s == "n") return OrbitLabel::SN;
  unsigned n = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec == std::errc() && ptr == s.data() + s.size()) {
    for (OrbitLabel l : kAllLabels) {
      if (to_string(l) == "Sigma" + std::to_string(n)) return l;
    }
  }
  throw UsageError("unknown orbit label '" + std::string(text) + "'");
}

/// Expected OD0 row; entry i is terms[i][0] q^2 + terms[i][1] q + terms[i][2].
inline OD0 expected_od0(OrbitLabel l, std::uint64_t q) {
  using Row = std::array<std::array<std::int64_t, 3>, 4>;
  static constexpr std::array<Row, 18> kRows = {{
      {{{0, 1, 1}, {0, 0, 1}, {1, 0, -1}, {0, 0, 0}}},   // S1
      {{{0, 0, 2}, {0, 0, 1}, {0, 2, -2}, {1, -1, 0}}},  // S3
      {{{0, 0, 2}, {0, 0, 1}, {0, 2, -2}, {1, -1, 0}}},  // S4
      {{{0, 0, 1}, {0, 1, 1}, {1, 0, -1}, {0, 0, 0}}},   // S7
      {{{0, 0, 1}, {0, 1, 1}, {0, 1, -1}, {1, -1, 0}}},  // S8
      {{{0, 0, 1}, {0, 0, 1}, {0, 2, -1}, {1, -1, 0}}},  // S9
      {{{0, 0, 1}, {0, 0, 1}, {0, 2, -1}, {1, -1, 0}}},  // S10
      {{{0, 0, 1}, {0, 0, 1}, {0, 1, -1}, {1, 0, 0}}},   // S11
      {{{0, 0, 1}, {0, 0, 1}, {0, 1, -1}, {1, 0, 0}}},   // S15
      {{{0, 0, 0}, {1, 1, 1}, {0, 0, 0}, {0, 0, 0}}},    // SN
      {{{0, 0, 0}, {0, 1, 1}, {0, 0, 0}, {1, 0, 0}}},    // S16
      {{{0, 0, 0}, {0, 1, 1}, {0, 1, 0}, {1, -1, 0}}},   // S17
      {{{0, 0, 0}, {0, 0, 1}, {0, 0, 0}, {1, 1, 0}}},    // S18
      {{{0, 0, 0}, {0, 0, 1}, {0, 3, 0}, {1, -2, 0}}},   // S19
      {{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}}},    // S20
      {{{0, 0, 0}, {0, 0, 1}, {0, 2, 0}, {1, -1, 0}}},   // S21
      {{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}}},    // S22
      {{{0, 0, 0}, {0, 0, 1}, {0, 2, 0}, {1, -1, 0}}},   // S23
  }};
  const auto qq = static_cast<std::int64_t>(q);
  OD0 out;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& t = kRows[index_of(l)][i];
    out.counts[i] = static_cast<std::uint64_t>(t[0] * qq * qq + t[1] * qq + t[2]);
  }
  return out;
}

/// Orbits whose nets have no base point (r1 = 0).
inline bool has_empty_base(OrbitLabel l) { return expected_od0(l, 4).r1() == 0; }

/// Meet dimension with the nucleus plane where it is part of the orbit's description.
inline std::optional<int> expected_meet_dimension(OrbitLabel l) {
  switch (l) {
    case OrbitLabel::SN: return 2;
    case OrbitLabel::S16:
    case OrbitLabel::S17: return 1;
    case OrbitLabel::S18:
    case OrbitLabel::S19:
    case OrbitLabel::S20:
    case OrbitLabel::S21:
    case OrbitLabel::S22:
    case OrbitLabel::S23: return 0;
    default: return std::nullopt;
  }
}

inline std::optional<CubicType> expected_cubic_type(OrbitLabel l) {
  switch (l) {
    case OrbitLabel::S3:
    case OrbitLabel::S4: return CubicType::LinePlusDoubleLine;
    case OrbitLabel::S16: return CubicType::TripleLine;
    case OrbitLabel::S17: return CubicType::LinePlusDoubleLine;
    case OrbitLabel::S18: return CubicType::NoRationalComponentPoint;
    case OrbitLabel::S19: return CubicType::ThreeConcurrentLines;
    case OrbitLabel::S20: return CubicType::LinePlusImaginaryPair;
    case OrbitLabel::S21: return CubicType::LinePlusDoubleLine;
    case OrbitLabel::S22: return CubicType::IrreducibleCubic;
    case OrbitLabel::S23: return CubicType::LinePlusConic_Tangent;
    default: return std::nullopt;
  }
}

/// Values of the pattern parameters; unset entries are unused by the label.
struct Parameters {
  std::optional<gf::Elem> a, b, c;

  bool empty() const noexcept { return !a && !b && !c; }
  friend bool operator==(const Parameters&, const Parameters&) = default;
};

/// Parameter names used by a label's pattern, in search order.
inline std::string_view parameter_names(OrbitLabel l) {
  switch (l) {
    case OrbitLabel::S18: return "c";
    case OrbitLabel::S20: return "bc";
    case OrbitLabel::S21:
    case OrbitLabel::S23: return "a";
    default: return "";
  }
}

/// Whether the parameters satisfy the label's constraints over f.
inline bool parameters_valid(const gf::Field& f, OrbitLabel l, const Parameters& p) {
  auto in_field = [&](const std::optional<gf::Elem>& x) { return x && f.contains(*x); };
  switch (l) {
    case OrbitLabel::S18: {
      if (!in_field(p.c) || *p.c == 0) return false;
      const std::array<gf::Elem, 4> poly{*p.c, 1, 0, 1};
      return f.univariate_roots(poly).empty() && f.trace(f.inv(*p.c)) == f.trace(1);
    }
    case OrbitLabel::S20: {
      if (!in_field(p.b) || !in_field(p.c) || *p.b == 1) return false;
      return f.trace(f.div(*p.c, f.add(1, f.square(*p.b)))) == 1;
    }
    case OrbitLabel::S21:
    case OrbitLabel::S23: return in_field(p.a) && f.trace(*p.a) == 1;
    default: return p.empty();
  }
}

/// First valid parameter tuple in element order, nullopt if there is none.
inline std::optional<Parameters> search_parameters(const gf::Field& f, OrbitLabel l) {
  const auto names = parameter_names(l);
  if (names.empty()) return Parameters{};
  const unsigned q = f.order();
  std::vector<unsigned> v(names.size(), 0);
  while (true) {
    Parameters p;
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto& slot = names[i] == 'a' ? p.a : names[i] == 'b' ? p.b : p.c;
      slot = static_cast<gf::Elem>(v[i]);
    }
    if (parameters_valid(f, l, p)) return p;
    std::size_t k = names.size();
    while (k > 0 && v[k - 1] + 1 == q) v[--k] = 0;
    if (k == 0) return std::nullopt;
    ++v[k - 1];
  }
}

/// The representative pattern of a label, parameters already substituted.
inline PlanePattern pattern_of(OrbitLabel l, const Parameters& p) {
  auto need = [&](const std::optional<gf::Elem>& x, char name) {
    if (!x) throw UsageError(std::string(to_string(l)) + " needs parameter " + name);
    return *x;
  };
  // v({{i, c}, ...}) has entry c at coordinate i.
  auto v = [](std::initializer_list<std::pair<std::size_t, gf::Elem>> entries) {
    Vec<6> out{};
    for (const auto& [i, c] : entries) out[i] = c;
    return out;
  };
  switch (l) {
    case OrbitLabel::S1: return {{v({{0, 1}}), v({{1, 1}}), v({{3, 1}})}};
    case OrbitLabel::S3: return {{v({{0, 1}}), v({{3, 1}}), v({{2, 1}})}};
    case OrbitLabel::S4: return {{v({{0, 1}}), v({{3, 1}}), v({{2, 1}, {4, 1}})}};
    case OrbitLabel::S7: return {{v({{0, 1}}), v({{1, 1}}), v({{2, 1}})}};
    case OrbitLabel::S8: return {{v({{0, 1}}), v({{1, 1}}), v({{4, 1}})}};
    case OrbitLabel::S9: return {{v({{0, 1}}), v({{1, 1}}), v({{3, 1}, {4, 1}})}};
    case OrbitLabel::S10: return {{v({{0, 1}}), v({{1, 1}}), v({{3, 1}, {5, 1}})}};
    case OrbitLabel::S11: return {{v({{0, 1}, {5, 1}}), v({{1, 1}}), v({{3, 1}, {4, 1}, {5, 1}})}};
    case OrbitLabel::S15: return {{v({{0, 1}}), v({{1, 1}}), v({{2, 1}, {3, 1}})}};
    case OrbitLabel::SN: return {{v({{1, 1}}), v({{2, 1}}), v({{4, 1}})}};
    case OrbitLabel::S16: return {{v({{1, 1}}), v({{4, 1}}), v({{2, 1}, {3, 1}})}};
    case OrbitLabel::S17: return {{v({{1, 1}}), v({{2, 1}}), v({{3, 1}, {5, 1}})}};
    case OrbitLabel::S18: return {{v({{0, 1}, {4, 1}}), v({{1, 1}}), v({{2, 1}, {3, need(p.c, 'c')}, {4, 1}})}};
    case OrbitLabel::S19: return {{v({{0, 1}, {5, 1}}), v({{1, 1}, {3, 1}}), v({{3, 1}, {4, 1}})}};
    case OrbitLabel::S20:
      return {{v({{0, 1}, {2, need(p.b, 'b')}, {3, need(p.c, 'c')}, {5, 1}}), v({{1, 1}, {3, 1}}), v({{3, 1}, {4, 1}})}};
    case OrbitLabel::S21: return {{v({{0, 1}, {1, 1}}), v({{4, 1}}), v({{1, need(p.a, 'a')}, {3, 1}})}};
    case OrbitLabel::S22: return {{v({{0, 1}, {1, 1}}), v({{4, 1}}), v({{1, 1}, {2, 1}, {3, 1}})}};
    case OrbitLabel::S23: return {{v({{0, 1}, {2, 1}}), v({{4, 1}}), v({{1, need(p.a, 'a')}, {3, 1}})}};
  }
  throw InternalError("unknown label");
}

struct Representative {
  OrbitLabel label = OrbitLabel::S1;
  Parameters parameters;
  PlanePattern pattern;
  Subspace5 plane;
  Signature signature;
};


/**
 * Instantiates a label's pattern and checks OD0, nucleus meet and cubic type against their
 * expected values. Explicit parameters are checked against the constraints first.
 */
inline Representative make_representative(const Geometry& geo, OrbitLabel l,
                                          std::optional<Parameters> given = std::nullopt) {
  const gf::Field& f = geo.field();
  const std::string name(to_string(l));
  Parameters params;
  if (given) {
    if (!parameters_valid(f, l, *given)) {
      throw UsageError("parameters violate the constraints of " + name + " at q=" + std::to_string(f.order()));
    }
    params = *given;
  } else {
    const auto found = search_parameters(f, l);
    if (!found) throw ConfigurationError("no parameters satisfy the constraints of " + name + " at q=" + std::to_string(f.order()));
    params = *found;
  }
  const PlanePattern pattern = pattern_of(l, params);
  const Subspace5 plane = pattern.plane(f);
  Representative r{l, params, pattern, plane, signature(geo, plane)};
  const auto& s = r.signature;
  auto fail = [&](const std::string& what) {
    throw ConfigurationError(name + " at q=" + std::to_string(f.order()) + ": " + what);
  };
  if (s.od0 != expected_od0(l, f.order())) fail("OD0 differs from the expected row");
  if (s.nucleus_meet_dim < 0) fail("pattern misses the nucleus plane");
  if (const auto m = expected_meet_dimension(l); m && *m != s.nucleus_meet_dim) fail("wrong meet with the nucleus plane");
  if (const auto c = expected_cubic_type(l); c && *c != s.cubic) fail("cubic type is " + std::string(to_string(s.cubic)));
  if (l == OrbitLabel::S18 && s.cubic_points != 1) fail("cubic has more than one rational point");
  return r;
}

struct AtlasOptions {
  unsigned workers = 1;
  std::size_t max_keys = std::size_t{1} << 28;
};

struct Classification {
  OrbitLabel label = OrbitLabel::S1;
  Signature signature;
  bool by_membership = false;
};

/**
 * Representatives and signature table for one field. Orbit key sets are built on first use
 * and then shared read-only; classification is safe to call from several threads.
 */
class Atlas {
 public:
  explicit Atlas(std::shared_ptr<const Geometry> geo, AtlasOptions opts = {}) : geo_(std::move(geo)), opts_(opts) {
    for (OrbitLabel l : kAllLabels) {
      reps_.push_back(make_representative(*geo_, l));
      table_[reps_.back().signature].push_back(l);
    }
  }

  const Geometry& geometry() const noexcept { return *geo_; }
  const gf::Field& field() const noexcept { return geo_->field(); }
  const AtlasOptions& options() const noexcept { return opts_; }
  const std::vector<Representative>& representatives() const noexcept { return reps_; }
  const Representative& representative(OrbitLabel l) const { return reps_[index_of(l)]; }

  /// Groups of labels sharing one signature.
  std::vector<std::vector<OrbitLabel>> ambiguous_groups() const {
    std::vector<std::vector<OrbitLabel>> out;
    for (const auto& [sig, labels] : table_) {
      if (labels.size() > 1) out.push_back(labels);
    }
    return out;
  }

  Classification classify(const Subspace5& plane) const {
    const gf::Field& f = field();
    if (plane.rank() != 3) throw UsageError("classify_plane expects a plane");
    if (nucleus_meet_dimension(f, plane) < 0) {
      throw OutOfFamilyError("plane " + plane.hex_key() + " is disjoint from the nucleus plane");
    }
    Classification out;
    out.signature = signature(*geo_, plane);
    const auto it = table_.find(out.signature);
    if (it == table_.end()) throw InternalError("signature of " + plane.hex_key() + " matches no orbit");
    if (it->second.size() == 1) {
      out.label = it->second.front();
      return out;
    }
    out.by_membership = true;
    std::vector<OrbitLabel> hits;
    for (OrbitLabel l : it->second) {
      if (in_orbit(l, plane)) hits.push_back(l);
    }
    if (hits.size() != 1) {
      throw InternalError("plane " + plane.hex_key() + " lies in " + std::to_string(hits.size()) + " candidate orbits");
    }
    out.label = hits.front();
    return out;
  }

  OrbitLabel classify_plane(const Subspace5& plane) const { return classify(plane).label; }

  /// Full orbit of a representative with sorted keys, cached after the first call.
  std::shared_ptr<const OrbitResult> orbit(OrbitLabel l) const {
    std::lock_guard lock(mu_);
    auto& slot = orbits_[index_of(l)];
    if (!slot) {
      OrbitOptions o;
      o.workers = opts_.workers;
      o.max_keys = opts_.max_keys;
      slot = std::make_shared<const OrbitResult>(
          orbit_of_subspace(field(), representative(l).plane, lifted_generators(field()), o));
    }
    return slot;
  }

 private:
  bool in_orbit(OrbitLabel l, const Subspace5& plane) const {
    const gf::Field& f = field();
    if (f.order() <= 4) return orbit(l)->contains(plane.packed_key(f.degree()));
    OrbitOptions o;
    o.workers = opts_.workers;
    o.max_keys = opts_.max_keys;
    return k_equivalent(f, representative(l).plane, plane, o);
  }

  std::shared_ptr<const Geometry> geo_;
  AtlasOptions opts_;
  std::vector<Representative> reps_;
  std::map<Signature, std::vector<OrbitLabel>> table_;
  mutable std::mutex mu_;
  mutable std::array<std::shared_ptr<const OrbitResult>, 18> orbits_{};
};

/// A net of conics by a basis of three forms.
struct Net {
  std::array<QuadraticForm, 3> forms{};

  friend bool operator==(const Net&, const Net&) = default;
};

/// Forms vanishing on the plane, as the RREF basis of its annihilator.
inline Net net_of_plane(const gf::Field& f, const Subspace5& plane) {
  if (plane.rank() != 3) throw UsageError("net_of_plane expects a plane");
  const auto ann = plane.annihilator(f);
  Net net;
  for (std::size_t i = 0; i < 3; ++i) net.forms[i].coeffs = ann[i];
  return net;
}

/// Meet of the three hyperplanes delta(f_i).
inline Subspace5 plane_of_net(const gf::Field& f, const Net& net) {
  std::array<Vec<6>, 3> rows{};
  for (std::size_t i = 0; i < 3; ++i) rows[i] = net.forms[i].coeffs;
  if (rank_of<6>(f, std::span<const Vec<6>>(rows)) != 3) throw UsageError("the forms of a net must be independent");
  const auto basis = null_space<6>(f, std::span<const Vec<6>>(rows));
  return Subspace5::from_rref(std::span<const Vec<6>>(basis));
}

/// Canonical basis of the span of the forms.
inline Net canonical_net(const gf::Field& f, const Net& net) { return net_of_plane(f, plane_of_net(f, net)); }

/// Common zeros of the forms in PG(2, q).
inline std::vector<Vec<3>> base_points(const Geometry& geo, const Net& net) {
  std::vector<Vec<3>> out;
  for (const auto& p : geo.plane_points()) {
    bool zero = true;
    for (const auto& form : net.forms) zero = zero && form.evaluate(geo.field(), p) == 0;
    if (zero) out.push_back(p);
  }
  return out;
}

/// Number of conics of the net, up to scalars, that are double lines.
inline std::uint64_t double_line_count(const gf::Field& f, const Net& net) {
  std::array<Vec<6>, 3> rows{};
  for (std::size_t i = 0; i < 3; ++i) rows[i] = net.forms[i].coeffs;
  std::uint64_t n = 0;
  Subspace5::span(f, std::span<const Vec<6>>(rows)).for_each_point(f, [&](const Vec<6>& a) {
    n += QuadraticForm{a}.is_double_line();
  });
  return n;
}

/// The unique H1 hyperplane through the conic with nucleus y.
inline Subspace5 nucleus_hyperplane(const Geometry& geo, const Vec<6>& y) {
  const gf::Field& f = geo.field();
  const auto target = Point5::normalize(f, y).coords();
  for (std::size_t i = 0; i < geo.lines().size(); ++i) {
    if (Point5::normalize(f, geo.conic_nucleus(i)).coords() != target) continue;
    const auto& l = geo.lines()[i];
    return delta(f, QuadraticForm{{f.square(l[0]), 0, 0, f.square(l[1]), 0, f.square(l[2])}});
  }
  throw DomainError("point is not the nucleus of a conic");
}

}  // namespace vnets
