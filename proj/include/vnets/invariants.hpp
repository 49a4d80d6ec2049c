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
 * @file invariants.hpp
 * @brief K-invariants of planes: point- and hyperplane-orbit distributions and the cubic curve.
 *
 * The cubic of a plane with basis B1, B2, B3 is det(x M_B1 + y M_B2 + z M_B3). A change of
 * basis substitutes the parameters by an element of GL(3, q), so only the factor structure
 * and the rational point count are exposed as invariants, never raw coefficients.
 */

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vnets/action.hpp"
#include "vnets/errors.hpp"
#include "vnets/forms.hpp"
#include "vnets/gf.hpp"
#include "vnets/projgeom.hpp"
#include "vnets/veronese.hpp"

namespace vnets {

/// [r1, r2n, r2s, r3]
struct OD0 {
  std::array<std::uint64_t, 4> counts{};

  std::uint64_t r1() const noexcept { return counts[0]; }
  std::uint64_t r2n() const noexcept { return counts[1]; }
  std::uint64_t r2s() const noexcept { return counts[2]; }
  std::uint64_t r3() const noexcept { return counts[3]; }
  std::uint64_t total() const noexcept { return counts[0] + counts[1] + counts[2] + counts[3]; }

  friend auto operator<=>(const OD0&, const OD0&) = default;
};

/// [h1, h2r, h2i, h3]
struct OD4 {
  std::array<std::uint64_t, 4> counts{};

  std::uint64_t h1() const noexcept { return counts[0]; }
  std::uint64_t total() const noexcept { return counts[0] + counts[1] + counts[2] + counts[3]; }

  friend auto operator<=>(const OD4&, const OD4&) = default;
};

enum class CubicType {
  TripleLine,
  LinePlusDoubleLine,
  ThreeConcurrentLines,
  ThreeNonConcurrentLines,
  LinePlusImaginaryPair,
  LinePlusConic_Tangent,
  LinePlusConic_Transversal,
  IrreducibleCubic,
  NoRationalComponentPoint,  ///< three conjugate lines through one rational point
  ConjugateTriangle,         ///< no rational linear factor and no rational point
  IdenticallyZero,           ///< plane inside the secant variety; never returned by cubic_type
};

inline std::string_view to_string(CubicType t) {
  switch (t) {
    case CubicType::TripleLine: return "TripleLine";
    case CubicType::LinePlusDoubleLine: return "LinePlusDoubleLine";
    case CubicType::ThreeConcurrentLines: return "ThreeConcurrentLines";
    case CubicType::ThreeNonConcurrentLines: return "ThreeNonConcurrentLines";
    case CubicType::LinePlusImaginaryPair: return "LinePlusImaginaryPair";
    case CubicType::LinePlusConic_Tangent: return "LinePlusConic_Tangent";
    case CubicType::LinePlusConic_Transversal: return "LinePlusConic_Transversal";
    case CubicType::IrreducibleCubic: return "IrreducibleCubic";
    case CubicType::NoRationalComponentPoint: return "NoRationalComponentPoint";
    case CubicType::ConjugateTriangle: return "ConjugateTriangle";
    case CubicType::IdenticallyZero: return "IdenticallyZero";
  }
  return "?";
}

struct CubicClassification {
  CubicType type = CubicType::IdenticallyZero;
  std::uint64_t rational_points = 0;
  std::vector<Vec<3>> linear_factors;  ///< normalized, with multiplicity
};

inline OD0 od0(const gf::Field& f, const Subspace5& plane) {
  if (plane.rank() != 3) throw UsageError("od0 expects a plane");
  return OD0{point_class_counts(f, plane)};
}

inline OD4 od4(const Geometry& geo, const Subspace5& plane) {
  if (plane.rank() != 3) throw UsageError("od4 expects a plane");
  OD4 out;
  for (const auto& h : hyperplanes_through(geo.field(), plane)) {
    ++out.counts[static_cast<std::size_t>(geo.classify_hyperplane(h))];
  }
  return out;
}

/// h1 alone: double lines among the forms vanishing on the plane.
inline std::uint64_t count_h1(const gf::Field& f, const Subspace5& plane) {
  const auto ann = plane.annihilator(f);
  if (ann.empty()) return 0;
  std::uint64_t n = 0;
  Subspace5::from_rref(std::span<const Vec<6>>(ann)).for_each_point(f, [&](const Vec<6>& a) {
    n += QuadraticForm{a}.is_double_line();
  });
  return n;
}

/// det of the symmetric matrix x M1 + y M2 + z M3 as a ternary cubic.
inline TernaryForm cubic_form(const gf::Field& f, const PlanePattern& pattern) {
  std::array<std::array<TernaryForm, 3>, 3> m{
      {{TernaryForm(1), TernaryForm(1), TernaryForm(1)},
       {TernaryForm(1), TernaryForm(1), TernaryForm(1)},
       {TernaryForm(1), TernaryForm(1), TernaryForm(1)}}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t idx = kSymIndex[i][j];
      m[i][j] = TernaryForm::linear(
          {pattern.coefficient[0][idx], pattern.coefficient[1][idx], pattern.coefficient[2][idx]});
    }
  }
  auto prod = [&](const TernaryForm& a, const TernaryForm& b, const TernaryForm& c) {
    return multiply(f, multiply(f, a, b), c);
  };
  TernaryForm det = prod(m[0][0], m[1][1], m[2][2]);
  det = add(det, prod(m[0][1], m[1][2], m[2][0]));
  det = add(det, prod(m[0][2], m[1][0], m[2][1]));
  det = add(det, prod(m[0][2], m[1][1], m[2][0]));
  det = add(det, prod(m[0][0], m[1][2], m[2][1]));
  det = add(det, prod(m[0][1], m[1][0], m[2][2]));
  return det;
}

/// Cubic of a plane, parameterized by its RREF basis.
inline TernaryForm cubic_form(const gf::Field& f, const Subspace5& plane) {
  return cubic_form(f, PlanePattern::of_basis(plane));
}

inline QuadraticForm as_quadratic(const TernaryForm& t) {
  if (t.degree() != 2) throw UsageError("not a quadratic form");
  return QuadraticForm{{t.coeff({2, 0, 0}), t.coeff({1, 1, 0}), t.coeff({1, 0, 1}), t.coeff({0, 2, 0}),
                        t.coeff({0, 1, 1}), t.coeff({0, 0, 2})}};
}

inline std::uint64_t count_rational_points(const Geometry& geo, const TernaryForm& c) {
  std::uint64_t n = 0;
  for (const auto& p : geo.plane_points()) n += c.evaluate(geo.field(), p) == 0;
  return n;
}

namespace detail {

// Basis matrix whose middle column is p, so that substituting sends the y-direction to p.
inline Mat<3> frame_with_column(const Vec<3>& p) {
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      Mat<3> m{};
      for (std::size_t i = 0; i < 3; ++i) {
        m[i][1] = p[i];
      }
      m[a][0] = 1;
      m[b][2] = 1;
      const std::size_t other = 3 - a - b;
      if (p[other] != 0) return m;
    }
  }
  return identity<3>();
}

}  // namespace detail

/**
 * Factor structure of a nonzero ternary cubic: linear factors are extracted by trial
 * division over all lines of PG(2, q); the residue is classified as a conic, or tested for
 * being a cone over a rational point when no linear factor exists.
 */
inline CubicClassification cubic_type(const Geometry& geo, const TernaryForm& cubic) {
  const gf::Field& f = geo.field();
  if (cubic.degree() != 3) throw UsageError("cubic_type expects a cubic");
  if (cubic.is_zero()) throw UsageError("cubic_type on the zero cubic");
  CubicClassification out;
  out.rational_points = count_rational_points(geo, cubic);

  TernaryForm residual = cubic;
  for (bool found = true; found && residual.degree() > 0;) {
    found = false;
    for (const auto& l : geo.lines()) {
      if (auto quot = residual.divide_by_linear(f, l)) {
        residual = *quot;
        out.linear_factors.push_back(l);
        found = true;
        break;
      }
    }
  }

  const auto& lf = out.linear_factors;
  if (lf.size() == 3) {
    const bool ab = lf[0] == lf[1], bc = lf[1] == lf[2], ac = lf[0] == lf[2];
    if (ab && bc) {
      out.type = CubicType::TripleLine;
    } else if (ab || bc || ac) {
      out.type = CubicType::LinePlusDoubleLine;
    } else {
      const Mat<3> m{lf[0], lf[1], lf[2]};
      out.type = det3(f, m) == 0 ? CubicType::ThreeConcurrentLines : CubicType::ThreeNonConcurrentLines;
    }
  } else if (lf.size() == 1) {
    const QuadraticForm q = as_quadratic(residual);
    switch (geo.classify_conic(q)) {
      case ConicType::ImaginaryPair:
        out.type = CubicType::LinePlusImaginaryPair;
        break;
      case ConicType::Nonsingular: {
        // Restriction to the line is Q(a) s^2 + B(a, b) s t + Q(b) t^2; tangent iff B(a, b) = 0.
        const std::array<Vec<3>, 1> one{lf[0]};
        const auto span = null_space<3>(f, std::span<const Vec<3>>(one));
        Vec<3> sum = span[0];
        axpy(f, sum, 1, span[1]);
        const gf::Elem polar = static_cast<gf::Elem>(q.evaluate(f, sum) ^ q.evaluate(f, span[0]) ^
                                                     q.evaluate(f, span[1]));
        out.type = polar == 0 ? CubicType::LinePlusConic_Tangent : CubicType::LinePlusConic_Transversal;
        break;
      }
      default:
        throw InternalError("quadratic residue with a rational linear factor: " + q.to_string());
    }
  } else if (lf.empty()) {
    bool cone = false;
    for (const auto& p : geo.plane_points()) {
      if (cubic.evaluate(f, p) != 0) continue;
      if (cubic.substitute(f, detail::frame_with_column(p)).free_of(1)) {
        cone = true;
        break;
      }
    }
    if (cone) {
      out.type = CubicType::NoRationalComponentPoint;
    } else {
      out.type = out.rational_points == 0 ? CubicType::ConjugateTriangle : CubicType::IrreducibleCubic;
    }
  } else {
    throw InternalError("cubic with exactly two linear factors: " + cubic.to_string());
  }
  return out;
}

/// Composite K-invariant of a plane.
struct Signature {
  int nucleus_meet_dim = -1;
  OD0 od0;
  std::uint64_t cubic_points = 0;
  CubicType cubic = CubicType::IdenticallyZero;
  OD4 od4;

  friend auto operator<=>(const Signature&, const Signature&) = default;
};

inline Signature signature(const Geometry& geo, const Subspace5& plane) {
  const gf::Field& f = geo.field();
  Signature s;
  s.nucleus_meet_dim = nucleus_meet_dimension(f, plane);
  s.od0 = od0(f, plane);
  const auto cubic = cubic_form(f, plane);
  if (cubic.is_zero()) {
    s.cubic = CubicType::IdenticallyZero;
    s.cubic_points = geo.plane_points().size();
  } else {
    const auto c = cubic_type(geo, cubic);
    s.cubic = c.type;
    s.cubic_points = c.rational_points;
  }
  s.od4 = od4(geo, plane);
  return s;
}

}  // namespace vnets
