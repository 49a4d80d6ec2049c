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
 * @file veronese.hpp
 * @brief The Veronese surface of PG(2, q), q even, inside PG(5, q).
 *
 * A point (y0, ..., y5) of PG(5, q) is identified with the symmetric matrix
 *
 *     [ y0 y1 y2 ]
 *     [ y1 y3 y4 ]
 *     [ y2 y4 y5 ]
 *
 * and a ternary quadratic form sum a_ij X_i X_j (i <= j) with the hyperplane
 * a00 Y0 + a01 Y1 + a02 Y2 + a11 Y3 + a12 Y4 + a22 Y5 = 0, so that nu(p) lies on delta(f)
 * exactly when f(p) = 0.
 */

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vnets/errors.hpp"
#include "vnets/gf.hpp"
#include "vnets/linalg.hpp"
#include "vnets/projgeom.hpp"

namespace vnets {

using Point2 = Point<3>;
using Point5 = Point<6>;
using Subspace2 = Subspace<3>;
using Subspace5 = Subspace<6>;

enum class PointClass { P1, P2N, P2S, P3 };
enum class ConicType { DoubleLine, RealPair, ImaginaryPair, Nonsingular };
enum class HyperplaneClass { H1, H2r, H2i, H3 };

inline std::string_view to_string(PointClass c) {
  switch (c) {
    case PointClass::P1: return "P1";
    case PointClass::P2N: return "P2n";
    case PointClass::P2S: return "P2s";
    case PointClass::P3: return "P3";
  }
  return "?";
}

inline std::string_view to_string(ConicType c) {
  switch (c) {
    case ConicType::DoubleLine: return "DoubleLine";
    case ConicType::RealPair: return "RealPair";
    case ConicType::ImaginaryPair: return "ImaginaryPair";
    case ConicType::Nonsingular: return "Nonsingular";
  }
  return "?";
}

inline std::string_view to_string(HyperplaneClass c) {
  switch (c) {
    case HyperplaneClass::H1: return "H1";
    case HyperplaneClass::H2r: return "H2r";
    case HyperplaneClass::H2i: return "H2i";
    case HyperplaneClass::H3: return "H3";
  }
  return "?";
}

inline HyperplaneClass hyperplane_class_of(ConicType c) {
  switch (c) {
    case ConicType::DoubleLine: return HyperplaneClass::H1;
    case ConicType::RealPair: return HyperplaneClass::H2r;
    case ConicType::ImaginaryPair: return HyperplaneClass::H2i;
    case ConicType::Nonsingular: return HyperplaneClass::H3;
  }
  throw InternalError("unknown conic type");
}

// Index of (row, col) of the symmetric matrix in the coordinate vector.
inline constexpr std::size_t kSymIndex[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};

inline Mat<3> sym_matrix(const Vec<6>& y) noexcept {
  Mat<3> m{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = y[kSymIndex[i][j]];
  }
  return m;
}

/// Upper triangle of a symmetric matrix, read back as coordinates.
inline Vec<6> sym_vector(const Mat<3>& m) noexcept {
  return {m[0][0], m[0][1], m[0][2], m[1][1], m[1][2], m[2][2]};
}

/// Ternary quadratic form with coefficients (a00, a01, a02, a11, a12, a22).
struct QuadraticForm {
  Vec<6> coeffs{};

  bool is_zero() const noexcept { return vnets::is_zero(coeffs); }

  /// Perfect square in characteristic 2: no cross terms.
  bool is_double_line() const noexcept { return !is_zero() && coeffs[1] == 0 && coeffs[2] == 0 && coeffs[4] == 0; }

  gf::Elem evaluate(const gf::Field& f, const Vec<3>& p) const noexcept {
    Vec<6> monomials{f.mul(p[0], p[0]), f.mul(p[0], p[1]), f.mul(p[0], p[2]),
                     f.mul(p[1], p[1]), f.mul(p[1], p[2]), f.mul(p[2], p[2])};
    return dot(f, coeffs, monomials);
  }

  /// Human-readable polynomial in X0, X1, X2 with decimal coefficients, e.g. "X0^2 + 3*X1*X2".
  std::string to_string() const {
    static constexpr const char* kMonomials[6] = {"X0^2", "X0*X1", "X0*X2", "X1^2", "X1*X2", "X2^2"};
    std::string out;
    for (std::size_t i = 0; i < 6; ++i) {
      if (coeffs[i] == 0) continue;
      if (!out.empty()) out += " + ";
      if (coeffs[i] != 1) out += std::to_string(coeffs[i]) + "*";
      out += kMonomials[i];
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

/// Rank of the symmetric matrix of y by elimination; 0 only for the zero vector.
inline int point_rank(const gf::Field& f, const Vec<6>& y) noexcept {
  Mat<3> m = sym_matrix(y);
  return static_cast<int>(rref<3>(f, m));
}

inline bool in_nucleus_plane(const Vec<6>& y) noexcept { return y[0] == 0 && y[3] == 0 && y[5] == 0; }

inline PointClass point_class(const gf::Field& f, const Vec<6>& y) {
  switch (point_rank(f, y)) {
    case 1: return PointClass::P1;
    case 2: return in_nucleus_plane(y) ? PointClass::P2N : PointClass::P2S;
    case 3: return PointClass::P3;
    default: throw DomainError("the zero vector has no point class");
  }
}

inline Vec<6> veronese_vector(const gf::Field& f, const Vec<3>& u) noexcept {
  return {f.mul(u[0], u[0]), f.mul(u[0], u[1]), f.mul(u[0], u[2]),
          f.mul(u[1], u[1]), f.mul(u[1], u[2]), f.mul(u[2], u[2])};
}

/// Veronese embedding (u0, u1, u2) -> (u0^2, u0u1, u0u2, u1^2, u1u2, u2^2).
inline Point5 nu(const gf::Field& f, const Point2& p) { return Point5::normalize(f, veronese_vector(f, p.coords())); }

/// Z(Y0, Y3, Y5).
inline Subspace5 nucleus_plane(const gf::Field& f) {
  return Subspace5::span(f, {Vec<6>{0, 1, 0, 0, 0, 0}, Vec<6>{0, 0, 1, 0, 0, 0}, Vec<6>{0, 0, 0, 0, 1, 0}});
}

/// Hyperplane with coefficient vector a.
inline Subspace5 hyperplane_of(const gf::Field& f, const Vec<6>& a) {
  if (is_zero(a)) throw DomainError("the zero form defines no hyperplane");
  const std::array<Vec<6>, 1> one{a};
  const auto basis = null_space<6>(f, std::span<const Vec<6>>(one));
  return Subspace5::from_rref(std::span<const Vec<6>>(basis));
}

inline Subspace5 delta(const gf::Field& f, const QuadraticForm& form) {
  if (form.is_zero()) throw DomainError("delta of the zero form");
  return hyperplane_of(f, form.coeffs);
}

/// The form defining a hyperplane, normalized so that its first nonzero coefficient is 1.
inline QuadraticForm delta_inv(const gf::Field& f, const Subspace5& h) {
  if (h.rank() != 5) throw UsageError("delta_inv expects a hyperplane");
  const auto ann = h.annihilator(f);
  return QuadraticForm{Point5::normalize(f, ann.front()).coords()};
}

/**
 * Per-q tables shared read-only by everything above the field level: the points and lines
 * of PG(2, q), the conic planes <nu(l)> and the conic nuclei, indexed by line.
 */
class Geometry {
 public:
  explicit Geometry(gf::Field field) : field_(std::move(field)) {
    if (field_.order() % 2 != 0) throw UsageError("q must be even");
    Subspace2::whole().for_each_point(field_, [&](const Vec<3>& v) { plane_points_.push_back(v); });
    lines_ = plane_points_;  // lines of PG(2, q) by normalized coefficient vector
    for (const auto& l : lines_) {
      std::vector<Vec<3>> on_line;
      for (const auto& p : plane_points_) {
        if (dot(field_, l, p) == 0) on_line.push_back(p);
      }
      points_on_line_.push_back(on_line);
      std::vector<Vec<6>> images;
      for (const auto& p : on_line) images.push_back(veronese_vector(field_, p));
      conic_planes_.push_back(Subspace5::span(field_, std::span<const Vec<6>>(images)));
    }
    for (std::size_t i = 0; i < lines_.size(); ++i) nuclei_.push_back(compute_nucleus(i));
  }

  static std::shared_ptr<const Geometry> make(unsigned q, std::optional<std::uint32_t> modulus = std::nullopt) {
    const unsigned e = gf::Field::degree_of(q);
    return std::make_shared<const Geometry>(modulus ? gf::Field(e, *modulus) : gf::Field(e));
  }

  const gf::Field& field() const noexcept { return field_; }
  unsigned q() const noexcept { return field_.order(); }

  /// Normalized points of PG(2, q), lexicographic.
  const std::vector<Vec<3>>& plane_points() const noexcept { return plane_points_; }
  /// Lines Z(l0 X0 + l1 X1 + l2 X2) by normalized coefficient vector, lexicographic.
  const std::vector<Vec<3>>& lines() const noexcept { return lines_; }
  const std::vector<Vec<3>>& points_on_line(std::size_t line) const { return points_on_line_.at(line); }
  const Subspace5& conic_plane(std::size_t line) const { return conic_planes_.at(line); }
  const Vec<6>& conic_nucleus(std::size_t line) const { return nuclei_.at(line); }

  std::size_t line_index(const Vec<3>& coeffs) const {
    const auto n = Point2::normalize(field_, coeffs).coords();
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      if (lines_[i] == n) return i;
    }
    throw InternalError("line not found");
  }

  /// Indices of all lines whose conic plane contains y (exactly one for rank-2 points).
  std::vector<std::size_t> conic_planes_containing(const Vec<6>& y) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < conic_planes_.size(); ++i) {
      if (conic_planes_[i].contains(field_, y)) out.push_back(i);
    }
    return out;
  }

  /// The line l(R) with R in <nu(l)>, found by scanning all lines.
  std::size_t conic_plane_of(const Vec<6>& r) const {
    if (point_rank(field_, r) != 2) throw DomainError("conic_plane_of needs a rank-2 point");
    const auto hits = conic_planes_containing(r);
    if (hits.size() != 1) throw InternalError("rank-2 point in " + std::to_string(hits.size()) + " conic planes");
    return hits.front();
  }

  std::size_t count_zeros(const QuadraticForm& form) const noexcept {
    std::size_t n = 0;
    for (const auto& p : plane_points_) n += form.evaluate(field_, p) == 0;
    return n;
  }

  /// Double lines by the cross-term criterion, everything else by rational point count.
  ConicType classify_conic(const QuadraticForm& form) const {
    if (form.is_zero()) throw DomainError("the zero form is not a conic");
    if (form.is_double_line()) return ConicType::DoubleLine;
    const std::size_t n = count_zeros(form);
    const std::size_t q = this->q();
    if (n == 2 * q + 1) return ConicType::RealPair;
    if (n == 1) return ConicType::ImaginaryPair;
    if (n == q + 1) return ConicType::Nonsingular;
    throw InternalError("conic with " + std::to_string(n) + " points: " + form.to_string());
  }

  /// Class of a hyperplane; with cross_check, also counts Veronese points on it by membership.
  HyperplaneClass classify_hyperplane(const Subspace5& h, bool cross_check = false) const {
    const auto cls = hyperplane_class_of(classify_conic(delta_inv(field_, h)));
    if (cross_check) {
      std::size_t n = 0;
      for (const auto& p : plane_points_) n += h.contains(field_, veronese_vector(field_, p));
      const std::size_t q = this->q();
      const std::size_t expected = cls == HyperplaneClass::H2r ? 2 * q + 1 : cls == HyperplaneClass::H2i ? 1 : q + 1;
      if (n != expected) throw InternalError("hyperplane meets the Veronese surface in " + std::to_string(n) + " points");
    }
    return cls;
  }

 private:
  // Tangent at nu(p): the line of the conic plane through nu(p) with no other conic point.
  Subspace5 tangent_line(std::size_t line, const Vec<6>& at) const {
    const auto& plane = conic_planes_[line];
    std::vector<Vec<6>> conic;
    for (const auto& p : points_on_line_[line]) conic.push_back(veronese_vector(field_, p));
    std::optional<Subspace5> tangent;
    plane.for_each_point(field_, [&](const Vec<6>& x) {
      if (tangent || Point5::normalize(field_, x).coords() == Point5::normalize(field_, at).coords()) return;
      const auto l = Subspace5::span(field_, {at, x});
      std::size_t on = 0;
      for (const auto& c : conic) on += l.contains(field_, c);
      if (on == 1) tangent = l;
    });
    if (!tangent) throw InternalError("no tangent line found");
    return *tangent;
  }

  Vec<6> compute_nucleus(std::size_t line) const {
    const auto& pts = points_on_line_[line];
    const auto t0 = tangent_line(line, veronese_vector(field_, pts[0]));
    const auto t1 = tangent_line(line, veronese_vector(field_, pts[1]));
    const auto m = meet(field_, t0, t1);
    if (!m || m->rank() != 1) throw InternalError("tangent lines are not concurrent");
    return m->row(0);
  }

  gf::Field field_;
  std::vector<Vec<3>> plane_points_;
  std::vector<Vec<3>> lines_;
  std::vector<std::vector<Vec<3>>> points_on_line_;
  std::vector<Subspace5> conic_planes_;
  std::vector<Vec<6>> nuclei_;
};

}  // namespace vnets
