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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "vnets/action.hpp"
#include "vnets/atlas.hpp"
#include "vnets/invariants.hpp"

namespace {

using vnets::CubicType;
using vnets::Geometry;
using vnets::Subspace5;
using vnets::TernaryForm;
using V3 = vnets::Vec<3>;
using V6 = vnets::Vec<6>;

Subspace5 random_plane(const vnets::gf::Field& f, std::mt19937_64& rng) { return vnets::random_subspace<6>(f, 3, rng); }

TernaryForm line(V3 l) { return TernaryForm::linear(l); }

TernaryForm mul3(const vnets::gf::Field& f, const TernaryForm& a, const TernaryForm& b, const TernaryForm& c) {
  return multiply(f, multiply(f, a, b), c);
}

TEST(Cubic, EvaluationMatchesDeterminant) {
  std::mt19937_64 rng(21);
  for (unsigned e : {1u, 2u, 3u}) {
    const vnets::gf::Field f(e);
    const oracle::Gf g{e, f.modulus()};
    for (int i = 0; i < 30; ++i) {
      const auto pattern = vnets::PlanePattern::of_basis(random_plane(f, rng));
      const auto cubic = vnets::cubic_form(f, pattern);
      ASSERT_EQ(cubic.degree(), 3u);
      for (const auto& p : vnets::Subspace2::whole().points(f)) {
        const V6 y = pattern.at(f, p.coords());
        ASSERT_EQ(cubic.evaluate(f, p.coords()), oracle::det3(g, oracle::sym({y[0], y[1], y[2], y[3], y[4], y[5]})));
      }
    }
  }
}

// Zeros of the cubic are the singular points of the plane.
TEST(Cubic, PointsAreSingularPoints) {
  std::mt19937_64 rng(23);
  const auto geo = Geometry::make(4);
  const auto& f = geo->field();
  for (int i = 0; i < 200; ++i) {
    const auto plane = random_plane(f, rng);
    const auto s = vnets::signature(*geo, plane);
    ASSERT_EQ(s.cubic_points, s.od0.r1() + s.od0.r2n() + s.od0.r2s());
    ASSERT_EQ(s.od0.total(), 21u);
    ASSERT_EQ(s.od4.total(), 21u);
  }
}

TEST(Cubic, Examples) {
  const auto geo = Geometry::make(4);
  const auto& f = geo->field();
  const auto z = line({0, 0, 1});
  const auto xy = line({1, 1, 0});
  const auto x = line({1, 0, 0});
  EXPECT_EQ(vnets::cubic_type(*geo, mul3(f, z, z, z)).type, CubicType::TripleLine);
  EXPECT_EQ(vnets::cubic_type(*geo, mul3(f, z, xy, xy)).type, CubicType::LinePlusDoubleLine);
  EXPECT_EQ(vnets::cubic_type(*geo, mul3(f, x, line({0, 1, 0}), z)).type, CubicType::ThreeNonConcurrentLines);
  EXPECT_EQ(vnets::cubic_type(*geo, mul3(f, x, line({0, 1, 0}), xy)).type, CubicType::ThreeConcurrentLines);
  // x^3 + x z^2 + c z^3 with t^3 + t + c irreducible: three conjugate lines through (0, 1, 0).
  const auto cone = add(add(mul3(f, x, x, x), mul3(f, x, z, z)), mul3(f, z, z, z));
  const auto c = vnets::cubic_type(*geo, cone);
  EXPECT_EQ(c.type, CubicType::NoRationalComponentPoint);
  EXPECT_EQ(c.rational_points, 1u);
  EXPECT_TRUE(c.linear_factors.empty());
  EXPECT_THROW(vnets::cubic_type(*geo, TernaryForm(3)), vnets::UsageError);
  EXPECT_THROW(vnets::cubic_type(*geo, TernaryForm(2)), vnets::UsageError);
}

TEST(OD, Examples) {
  const auto geo = Geometry::make(4);
  const auto& f = geo->field();
  EXPECT_EQ(vnets::od0(f, vnets::nucleus_plane(f)), (vnets::OD0{{0, 21, 0, 0}}));
  EXPECT_EQ(vnets::od0(f, geo->conic_plane(0)), (vnets::OD0{{5, 1, 15, 0}}));
  const auto s18 = vnets::make_representative(*geo, vnets::OrbitLabel::S18);
  EXPECT_EQ(vnets::od4(*geo, s18.plane), (vnets::OD4{{1, 0, 0, 20}}));
  EXPECT_THROW(vnets::od0(f, Subspace5::span(f, {V6{1, 0, 0, 0, 0, 0}})), vnets::UsageError);
}

TEST(OD, H1CountMatchesHyperplaneClasses) {
  std::mt19937_64 rng(29);
  const auto geo = Geometry::make(4);
  const auto& f = geo->field();
  for (int i = 0; i < 200; ++i) {
    const auto plane = random_plane(f, rng);
    ASSERT_EQ(vnets::count_h1(f, plane), vnets::od4(*geo, plane).h1());
  }
}

TEST(Signature, InvariantUnderK) {
  std::mt19937_64 rng(31);
  const auto geo = Geometry::make(4);
  const auto& f = geo->field();
  std::uniform_int_distribution<unsigned> d(0, 3);
  for (int i = 0; i < 100; ++i) {
    const auto plane = random_plane(f, rng);
    vnets::Mat<3> m{};
    do {
      for (auto& row : m) {
        for (auto& x : row) x = static_cast<vnets::gf::Elem>(d(rng));
      }
    } while (vnets::det3(f, m) == 0);
    const auto g = vnets::lift(f, vnets::GroupElement::from_matrix(f, m));
    ASSERT_EQ(vnets::signature(*geo, plane), vnets::signature(*geo, vnets::act_subspace(f, g, plane)));
  }
}

}  // namespace
