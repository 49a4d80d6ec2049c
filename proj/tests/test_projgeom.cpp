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

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "vnets/projgeom.hpp"

namespace {

using vnets::gf::Field;
using S6 = vnets::Subspace<6>;
using V6 = vnets::Vec<6>;

TEST(Point, Normalize) {
  const Field f(2);
  EXPECT_EQ(vnets::Point<6>::normalize(f, {0, 2, 1, 0, 0, 0}).coords(), (V6{0, 1, 3, 0, 0, 0}));
  EXPECT_EQ(vnets::Point<3>::normalize(f, {1, 0, 0}).coords(), (vnets::Vec<3>{1, 0, 0}));
  EXPECT_EQ(vnets::Point<3>::normalize(f, {0, 0, 3}).coords(), (vnets::Vec<3>{0, 0, 1}));
  EXPECT_THROW(vnets::Point<3>::normalize(f, {0, 0, 0}), vnets::DomainError);
}

TEST(Subspace, SpanExamples) {
  const Field f(1);
  const auto s = S6::span(f, {V6{1, 0, 0, 0, 0, 0}, V6{0, 1, 0, 0, 0, 0}, V6{0, 0, 1, 0, 0, 0}});
  EXPECT_EQ(s.rank(), 3u);
  EXPECT_EQ(s.row(2), (V6{0, 0, 1, 0, 0, 0}));
  EXPECT_EQ(S6::span(f, {V6{1, 1, 0, 0, 0, 0}, V6{1, 1, 0, 0, 0, 0}}).rank(), 1u);
  EXPECT_THROW(S6::span(f, {V6{}}), vnets::DomainError);
}

TEST(Subspace, PointCounts) {
  const Field f2(1), f4(2);
  EXPECT_EQ(S6::span(f2, {V6{1, 0, 0, 0, 0, 0}, V6{0, 1, 0, 0, 0, 0}}).points(f2).size(), 3u);
  EXPECT_EQ(S6::span(f4, {V6{1, 0, 0, 0, 0, 0}, V6{0, 1, 0, 0, 0, 0}, V6{0, 0, 0, 1, 0, 0}}).points(f4).size(), 21u);
  EXPECT_EQ(S6::whole().points(f2).size(), 63u);
  EXPECT_EQ(vnets::point_count(6, 2), 63u);
}

TEST(Gaussian, Values) {
  EXPECT_EQ(vnets::gaussian_binomial(6, 3, 2), 1395u);
  EXPECT_EQ(vnets::gaussian_binomial(6, 3, 4), 376805u);
  EXPECT_EQ(vnets::gaussian_binomial(6, 6, 8), 1u);
  for (std::uint64_t q : {2u, 4u, 8u, 16u}) EXPECT_EQ(vnets::gaussian_binomial(3, 1, q), q * q + q + 1);
  EXPECT_THROW(vnets::gaussian_binomial(2, 3, 2), vnets::UsageError);
}

// Enumeration counts equal the q-binomial for every (n, k) checked.
TEST(Enumeration, MatchesGaussianBinomial) {
  for (unsigned e : {1u, 2u}) {
    const Field f(e);
    for (std::size_t k = 0; k <= 4; ++k) {
      std::uint64_t n = 0;
      vnets::for_each_subspace<4>(f, k, [&](const vnets::Subspace<4>& s) {
        ++n;
        EXPECT_EQ(s.rank(), k);
      });
      EXPECT_EQ(n, vnets::gaussian_binomial(4, static_cast<unsigned>(k), f.order())) << "k=" << k;
    }
  }
  const Field f(1);
  std::uint64_t planes = 0, meeting = 0;
  const auto nucleus = S6::span(f, {V6{0, 1, 0, 0, 0, 0}, V6{0, 0, 1, 0, 0, 0}, V6{0, 0, 0, 0, 1, 0}});
  vnets::for_each_subspace<6>(f, 3, [&](const S6& s) {
    ++planes;
    meeting += vnets::meet(f, s, nucleus).has_value();
  });
  EXPECT_EQ(planes, 1395u);
  EXPECT_EQ(meeting, 1395u - 512u);
}

TEST(Subspace, RrefRoundTrips) {
  std::mt19937_64 rng(7);
  for (unsigned e : {1u, 2u, 3u}) {
    const Field f(e);
    for (int i = 0; i < 300; ++i) {
      const std::size_t k = 1 + static_cast<std::size_t>(i % 4);
      const auto s = vnets::random_subspace<6>(f, k, rng);
      ASSERT_EQ(s.rank(), k);
      // Same span from a scrambled basis.
      std::vector<V6> rows(s.basis().begin(), s.basis().end());
      for (std::size_t r = 1; r < rows.size(); ++r) vnets::axpy(f, rows[r - 1], 1, rows[r]);
      std::shuffle(rows.begin(), rows.end(), rng);
      ASSERT_EQ(S6::span(f, std::span<const V6>(rows)), s);
      if (3 + k * 6 * e <= 64) {
        ASSERT_EQ(S6::from_packed(s.packed_key(e), e), s);
      } else {
        ASSERT_THROW(s.packed_key(e), vnets::ResourceError);
      }
      for (const auto& r : s.basis()) ASSERT_TRUE(s.contains(f, r));
      // Annihilator duality.
      const auto ann = s.annihilator(f);
      ASSERT_EQ(ann.size(), 6 - k);
      for (const auto& a : ann) {
        for (const auto& r : s.basis()) ASSERT_EQ(vnets::dot(f, a, r), 0);
      }
      ASSERT_EQ(vnets::hyperplanes_through(f, s).size(), vnets::point_count(static_cast<unsigned>(6 - k), f.order()));
    }
  }
}

TEST(Subspace, JoinMeetDimensions) {
  std::mt19937_64 rng(11);
  const Field f(2);
  for (int i = 0; i < 200; ++i) {
    const auto a = vnets::random_subspace<6>(f, 3, rng);
    const auto b = vnets::random_subspace<6>(f, 3, rng);
    const auto j = vnets::join(f, a, b);
    const auto m = vnets::meet(f, a, b);
    ASSERT_EQ(j.rank() + (m ? m->rank() : 0), 6u);
    if (m) {
      ASSERT_TRUE(a.contains(f, *m));
      ASSERT_TRUE(b.contains(f, *m));
    }
    ASSERT_TRUE(j.contains(f, a));
  }
}

TEST(Subspace, HyperplanesOfPlane) {
  const Field f2(1), f4(2);
  const auto p2 = S6::span(f2, {V6{1, 0, 0, 0, 0, 0}, V6{0, 1, 0, 0, 0, 0}, V6{0, 0, 1, 0, 0, 0}});
  EXPECT_EQ(vnets::hyperplanes_through(f2, p2).size(), 7u);
  const auto p4 = S6::span(f4, {V6{1, 0, 0, 0, 0, 0}, V6{0, 1, 0, 0, 0, 0}, V6{0, 0, 1, 0, 0, 0}});
  EXPECT_EQ(vnets::hyperplanes_through(f4, p4).size(), 21u);
  const auto h = S6::span(f4, {V6{1, 0, 0, 0, 0, 0}, V6{0, 1, 0, 0, 0, 0}, V6{0, 0, 1, 0, 0, 0},
                               V6{0, 0, 0, 1, 0, 0}, V6{0, 0, 0, 0, 1, 0}});
  const auto only = vnets::hyperplanes_through(f4, h);
  ASSERT_EQ(only.size(), 1u);
  EXPECT_EQ(only.front(), h);
}

TEST(Subspace, KeyLimits) {
  const Field f(4);
  const auto s = S6::span(f, {V6{1, 0, 0, 0, 0, 0}, V6{0, 1, 0, 0, 0, 0}, V6{0, 0, 1, 0, 0, 0}});
  EXPECT_THROW(s.packed_key(4), vnets::ResourceError);
  EXPECT_EQ(s.hex_key(), "5:3:010000000000000100000000000001000000");
}

}  // namespace
