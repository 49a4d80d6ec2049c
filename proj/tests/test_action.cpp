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
#include <set>

#include "oracles.hpp"
#include "vnets/action.hpp"
#include "vnets/atlas.hpp"

namespace {

using vnets::GroupElement;
using vnets::Subspace5;
using vnets::gf::Field;
using V3 = vnets::Vec<3>;
using V6 = vnets::Vec<6>;

GroupElement random_element(const Field& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned> d(0, f.order() - 1);
  while (true) {
    vnets::Mat<3> m{};
    for (auto& row : m) {
      for (auto& x : row) x = static_cast<vnets::gf::Elem>(d(rng));
    }
    if (vnets::det3(f, m) != 0) return GroupElement::from_matrix(f, m);
  }
}

TEST(Group, Orders) {
  EXPECT_EQ(vnets::pgl3_order(2), 168u);
  EXPECT_EQ(vnets::pgl3_order(4), 60480u);
  EXPECT_EQ(vnets::pgl3_order(8), 16482816u);
  for (unsigned e : {1u, 2u}) {
    const Field f(e);
    std::uint64_t n = 0;
    std::set<std::uint64_t> keys;
    vnets::for_each_pgl3(f, [&](const GroupElement& g) {
      ++n;
      keys.insert(g.packed_key(e));
    });
    EXPECT_EQ(n, vnets::pgl3_order(f.order()));
    EXPECT_EQ(keys.size(), n);
    EXPECT_EQ(vnets::closure_size(f, vnets::generators(f)), n);
  }
}

TEST(Group, SingularMatrix) {
  const Field f(2);
  EXPECT_THROW(GroupElement::from_matrix(f, vnets::Mat<3>{V3{1, 1, 0}, V3{2, 2, 0}, V3{0, 0, 1}}), vnets::DomainError);
}

// The lift of A sends nu(u) to nu(A u) and Y to A M_Y A^T.
TEST(Lift, MatchesVeroneseAndCongruence) {
  std::mt19937_64 rng(3);
  const Field f(2);
  const oracle::Gf g{2, f.modulus()};
  for (int i = 0; i < 50; ++i) {
    const auto a = random_element(f, rng);
    const auto l = vnets::lift(f, a);
    for (const auto& u : vnets::Subspace2::whole().points(f)) {
      const V3 au = vnets::apply(f, a.matrix(), u.coords());
      ASSERT_EQ(l.apply(f, vnets::veronese_vector(f, u.coords())), vnets::veronese_vector(f, au));
    }
    vnets::Subspace5::whole().for_each_point(f, [&](const V6& y) {
      oracle::M3 m = oracle::sym({y[0], y[1], y[2], y[3], y[4], y[5]});
      oracle::M3 am{}, out{};
      const auto& A = a.matrix();
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          for (int k = 0; k < 3; ++k) am[r][c] ^= g.m(A[r][k], m[k][c]);
        }
      }
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          for (int k = 0; k < 3; ++k) out[r][c] ^= g.m(am[r][k], A[c][k]);
        }
      }
      const V6 image = l.apply(f, y);
      ASSERT_EQ(image, (V6{static_cast<vnets::gf::Elem>(out[0][0]), static_cast<vnets::gf::Elem>(out[0][1]),
                           static_cast<vnets::gf::Elem>(out[0][2]), static_cast<vnets::gf::Elem>(out[1][1]),
                           static_cast<vnets::gf::Elem>(out[1][2]), static_cast<vnets::gf::Elem>(out[2][2])}));
      ASSERT_EQ(vnets::point_class(f, image), vnets::point_class(f, y));
    });
  }
}

TEST(Lift, Homomorphism) {
  std::mt19937_64 rng(5);
  for (unsigned e : {1u, 2u, 3u}) {
    const Field f(e);
    for (int i = 0; i < 40; ++i) {
      const auto a = random_element(f, rng);
      const auto b = random_element(f, rng);
      const auto s = vnets::random_subspace<6>(f, 1 + static_cast<std::size_t>(i % 5), rng);
      const auto ab = vnets::compose(f, a, b);
      ASSERT_EQ(vnets::act_subspace(f, vnets::lift(f, ab), s),
                vnets::act_subspace(f, vnets::lift(f, a), vnets::act_subspace(f, vnets::lift(f, b), s)));
      ASSERT_EQ(vnets::act_subspace(f, vnets::lift(f, GroupElement::identity()), s), s);
    }
  }
}

TEST(Lift, NucleusPlaneIsFixed) {
  std::mt19937_64 rng(9);
  for (unsigned e : {1u, 2u, 3u, 4u}) {
    const Field f(e);
    const auto pn = vnets::nucleus_plane(f);
    for (const auto& g : vnets::generators(f)) EXPECT_TRUE(vnets::fixes_subspace(f, g, pn));
    for (int i = 0; i < 20; ++i) EXPECT_TRUE(vnets::fixes_subspace(f, random_element(f, rng), pn));
  }
}

TEST(Lift, FixesPoint) {
  const Field f(2);
  const auto d = GroupElement::from_matrix(f, vnets::Mat<3>{V3{2, 0, 0}, V3{0, 1, 0}, V3{0, 0, 1}});
  EXPECT_TRUE(vnets::fixes_point(f, d, {1, 0, 0, 0, 0, 0}));
  EXPECT_TRUE(vnets::fixes_point(f, d, {0, 0, 0, 1, 1, 0}));
  EXPECT_FALSE(vnets::fixes_point(f, d, {1, 0, 0, 1, 0, 0}));
}

// The four point classes are exactly the orbits on points.
TEST(Orbits, PointOrbitsAreClasses) {
  const Field f(1);
  std::vector<vnets::LiftedElement> group;
  vnets::for_each_pgl3(f, [&](const GroupElement& g) { group.push_back(vnets::lift(f, g)); });
  std::vector<Subspace5> points;
  std::vector<vnets::PointClass> classes;
  Subspace5::whole().for_each_point(f, [&](const V6& y) {
    points.push_back(Subspace5::span(f, {y}));
    classes.push_back(vnets::point_class(f, y));
  });
  const auto label = vnets::orbits_under(f, group, points);
  EXPECT_EQ(*std::max_element(label.begin(), label.end()), 3u);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      ASSERT_EQ(label[i] == label[j], classes[i] == classes[j]);
    }
  }
}

TEST(Orbits, StabilizerMatchesDirectCount) {
  std::mt19937_64 rng(13);
  const Field f2(1);
  for (int i = 0; i < 30; ++i) {
    const auto s = vnets::random_subspace<6>(f2, 1 + static_cast<std::size_t>(i % 5), rng);
    ASSERT_EQ(vnets::stabilizer_order(f2, s), vnets::count_fixing(f2, s));
  }
  const auto geo = vnets::Geometry::make(4);
  for (auto l : {vnets::OrbitLabel::SN, vnets::OrbitLabel::S16, vnets::OrbitLabel::S19, vnets::OrbitLabel::S22}) {
    const auto rep = vnets::make_representative(*geo, l);
    EXPECT_EQ(vnets::stabilizer_order(geo->field(), rep.plane), vnets::count_fixing(geo->field(), rep.plane))
        << vnets::to_string(l);
  }
}

TEST(Orbits, OrbitKeysAndProbes) {
  const Field f(2);
  const auto pn = vnets::nucleus_plane(f);
  vnets::OrbitOptions o;
  o.probes = {pn.packed_key(2), Subspace5::span(f, {V6{1, 0, 0, 0, 0, 0}, V6{0, 1, 0, 0, 0, 0},
                                                    V6{0, 0, 0, 1, 0, 0}}).packed_key(2)};
  const auto r = vnets::orbit_of_subspace(f, pn, vnets::lifted_generators(f), o);
  EXPECT_EQ(r.size, 1u);
  EXPECT_EQ(r.probe_hits, (std::vector<bool>{true, false}));
  EXPECT_TRUE(r.contains(pn.packed_key(2)));
  const auto point = Subspace5::span(f, {V6{1, 0, 0, 0, 0, 0}});
  o.probes.clear();
  o.workers = 3;
  const auto conic_points = vnets::orbit_of_subspace(f, point, vnets::lifted_generators(f), o);
  EXPECT_EQ(conic_points.size, 21u);
  EXPECT_TRUE(std::is_sorted(conic_points.keys.begin(), conic_points.keys.end()));
}

TEST(Orbits, KeyBudget) {
  const Field f(2);
  vnets::OrbitOptions o;
  o.max_keys = 10;
  const auto point = Subspace5::span(f, {V6{1, 0, 0, 0, 0, 0}});
  EXPECT_THROW(vnets::orbit_of_subspace(f, point, vnets::lifted_generators(f), o), vnets::ResourceError);
}

TEST(Equivalence, Examples) {
  std::mt19937_64 rng(17);
  const auto geo = vnets::Geometry::make(4);
  const Field& f = geo->field();
  using vnets::OrbitLabel;
  auto plane = [&](OrbitLabel l) { return vnets::make_representative(*geo, l).plane; };
  EXPECT_FALSE(vnets::k_equivalent(f, plane(OrbitLabel::S16), plane(OrbitLabel::S17)));
  EXPECT_FALSE(vnets::k_equivalent(f, plane(OrbitLabel::S20), plane(OrbitLabel::S22)));
  EXPECT_FALSE(vnets::k_equivalent(f, plane(OrbitLabel::S3), plane(OrbitLabel::S4)));
  for (auto l : {OrbitLabel::S3, OrbitLabel::S4, OrbitLabel::S18, OrbitLabel::S23}) {
    const auto p = plane(l);
    const auto image = vnets::act_subspace(f, vnets::lift(f, random_element(f, rng)), p);
    EXPECT_TRUE(vnets::k_equivalent(f, p, image)) << vnets::to_string(l);
  }
}

}  // namespace
