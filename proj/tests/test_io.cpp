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

#include "vnets/io.hpp"

namespace {

using vnets::Geometry;
using vnets::OrbitLabel;
using vnets::Parameters;
using vnets::io::Json;
using V3 = vnets::Vec<3>;
using V6 = vnets::Vec<6>;

TEST(Parse, Elements) {
  const vnets::gf::Field f(2);
  EXPECT_EQ(vnets::io::parse_elem(f, "3"), 3);
  EXPECT_EQ(vnets::io::parse_elem(f, "0x2"), 2);
  EXPECT_THROW(vnets::io::parse_elem(f, "4"), vnets::UsageError);
  EXPECT_THROW(vnets::io::parse_elem(f, "1a"), vnets::UsageError);
  EXPECT_THROW(vnets::io::parse_elem(f, ""), vnets::UsageError);
  EXPECT_EQ(vnets::io::elem_of(f, Json(2)), 2);
  EXPECT_EQ(vnets::io::elem_of(f, Json("0x3")), 3);
  EXPECT_THROW(vnets::io::elem_of(f, Json(-1)), vnets::UsageError);
  EXPECT_THROW(vnets::io::elem_of(f, Json(1.5)), vnets::UsageError);
  EXPECT_EQ(vnets::io::parameters_of(f, Json::parse(R"({"b": 0, "c": "2"})")), (Parameters{std::nullopt, 0, 2}));
  EXPECT_THROW(vnets::io::parameters_of(f, Json::parse(R"({"d": 1})")), vnets::UsageError);
}

TEST(Parse, Polynomials) {
  const vnets::gf::Field f(2);
  const Parameters p{3, std::nullopt, 2};
  EXPECT_EQ(vnets::io::parse_linear(f, "x + 2*z"), (V3{1, 0, 2}));
  EXPECT_EQ(vnets::io::parse_linear(f, "x+x+y"), (V3{0, 1, 0}));
  EXPECT_EQ(vnets::io::parse_linear(f, "a y - c z", p), (V3{0, 3, 2}));
  EXPECT_EQ(vnets::io::parse_linear(f, "0"), (V3{0, 0, 0}));
  EXPECT_EQ(vnets::io::parse_quadratic(f, "X0^2 + X1*X2 + 3 X2^2").coeffs, (V6{1, 0, 0, 0, 1, 3}));
  EXPECT_EQ(vnets::io::parse_quadratic(f, "x0 x1 + x2 x0 + c x1^2", p).coeffs, (V6{0, 1, 1, 2, 0, 0}));
  EXPECT_EQ(vnets::io::parse_quadratic(f, "X0*X0").coeffs, (V6{1, 0, 0, 0, 0, 0}));
  EXPECT_THROW(vnets::io::parse_linear(f, "x^2"), vnets::UsageError);
  EXPECT_THROW(vnets::io::parse_linear(f, "x +"), vnets::UsageError);
  EXPECT_THROW(vnets::io::parse_linear(f, "b x", p), vnets::UsageError);
  EXPECT_THROW(vnets::io::parse_linear(f, "w"), vnets::UsageError);
  EXPECT_THROW(vnets::io::parse_quadratic(f, "X0"), vnets::UsageError);
  EXPECT_THROW(vnets::io::parse_quadratic(f, ""), vnets::UsageError);
}

TEST(Parse, PatternMatrix) {
  const auto geo = Geometry::make(4);
  const auto& f = geo->field();
  const auto m = Json::parse(R"([["x", "y", "0"], ["y", "y+z", "z"], ["0", "z", "x"]])");
  const auto pattern = vnets::io::pattern_of_matrix(f, m, {});
  EXPECT_EQ(pattern.coefficient, vnets::pattern_of(OrbitLabel::S19, {}).coefficient);
  EXPECT_EQ(vnets::io::matrix_json(pattern), m);
  const auto asym = Json::parse(R"([["x", "y", "0"], ["z", "y", "z"], ["0", "z", "x"]])");
  EXPECT_THROW(vnets::io::pattern_of_matrix(f, asym, {}), vnets::UsageError);
  EXPECT_THROW(vnets::io::pattern_of_matrix(f, Json::parse(R"([["x"]])"), {}), vnets::UsageError);
}

TEST(Input, Planes) {
  const auto geo = Geometry::make(4);
  const vnets::Atlas atlas(geo);
  const auto s19 = vnets::io::plane_of(
      *geo, Json::parse(R"({"matrix": [["x", "y", "0"], ["y", "y+z", "z"], ["0", "z", "x"]]})"));
  const auto c = atlas.classify(s19);
  EXPECT_EQ(c.label, OrbitLabel::S19);
  EXPECT_EQ(c.signature.od0, (vnets::OD0{{0, 1, 12, 8}}));
  const auto sn = vnets::io::plane_of(*geo, Json::parse(R"({"rows": [[0,1,0,0,0,0],[0,0,1,0,0,0],[0,0,0,0,1,0]]})"));
  EXPECT_EQ(sn, vnets::nucleus_plane(geo->field()));
  const auto s20 = vnets::io::plane_of(*geo, Json::parse(R"({"label": "Sigma20", "parameters": {"b": 2, "c": 1}})"));
  EXPECT_EQ(atlas.classify_plane(s20), OrbitLabel::S20);
  const auto s18 = vnets::io::plane_of(
      *geo, Json::parse(R"({"matrix": [["x","y","z"],["y","c*z","x+z"],["z","x+z","0"]], "parameters": {"c": 1}})"));
  EXPECT_EQ(atlas.classify_plane(s18), OrbitLabel::S18);
  for (auto bad : {R"({"rows": [[1,0,0,0,0,0],[1,0,0,0,0,0],[0,0,0,0,1,0]]})",
                   R"({"rows": [[1,0,0,0,0,0]]})",
                   R"({"label": 18})",
                   R"({"label": "Sigma21", "parameters": {"a": 1}})",
                   R"({"foo": 1})",
                   R"([1, 2])"}) {
    EXPECT_THROW(vnets::io::plane_of(*geo, Json::parse(bad)), vnets::UsageError) << bad;
  }
  EXPECT_THROW(vnets::io::parse_json("{"), vnets::UsageError);
}

TEST(Input, Nets) {
  const vnets::gf::Field f(2);
  const auto net = vnets::io::net_of(f, Json::parse(R"({"forms": ["X0^2", [0,0,0,1,0,0], "X2^2"]})"));
  EXPECT_EQ(vnets::plane_of_net(f, net), vnets::nucleus_plane(f));
  const auto s5 = vnets::io::net_of(
      f, Json::parse(R"({"forms": ["c X0 X2 + X1^2", "X0^2 + X0 X2 + X1 X2", "X2^2"], "parameters": {"c": 2}})"));
  EXPECT_EQ(s5.forms[0].coeffs, (V6{0, 0, 2, 1, 0, 0}));
  EXPECT_THROW(vnets::io::net_of(f, Json::parse(R"({"forms": ["X0^2"]})")), vnets::UsageError);
  EXPECT_THROW(vnets::io::net_of(f, Json::parse(R"({"forms": ["X0^2", "X1^2", 7]})")), vnets::UsageError);
}

TEST(Output, Json) {
  const auto geo = Geometry::make(2);
  const auto& f = geo->field();
  const auto s = vnets::io::to_json(vnets::nucleus_plane(f));
  EXPECT_EQ(s["rank"], 3);
  EXPECT_EQ(s["rows"][0], Json::parse("[0,1,0,0,0,0]"));
  EXPECT_EQ(s["key"], "5:3:000100000000000001000000000000000100");
  EXPECT_EQ(vnets::io::to_json(Parameters{1, std::nullopt, 2}).dump(), R"({"a":1,"c":2})");
  vnets::Report r = vnets::detail::make_report("demo", f);
  r.check("first", true, "ok");
  r.check("second, with comma", false, "said \"no\"");
  const auto j = vnets::io::to_json(r);
  EXPECT_EQ(j["schema"], "vnets.report/1");
  EXPECT_EQ(j["suite"], "demo");
  EXPECT_EQ(j["q"], 2);
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_EQ(j["checks"].size(), 2u);
  EXPECT_EQ(vnets::io::checks_csv(r), "name,pass,details\nfirst,true,ok\n\"second, with comma\",false,\"said \"\"no\"\"\"\n");
}

TEST(Output, OrbitRows) {
  const vnets::Atlas atlas(Geometry::make(2));
  vnets::Report r = vnets::detail::make_report("atlas", atlas.field());
  auto summary = vnets::detail::summarize(atlas.representative(OrbitLabel::S18));
  summary.size = 56;
  summary.stabilizer_order = 3;
  r.orbits.push_back(summary);
  const auto j = vnets::io::to_json(r);
  const auto& o = j["orbits"][0];
  EXPECT_EQ(o["label"], "Sigma18");
  EXPECT_EQ(o["size"], 56);
  EXPECT_EQ(o["od0"], Json::parse("[0,1,0,6]"));
  EXPECT_EQ(o["parameters"], Json::parse(R"({"c":1})"));
  EXPECT_EQ(o["representative_matrix"][1][1], "z");
  const auto csv = vnets::io::orbits_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "label,size,stabilizer_order,r1,r2n,r2s,r3,h1,h2r,h2i,h3,cubic_type,cubic_points,nucleus_meet_dim,parameters");
  EXPECT_NE(csv.find("Sigma18,56,3,0,1,0,6,"), std::string::npos);
}

}  // namespace
