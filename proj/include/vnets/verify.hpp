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
 * @file verify.hpp
 * @brief Verification suites: orbit partition, representative table, lemmas, census.
 *
 * Every suite returns a Report with named pass/fail checks. Suites never throw on a failed
 * check; exceptions are reserved for bad arguments and exhausted budgets.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "vnets/action.hpp"
#include "vnets/atlas.hpp"
#include "vnets/errors.hpp"
#include "vnets/invariants.hpp"
#include "vnets/projgeom.hpp"
#include "vnets/veronese.hpp"

namespace vnets {

struct Check {
  std::string name;
  bool pass = false;
  std::string details;
};

struct OrbitSummary {
  OrbitLabel label = OrbitLabel::S1;
  std::optional<std::uint64_t> size;
  std::optional<std::uint64_t> stabilizer_order;
  Signature signature;
  Parameters parameters;
  PlanePattern pattern;
};

struct Report {
  std::string suite;
  unsigned q = 0;
  std::uint32_t modulus = 0;
  std::vector<OrbitSummary> orbits;
  std::vector<std::pair<std::string, std::uint64_t>> totals;
  std::vector<Check> checks;
  bool resource_exhausted = false;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }

  void check(std::string name, bool pass, std::string details = {}) {
    checks.push_back({std::move(name), pass, std::move(details)});
  }
};

namespace detail {

inline Report make_report(std::string suite, const gf::Field& f) {
  Report r;
  r.suite = std::move(suite);
  r.q = f.order();
  r.modulus = f.modulus();
  return r;
}

inline std::string od0_string(const OD0& o) {
  std::string s = "[";
  for (std::size_t i = 0; i < 4; ++i) s += (i ? "," : "") + std::to_string(o.counts[i]);
  return s + "]";
}

inline OrbitSummary summarize(const Representative& r) {
  return OrbitSummary{r.label, std::nullopt, std::nullopt, r.signature, r.parameters, r.pattern};
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t out = 1;
  while (e-- > 0) out *= b;
  return out;
}

/// Planes of PG(5, q) missing a fixed plane: graphs of linear maps between complements.
inline std::uint64_t planes_meeting_nucleus_plane(std::uint64_t q) { return gaussian_binomial(6, 3, q) - ipow(q, 9); }

inline bool meets_nucleus_plane(const gf::Field& f, const Subspace5& plane) {
  std::array<Vec<6>, 6> rows{};
  for (std::size_t i = 0; i < 3; ++i) rows[i] = plane.row(i);
  rows[3] = {0, 1, 0, 0, 0, 0};
  rows[4] = {0, 0, 1, 0, 0, 0};
  rows[5] = {0, 0, 0, 0, 1, 0};
  return rank_of<6>(f, std::span<const Vec<6>>(rows)) < 6;
}

template <class Fn>
void parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
  if (chunks == 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t c = 0; c < chunks; ++c) pool.emplace_back([&, c] { fn(c, n * c / chunks, n * (c + 1) / chunks); });
  for (auto& t : pool) t.join();
}

/// Distinct lines through p and the points of s.
inline std::vector<Subspace5> lines_through_in(const gf::Field& f, const Vec<6>& p, const Subspace5& s) {
  std::vector<Subspace5> out;
  s.for_each_point(f, [&](const Vec<6>& x) {
    if (rank_of<6>(f, std::span<const Vec<6>>(std::array<Vec<6>, 2>{p, x})) < 2) return;
    const auto l = Subspace5::span(f, {p, x});
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  });
  return out;
}

/// Every line of PG(5, q) inside h.
inline std::vector<Subspace5> lines_in(const gf::Field& f, const Subspace5& h) {
  std::vector<Subspace5> out;
  for_each_subspace<6>(f, 2, [&](const Subspace5& l) {
    if (h.contains(f, l)) out.push_back(l);
  });
  return out;
}

inline std::vector<LiftedElement> lifted(const gf::Field& f, const std::vector<GroupElement>& g) {
  std::vector<LiftedElement> out;
  out.reserve(g.size());
  for (const auto& x : g) out.push_back(lift(f, x));
  return out;
}

inline std::size_t orbit_count(const std::vector<std::size_t>& labels) {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

}  // namespace detail

enum class PartitionMode { Auto, Exhaustive, Representative };

/**
 * Orbit partition of the planes meeting the nucleus plane. Exhaustive mode (q <= 4)
 * enumerates and classifies every plane; representative mode sums BFS orbit sizes.
 */
inline Report verify_partition(const Atlas& atlas, PartitionMode mode = PartitionMode::Auto) {
  const gf::Field& f = atlas.field();
  const unsigned q = f.order();
  const unsigned e = f.degree();
  if (q > 8) throw UsageError("partition verification supports q <= 8");
  if (mode == PartitionMode::Auto) mode = q <= 4 ? PartitionMode::Exhaustive : PartitionMode::Representative;
  if (mode == PartitionMode::Exhaustive && q > 4) throw UsageError("exhaustive partition needs q <= 4");
  Report report = detail::make_report("partition", f);
  const std::uint64_t group = pgl3_order(q);
  const std::uint64_t family_expected = detail::planes_meeting_nucleus_plane(q);

  std::vector<std::uint64_t> rep_keys;
  for (const auto& r : atlas.representatives()) rep_keys.push_back(r.plane.packed_key(e));

  std::uint64_t orbit_sum = 0;
  std::size_t empty_base = 0;
  bool divides = true;
  for (const auto& r : atlas.representatives()) {
    auto s = detail::summarize(r);
    std::uint64_t size = 0;
    try {
      if (mode == PartitionMode::Exhaustive) {
        size = atlas.orbit(r.label)->size;
      } else {
        OrbitOptions o;
        o.workers = atlas.options().workers;
        o.max_keys = atlas.options().max_keys;
        o.keep_keys = false;
        o.probes = rep_keys;
        const auto orbit = orbit_of_subspace(f, r.plane, lifted_generators(f), o);
        size = orbit.size;
        std::string clash;
        for (std::size_t j = 0; j < rep_keys.size(); ++j) {
          if (j != index_of(r.label) && orbit.probe_hits[j]) clash += std::string(to_string(kAllLabels[j])) + " ";
        }
        report.check("orbit." + std::string(to_string(r.label)) + ".disjoint", clash.empty(),
                     clash.empty() ? "" : "contains " + clash);
      }
    } catch (const ResourceError& ex) {
      report.resource_exhausted = true;
      report.check("orbit." + std::string(to_string(r.label)) + ".budget", false, ex.what());
      report.orbits.push_back(s);
      continue;
    }
    s.size = size;
    divides = divides && group % size == 0;
    s.stabilizer_order = group / size;
    orbit_sum += size;
    empty_base += r.signature.od0.r1() == 0;
    report.orbits.push_back(s);
  }
  report.check("orbit sizes divide |PGL(3,q)|", divides);
  report.check("orbit count", report.orbits.size() == 18, std::to_string(report.orbits.size()) + " orbits");
  report.check("empty-base count", empty_base == 9, std::to_string(empty_base) + " orbits with r1 = 0");
  report.totals.emplace_back("orbit_size_sum", orbit_sum);
  report.totals.emplace_back("planes_meeting_nucleus_plane", family_expected);
  report.totals.emplace_back("empty_base_orbits", empty_base);

  if (report.resource_exhausted) return report;
  if (mode == PartitionMode::Representative) {
    report.check("orbit sizes sum to the family size", orbit_sum == family_expected,
                 std::to_string(orbit_sum) + " vs " + std::to_string(family_expected));
    return report;
  }

  // Exhaustive: enumerate all planes and compare with the union of the orbit key sets.
  std::uint64_t total = 0;
  std::vector<std::uint64_t> family;
  for_each_subspace<6>(f, 3, [&](const Subspace5& p) {
    ++total;
    if (detail::meets_nucleus_plane(f, p)) family.push_back(p.packed_key(e));
  });
  std::sort(family.begin(), family.end());
  report.totals.emplace_back("planes_total", total);
  report.totals.emplace_back("planes_enumerated_meeting_nucleus_plane", family.size());
  report.check("plane count", total == gaussian_binomial(6, 3, q), std::to_string(total));
  report.check("family count", family.size() == family_expected,
               std::to_string(family.size()) + " vs " + std::to_string(family_expected));

  std::vector<std::pair<std::uint64_t, OrbitLabel>> owner;
  for (OrbitLabel l : kAllLabels) {
    for (std::uint64_t k : atlas.orbit(l)->keys) owner.emplace_back(k, l);
  }
  std::sort(owner.begin(), owner.end());
  std::string dup;
  for (std::size_t i = 1; i < owner.size() && dup.empty(); ++i) {
    if (owner[i].first == owner[i - 1].first) dup = Subspace5::from_packed(owner[i].first, e).hex_key();
  }
  report.check("orbits pairwise disjoint", dup.empty(), dup.empty() ? "" : "shared plane " + dup);
  std::string missing;
  bool same = owner.size() == family.size();
  for (std::size_t i = 0; same && i < family.size(); ++i) {
    if (owner[i].first != family[i]) {
      same = false;
      missing = Subspace5::from_packed(family[i], e).hex_key();
    }
  }
  report.check("orbit union equals the family", same, missing.empty() ? "" : "first mismatch " + missing);

  // Classify every plane of the family and compare with its owning orbit.
  std::vector<std::uint64_t> wrong(std::max(1u, atlas.options().workers), 0);
  std::vector<std::string> witness(wrong.size());
  if (same && dup.empty()) {
    detail::parallel_chunks(owner.size(), atlas.options().workers, [&](std::size_t c, std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        const auto plane = Subspace5::from_packed(owner[i].first, e);
        std::string got;
        try {
          if (atlas.classify_plane(plane) == owner[i].second) continue;
          got = "misclassified";
        } catch (const std::exception& ex) {
          got = ex.what();
        }
        if (wrong[c]++ == 0) witness[c] = plane.hex_key() + ": " + got;
      }
    });
  } else {
    wrong[0] = family.size();
    witness[0] = "partition invalid, classification skipped";
  }
  std::uint64_t bad = 0;
  std::string first;
  for (std::size_t c = 0; c < wrong.size(); ++c) {
    bad += wrong[c];
    if (first.empty()) first = witness[c];
  }
  report.check("every plane classified into its orbit", bad == 0,
               bad == 0 ? std::to_string(owner.size()) + " planes" : std::to_string(bad) + " failures, first " + first);
  return report;
}

/// OD0 of all 18 representatives, recomputed from the planes, against the expected rows.
inline Report verify_od0_rows(const Atlas& atlas) {
  const gf::Field& f = atlas.field();
  Report report = detail::make_report("table1", f);
  for (const auto& r : atlas.representatives()) {
    report.orbits.push_back(detail::summarize(r));
    const OD0 got = od0(f, r.plane);
    const OD0 want = expected_od0(r.label, f.order());
    report.check("od0." + std::string(to_string(r.label)), got == want,
                 detail::od0_string(got) + " vs " + detail::od0_string(want));
  }
  return report;
}

/// Cubic types of the representatives with a stated cubic.
inline Report verify_cubics(const Atlas& atlas) {
  Report report = detail::make_report("cubic", atlas.field());
  for (const auto& r : atlas.representatives()) {
    const auto want = expected_cubic_type(r.label);
    if (!want) continue;
    const auto got = cubic_type(atlas.geometry(), cubic_form(atlas.field(), r.plane));
    bool ok = got.type == *want;
    if (r.label == OrbitLabel::S18) ok = ok && got.rational_points == 1;
    report.check("cubic." + std::string(to_string(r.label)), ok,
                 std::string(to_string(got.type)) + ", " + std::to_string(got.rational_points) + " points");
  }
  return report;
}

/// r2n = h1 on every plane (exhaustive) or on uniformly sampled planes.
inline Report verify_nucleus_points(const Geometry& geo, bool exhaustive, std::uint64_t samples = 100000,
                               std::uint64_t seed = 1) {
  const gf::Field& f = geo.field();
  Report report = detail::make_report("theorem21", f);
  std::uint64_t tested = 0;
  std::uint64_t violations = 0;
  std::string witness;
  auto test = [&](const Subspace5& plane) {
    ++tested;
    const auto m = meet(f, plane, nucleus_plane(f));
    const std::uint64_t r2n = m ? point_count(static_cast<unsigned>(m->rank()), f.order()) : 0;
    if (r2n != count_h1(f, plane) && violations++ == 0) witness = plane.hex_key();
  };
  if (exhaustive) {
    for_each_subspace<6>(f, 3, test);
  } else {
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < samples; ++i) test(random_subspace<6>(f, 3, rng));
  }
  report.totals.emplace_back("planes_tested", tested);
  report.totals.emplace_back("violations", violations);
  const std::string details = std::to_string(tested) + (exhaustive ? " planes (all)" : " sampled planes") + ", " +
                              std::to_string(violations) + " violations" +
                              (witness.empty() ? "" : ", first " + witness);
  if (f.order() == 2) {
    // The statement is for q >= 4; at q = 2 the counts are reported only.
    report.check("r2n = h1 (q = 2, informational)", true, details);
  } else {
    report.check("r2n = h1", violations == 0, details);
  }
  return report;
}

/// Point-class counts of PG(5, q) against their closed forms.
inline Report verify_census(const gf::Field& f) {
  Report report = detail::make_report("census", f);
  std::array<std::uint64_t, 4> n{};
  Subspace5::whole().for_each_point(f, [&](const Vec<6>& y) { ++n[static_cast<std::size_t>(point_class(f, y))]; });
  const std::uint64_t q = f.order();
  const std::array<std::uint64_t, 4> want = {q * q + q + 1, q * q + q + 1, (q * q - 1) * (q * q + q + 1),
                                             q * q * q * q * q - q * q};
  const std::array<const char*, 4> names = {"P1", "P2N", "P2S", "P3"};
  for (std::size_t i = 0; i < 4; ++i) {
    report.totals.emplace_back(names[i], n[i]);
    report.check(std::string("census.") + names[i], n[i] == want[i],
                 std::to_string(n[i]) + " vs " + std::to_string(want[i]));
  }
  return report;
}

/// The net cX0X2 + X1^2, X0^2 + X0X2 + X1X2, X2^2 with the Sigma18 parameter c.
inline Net parametric_net(const gf::Field& f, gf::Elem c) {
  (void)f;
  return Net{{QuadraticForm{{0, 0, c, 1, 0, 0}}, QuadraticForm{{1, 0, 1, 0, 1, 0}}, QuadraticForm{{0, 0, 0, 0, 0, 1}}}};
}

inline Report verify_parametric_net(const Atlas& atlas) {
  const gf::Field& f = atlas.field();
  Report report = detail::make_report("section5", f);
  const auto& rep = atlas.representative(OrbitLabel::S18);
  const gf::Elem c = rep.parameters.c.value();
  report.orbits.push_back(detail::summarize(rep));
  const Net net = parametric_net(f, c);
  const auto plane = plane_of_net(f, net);
  std::string got;
  bool ok = false;
  try {
    const auto l = atlas.classify_plane(plane);
    got = std::string(to_string(l));
    ok = l == OrbitLabel::S18;
  } catch (const std::exception& ex) {
    got = ex.what();
  }
  report.check("parametric net classifies as Sigma18", ok, "c=" + std::to_string(c) + ", got " + got);
  const auto base = base_points(atlas.geometry(), net);
  report.check("parametric net has an empty base", base.empty(), std::to_string(base.size()) + " base points");
  const auto dl = double_line_count(f, net);
  report.check("parametric net has one double line", dl == 1, std::to_string(dl) + " double lines");
  return report;
}

/**
 * Brute-force orbit checks: the stabilizer of (l, R) on the lines through R in the conic plane
 * of R; K_{P,H} on the o13,1 lines through P in H outside H(P) (q = 4); stabilizer orders of
 * l14,1 and l15,1 and the number of o14,1 lines in H(P) (q = 4).
 */
inline Report verify_lemmas(const Atlas& atlas) {
  const Geometry& geo = atlas.geometry();
  const gf::Field& f = geo.field();
  const unsigned q = f.order();
  const unsigned e = f.degree();
  if (q != 4 && q != 8) throw UsageError("the lemmas suite runs at q = 4 or q = 8");
  Report report = detail::make_report("lemmas", f);

  {  // lines through R in its conic plane
    const auto line = Subspace5::span(f, {Vec<6>{0, 1, 0, 1, 0, 0}, Vec<6>{0, 0, 0, 1, 1, 0}});
    const Vec<6> r{0, 1, 0, 1, 0, 0};
    const std::size_t li = geo.conic_plane_of(r);
    const auto& cplane = geo.conic_plane(li);
    std::vector<Vec<6>> conic;
    for (const auto& p : geo.points_on_line(li)) conic.push_back(veronese_vector(f, p));
    const auto stab = filter_pgl3(f, [&](const GroupElement& g) { return fixes_point(f, g, r) && fixes_subspace(f, g, line); });
    const auto lines = detail::lines_through_in(f, r, cplane);
    const auto labels = orbits_under(f, detail::lifted(f, stab), lines);
    const std::size_t k = detail::orbit_count(labels);
    std::vector<std::size_t> sizes(k, 0);
    std::vector<std::vector<std::size_t>> types(k);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      std::size_t on = 0;
      for (const auto& c : conic) on += lines[i].contains(f, c);
      ++sizes[labels[i]];
      types[labels[i]].push_back(on);
    }
    bool homogeneous = true;
    std::vector<std::pair<std::size_t, std::size_t>> kinds;  // (conic points, orbit size)
    for (std::size_t o = 0; o < k; ++o) {
      homogeneous = homogeneous && std::all_of(types[o].begin(), types[o].end(), [&](std::size_t t) { return t == types[o][0]; });
      kinds.emplace_back(types[o][0], sizes[o]);
    }
    std::sort(kinds.begin(), kinds.end());
    const std::vector<std::pair<std::size_t, std::size_t>> want = {{0, q / 2}, {1, 1}, {2, q / 2}};
    std::string d = std::to_string(lines.size()) + " lines, " + std::to_string(k) + " orbits, |K_{l,R}|=" +
                    std::to_string(stab.size()) + ", sizes";
    for (const auto& [t, s] : kinds) d += " " + std::to_string(s) + (t == 0 ? "(external)" : t == 1 ? "(tangent)" : "(secant)");
    report.check("tangent, secant and external lines: three orbits", k == 3 && homogeneous && kinds == want && lines.size() == q + 1, d);
  }

  const Vec<6> pn{0, 0, 0, 0, 1, 0};
  const auto hp = nucleus_hyperplane(geo, pn);
  report.check("H(P) = Z(Y0) for P = (0,0,0,0,1,0)", hp == hyperplane_of(f, {1, 0, 0, 0, 0, 0}), hp.hex_key());

  if (q == 4) {  // o13,1 lines through P in H
    const auto h = hyperplane_of(f, {0, 0, 0, 0, 0, 1});
    const auto o13 = Subspace5::span(f, {Vec<6>{1, 1, 0, 0, 0, 0}, Vec<6>{0, 0, 0, 0, 1, 0}});
    const auto orbit13 = orbit_of_subspace(f, o13, lifted_generators(f));
    std::vector<Subspace5> lines;
    for (const auto& l : detail::lines_through_in(f, pn, h)) {
      if (!hp.contains(f, l) && orbit13.contains(l.packed_key(e))) lines.push_back(l);
    }
    const auto stab = filter_pgl3(f, [&](const GroupElement& g) { return fixes_point(f, g, pn) && fixes_subspace(f, g, h); });
    const auto labels = orbits_under(f, detail::lifted(f, stab), lines);
    const std::size_t k = detail::orbit_count(labels);
    report.check("o13,1 lines through P in H: two orbits", k == 2,
                 std::to_string(lines.size()) + " lines, " + std::to_string(k) + " orbits, |K_{P,H}|=" + std::to_string(stab.size()));
  }

  if (q == 4) {  // stabilizers of l14,1 and l15,1
    const auto l14 = Subspace5::span(f, {Vec<6>{1, 0, 0, 0, 0, 1}, Vec<6>{0, 1, 0, 1, 0, 0}});
    const auto& p20 = atlas.representative(OrbitLabel::S20).parameters;
    const auto l15 = Subspace5::span(f, {Vec<6>{1, 0, *p20.b, *p20.c, 0, 1}, Vec<6>{0, 1, 0, 1, 0, 0}});
    const auto s14 = stabilizer_order(f, l14);
    const auto s15 = stabilizer_order(f, l15);
    const auto c14 = count_fixing(f, l14);
    const auto c15 = count_fixing(f, l15);
    report.check("|K_l14,1| = 6", s14 == 6 && c14 == 6,
                 "orbit-stabilizer " + std::to_string(s14) + ", direct " + std::to_string(c14));
    report.check("|K_l15,1| = 2", s15 == 2 && c15 == 2,
                 "orbit-stabilizer " + std::to_string(s15) + ", direct " + std::to_string(c15));

    const Vec<6> p{0, 1, 0, 0, 1, 0};
    const auto hp2 = nucleus_hyperplane(geo, p);
    report.check("H(P) = Z(Y0+Y5) for P = (0,1,0,0,1,0)", hp2 == hyperplane_of(f, {1, 0, 0, 0, 0, 1}), hp2.hex_key());
    const std::uint64_t want = static_cast<std::uint64_t>(q) * q * q * (q - 1) * (q * q - 1) / 6;
    const auto kp = filter_pgl3(f, [&](const GroupElement& g) { return fixes_point(f, g, p); });
    std::vector<std::uint64_t> images;
    for (const auto& g : kp) images.push_back(act_subspace(f, lift(f, g), l14).packed_key(e));
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    const auto orbit14 = orbit_of_subspace(f, l14, lifted_generators(f));
    std::uint64_t in_h = 0;
    for (const auto& l : detail::lines_in(f, hp2)) in_h += orbit14.contains(l.packed_key(e));
    report.check("o14,1 lines in H(P)", images.size() == want && in_h == want,
                 "K_P-orbit " + std::to_string(images.size()) + ", lines of H(P) in o14,1 " + std::to_string(in_h) +
                     ", formula " + std::to_string(want));
  }
  return report;
}

}  // namespace vnets
