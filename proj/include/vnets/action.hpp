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
 * @file action.hpp
 * @brief The group K = alpha(PGL(3, q)) acting on PG(5, q).
 *
 * Points of PG(2, q) are column vectors and A acts as p -> A p. On PG(5, q) this induces
 * M -> A M A^T on symmetric matrices, so that lift(A) nu(p) = nu(A p).
 *
 * Orbits are computed by breadth-first search over a small generating set, with packed
 * RREF keys for de-duplication. The frontier is expanded in chunks that may run on several
 * workers; merging is sequential in chunk order, so the result does not depend on the
 * worker count.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <absl/container/flat_hash_set.h>

#include "vnets/errors.hpp"
#include "vnets/gf.hpp"
#include "vnets/linalg.hpp"
#include "vnets/projgeom.hpp"
#include "vnets/veronese.hpp"

namespace vnets {

/// Invertible 3x3 matrix, scaled so that its first nonzero entry (row-major) is 1.
class GroupElement {
 public:
  static GroupElement from_matrix(const gf::Field& f, Mat<3> a) {
    if (det3(f, a) == 0) throw DomainError("singular matrix is not a projectivity");
    for (const auto& row : a) {
      for (gf::Elem x : row) {
        if (x != 0) {
          const gf::Elem s = f.inv(x);
          for (auto& r : a) scale(f, r, s);
          return GroupElement(a);
        }
      }
    }
    throw InternalError("unreachable");
  }

  static GroupElement identity() { return GroupElement(vnets::identity<3>()); }

  const Mat<3>& matrix() const noexcept { return a_; }

  std::uint64_t packed_key(unsigned degree) const {
    if (9 * degree > 64) throw ResourceError("group element does not fit a 64-bit key", 0);
    std::uint64_t key = 0;
    unsigned shift = 0;
    for (const auto& row : a_) {
      for (gf::Elem x : row) {
        key |= static_cast<std::uint64_t>(x) << shift;
        shift += degree;
      }
    }
    return key;
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  explicit GroupElement(const Mat<3>& a) : a_(a) {}

  Mat<3> a_;
};

inline GroupElement compose(const gf::Field& f, const GroupElement& a, const GroupElement& b) {
  return GroupElement::from_matrix(f, multiply(f, a.matrix(), b.matrix()));
}

/// 6x6 matrix L with L y = coordinates of A M_y A^T.
struct LiftedElement {
  Mat<6> matrix{};

  Vec<6> apply(const gf::Field& f, const Vec<6>& y) const noexcept { return vnets::apply(f, matrix, y); }
};

inline LiftedElement lift(const gf::Field& f, const GroupElement& g) {
  const Mat<3>& a = g.matrix();
  const Mat<3> at = transpose(a);
  LiftedElement out;
  for (std::size_t j = 0; j < 6; ++j) {
    Vec<6> unit{};
    unit[j] = 1;
    const Vec<6> column = sym_vector(multiply(f, multiply(f, a, sym_matrix(unit)), at));
    for (std::size_t i = 0; i < 6; ++i) out.matrix[i][j] = column[i];
  }
  return out;
}

inline Subspace5 act_subspace(const gf::Field& f, const LiftedElement& g, const Subspace5& s) {
  std::array<Vec<6>, 6> rows{};
  const std::size_t r = s.rank();
  for (std::size_t i = 0; i < r; ++i) rows[i] = g.apply(f, s.row(i));
  return Subspace5::span(f, std::span<const Vec<6>>(rows.data(), r));
}

/// Whether g maps the point y to itself.
inline bool fixes_point(const gf::Field& f, const GroupElement& g, const Vec<6>& y) {
  const Mat<3>& a = g.matrix();
  const Vec<6> image = sym_vector(multiply(f, multiply(f, a, sym_matrix(y)), transpose(a)));
  return Point5::normalize(f, image).coords() == Point5::normalize(f, y).coords();
}

inline bool fixes_subspace(const gf::Field& f, const GroupElement& g, const Subspace5& s) {
  return act_subspace(f, lift(f, g), s) == s;
}

/// |PGL(3, q)| = |GL(3, q)| / (q - 1).
inline std::uint64_t pgl3_order(std::uint64_t q) {
  const std::uint64_t q3 = q * q * q;
  return (q3 - 1) * (q3 - q) * (q3 - q * q) / (q - 1);
}

/// Two elementary transvections, diag(w, 1, 1) for a primitive w, and the cyclic coordinate shift.
inline std::vector<GroupElement> generators(const gf::Field& f) {
  Mat<3> t01 = identity<3>();
  t01[0][1] = 1;
  Mat<3> t10 = identity<3>();
  t10[1][0] = 1;
  Mat<3> d = identity<3>();
  d[0][0] = f.primitive_element();
  const Mat<3> c = {Vec<3>{0, 0, 1}, Vec<3>{1, 0, 0}, Vec<3>{0, 1, 0}};
  std::vector<GroupElement> gens;
  for (const auto& m : {t01, t10, d, c}) {
    auto g = GroupElement::from_matrix(f, m);
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  }
  return gens;
}

inline std::vector<LiftedElement> lifted_generators(const gf::Field& f) {
  std::vector<LiftedElement> out;
  for (const auto& g : generators(f)) out.push_back(lift(f, g));
  return out;
}

/// Size of the group generated by gens, by closure under right multiplication.
inline std::uint64_t closure_size(const gf::Field& f, const std::vector<GroupElement>& gens) {
  absl::flat_hash_set<std::uint64_t> seen;
  std::vector<GroupElement> stack{GroupElement::identity()};
  seen.insert(stack.back().packed_key(f.degree()));
  while (!stack.empty()) {
    const GroupElement g = stack.back();
    stack.pop_back();
    for (const auto& s : gens) {
      const auto h = compose(f, g, s);
      if (seen.insert(h.packed_key(f.degree())).second) stack.push_back(h);
    }
  }
  return seen.size();
}

/// Calls fn(const GroupElement&) for every element of PGL(3, q), normalized representatives.
template <class Fn>
void for_each_pgl3(const gf::Field& f, Fn&& fn) {
  const unsigned q = f.order();
  for (std::size_t lead = 0; lead < 9; ++lead) {
    std::array<gf::Elem, 9> e{};
    e[lead] = 1;
    while (true) {
      const Mat<3> m = {Vec<3>{e[0], e[1], e[2]}, Vec<3>{e[3], e[4], e[5]}, Vec<3>{e[6], e[7], e[8]}};
      if (det3(f, m) != 0) fn(GroupElement::from_matrix(f, m));
      bool advanced = false;
      for (std::size_t k = 9; k-- > lead + 1;) {
        if (e[k] + 1u < q) {
          ++e[k];
          advanced = true;
          break;
        }
        e[k] = 0;
      }
      if (!advanced) break;
    }
  }
}

/// Elements of PGL(3, q) satisfying pred, by filtering the whole group.
inline std::vector<GroupElement> filter_pgl3(const gf::Field& f, const std::function<bool(const GroupElement&)>& pred) {
  std::vector<GroupElement> out;
  for_each_pgl3(f, [&](const GroupElement& g) {
    if (pred(g)) out.push_back(g);
  });
  return out;
}

struct OrbitOptions {
  std::size_t max_keys = std::numeric_limits<std::size_t>::max();
  unsigned workers = 1;
  bool keep_keys = true;
  /// Optional key whose discovery stops the search early.
  std::optional<std::uint64_t> stop_at;
  /// Keys tested for membership once the search ends.
  std::vector<std::uint64_t> probes;
};

struct OrbitResult {
  std::size_t size = 0;
  std::vector<std::uint64_t> keys;  ///< sorted packed keys, empty unless keep_keys
  bool stopped_early = false;
  std::vector<bool> probe_hits;  ///< one flag per OrbitOptions::probes entry

  bool contains(std::uint64_t key) const { return std::binary_search(keys.begin(), keys.end(), key); }
};

/// Breadth-first closure of rep under the lifted generators.
inline OrbitResult orbit_of_subspace(const gf::Field& f, const Subspace5& rep, const std::vector<LiftedElement>& gens,
                                     const OrbitOptions& opts = {}) {
  const unsigned e = f.degree();
  absl::flat_hash_set<std::uint64_t> visited;
  std::vector<std::uint64_t> frontier{rep.packed_key(e)};
  visited.insert(frontier.front());
  OrbitResult result;
  if (opts.stop_at && *opts.stop_at == frontier.front()) {
    result.stopped_early = true;
  }
  const unsigned workers = std::max(1u, opts.workers);
  while (!frontier.empty() && !result.stopped_early) {
    const std::size_t chunks = std::min<std::size_t>(workers, frontier.size());
    std::vector<std::vector<std::uint64_t>> images(chunks);
    auto expand = [&](std::size_t c) {
      const std::size_t lo = frontier.size() * c / chunks;
      const std::size_t hi = frontier.size() * (c + 1) / chunks;
      images[c].reserve((hi - lo) * gens.size());
      for (std::size_t i = lo; i < hi; ++i) {
        const auto s = Subspace5::from_packed(frontier[i], e);
        for (const auto& g : gens) images[c].push_back(act_subspace(f, g, s).packed_key(e));
      }
    };
    if (chunks == 1) {
      expand(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t c = 0; c < chunks; ++c) pool.emplace_back(expand, c);
      for (auto& t : pool) t.join();
    }
    std::vector<std::uint64_t> next;
    for (const auto& chunk : images) {
      for (std::uint64_t k : chunk) {
        if (!visited.insert(k).second) continue;
        next.push_back(k);
        if (opts.stop_at && *opts.stop_at == k) result.stopped_early = true;
      }
      if (visited.size() > opts.max_keys) {
        throw ResourceError("orbit exceeds the key budget of " + std::to_string(opts.max_keys) + " after " +
                                std::to_string(visited.size()) + " keys",
                            visited.size());
      }
    }
    frontier = std::move(next);
  }
  result.size = visited.size();
  for (std::uint64_t k : opts.probes) result.probe_hits.push_back(visited.contains(k));
  if (opts.keep_keys) {
    result.keys.assign(visited.begin(), visited.end());
    std::sort(result.keys.begin(), result.keys.end());
  }
  return result;
}

/// |K| / |orbit|, with |K| = |PGL(3, q)|.
inline std::uint64_t stabilizer_order(const gf::Field& f, const Subspace5& s, const OrbitOptions& opts = {}) {
  OrbitOptions o = opts;
  o.keep_keys = false;
  o.stop_at.reset();
  const auto orbit = orbit_of_subspace(f, s, lifted_generators(f), o);
  const std::uint64_t group = pgl3_order(f.order());
  if (group % orbit.size != 0) throw InternalError("orbit size does not divide |PGL(3,q)|");
  return group / orbit.size;
}

/// Number of elements of PGL(3, q) mapping s onto itself, by direct enumeration.
inline std::uint64_t count_fixing(const gf::Field& f, const Subspace5& s) {
  std::uint64_t n = 0;
  for_each_pgl3(f, [&](const GroupElement& g) { n += act_subspace(f, lift(f, g), s) == s; });
  return n;
}

/// Point-class counts [r1, r2n, r2s, r3] of any subspace.
inline std::array<std::uint64_t, 4> point_class_counts(const gf::Field& f, const Subspace5& s) {
  std::array<std::uint64_t, 4> counts{};
  s.for_each_point(f, [&](const Vec<6>& y) { ++counts[static_cast<std::size_t>(point_class(f, y))]; });
  return counts;
}

/// Dimension of the meet with the nucleus plane, -1 when disjoint.
inline int nucleus_meet_dimension(const gf::Field& f, const Subspace5& s) {
  const auto m = meet(f, s, nucleus_plane(f));
  return m ? m->dimension() : -1;
}

/// Orbit search from a to b after cheap invariant checks.
inline bool k_equivalent(const gf::Field& f, const Subspace5& a, const Subspace5& b, const OrbitOptions& opts = {}) {
  if (a.rank() != b.rank()) return false;
  if (a == b) return true;
  if (point_class_counts(f, a) != point_class_counts(f, b)) return false;
  if (nucleus_meet_dimension(f, a) != nucleus_meet_dimension(f, b)) return false;
  OrbitOptions o = opts;
  o.keep_keys = false;
  o.stop_at = b.packed_key(f.degree());
  return orbit_of_subspace(f, a, lifted_generators(f), o).stopped_early;
}

/**
 * Orbits of an explicit finite group (given by all of its lifted elements) on a set of
 * subspaces that it preserves. Returns orbit indices per item, numbered by first occurrence.
 */
inline std::vector<std::size_t> orbits_under(const gf::Field& f, const std::vector<LiftedElement>& group,
                                             const std::vector<Subspace5>& items) {
  std::vector<std::size_t> label(items.size(), std::numeric_limits<std::size_t>::max());
  std::size_t next = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (label[i] != std::numeric_limits<std::size_t>::max()) continue;
    label[i] = next;
    for (const auto& g : group) {
      const auto image = act_subspace(f, g, items[i]);
      const auto it = std::find(items.begin(), items.end(), image);
      if (it == items.end()) throw UsageError("group does not preserve the item set");
      label[static_cast<std::size_t>(it - items.begin())] = next;
    }
    ++next;
  }
  return label;
}

}  // namespace vnets
