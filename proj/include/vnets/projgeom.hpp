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
 * @file projgeom.hpp
 * @brief Points and subspaces of PG(n, q) for n = N - 1 in {2, 5}.
 *
 * A subspace is stored as the reduced row-echelon basis of its row space. That basis is
 * unique, so it doubles as the canonical key for hashing and orbit de-duplication.
 *
 * Key formats (stable):
 *  - hex key: "<n>:<r>:<hh...>" with n the projective ambient dimension, r the vector rank,
 *    followed by the r x (n+1) basis entries in row-major order, two lowercase hex digits each.
 *  - packed key: the same entries, e bits each, first entry in the least significant bits
 *    above a 3-bit rank field. Only defined when 3 + r (n+1) e <= 64.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "vnets/errors.hpp"
#include "vnets/gf.hpp"
#include "vnets/linalg.hpp"

namespace vnets {

template <std::size_t N>
class Point {
 public:
  /// Scales coords so that the first nonzero coordinate is 1.
  static Point normalize(const gf::Field& f, Vec<N> coords) {
    for (std::size_t i = 0; i < N; ++i) {
      if (coords[i] != 0) {
        scale(f, coords, f.inv(coords[i]));
        return Point(coords);
      }
    }
    throw DomainError("the zero vector is not a projective point");
  }

  const Vec<N>& coords() const noexcept { return coords_; }
  gf::Elem operator[](std::size_t i) const noexcept { return coords_[i]; }

  friend auto operator<=>(const Point&, const Point&) = default;

 private:
  explicit Point(const Vec<N>& coords) : coords_(coords) {}

  Vec<N> coords_;
};

template <std::size_t N>
class Subspace {
 public:
  static constexpr std::size_t kLength = N;

  /// Row space of the given vectors. Dependent rows are fine; all-zero input is not.
  static Subspace span(const gf::Field& f, std::span<const Vec<N>> rows) {
    std::vector<Vec<N>> m(rows.begin(), rows.end());
    const std::size_t r = rref<N>(f, m);
    if (r == 0) throw DomainError("span of zero vectors is empty");
    Subspace s;
    s.rank_ = static_cast<std::uint8_t>(r);
    for (std::size_t i = 0; i < r; ++i) s.rows_[i] = m[i];
    s.find_pivots();
    return s;
  }

  static Subspace span(const gf::Field& f, std::initializer_list<Vec<N>> rows) {
    return span(f, std::span<const Vec<N>>(rows.begin(), rows.size()));
  }

  static Subspace span(const gf::Field& f, std::span<const Point<N>> points) {
    std::vector<Vec<N>> rows;
    rows.reserve(points.size());
    for (const auto& p : points) rows.push_back(p.coords());
    return span(f, std::span<const Vec<N>>(rows));
  }

  /// Wraps rows that are already in reduced row-echelon form with no zero rows.
  static Subspace from_rref(std::span<const Vec<N>> rows) {
    Subspace s;
    s.rank_ = static_cast<std::uint8_t>(rows.size());
    std::copy(rows.begin(), rows.end(), s.rows_.begin());
    s.find_pivots();
    return s;
  }

  static Subspace whole() {
    Subspace s;
    s.rank_ = static_cast<std::uint8_t>(N);
    s.rows_ = identity<N>();
    s.find_pivots();
    return s;
  }

  std::size_t rank() const noexcept { return rank_; }
  int dimension() const noexcept { return static_cast<int>(rank_) - 1; }
  std::span<const Vec<N>> basis() const noexcept { return {rows_.data(), rank_}; }
  const Vec<N>& row(std::size_t i) const noexcept { return rows_[i]; }
  std::size_t pivot(std::size_t i) const noexcept { return pivots_[i]; }

  /// Reduces v against the basis; zero remainder means membership.
  bool contains(const gf::Field& f, Vec<N> v) const noexcept {
    for (std::size_t i = 0; i < rank_; ++i) axpy(f, v, v[pivots_[i]], rows_[i]);
    return is_zero(v);
  }

  bool contains(const gf::Field& f, const Point<N>& p) const noexcept { return contains(f, p.coords()); }

  bool contains(const gf::Field& f, const Subspace& other) const noexcept {
    for (const auto& r : other.basis()) {
      if (!contains(f, r)) return false;
    }
    return true;
  }

  /// Coefficient vectors of the hyperplanes containing this subspace (empty for the whole space).
  std::vector<Vec<N>> annihilator(const gf::Field& f) const { return null_space<N>(f, basis()); }

  /// Calls fn(const Vec<N>&) on every normalized point, ordered by coefficient tuple.
  template <class Fn>
  void for_each_point(const gf::Field& f, Fn&& fn) const {
    const unsigned q = f.order();
    std::array<gf::Elem, N> coeff{};
    for (std::size_t lead = 0; lead < rank_; ++lead) {
      std::fill(coeff.begin(), coeff.end(), 0);
      while (true) {
        Vec<N> v = rows_[lead];
        for (std::size_t j = lead + 1; j < rank_; ++j) axpy(f, v, coeff[j], rows_[j]);
        fn(static_cast<const Vec<N>&>(v));
        bool advanced = false;
        for (std::size_t j = rank_; j-- > lead + 1;) {
          if (coeff[j] + 1u < q) {
            ++coeff[j];
            advanced = true;
            break;
          }
          coeff[j] = 0;
        }
        if (!advanced) break;
      }
    }
  }

  std::vector<Point<N>> points(const gf::Field& f) const {
    std::vector<Point<N>> out;
    for_each_point(f, [&](const Vec<N>& v) { out.push_back(Point<N>::normalize(f, v)); });
    return out;
  }

  std::uint64_t packed_key(unsigned degree) const {
    if (3 + static_cast<unsigned>(rank_) * N * degree > 64) {
      throw ResourceError("subspace does not fit a 64-bit packed key", 0);
    }
    std::uint64_t key = rank_;
    unsigned shift = 3;
    for (std::size_t i = 0; i < rank_; ++i) {
      for (std::size_t j = 0; j < N; ++j) {
        key |= static_cast<std::uint64_t>(rows_[i][j]) << shift;
        shift += degree;
      }
    }
    return key;
  }

  static Subspace from_packed(std::uint64_t key, unsigned degree) {
    Subspace s;
    s.rank_ = static_cast<std::uint8_t>(key & 7u);
    const std::uint64_t mask = (1u << degree) - 1;
    unsigned shift = 3;
    for (std::size_t i = 0; i < s.rank_; ++i) {
      for (std::size_t j = 0; j < N; ++j) {
        s.rows_[i][j] = static_cast<gf::Elem>((key >> shift) & mask);
        shift += degree;
      }
    }
    s.find_pivots();
    return s;
  }

  std::string hex_key() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out = std::to_string(N - 1) + ":" + std::to_string(rank_) + ":";
    for (std::size_t i = 0; i < rank_; ++i) {
      for (std::size_t j = 0; j < N; ++j) {
        out.push_back(kDigits[rows_[i][j] >> 4]);
        out.push_back(kDigits[rows_[i][j] & 15]);
      }
    }
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) noexcept {
    return a.rank_ == b.rank_ && a.rows_ == b.rows_;
  }
  friend bool operator<(const Subspace& a, const Subspace& b) noexcept {
    return a.rank_ != b.rank_ ? a.rank_ < b.rank_ : a.rows_ < b.rows_;
  }

 private:
  Subspace() = default;

  void find_pivots() noexcept {
    for (std::size_t i = 0; i < rank_; ++i) {
      std::size_t j = 0;
      while (j < N && rows_[i][j] == 0) ++j;
      pivots_[i] = static_cast<std::uint8_t>(j);
    }
  }

  Mat<N> rows_{};
  std::array<std::uint8_t, N> pivots_{};
  std::uint8_t rank_ = 0;
};

template <std::size_t N>
Subspace<N> join(const gf::Field& f, const Subspace<N>& a, const Subspace<N>& b) {
  std::vector<Vec<N>> rows(a.basis().begin(), a.basis().end());
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace<N>::span(f, std::span<const Vec<N>>(rows));
}

/// Intersection through annihilators; empty when the row spaces meet trivially.
template <std::size_t N>
std::optional<Subspace<N>> meet(const gf::Field& f, const Subspace<N>& a, const Subspace<N>& b) {
  auto ann = a.annihilator(f);
  auto ann_b = b.annihilator(f);
  ann.insert(ann.end(), ann_b.begin(), ann_b.end());
  auto common = null_space<N>(f, std::span<const Vec<N>>(ann));
  if (common.empty()) return std::nullopt;
  return Subspace<N>::from_rref(std::span<const Vec<N>>(common));
}

/// Hyperplanes containing s, one per nonzero annihilating form up to scalar.
template <std::size_t N>
std::vector<Subspace<N>> hyperplanes_through(const gf::Field& f, const Subspace<N>& s) {
  const auto ann = s.annihilator(f);
  std::vector<Subspace<N>> out;
  if (ann.empty()) return out;
  const auto forms = Subspace<N>::from_rref(std::span<const Vec<N>>(ann));
  forms.for_each_point(f, [&](const Vec<N>& a) {
    const std::array<Vec<N>, 1> one{a};
    auto h = null_space<N>(f, std::span<const Vec<N>>(one));
    out.push_back(Subspace<N>::from_rref(std::span<const Vec<N>>(h)));
  });
  return out;
}

/// Number of k-dimensional vector subspaces of GF(q)^n (q-Pascal recursion, no division).
inline std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q) {
  if (k > n) throw UsageError("gaussian_binomial needs k <= n");
  std::vector<std::vector<unsigned __int128>> g(n + 1, std::vector<unsigned __int128>(n + 1, 0));
  for (unsigned m = 0; m <= n; ++m) {
    g[m][0] = 1;
    unsigned __int128 qk = 1;
    for (unsigned j = 1; j <= m; ++j) {
      qk *= q;
      g[m][j] = g[m - 1][j - 1] + (j <= m - 1 ? qk * g[m - 1][j] : 0);
    }
  }
  const auto value = g[n][k];
  if (value > static_cast<unsigned __int128>(UINT64_MAX)) throw ResourceError("gaussian binomial overflows 64 bits", 0);
  return static_cast<std::uint64_t>(value);
}

/// Number of projective points of a subspace of vector rank r: (q^r - 1)/(q - 1).
inline std::uint64_t point_count(unsigned r, std::uint64_t q) { return gaussian_binomial(r, 1, q); }

/// Pivot column sets of rank-k RREF matrices with N columns, lexicographic.
template <std::size_t N>
std::vector<std::vector<std::size_t>> pivot_patterns(std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t c = start; c < N; ++c) {
      cur.push_back(c);
      self(self, c + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Calls fn(const Subspace<N>&) once for every subspace with the given pivot columns.
template <std::size_t N, class Fn>
void for_each_subspace_with_pivots(const gf::Field& f, std::span<const std::size_t> pivots, Fn&& fn) {
  const std::size_t k = pivots.size();
  std::vector<Vec<N>> rows(k, Vec<N>{});
  std::vector<std::pair<std::size_t, std::size_t>> free_slots;
  for (std::size_t i = 0; i < k; ++i) {
    rows[i][pivots[i]] = 1;
    for (std::size_t c = pivots[i] + 1; c < N; ++c) {
      if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_slots.emplace_back(i, c);
    }
  }
  const unsigned q = f.order();
  while (true) {
    fn(Subspace<N>::from_rref(std::span<const Vec<N>>(rows)));
    bool advanced = false;
    for (std::size_t s = free_slots.size(); s-- > 0;) {
      auto& entry = rows[free_slots[s].first][free_slots[s].second];
      if (entry + 1u < q) {
        ++entry;
        advanced = true;
        break;
      }
      entry = 0;
    }
    if (!advanced) return;
  }
}

/// Every rank-k subspace exactly once, in RREF-lexicographic order.
template <std::size_t N, class Fn>
void for_each_subspace(const gf::Field& f, std::size_t k, Fn&& fn) {
  for (const auto& p : pivot_patterns<N>(k)) for_each_subspace_with_pivots<N>(f, p, fn);
}

/// Uniformly random rank-k subspace: uniform random independent k-tuples, all bases equally likely.
template <std::size_t N, class Rng>
Subspace<N> random_subspace(const gf::Field& f, std::size_t k, Rng& rng) {
  std::uniform_int_distribution<unsigned> dist(0, f.order() - 1);
  while (true) {
    std::vector<Vec<N>> rows(k);
    for (auto& r : rows) {
      for (auto& x : r) x = static_cast<gf::Elem>(dist(rng));
    }
    if (rank_of<N>(f, std::span<const Vec<N>>(rows)) == k) return Subspace<N>::span(f, std::span<const Vec<N>>(rows));
  }
}

/**
 * A plane of PG(5, q) written as x B1 + y B2 + z B3, Bk the coefficient vectors (symmetric
 * matrices in coordinate order) of the parameters x, y, z.
 */
struct PlanePattern {
  std::array<Vec<6>, 3> coefficient{};

  Subspace<6> plane(const gf::Field& f) const {
    if (rank_of<6>(f, std::span<const Vec<6>>(coefficient)) != 3) {
      throw UsageError("pattern matrices are linearly dependent");
    }
    return Subspace<6>::span(f, std::span<const Vec<6>>(coefficient));
  }

  /// The point with parameters (x, y, z).
  Vec<6> at(const gf::Field& f, const Vec<3>& xyz) const noexcept {
    Vec<6> v{};
    for (std::size_t k = 0; k < 3; ++k) axpy(f, v, xyz[k], coefficient[k]);
    return v;
  }

  /// The pattern given by a basis: row k is the coefficient of parameter k.
  static PlanePattern of_basis(const Subspace<6>& s) {
    if (s.rank() != 3) throw UsageError("pattern of a subspace that is not a plane");
    return PlanePattern{{s.row(0), s.row(1), s.row(2)}};
  }
};

}  // namespace vnets
