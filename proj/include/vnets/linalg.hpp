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

// Small dense linear algebra over GF(2^e) on fixed-length row vectors.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "vnets/gf.hpp"

namespace vnets {

template <std::size_t N>
using Vec = std::array<gf::Elem, N>;

template <std::size_t N>
bool is_zero(const Vec<N>& v) noexcept {
  for (gf::Elem x : v) {
    if (x != 0) return false;
  }
  return true;
}

/// v += c * w
template <std::size_t N>
void axpy(const gf::Field& f, Vec<N>& v, gf::Elem c, const Vec<N>& w) noexcept {
  if (c == 0) return;
  for (std::size_t j = 0; j < N; ++j) v[j] ^= f.mul(c, w[j]);
}

template <std::size_t N>
void scale(const gf::Field& f, Vec<N>& v, gf::Elem c) noexcept {
  for (auto& x : v) x = f.mul(c, x);
}

template <std::size_t N>
gf::Elem dot(const gf::Field& f, const Vec<N>& a, const Vec<N>& b) noexcept {
  gf::Elem acc = 0;
  for (std::size_t j = 0; j < N; ++j) acc ^= f.mul(a[j], b[j]);
  return acc;
}

/// Reduced row-echelon form in place. Nonzero rows end up first, sorted by pivot column,
/// pivots equal to 1 with zeros above and below. Returns the rank.
template <std::size_t N>
std::size_t rref(const gf::Field& f, std::span<Vec<N>> rows) noexcept {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < N && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    scale(f, rows[rank], f.inv(rows[rank][col]));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank) axpy(f, rows[i], rows[i][col], rows[rank]);
    }
    ++rank;
  }
  return rank;
}

template <std::size_t N>
std::size_t rank_of(const gf::Field& f, std::span<const Vec<N>> rows) {
  std::vector<Vec<N>> copy(rows.begin(), rows.end());
  return rref<N>(f, copy);
}

/// Basis of {x : <row, x> = 0 for every row}, in reduced row-echelon form.
template <std::size_t N>
std::vector<Vec<N>> null_space(const gf::Field& f, std::span<const Vec<N>> rows) {
  std::vector<Vec<N>> m(rows.begin(), rows.end());
  const std::size_t rank = rref<N>(f, m);
  std::array<int, N> pivot_row;
  pivot_row.fill(-1);
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      if (m[i][j] != 0) {
        pivot_row[j] = static_cast<int>(i);
        break;
      }
    }
  }
  std::vector<Vec<N>> basis;
  for (std::size_t free = 0; free < N; ++free) {
    if (pivot_row[free] >= 0) continue;
    Vec<N> v{};
    v[free] = 1;
    for (std::size_t j = 0; j < N; ++j) {
      if (pivot_row[j] >= 0) v[j] = m[static_cast<std::size_t>(pivot_row[j])][free];
    }
    basis.push_back(v);
  }
  rref<N>(f, basis);
  return basis;
}

/// Square matrices acting on column vectors.
template <std::size_t N>
using Mat = std::array<Vec<N>, N>;

template <std::size_t N>
Mat<N> identity() noexcept {
  Mat<N> m{};
  for (std::size_t i = 0; i < N; ++i) m[i][i] = 1;
  return m;
}

template <std::size_t N>
Vec<N> apply(const gf::Field& f, const Mat<N>& m, const Vec<N>& v) noexcept {
  Vec<N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = dot(f, m[i], v);
  return out;
}

template <std::size_t N>
Mat<N> multiply(const gf::Field& f, const Mat<N>& a, const Mat<N>& b) noexcept {
  Mat<N> c{};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t k = 0; k < N; ++k) {
      if (a[i][k] != 0) axpy(f, c[i], a[i][k], b[k]);
    }
  }
  return c;
}

template <std::size_t N>
Mat<N> transpose(const Mat<N>& a) noexcept {
  Mat<N> t{};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) t[j][i] = a[i][j];
  }
  return t;
}

template <std::size_t N>
bool is_invertible(const gf::Field& f, const Mat<N>& m) {
  Mat<N> copy = m;
  return rref<N>(f, copy) == N;
}

/// Determinant; signs are irrelevant in characteristic 2.
inline gf::Elem det3(const gf::Field& f, const Mat<3>& m) noexcept {
  auto mul3 = [&](gf::Elem a, gf::Elem b, gf::Elem c) { return f.mul(f.mul(a, b), c); };
  return static_cast<gf::Elem>(mul3(m[0][0], m[1][1], m[2][2]) ^ mul3(m[0][1], m[1][2], m[2][0]) ^
                               mul3(m[0][2], m[1][0], m[2][1]) ^ mul3(m[0][2], m[1][1], m[2][0]) ^
                               mul3(m[0][0], m[1][2], m[2][1]) ^ mul3(m[0][1], m[1][0], m[2][2]));
}

}  // namespace vnets
