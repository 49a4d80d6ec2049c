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
 * @file gf.hpp
 * @brief Arithmetic in GF(2^e), 1 <= e <= 8, polynomial basis.
 *
 * An element is stored as an integer 0 ... 2^e - 1 whose bit i is the coefficient of t^i.
 * Addition is XOR and does not depend on the modulus; everything else goes through
 * precomputed tables owned by a Field. Field objects are immutable after construction
 * and can be shared by any number of threads.
 *
 * Hot loops work on raw Elem values together with a `const Field&`. FieldElement is a
 * checked value type for code that wants operators and mismatch detection.
 */

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vnets/errors.hpp"

namespace vnets::gf {

using Elem = std::uint8_t;

inline constexpr unsigned kMaxDegree = 8;

/// Default irreducible moduli, bit i = coefficient of t^i (leading term included).
inline constexpr std::array<std::uint32_t, kMaxDegree + 1> kDefaultModuli = {
    0,
    0x3,    // t + 1
    0x7,    // t^2 + t + 1
    0xB,    // t^3 + t + 1
    0x13,   // t^4 + t + 1
    0x25,   // t^5 + t^2 + 1
    0x43,   // t^6 + t + 1
    0x83,   // t^7 + t + 1
    0x11D,  // t^8 + t^4 + t^3 + t^2 + 1
};

namespace detail {

inline int poly_degree(std::uint32_t p) {
  int d = -1;
  while (p != 0) {
    ++d;
    p >>= 1;
  }
  return d;
}

inline std::uint32_t poly_mod(std::uint32_t a, std::uint32_t m) {
  const int dm = poly_degree(m);
  for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) a ^= m << (da - dm);
  return a;
}

}  // namespace detail

/// True iff p (bit vector, degree >= 1) has no factor of degree 1 ... deg(p)/2 over GF(2).
inline bool is_irreducible(std::uint32_t p) {
  const int d = detail::poly_degree(p);
  if (d < 1) return false;
  for (int k = 1; 2 * k <= d; ++k) {
    for (std::uint32_t f = 1u << k; f < (2u << k); ++f) {
      if (detail::poly_mod(p, f) == 0) return false;
    }
  }
  return true;
}

class Field {
 public:
  explicit Field(unsigned degree) : Field(degree, checked_default(degree)) {}

  Field(unsigned degree, std::uint32_t modulus) : degree_(degree), modulus_(modulus) {
    if (degree < 1 || degree > kMaxDegree) {
      throw UsageError("GF(2^e) supports 1 <= e <= 8, got e = " + std::to_string(degree));
    }
    if (detail::poly_degree(modulus) != static_cast<int>(degree)) {
      throw UsageError("modulus degree does not match extension degree " + std::to_string(degree));
    }
    if (!is_irreducible(modulus)) throw UsageError("modulus is reducible over GF(2)");
    order_ = 1u << degree;
    build_tables();
  }

  /// Field of order q (a power of two, 2 <= q <= 256) with the default modulus.
  static Field of_order(unsigned q) { return Field(degree_of(q)); }

  static unsigned degree_of(unsigned q) {
    if (q < 2 || q > 256 || (q & (q - 1)) != 0) {
      throw UsageError("q must be a power of two with 2 <= q <= 256, got " + std::to_string(q));
    }
    unsigned e = 0;
    while ((1u << e) < q) ++e;
    return e;
  }

  unsigned degree() const noexcept { return degree_; }
  unsigned order() const noexcept { return order_; }
  std::uint32_t modulus() const noexcept { return modulus_; }

  bool same_spec(const Field& other) const noexcept {
    return degree_ == other.degree_ && modulus_ == other.modulus_;
  }

  bool contains(unsigned value) const noexcept { return value < order_; }

  Elem element(unsigned value) const {
    if (!contains(value)) {
      throw UsageError("value " + std::to_string(value) + " is not an element of GF(" +
                       std::to_string(order_) + ")");
    }
    return static_cast<Elem>(value);
  }

  static constexpr Elem add(Elem a, Elem b) noexcept { return static_cast<Elem>(a ^ b); }

  Elem mul(Elem a, Elem b) const noexcept { return mul_[(static_cast<std::size_t>(a) << degree_) | b]; }

  Elem inv(Elem a) const {
    if (a == 0) throw DomainError("inverse of zero");
    return inv_[a];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem square(Elem a) const noexcept { return mul(a, a); }

  Elem pow(Elem a, std::uint64_t n) const noexcept {
    Elem result = 1;
    Elem base = a;
    while (n != 0) {
      if (n & 1u) result = mul(result, base);
      base = mul(base, base);
      n >>= 1;
    }
    return result;
  }

  /// Unique b with b^2 = a.
  Elem sqrt(Elem a) const noexcept { return sqrt_[a]; }

  /// Absolute trace a + a^2 + ... + a^(2^(e-1)), as 0 or 1.
  unsigned trace(Elem a) const noexcept { return trace_[a]; }

  /// Root of x^2 + x = c, the one with bit 0 clear; empty iff trace(c) = 1.
  std::optional<Elem> solve_artin_schreier(Elem c) const noexcept {
    if (trace_[c] != 0) return std::nullopt;
    for (unsigned x = 0; x < order_; x += 2) {
      const auto xe = static_cast<Elem>(x);
      if (add(square(xe), xe) == c) return xe;
    }
    return std::nullopt;  // unreachable for a valid field
  }

  /// All roots in the field of sum coeffs[i] t^i, by exhaustive evaluation.
  std::vector<Elem> univariate_roots(std::span<const Elem> coeffs) const {
    bool nonzero = false;
    for (Elem c : coeffs) nonzero = nonzero || c != 0;
    if (!nonzero) throw UsageError("root finding on the zero polynomial");
    std::vector<Elem> roots;
    for (unsigned x = 0; x < order_; ++x) {
      if (evaluate(coeffs, static_cast<Elem>(x)) == 0) roots.push_back(static_cast<Elem>(x));
    }
    return roots;
  }

  Elem evaluate(std::span<const Elem> coeffs, Elem x) const noexcept {
    Elem acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = add(mul(acc, x), *it);
    return acc;
  }

  /// Smallest generator of the multiplicative group.
  Elem primitive_element() const noexcept { return primitive_; }

  std::vector<Elem> elements() const {
    std::vector<Elem> all(order_);
    for (unsigned i = 0; i < order_; ++i) all[i] = static_cast<Elem>(i);
    return all;
  }

 private:
  static std::uint32_t checked_default(unsigned degree) {
    if (degree < 1 || degree > kMaxDegree) {
      throw UsageError("GF(2^e) supports 1 <= e <= 8, got e = " + std::to_string(degree));
    }
    return kDefaultModuli[degree];
  }

  Elem slow_mul(unsigned a, unsigned b) const noexcept {
    std::uint32_t prod = 0;
    for (unsigned i = 0; i < degree_; ++i) {
      if ((b >> i) & 1u) prod ^= a << i;
    }
    return static_cast<Elem>(detail::poly_mod(prod, modulus_));
  }

  void build_tables() {
    mul_.assign(static_cast<std::size_t>(order_) * order_, 0);
    for (unsigned a = 0; a < order_; ++a) {
      for (unsigned b = 0; b < order_; ++b) mul_[(a << degree_) | b] = slow_mul(a, b);
    }
    inv_.assign(order_, 0);
    sqrt_.assign(order_, 0);
    trace_.assign(order_, 0);
    for (unsigned a = 1; a < order_; ++a) {
      for (unsigned b = 1; b < order_; ++b) {
        if (mul(static_cast<Elem>(a), static_cast<Elem>(b)) == 1) {
          inv_[a] = static_cast<Elem>(b);
          break;
        }
      }
    }
    for (unsigned a = 0; a < order_; ++a) {
      sqrt_[square(static_cast<Elem>(a))] = static_cast<Elem>(a);
      Elem t = 0;
      Elem power = static_cast<Elem>(a);
      for (unsigned i = 0; i < degree_; ++i) {
        t = add(t, power);
        power = square(power);
      }
      trace_[a] = t;
    }
    const unsigned group_order = order_ - 1;
    primitive_ = 1;
    for (unsigned g = 1; g < order_; ++g) {
      unsigned ord = 1;
      for (Elem x = static_cast<Elem>(g); x != 1; x = mul(x, static_cast<Elem>(g))) ++ord;
      if (ord == group_order) {
        primitive_ = static_cast<Elem>(g);
        break;
      }
    }
  }

  unsigned degree_;
  std::uint32_t modulus_;
  unsigned order_ = 0;
  Elem primitive_ = 1;
  std::vector<Elem> mul_;
  std::vector<Elem> inv_;
  std::vector<Elem> sqrt_;
  std::vector<Elem> trace_;
};

/// Checked element bound to a Field. The Field must outlive it.
class FieldElement {
 public:
  FieldElement(const Field& field, unsigned value) : field_(&field), value_(field.element(value)) {}

  const Field& field() const noexcept { return *field_; }
  Elem value() const noexcept { return value_; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {*a.field_, Field::add(a.value_, b.value_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + b; }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {*a.field_, a.field_->mul(a.value_, b.value_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {*a.field_, a.field_->div(a.value_, b.value_)};
  }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_->same_spec(*b.field_) && a.value_ == b.value_;
  }

  FieldElement inv() const { return {*field_, field_->inv(value_)}; }
  FieldElement pow(std::uint64_t n) const { return {*field_, field_->pow(value_, n)}; }
  FieldElement sqrt() const { return {*field_, field_->sqrt(value_)}; }
  unsigned trace() const { return field_->trace(value_); }

 private:
  static void check(const FieldElement& a, const FieldElement& b) {
    if (!a.field_->same_spec(*b.field_)) throw UsageError("field elements from different fields");
  }

  const Field* field_;
  Elem value_;
};

}  // namespace vnets::gf
