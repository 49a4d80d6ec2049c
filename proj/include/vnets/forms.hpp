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

// Homogeneous polynomials in three variables over GF(2^e), dense coefficient storage.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vnets/errors.hpp"
#include "vnets/gf.hpp"
#include "vnets/linalg.hpp"

namespace vnets {

class TernaryForm {
 public:
  using Exponents = std::array<unsigned, 3>;

  explicit TernaryForm(unsigned degree) : degree_(degree), coeffs_(size_for(degree), 0) {}

  static TernaryForm linear(const Vec<3>& l) {
    TernaryForm f(1);
    f.set({1, 0, 0}, l[0]);
    f.set({0, 1, 0}, l[1]);
    f.set({0, 0, 1}, l[2]);
    return f;
  }

  static TernaryForm constant(gf::Elem c) {
    TernaryForm f(0);
    f.coeffs_[0] = c;
    return f;
  }

  unsigned degree() const noexcept { return degree_; }

  /// Monomials x^i y^j z^k of this degree, ordered by decreasing i then decreasing j.
  std::vector<Exponents> monomials() const {
    std::vector<Exponents> out;
    for (unsigned jk = 0; jk <= degree_; ++jk) {
      for (unsigned k = 0; k <= jk; ++k) out.push_back({degree_ - jk, jk - k, k});
    }
    return out;
  }

  gf::Elem coeff(const Exponents& e) const { return coeffs_[index(e)]; }
  void set(const Exponents& e, gf::Elem c) { coeffs_[index(e)] = c; }

  bool is_zero() const noexcept {
    for (auto c : coeffs_) {
      if (c != 0) return false;
    }
    return true;
  }

  /// True iff no monomial involves variable v.
  bool free_of(std::size_t v) const {
    for (const auto& e : monomials()) {
      if (e[v] != 0 && coeff(e) != 0) return false;
    }
    return true;
  }

  gf::Elem evaluate(const gf::Field& f, const Vec<3>& p) const {
    gf::Elem acc = 0;
    for (const auto& e : monomials()) {
      const gf::Elem c = coeff(e);
      if (c == 0) continue;
      acc ^= f.mul(c, f.mul(f.pow(p[0], e[0]), f.mul(f.pow(p[1], e[1]), f.pow(p[2], e[2]))));
    }
    return acc;
  }

  friend TernaryForm add(const TernaryForm& a, const TernaryForm& b) {
    if (a.degree_ != b.degree_) throw UsageError("adding forms of different degree");
    TernaryForm out = a;
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] ^= b.coeffs_[i];
    return out;
  }

  friend TernaryForm multiply(const gf::Field& f, const TernaryForm& a, const TernaryForm& b) {
    TernaryForm out(a.degree_ + b.degree_);
    const auto ma = a.monomials();
    const auto mb = b.monomials();
    for (const auto& ea : ma) {
      const gf::Elem ca = a.coeff(ea);
      if (ca == 0) continue;
      for (const auto& eb : mb) {
        const gf::Elem cb = b.coeff(eb);
        if (cb == 0) continue;
        const Exponents e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
        out.coeffs_[out.index(e)] ^= f.mul(ca, cb);
      }
    }
    return out;
  }

  TernaryForm scaled(const gf::Field& f, gf::Elem c) const {
    TernaryForm out = *this;
    for (auto& x : out.coeffs_) x = f.mul(c, x);
    return out;
  }

  /// g(v) = this(m v): variable i is replaced by row i of m.
  TernaryForm substitute(const gf::Field& f, const Mat<3>& m) const {
    std::array<TernaryForm, 3> images{linear(m[0]), linear(m[1]), linear(m[2])};
    TernaryForm out(degree_);
    for (const auto& e : monomials()) {
      const gf::Elem c = coeff(e);
      if (c == 0) continue;
      TernaryForm term = constant(c);
      for (std::size_t v = 0; v < 3; ++v) {
        for (unsigned k = 0; k < e[v]; ++k) term = multiply(f, term, images[v]);
      }
      out = add(out, term);
    }
    return out;
  }

  /// Exact quotient by the linear form l, or nothing if l does not divide this form.
  std::optional<TernaryForm> divide_by_linear(const gf::Field& f, const Vec<3>& l) const {
    if (degree_ == 0) return std::nullopt;
    std::size_t v = 0;
    while (v < 3 && l[v] == 0) ++v;
    if (v == 3) throw DomainError("division by the zero linear form");
    Vec<3> lead = l;
    scale(f, lead, f.inv(l[v]));  // now the coefficient of variable v is 1
    const TernaryForm divisor = linear(lead);
    TernaryForm rem = *this;
    TernaryForm quot(degree_ - 1);
    for (unsigned power = degree_; power >= 1; --power) {
      for (const auto& e : rem.monomials()) {
        if (e[v] != power) continue;
        const gf::Elem c = rem.coeff(e);
        if (c == 0) continue;
        Exponents qe = e;
        qe[v] -= 1;
        TernaryForm mono(degree_ - 1);
        mono.set(qe, c);
        quot = add(quot, mono);
        rem = add(rem, multiply(f, mono, divisor));
      }
    }
    if (!rem.is_zero()) return std::nullopt;
    return quot.scaled(f, f.inv(l[v]));
  }

  /// Polynomial in x, y, z with decimal coefficients.
  std::string to_string() const {
    static constexpr char kVars[3] = {'x', 'y', 'z'};
    std::string out;
    for (const auto& e : monomials()) {
      const gf::Elem c = coeff(e);
      if (c == 0) continue;
      if (!out.empty()) out += " + ";
      std::string mono;
      for (std::size_t v = 0; v < 3; ++v) {
        if (e[v] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += kVars[v];
        if (e[v] > 1) mono += "^" + std::to_string(e[v]);
      }
      if (mono.empty()) {
        out += std::to_string(c);
      } else {
        out += (c != 1 ? std::to_string(c) + "*" : std::string()) + mono;
      }
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const TernaryForm&, const TernaryForm&) = default;

 private:
  static std::size_t size_for(unsigned d) { return (d + 1) * (d + 2) / 2; }

  std::size_t index(const Exponents& e) const {
    if (e[0] + e[1] + e[2] != degree_) throw UsageError("monomial degree mismatch");
    const unsigned jk = e[1] + e[2];
    return jk * (jk + 1) / 2 + e[2];
  }

  unsigned degree_;
  std::vector<gf::Elem> coeffs_;
};

}  // namespace vnets
