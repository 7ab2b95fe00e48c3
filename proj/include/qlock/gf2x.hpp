// Copyright 2026 The qlock authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QLOCK_GF2X_HPP_
#define QLOCK_GF2X_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace qlock::gf2x {

/* Binary polynomials: bit i of the word is the coefficient of X^i
   (lowest bit = constant term). Field elements of GF(2^m) use the same
   packing, reduced modulo an irreducible polynomial of degree m. */
using Poly2 = std::uint64_t;

// Degree of p; -1 for the zero polynomial.
int degree(Poly2 p);

Poly2 poly_mod(Poly2 a, Poly2 modulus);
Poly2 poly_mulmod(Poly2 a, Poly2 b, Poly2 modulus);
Poly2 poly_gcd(Poly2 a, Poly2 b);

// Irreducibility over GF(2) by trial division (desk-scale degrees).
bool is_irreducible(Poly2 p);

// Smallest irreducible of degree m, ordered by the coefficient word as an
// integer. Deterministic; irreducibles exist for every m >= 1.
Poly2 find_irreducible(int m);

/* A concrete GF(2^m): modulus, a generator of the multiplicative group,
   and log/antilog tables for fast arithmetic. Immutable after
   construction; safe for shared concurrent reads. Supports m <= 16. */
class FieldContext {
 public:
  FieldContext() = default;  // empty; assign from make()/with_modulus()

  // Field with the smallest irreducible modulus of degree m and the
  // smallest element (as an integer) of multiplicative order 2^m - 1.
  static FieldContext make(int m);
  static FieldContext with_modulus(int m, Poly2 modulus);

  int bits() const { return m_; }
  std::uint32_t order() const { return size_; }  // 2^m
  Poly2 modulus() const { return modulus_; }
  std::uint32_t generator() const { return generator_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= size_ - 1) s -= size_ - 1;
    return exp_[s];
  }
  // Throws std::domain_error("zero has no inverse") on a == 0.
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::int64_t e) const;

 private:
  void build_tables();

  int m_ = 0;
  std::uint32_t size_ = 0;
  Poly2 modulus_ = 0;
  std::uint32_t generator_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
};

// Polynomial over GF(2^m); entry i is the coefficient of X^i.
using FieldPoly = std::vector<std::uint32_t>;

std::uint32_t poly_eval_at(const FieldContext& f, const FieldPoly& poly,
                           std::uint32_t x);

// Multipoint evaluation; points must be distinct.
std::vector<std::uint32_t> poly_eval(const FieldContext& f, const FieldPoly& poly,
                                     std::span<const std::uint32_t> points);

// Lagrange interpolation; exact inverse of poly_eval when |points| equals
// the degree bound. Throws on repeated points.
FieldPoly poly_interpolate(const FieldContext& f,
                           std::span<const std::uint32_t> points,
                           std::span<const std::uint32_t> values);

}  // namespace qlock::gf2x

#endif  // QLOCK_GF2X_HPP_
