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

#include "qlock/gf2x.hpp"

#include <bit>
#include <stdexcept>

namespace qlock::gf2x {

int degree(Poly2 p) {
  return p == 0 ? -1 : 63 - std::countl_zero(p);
}

Poly2 poly_mod(Poly2 a, Poly2 modulus) {
  int dm = degree(modulus);
  if (dm < 0) throw std::invalid_argument("zero modulus");
  int da;
  while ((da = degree(a)) >= dm) a ^= modulus << (da - dm);
  return a;
}

Poly2 poly_mulmod(Poly2 a, Poly2 b, Poly2 modulus) {
  a = poly_mod(a, modulus);
  b = poly_mod(b, modulus);
  int dm = degree(modulus);
  Poly2 r = 0;
  while (a) {
    if (a & 1) r ^= b;
    a >>= 1;
    b <<= 1;
    if (degree(b) == dm) b ^= modulus;
  }
  return r;
}

Poly2 poly_gcd(Poly2 a, Poly2 b) {
  while (b) {
    Poly2 c = poly_mod(a, b);
    a = b;
    b = c;
  }
  return a;
}

bool is_irreducible(Poly2 p) {
  int d = degree(p);
  if (d < 1) return false;
  if (d == 1) return true;
  // Trial division by every polynomial of degree 1..d/2.
  for (Poly2 q = 2; degree(q) <= d / 2; ++q) {
    if (poly_mod(p, q) == 0) return false;
  }
  return true;
}

Poly2 find_irreducible(int m) {
  if (m < 1 || m > 62) throw std::invalid_argument("degree out of range");
  for (Poly2 p = Poly2{1} << m; p < Poly2{1} << (m + 1); ++p) {
    if (is_irreducible(p)) return p;
  }
  throw std::logic_error("unreachable: irreducibles exist for every degree");
}

namespace {

// Multiplication without tables, used while bootstrapping a context.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, Poly2 modulus) {
  return static_cast<std::uint32_t>(poly_mulmod(a, b, modulus));
}

std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e, Poly2 modulus) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = slow_mul(r, a, modulus);
    a = slow_mul(a, a, modulus);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

FieldContext FieldContext::with_modulus(int m, Poly2 modulus) {
  if (m < 1 || m > 16) throw std::invalid_argument("field width out of range");
  if (degree(modulus) != m || !is_irreducible(modulus)) {
    throw std::invalid_argument("modulus must be irreducible of the declared degree");
  }
  FieldContext f;
  f.m_ = m;
  f.size_ = std::uint32_t{1} << m;
  f.modulus_ = modulus;
  // Smallest element with full multiplicative order 2^m - 1.
  std::uint64_t group = f.size_ - 1;
  auto factors = prime_factors(group);
  for (std::uint32_t g = 1; g < f.size_; ++g) {
    bool full_order = true;
    for (std::uint64_t p : factors) {
      if (slow_pow(g, group / p, modulus) == 1) {
        full_order = false;
        break;
      }
    }
    if (group == 1) full_order = (g == 1);
    if (full_order) {
      f.generator_ = g;
      break;
    }
  }
  f.build_tables();
  return f;
}

FieldContext FieldContext::make(int m) {
  return with_modulus(m, find_irreducible(m));
}

void FieldContext::build_tables() {
  log_.assign(size_, 0);
  exp_.assign(size_, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i + 1 < size_; ++i) {
    exp_[i] = x;
    log_[x] = i;
    x = slow_mul(x, generator_, modulus_);
  }
  if (x != 1) throw std::logic_error("generator order check failed");
}

std::uint32_t FieldContext::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("zero has no inverse");
  if (a == 1) return 1;
  return exp_[(size_ - 1) - log_[a]];
}

std::uint32_t FieldContext::pow(std::uint32_t a, std::int64_t e) const {
  if (a == 0) {
    if (e <= 0) throw std::domain_error("zero has no inverse");
    return 0;
  }
  std::int64_t group = size_ - 1;
  std::int64_t k = (static_cast<std::int64_t>(log_[a]) * (e % group)) % group;
  if (k < 0) k += group;
  return exp_[k];
}

std::uint32_t poly_eval_at(const FieldContext& f, const FieldPoly& poly,
                           std::uint32_t x) {
  std::uint32_t acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;) acc = f.add(f.mul(acc, x), poly[i]);
  return acc;
}

std::vector<std::uint32_t> poly_eval(const FieldContext& f, const FieldPoly& poly,
                                     std::span<const std::uint32_t> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) {
        throw std::invalid_argument("evaluation points not distinct");
      }
    }
  }
  std::vector<std::uint32_t> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = poly_eval_at(f, poly, points[i]);
  }
  return out;
}

FieldPoly poly_interpolate(const FieldContext& f,
                           std::span<const std::uint32_t> points,
                           std::span<const std::uint32_t> values) {
  std::size_t n = points.size();
  if (values.size() != n) throw std::invalid_argument("point/value size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i] == points[j]) {
        throw std::invalid_argument("evaluation points not distinct");
      }
    }
  }
  // Lagrange: sum_i values[i] * prod_{j != i} (X - points[j]) / (points[i] - points[j]).
  FieldPoly result(n, 0);
  FieldPoly basis;
  for (std::size_t i = 0; i < n; ++i) {
    basis.assign(1, 1);  // running product, degree grows to n-1
    std::uint32_t denom = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      // multiply basis by (X + points[j]); characteristic 2, so minus is plus
      basis.push_back(0);
      for (std::size_t k = basis.size(); k-- > 1;) {
        basis[k] = f.add(basis[k - 1], f.mul(basis[k], points[j]));
      }
      basis[0] = f.mul(basis[0], points[j]);
      denom = f.mul(denom, f.add(points[i], points[j]));
    }
    std::uint32_t coeff = f.mul(values[i], f.inv(denom));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      result[k] = f.add(result[k], f.mul(coeff, basis[k]));
    }
  }
  return result;
}

}  // namespace qlock::gf2x
