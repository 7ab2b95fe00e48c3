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

#include <stdexcept>

#include "doctest.h"
#include "qlock/gf2x.hpp"
#include "qlock/rng.hpp"

using namespace qlock;
using gf2x::Poly2;

namespace {

// Independent irreducibility oracle: no root-free factor splits p.
bool divides(Poly2 q, Poly2 p) { return gf2x::poly_mod(p, q) == 0; }

bool irreducible_by_trial_division(Poly2 p) {
  int d = gf2x::degree(p);
  if (d < 1) return false;
  for (Poly2 q = 2; gf2x::degree(q) < d; ++q) {
    if (gf2x::degree(q) >= 1 && divides(q, p)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("find_irreducible picks the smallest irreducible") {
  CHECK(gf2x::find_irreducible(1) == 0b10);   // X
  CHECK(gf2x::find_irreducible(2) == 0b111);  // X^2+X+1
  CHECK(gf2x::find_irreducible(3) == 0b1011); // X^3+X+1
  for (int m = 1; m <= 12; ++m) {
    Poly2 p = gf2x::find_irreducible(m);
    CHECK(gf2x::degree(p) == m);
    CHECK(irreducible_by_trial_division(p));
    // nothing smaller of the same degree is irreducible
    for (Poly2 q = Poly2{1} << m; q < p; ++q) {
      CHECK_FALSE(irreducible_by_trial_division(q));
    }
  }
}

TEST_CASE("degree-3 exhaustive: X^3+X+1 is the only smaller candidate") {
  // all degree-3 candidates with nonzero constant term: 9, 11, 13, 15
  CHECK_FALSE(irreducible_by_trial_division(0b1001));
  CHECK(irreducible_by_trial_division(0b1011));
  CHECK(irreducible_by_trial_division(0b1101));
  CHECK_FALSE(irreducible_by_trial_division(0b1111));
}

TEST_CASE("field arithmetic hand examples") {
  auto f4 = gf2x::FieldContext::make(2);
  CHECK(f4.mul(0b10, 0b10) == 0b11);  // X * X = X + 1
  CHECK(f4.add(0b10, 0b10) == 0);
  auto f8 = gf2x::FieldContext::make(3);
  CHECK(f8.modulus() == 0b1011);
  CHECK(f8.pow(0b010, 7) == 1);
  CHECK_THROWS_WITH_AS(f8.inv(0), "zero has no inverse", std::domain_error);
}

TEST_CASE("field axioms exhaustive for m <= 4") {
  for (int m = 1; m <= 4; ++m) {
    auto f = gf2x::FieldContext::make(m);
    for (std::uint32_t a = 0; a < f.order(); ++a) {
      for (std::uint32_t b = 0; b < f.order(); ++b) {
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (std::uint32_t c = 0; c < f.order(); ++c) {
          REQUIRE(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
          REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
      if (a != 0) {
        CHECK(f.mul(a, f.inv(a)) == 1);
      }
    }
  }
}

TEST_CASE("generator has full multiplicative order for m <= 12") {
  for (int m = 1; m <= 12; ++m) {
    auto f = gf2x::FieldContext::make(m);
    std::uint32_t x = 1;
    std::uint64_t order = 0;
    do {
      x = f.mul(x, f.generator());
      ++order;
    } while (x != 1);
    CHECK(order == f.order() - 1);
  }
}

TEST_CASE("evaluation hand examples over GF(8)") {
  auto f8 = gf2x::FieldContext::make(3);
  gf2x::FieldPoly ident = {0, 1};  // f(T) = T
  std::vector<std::uint32_t> points = {0b001, 0b010};
  auto vals = gf2x::poly_eval(f8, ident, points);
  CHECK(vals[0] == 0b001);
  CHECK(vals[1] == 0b010);

  gf2x::FieldPoly constant = {5};
  auto cvals = gf2x::poly_eval(f8, constant, points);
  CHECK(cvals[0] == 5);
  CHECK(cvals[1] == 5);
  auto back = gf2x::poly_interpolate(f8, points, cvals);
  CHECK(back[0] == 5);
  CHECK(back[1] == 0);
}

TEST_CASE("repeated evaluation points are rejected") {
  auto f8 = gf2x::FieldContext::make(3);
  gf2x::FieldPoly p = {1, 2};
  std::vector<std::uint32_t> pts = {3, 3};
  CHECK_THROWS_WITH_AS(gf2x::poly_eval(f8, p, pts), "evaluation points not distinct",
                       std::invalid_argument);
  std::vector<std::uint32_t> vals = {1, 2};
  CHECK_THROWS_AS(gf2x::poly_interpolate(f8, pts, vals), std::invalid_argument);
}

TEST_CASE("interpolation inverts evaluation on random polynomials") {
  for (int m = 1; m <= 12; ++m) {
    auto f = gf2x::FieldContext::make(m);
    SplitStream rng(99, m);
    int degree = std::min(5, static_cast<int>(f.order()));
    for (int trial = 0; trial < 1000; ++trial) {
      gf2x::FieldPoly poly(degree);
      for (auto& c : poly) c = static_cast<std::uint32_t>(rng.next_below(f.order()));
      std::vector<std::uint32_t> pts;
      while (pts.size() < poly.size()) {
        auto p = static_cast<std::uint32_t>(rng.next_below(f.order()));
        bool dup = false;
        for (auto q : pts) dup = dup || (q == p);
        if (!dup) pts.push_back(p);
      }
      auto vals = gf2x::poly_eval(f, poly, pts);
      REQUIRE(gf2x::poly_interpolate(f, pts, vals) == poly);
    }
  }
}

TEST_CASE("random degree-3 round trip over GF(16)") {
  auto f = gf2x::FieldContext::make(4);
  SplitStream rng(7, 0);
  for (int trial = 0; trial < 100; ++trial) {
    gf2x::FieldPoly poly(4);
    for (auto& c : poly) c = static_cast<std::uint32_t>(rng.next_below(16));
    std::vector<std::uint32_t> pts = {1, 2, 4, 9};
    auto vals = gf2x::poly_eval(f, poly, pts);
    REQUIRE(gf2x::poly_interpolate(f, pts, vals) == poly);
  }
}
