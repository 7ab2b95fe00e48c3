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

#include <cmath>

#include "doctest.h"
#include "qlock/permext.hpp"
#include "qlock/rng.hpp"

using namespace qlock;

TEST_CASE("lhl over GF(4) with seed X is the multiplication table") {
  auto f4 = gf2x::FieldContext::make(2);
  auto fam = permext::make_lhl(f4, 1, 2);
  // seed index 1 = field element 2 = X
  CHECK(fam->forward(1, 0) == 0);
  CHECK(fam->forward(1, 1) == 2);
  CHECK(fam->forward(1, 2) == 3);
  CHECK(fam->forward(1, 3) == 1);
  // seed index 0 = field element 1 = identity permutation
  for (std::uint64_t x = 0; x < 4; ++x) CHECK(fam->forward(0, x) == x);
}

TEST_CASE("every nonzero lhl seed is a bijection (GF(8) exhaustive)") {
  auto f8 = gf2x::FieldContext::make(3);
  auto fam = permext::make_lhl(f8, 1, 3);
  CHECK(fam->seed_count() == 7);
  CHECK(permext::exhaustive_bijectivity_check(*fam));
}

TEST_CASE("rs condenser hand example over GF(8)") {
  auto f8 = gf2x::FieldContext::make(3);
  auto fam = permext::make_rs_condenser(f8, 2, 1);
  // f(T) = T packs as symbols [0, 1]: x = 0 | (1 << 3)
  std::uint64_t x = std::uint64_t{1} << 3;
  // seed index 0 = y = 1: condensed [f(1)] = [1], residual [f(zeta)] = [zeta]
  std::uint64_t out = fam->forward(0, x);
  CHECK((out & 0x7) == 0b001);
  CHECK((out >> 3) == f8.generator());
  CHECK(fam->inverse(0, out) == x);
}

TEST_CASE("rs condenser on constants returns constants") {
  auto f16 = gf2x::FieldContext::make(4);
  auto fam = permext::make_rs_condenser(f16, 3, 1);
  for (std::uint64_t c : {std::uint64_t{5}, std::uint64_t{11}}) {
    std::uint64_t out = fam->forward(4, c);  // constant polynomial
    CHECK((out & 0xF) == c);
    CHECK(((out >> 4) & 0xF) == c);
    CHECK(((out >> 8) & 0xF) == c);
    CHECK(fam->inverse(4, out) == c);
  }
}

TEST_CASE("rs condenser round trip on 500 random inputs") {
  auto f16 = gf2x::FieldContext::make(4);
  auto fam = permext::make_rs_condenser(f16, 3, 2);
  SplitStream rng(5, 0);
  for (int trial = 0; trial < 500; ++trial) {
    std::uint64_t x = rng.next_below(std::uint64_t{1} << 12);
    std::size_t y = rng.next_below(fam->seed_count());
    REQUIRE(fam->inverse(y, fam->forward(y, x)) == x);
  }
}

TEST_CASE("zero seed stays excluded") {
  auto f8 = gf2x::FieldContext::make(3);
  auto fam = permext::make_rs_condenser(f8, 2, 1);
  CHECK(fam->seed_count() == 7);
  CHECK_THROWS_AS(fam->forward(7, 1), std::invalid_argument);
}

TEST_CASE("composition with the identity preserves the map") {
  auto f8 = gf2x::FieldContext::make(3);
  auto plain = permext::make_lhl(f8, 2, 3);
  auto composed = permext::compose_condensers(permext::make_identity(3, 3),
                                              permext::make_lhl(f8, 2, 3));
  CHECK(composed->seed_count() == plain->seed_count());
  for (std::size_t y = 0; y < plain->seed_count(); ++y) {
    for (std::uint64_t x = 0; x < 8; ++x) {
      REQUIRE(composed->forward(y, x) == plain->forward(y, x));
    }
  }
}

TEST_CASE("composed families stay bijective and multiply seed counts") {
  auto outer = permext::make_rs_condenser(gf2x::FieldContext::make(2), 3, 2);  // 6 -> 4
  auto inner = permext::make_lhl(gf2x::FieldContext::make(4), 2, 3);
  std::size_t souter = outer->seed_count();
  std::size_t sinner = inner->seed_count();
  auto composed = permext::compose_condensers(std::move(outer), std::move(inner));
  CHECK(composed->seed_count() == souter * sinner);
  CHECK(composed->input_bits() == 6);
  CHECK(composed->condensed_bits() == 2);
  CHECK(permext::exhaustive_bijectivity_check(*composed));
}

TEST_CASE("rs condenser needs enough distinct evaluation points") {
  // zeta has order q - 1, so at most q - 1 points are available
  CHECK_THROWS_AS(permext::make_rs_condenser(gf2x::FieldContext::make(2), 4, 2),
                  std::invalid_argument);
}

TEST_CASE("width mismatch on composition is rejected") {
  auto a = permext::make_lhl(gf2x::FieldContext::make(4), 2, 3);
  auto b = permext::make_lhl(gf2x::FieldContext::make(3), 1, 2);
  CHECK_THROWS_AS(
      permext::compose_condensers(std::move(a), std::move(b)),
      std::invalid_argument);
}

TEST_CASE("single-block leftover hash degenerates to plain lhl") {
  auto f6 = gf2x::FieldContext::make(6);
  auto plain = permext::make_lhl(f6, 3, 4);
  auto block = permext::make_block_lhl(f6, 1, 3, 4);
  CHECK(plain->seed_count() == block->seed_count());
  for (std::size_t y = 0; y < plain->seed_count(); y += 7) {
    for (std::uint64_t x = 0; x < 64; ++x) {
      REQUIRE(plain->forward(y, x) == block->forward(y, x));
    }
  }
}

TEST_CASE("block leftover hash is bijective per shared seed") {
  auto f3 = gf2x::FieldContext::make(3);
  auto fam = permext::make_block_lhl(f3, 3, 1, 6);  // 9 bits, 3 blocks
  CHECK(fam->input_bits() == 9);
  CHECK(fam->condensed_bits() == 3);
  CHECK(permext::exhaustive_bijectivity_check(*fam));
}

TEST_CASE("desk recursion at n = 12 is exhaustively bijective") {
  permext::GuvDeskParams params;
  params.input_bits = 12;
  params.k_in = 10;
  params.eps = 0.25;
  params.levels.push_back({.rs_field_bits = 3,
                           .rs_symbols = 4,
                           .rs_condensed_symbols = 2,
                           .lhl_blocks = 2,
                           .lhl_extract_bits = 2});
  params.levels.push_back({.rs_field_bits = 0,
                           .rs_symbols = 0,
                           .rs_condensed_symbols = 0,
                           .lhl_blocks = 1,
                           .lhl_extract_bits = 2});
  auto fam = permext::build_guv_desk(params);
  CHECK(fam->input_bits() == 12);
  CHECK(fam->condensed_bits() == 6);
  CHECK(fam->contract().empirical);
  CHECK(permext::exhaustive_bijectivity_check(*fam));
}

TEST_CASE("k below the construction minimum is rejected with the range") {
  permext::GuvDeskParams params;
  params.input_bits = 8;
  params.k_in = 2;
  params.eps = 0.25;
  params.levels.push_back({.rs_field_bits = 0,
                           .rs_symbols = 0,
                           .rs_condensed_symbols = 0,
                           .lhl_blocks = 1,
                           .lhl_extract_bits = 2});
  CHECK_THROWS_AS(permext::build_guv_desk(params), std::invalid_argument);
}

TEST_CASE("paper preset at n = 10^6 stays within the declared seed budget") {
  long long n = 1000000;
  double eps = 0.1;
  long long k = n / 2;
  auto spec = permext::paper_extractor_spec(n, k, eps);
  CHECK(spec.seed_bits <= permext::paper_d(n, eps));
  CHECK(spec.condensed_bits >= k / 4);
  CHECK_THROWS_AS(permext::paper_extractor_spec(n, 100, eps), std::invalid_argument);

  auto top = permext::paper_top_spec(n, k, eps, 0.25);
  CHECK(top.condensed_bits >= static_cast<long long>(0.75 * k));
  CHECK(top.children.size() >= 1);
}

TEST_CASE("paper preset recursion above the base cutoff") {
  long long n = 1LL << 40;
  double eps = 0.25;
  long long k = n / 4;
  auto spec = permext::paper_extractor_spec(n, k, eps);
  CHECK(spec.condensed_bits >= k / 4);
  CHECK(spec.seed_bits <= permext::paper_d(n, eps));
}

TEST_CASE("full-support source extracts exactly uniform bits") {
  auto f8 = gf2x::FieldContext::make(3);
  auto fam = permext::make_lhl(f8, 2, 3);
  auto source = permext::prefix_source(3, 3);
  auto rep = permext::eval_extractor_tv(*fam, source);
  CHECK(rep.tv_joint == doctest::Approx(0.0));
  CHECK(rep.gamma_mass == doctest::Approx(0.0));
}

TEST_CASE("GF(16) lhl m=1 flat 2^3 source obeys the leftover-hash bound") {
  auto f16 = gf2x::FieldContext::make(4);
  auto fam = permext::make_lhl(f16, 1, 3);
  SplitStream rng(12, 0);
  for (int trial = 0; trial < 10; ++trial) {
    auto source = permext::random_subset_source(4, 3, rng);
    auto rep = permext::eval_extractor_tv(*fam, source);
    REQUIRE(rep.tv_joint <= std::exp2((1 - 3) / 2.0) / 2 + std::exp2(-4) + 1e-12);
  }
}

TEST_CASE("residual min-entropy floor k - m - 1 over random flat sources") {
  SplitStream rng(77, 0);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 8 + 2 * static_cast<int>(rng.next_below(3));  // 8, 10, 12
    int m = 1 + static_cast<int>(rng.next_below(3));
    int k = m + 2 + static_cast<int>(rng.next_below(n - m - 2));
    auto fam = permext::make_lhl(gf2x::FieldContext::make(n), m, k);
    auto source = permext::random_subset_source(n, k, rng);
    auto rep = permext::eval_extractor_tv(*fam, source);
    REQUIRE(rep.residual_minentropy >= k - m - 1 - 1e-9);
    REQUIRE(rep.gamma_mass <= rep.tv_joint + 1e-12);
  }
}

TEST_CASE("tv is monotone in source min-entropy on nested prefix sources") {
  auto f10 = gf2x::FieldContext::make(10);
  auto fam = permext::make_lhl(f10, 2, 6);
  double prev = -1;
  for (int k = 10; k >= 4; --k) {
    auto rep = permext::eval_extractor_tv(*fam, permext::prefix_source(10, k));
    if (prev >= 0) REQUIRE(rep.tv_joint >= prev - 1e-12);
    prev = rep.tv_joint;
  }
}

TEST_CASE("composition error is sub-additive on flat sources") {
  // outer RS over GF(4) (6 -> 4 bits), inner lhl on 4 bits
  auto outer = permext::make_rs_condenser(gf2x::FieldContext::make(2), 3, 2);
  auto inner = permext::make_lhl(gf2x::FieldContext::make(4), 2, 3);
  auto outer2 = permext::make_rs_condenser(gf2x::FieldContext::make(2), 3, 2);
  auto inner2 = permext::make_lhl(gf2x::FieldContext::make(4), 2, 3);
  auto composed = permext::compose_condensers(std::move(outer2), std::move(inner2));

  SplitStream rng(13, 0);
  for (int trial = 0; trial < 5; ++trial) {
    auto source = permext::random_subset_source(6, 4, rng);
    auto rc = permext::eval_extractor_tv(*composed, source);
    auto ro = permext::eval_extractor_tv(*outer, source);
    // a bijection maps uniform to uniform, so the inner stage can only
    // shrink the distance; the sum bound holds a fortiori
    REQUIRE(rc.tv_joint <= ro.tv_joint + 1e-9);
    REQUIRE(rc.tv_joint <= ro.tv_joint + inner->contract().eps + 1e-9);
  }
}

TEST_CASE("exact mode refuses oversized instances; sampled mode runs") {
  auto f14 = gf2x::FieldContext::make(14);
  auto fam = permext::make_lhl(f14, 2, 7);
  auto source = permext::prefix_source(14, 7);
  CHECK_THROWS_AS(permext::eval_extractor_tv(*fam, source), std::invalid_argument);
  auto rep = permext::eval_extractor_tv(*fam, source, /*exact=*/false);
  CHECK(rep.tv_joint <= std::exp2(0.5 * (2 - 7) - 1.0) + std::exp2(-14) + 0.05);
  CHECK(rep.residual_minentropy >= 7 - 2 - 1 - 1e-9);
}
