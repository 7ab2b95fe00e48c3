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

#include <bit>
#include <set>

#include "doctest.h"
#include "qlock/codes.hpp"
#include "qlock/experiments.hpp"

using namespace qlock;

TEST_CASE("hadamard code n'=2 matches the hand enumeration") {
  auto code = codes::hadamard(2);
  CHECK(code.length == 4);
  // coordinate strings 0000, 0101, 0011, 0110 with position z = bit z
  CHECK(code.codewords == std::vector<std::uint64_t>{0b0000, 0b1010, 0b1100, 0b0110});
  CHECK(code.min_distance == 2);
}

TEST_CASE("hadamard code n'=1") {
  auto code = codes::hadamard(1);
  CHECK(code.codewords == std::vector<std::uint64_t>{0b00, 0b10});
  CHECK(code.min_distance == 1);
}

TEST_CASE("hadamard codes: distance n/2 and constant nonzero weight") {
  for (int np = 1; np <= 6; ++np) {
    auto code = codes::hadamard(np);
    int n = 1 << np;
    CHECK(code.length == n);
    CHECK(static_cast<int>(code.codewords.size()) == n);
    CHECK(code.min_distance == n / 2);
    for (std::size_t i = 1; i < code.codewords.size(); ++i) {
      CHECK(std::popcount(code.codewords[i]) == n / 2);
    }
    CHECK(codes::is_linear(code));
  }
}

TEST_CASE("augmented hadamard doubles the codeword count at the same distance") {
  for (int np = 2; np <= 4; ++np) {
    auto code = codes::augmented_hadamard(np);
    int n = 1 << np;
    CHECK(static_cast<int>(code.codewords.size()) == 2 * n);
    CHECK(code.min_distance == n / 2);
    CHECK(codes::is_linear(code));
  }
}

TEST_CASE("rs concat hadamard: 16 words of length 12, exact distance") {
  auto code = codes::rs_concat_hadamard(2, 2, 3);
  CHECK(code.length == 12);
  CHECK(code.codewords.size() == 16);
  std::set<std::uint64_t> uniq(code.codewords.begin(), code.codewords.end());
  CHECK(uniq.size() == 16);
  CHECK(code.min_distance == codes::exact_min_distance(code.codewords));
  CHECK(code.min_distance == 4);  // (3-2+1) outer * 2 inner
  CHECK(codes::is_linear(code));
}

TEST_CASE("inconsistent rs parameters are rejected") {
  CHECK_THROWS_AS(codes::rs_concat_hadamard(2, 4, 3), std::invalid_argument);
  CHECK_THROWS_AS(codes::rs_concat_hadamard(2, 1, 9), std::invalid_argument);
}

TEST_CASE("punctured width-8 hadamard gives the [6,8 words,3] mask code") {
  auto code = experiments::desk_code(6, false);
  CHECK(code.length == 6);
  CHECK(code.codewords.size() == 8);
  CHECK(code.min_distance == 3);
}
