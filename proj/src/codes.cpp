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

#include "qlock/codes.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qlock/gf2x.hpp"

namespace qlock::codes {

int exact_min_distance(std::span<const std::uint64_t> codewords) {
  int best = -1;
  for (std::size_t i = 0; i < codewords.size(); ++i) {
    for (std::size_t j = i + 1; j < codewords.size(); ++j) {
      if (codewords[i] == codewords[j]) {
        throw std::invalid_argument("codewords not distinct");
      }
      int d = std::popcount(codewords[i] ^ codewords[j]);
      if (best < 0 || d < best) best = d;
    }
  }
  return best < 0 ? 0 : best;
}

BinaryCode hadamard(int n_prime) {
  if (n_prime < 1 || n_prime > 6) throw std::invalid_argument("n' out of range");
  int n = 1 << n_prime;
  BinaryCode code;
  code.length = n;
  for (int x = 0; x < n; ++x) {
    std::uint64_t w = 0;
    for (int z = 0; z < n; ++z) {
      if (std::popcount(static_cast<unsigned>(x & z)) & 1) w |= std::uint64_t{1} << z;
    }
    code.codewords.push_back(w);
  }
  code.min_distance = exact_min_distance(code.codewords);
  return code;
}

BinaryCode augmented_hadamard(int n_prime) {
  BinaryCode code = hadamard(n_prime);
  std::uint64_t all = (code.length == 64) ? ~std::uint64_t{0}
                                          : (std::uint64_t{1} << code.length) - 1;
  std::size_t base = code.codewords.size();
  for (std::size_t i = 0; i < base; ++i) {
    code.codewords.push_back(code.codewords[i] ^ all);
  }
  code.min_distance = exact_min_distance(code.codewords);
  return code;
}

BinaryCode rs_concat_hadamard(int inner_n_prime, int rs_dimension, int rs_points) {
  if (inner_n_prime < 1 || inner_n_prime > 4) {
    throw std::invalid_argument("inner width out of range");
  }
  auto field = gf2x::FieldContext::make(inner_n_prime);
  int q = static_cast<int>(field.order());
  if (rs_points < 1 || rs_points > q || rs_dimension < 1 || rs_dimension > rs_points) {
    throw std::invalid_argument("inconsistent Reed-Solomon parameters");
  }
  if (rs_points * q > 62) throw std::invalid_argument("code length too large");

  std::vector<std::uint32_t> points(rs_points);
  for (int i = 0; i < rs_points; ++i) points[i] = static_cast<std::uint32_t>(i);

  BinaryCode code;
  code.length = rs_points * q;
  std::uint64_t message_count = 1;
  for (int i = 0; i < rs_dimension; ++i) message_count *= q;
  for (std::uint64_t msg = 0; msg < message_count; ++msg) {
    gf2x::FieldPoly poly(rs_dimension);
    std::uint64_t m = msg;
    for (int i = 0; i < rs_dimension; ++i) {
      poly[i] = static_cast<std::uint32_t>(m % q);
      m /= q;
    }
    std::uint64_t w = 0;
    for (int p = 0; p < rs_points; ++p) {
      std::uint32_t symbol = gf2x::poly_eval_at(field, poly, points[p]);
      for (int z = 0; z < q; ++z) {
        if (std::popcount(symbol & static_cast<std::uint32_t>(z)) & 1) {
          w |= std::uint64_t{1} << (p * q + z);
        }
      }
    }
    code.codewords.push_back(w);
  }
  code.min_distance = exact_min_distance(code.codewords);
  return code;
}

BinaryCode punctured(const BinaryCode& code, std::span<const int> dropped) {
  std::uint64_t drop_mask = 0;
  for (int z : dropped) {
    if (z < 0 || z >= code.length) throw std::invalid_argument("coordinate out of range");
    drop_mask |= std::uint64_t{1} << z;
  }
  BinaryCode out;
  out.length = code.length - std::popcount(drop_mask);
  for (std::uint64_t w : code.codewords) {
    std::uint64_t packed = 0;
    int pos = 0;
    for (int z = 0; z < code.length; ++z) {
      if (drop_mask >> z & 1) continue;
      if (w >> z & 1) packed |= std::uint64_t{1} << pos;
      ++pos;
    }
    out.codewords.push_back(packed);
  }
  out.min_distance = exact_min_distance(out.codewords);
  return out;
}

bool is_linear(const BinaryCode& code) {
  std::vector<std::uint64_t> sorted = code.codewords;
  std::sort(sorted.begin(), sorted.end());
  for (std::uint64_t a : code.codewords) {
    for (std::uint64_t b : code.codewords) {
      if (!std::binary_search(sorted.begin(), sorted.end(), a ^ b)) return false;
    }
  }
  return true;
}

}  // namespace qlock::codes
