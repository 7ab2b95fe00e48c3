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

#ifndef QLOCK_CODES_HPP_
#define QLOCK_CODES_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace qlock::codes {

/* Binary code stored explicitly; bit z of a codeword word is coordinate z.
   min_distance is the exact pairwise minimum, recomputed by enumeration
   whenever a code is built. */
struct BinaryCode {
  int length = 0;
  std::vector<std::uint64_t> codewords;
  int min_distance = 0;
};

int exact_min_distance(std::span<const std::uint64_t> codewords);

// Codeword for message x has coordinate v_z = x.z mod 2, z running over
// 0..2^n'-1 as integers. Length 2^n', 2^n' codewords, distance 2^{n'-1}.
BinaryCode hadamard(int n_prime);

// Hadamard code plus all complements (first-order Reed-Muller). Doubles
// the codeword count at the same length and minimum distance.
BinaryCode augmented_hadamard(int n_prime);

/* Reed-Solomon over GF(2^inner_n_prime), dimension rs_dimension, evaluated
   at the first rs_points field elements (as integers 0,1,...), each symbol
   encoded with the Hadamard code of the same width. Length
   rs_points * 2^inner_n_prime. */
BinaryCode rs_concat_hadamard(int inner_n_prime, int rs_dimension, int rs_points);

// Drops the given coordinates; remaining coordinates keep their relative
// order. Distance is recomputed.
BinaryCode punctured(const BinaryCode& code, std::span<const int> dropped);

bool is_linear(const BinaryCode& code);

}  // namespace qlock::codes

#endif  // QLOCK_CODES_HPP_
