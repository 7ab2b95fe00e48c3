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

#ifndef QLOCK_MUB_HPP_
#define QLOCK_MUB_HPP_

#include <cstdint>
#include <vector>

#include "qlock/codes.hpp"
#include "qlock/gf2x.hpp"
#include "qlock/qsim.hpp"

namespace qlock::mub {

/* Exact mutually unbiased bases from GF(2^n) arithmetic. Member 0 is the
   identity; member j >= 1 is D_u H^{x n} with u = bin(j-1) (little-endian)
   and D_u the diagonal of fourth roots of unity i^{T_u(v)}, where T_u is
   the Z_4 quadratic form derived from the multiplication table of the
   basis 1, theta, ..., theta^{n-1} with theta = X. */
struct GaloisMubFamily {
  int qubits = 0;
  int size = 0;  // r <= 2^n + 1
  gf2x::FieldContext field;
  // theta_powers[z] = X^z mod modulus for z in [0, 2n-1], coefficient bits.
  std::vector<std::uint64_t> theta_powers;
};

GaloisMubFamily build_galois_mub_tables(int qubits, int size);

// alpha_u(z) for member j >= 1; length 2n-1.
std::vector<std::uint8_t> alpha_vector(const GaloisMubFamily& fam, int j);

// T_u(v) = v^T N_u v mod 4 evaluated via the alpha vector; v_bits holds the
// component vector with bit x = v_x.
int galois_phase(const GaloisMubFamily& fam, int j, std::uint64_t v_bits);

qsim::StructuredUnitary galois_member(const GaloisMubFamily& fam, int j);

/* Hadamard-mask approximate MUBs: one member per codeword v, acting as H
   on the qubits where v is one. Cross overlaps obey
   |<x|H^{v+v'}|y>| <= 2^{-dist(v,v')/2}, so a code of distance gamma*n
   gives gamma-MUBs. */
struct HadamardMubFamily {
  int qubits = 0;
  std::vector<std::uint64_t> masks;  // bit z = qubit z
  double gamma = 0;
  int code_min_distance = 0;
};

HadamardMubFamily build_hadamard_family(const codes::BinaryCode& code);

qsim::StructuredUnitary hadamard_member(const HadamardMubFamily& fam, int j);

}  // namespace qlock::mub

#endif  // QLOCK_MUB_HPP_
