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

#include "qlock/mub.hpp"

#include <bit>
#include <stdexcept>

namespace qlock::mub {

GaloisMubFamily build_galois_mub_tables(int qubits, int size) {
  if (qubits < 1 || qubits > 14) throw std::invalid_argument("qubit count out of range");
  std::int64_t max_r = (std::int64_t{1} << qubits) + 1;
  if (size < 1 || size > max_r) throw std::invalid_argument("family size out of range");
  GaloisMubFamily fam;
  fam.qubits = qubits;
  fam.size = size;
  fam.field = gf2x::FieldContext::make(qubits);
  fam.theta_powers.resize(2 * qubits - 1);
  std::uint64_t x = 1;
  for (int z = 0; z < 2 * qubits - 1; ++z) {
    fam.theta_powers[z] = x;
    x <<= 1;
    if (x >> qubits & 1) x ^= fam.field.modulus();
  }
  return fam;
}

std::vector<std::uint8_t> alpha_vector(const GaloisMubFamily& fam, int j) {
  if (j < 1 || j >= fam.size) throw std::invalid_argument("member index out of range");
  std::uint64_t u = static_cast<std::uint64_t>(j - 1);
  std::vector<std::uint8_t> alpha(fam.theta_powers.size());
  for (std::size_t z = 0; z < alpha.size(); ++z) {
    alpha[z] = static_cast<std::uint8_t>(std::popcount(u & fam.theta_powers[z]) & 1);
  }
  return alpha;
}

int galois_phase(const GaloisMubFamily& fam, int j, std::uint64_t v_bits) {
  std::vector<std::uint8_t> alpha = alpha_vector(fam, j);
  int n = fam.qubits;
  // T_u(v) = sum_z (sum_x v_x v_{z-x}) alpha_u(z), arithmetic over Z then mod 4.
  int t = 0;
  for (int z = 0; z < 2 * n - 1; ++z) {
    if (!alpha[z]) continue;
    int lo = z - (n - 1) > 0 ? z - (n - 1) : 0;
    int c = 0;
    for (int xx = lo; xx <= z && xx < n; ++xx) {
      c += static_cast<int>((v_bits >> xx & 1) & (v_bits >> (z - xx) & 1));
    }
    t += c;
  }
  return t & 3;
}

qsim::StructuredUnitary galois_member(const GaloisMubFamily& fam, int j) {
  if (j < 0 || j >= fam.size) throw std::invalid_argument("member index out of range");
  qsim::StructuredUnitary u;
  u.qubits = fam.qubits;
  if (j == 0) return u;  // V_0 = identity
  int n = fam.qubits;
  std::uint64_t all = (std::uint64_t{1} << n) - 1;
  u.stages.push_back(qsim::hadamard_mask_stage(n, all));
  // Basis index i carries component v_x in bit (n-1-x); the phase table
  // is indexed by i directly.
  std::vector<std::uint8_t> expo(std::size_t{1} << n);
  std::vector<std::uint8_t> alpha = alpha_vector(fam, j);
  for (std::uint64_t idx = 0; idx < expo.size(); ++idx) {
    std::uint64_t v_bits = 0;
    for (int x = 0; x < n; ++x) {
      if (idx >> (n - 1 - x) & 1) v_bits |= std::uint64_t{1} << x;
    }
    int t = 0;
    for (int z = 0; z < 2 * n - 1; ++z) {
      if (!alpha[z]) continue;
      int lo = z - (n - 1) > 0 ? z - (n - 1) : 0;
      for (int xx = lo; xx <= z && xx < n; ++xx) {
        t += static_cast<int>((v_bits >> xx & 1) & (v_bits >> (z - xx) & 1));
      }
    }
    expo[idx] = static_cast<std::uint8_t>(t & 3);
  }
  u.stages.push_back(qsim::diagonal_phase_stage(std::move(expo)));
  return u;
}

HadamardMubFamily build_hadamard_family(const codes::BinaryCode& code) {
  if (code.length < 1 || code.length > 14) {
    throw std::invalid_argument("code length out of simulator range");
  }
  HadamardMubFamily fam;
  fam.qubits = code.length;
  fam.masks = code.codewords;
  fam.code_min_distance =
      code.codewords.size() > 1 ? code.min_distance : code.length;
  fam.gamma = static_cast<double>(fam.code_min_distance) / code.length;
  return fam;
}

qsim::StructuredUnitary hadamard_member(const HadamardMubFamily& fam, int j) {
  if (j < 0 || j >= static_cast<int>(fam.masks.size())) {
    throw std::invalid_argument("member index out of range");
  }
  qsim::StructuredUnitary u;
  u.qubits = fam.qubits;
  if (fam.masks[j] != 0) {
    u.stages.push_back(qsim::hadamard_mask_stage(fam.qubits, fam.masks[j]));
  }
  return u;
}

}  // namespace qlock::mub
