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

#ifndef QLOCK_QSIM_HPP_
#define QLOCK_QSIM_HPP_

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qlock/rng.hpp"

namespace qlock::qsim {

using cplx = std::complex<double>;

/* Global ordering convention: qubit 0 carries the most significant bit of
   the basis index, so the A system (a prefix of qubits) occupies the top
   index bits and the A outcome of index i is i >> (n - a_qubits). */

struct StateVector {
  int qubits = 0;
  std::vector<cplx> amps;

  std::size_t dim() const { return amps.size(); }
  double norm() const;
};

StateVector basis_state(int qubits, std::uint64_t index);

// 2^n i.i.d. standard complex Gaussians, normalized. Desk cap n <= 14.
StateVector haar_state(int qubits, SplitStream& rng);

struct Stage {
  enum class Kind { HadamardMask, DiagonalPhase, BasisPermutation };
  Kind kind = Kind::HadamardMask;
  // HadamardMask: H applied on index-bit positions set in index_bit_mask.
  std::uint64_t index_bit_mask = 0;
  // DiagonalPhase: amplitude of |v> multiplied by i^phase_exponent[v].
  std::vector<std::uint8_t> phase_exponent;
  // BasisPermutation: |x> -> |perm[x]>; inverse carried and verified.
  std::vector<std::uint32_t> perm;
  std::vector<std::uint32_t> perm_inv;
};

// qubit_mask bit q set = apply H on qubit q.
Stage hadamard_mask_stage(int qubits, std::uint64_t qubit_mask);
Stage diagonal_phase_stage(std::vector<std::uint8_t> exponents);
// Verifies bijectivity; throws otherwise.
Stage basis_permutation_stage(std::vector<std::uint32_t> perm);

struct StructuredUnitary {
  int qubits = 0;
  std::vector<Stage> stages;  // applied front to back
};

void apply_in_place(const StructuredUnitary& u, StateVector& psi);
void apply_inverse_in_place(const StructuredUnitary& u, StateVector& psi);
StateVector apply(const StructuredUnitary& u, const StateVector& psi);
StateVector apply_inverse(const StructuredUnitary& u, const StateVector& psi);

// U^dagger as a stage list (stages reversed, each stage inverted).
StructuredUnitary adjoint(const StructuredUnitary& u);

// Dense matrix of the unitary; test oracle, qubits <= 10.
std::vector<std::vector<cplx>> dense_matrix(const StructuredUnitary& u);

std::vector<double> outcome_distribution(const StateVector& psi);

// Marginal of the computational-basis outcome on the first a_qubits.
std::vector<double> marginal_on_prefix(const StateVector& psi, int a_qubits);
std::vector<double> marginal_on_prefix(std::span<const double> probs, int qubits,
                                       int a_qubits);

// Marginal on an arbitrary qubit subset (outcome bits in the given order).
std::vector<double> marginal_on_qubits(const StateVector& psi,
                                       std::span<const int> qubit_set);

double total_variation(std::span<const double> p, std::span<const double> q);
double tv_from_uniform(std::span<const double> p);
double fidelity(std::span<const double> p, std::span<const double> q);
double shannon_entropy_bits(std::span<const double> p);
double min_entropy_bits(std::span<const double> p);

struct DistanceReport {
  double tv = 0;
  double fidelity = 0;
  double shannon_bits = 0;     // of p
  double minentropy_bits = 0;  // of p
};

// Metrics of p against q; verifies 1 - F <= TV <= sqrt(1 - F^2).
DistanceReport distance_and_entropy(std::span<const double> p,
                                    std::span<const double> q);

}  // namespace qlock::qsim

#endif  // QLOCK_QSIM_HPP_
