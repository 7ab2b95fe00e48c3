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

#ifndef QLOCK_UREL_HPP_
#define QLOCK_UREL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qlock/mub.hpp"
#include "qlock/permext.hpp"
#include "qlock/qsim.hpp"

namespace qlock::urel {

struct UnitaryFamily {
  int qubits = 0;
  int a_qubits = 0;  // A = first a_qubits qubits unless a_positions overrides
  std::vector<qsim::StructuredUnitary> members;
  std::string provenance = "custom";
  double declared_eps = -1;  // < 0: empirical only
  // Non-empty for parallel compositions, where A is not a qubit prefix.
  std::vector<int> a_positions;

  int size() const { return static_cast<int>(members.size()); }
  std::uint64_t d_a() const { return std::uint64_t{1} << a_qubits; }
  std::uint64_t d_b() const { return std::uint64_t{1} << (qubits - a_qubits); }
};

UnitaryFamily family_from_galois(const mub::GaloisMubFamily& fam, int a_qubits);
UnitaryFamily family_from_hadamard(const mub::HadamardMubFamily& fam, int a_qubits);

/* Members are all products P_y V_j in (j, y) lexicographic order, where
   P_y is the basis permutation induced by the extractor seed y and the
   extracted bits land on the A system. Padded to the next power of two by
   repeating trailing members. */
UnitaryFamily build_metric_ur(const mub::GaloisMubFamily& mubs,
                              const permext::PermutationFamily& ext,
                              bool pad_pow2 = true);
UnitaryFamily build_metric_ur(const mub::HadamardMubFamily& mubs,
                              const permext::PermutationFamily& ext,
                              bool pad_pow2 = true);

/* Sequential composition: the second family acts on the B system of the
   first; member (k1,k2) is (1_{A1} x U2_{k2}) U1_{k1} and the A system of
   the result is A1 A2. Declared error adds. */
UnitaryFamily compose_sequential(const UnitaryFamily& first,
                                 const UnitaryFamily& second);

/* Parallel composition on disjoint systems; A systems concatenate and the
   declared error doubles. */
UnitaryFamily compose_parallel(const UnitaryFamily& first,
                               const UnitaryFamily& second);

// A-qubit positions of a composed family member layout (for marginals).
std::vector<int> a_qubit_positions(const UnitaryFamily& fam);

double eta_nats(double eps);  // -2 eps ln(2 eps); eta(0) = 0
// Entropy floor (1 - 2 eps) log2(d_A) - eta(eps).
double entropic_bound_bits(double eps, int a_qubits);

struct UrEvalReport {
  int states_tested = 0;
  std::vector<double> per_state_tv;         // average over members
  std::vector<double> per_state_entropy;    // avg over members, full distribution
  std::vector<double> per_state_a_entropy;  // avg over members, A marginal
  double eps_hat = 0;  // max over tested states (empirical lower bound on eps)
  double eps_mean = 0;
  double entropy_bound = 0;  // at eps_hat
  int entropy_violations = 0;
};

UrEvalReport eval_metric_ur(const UnitaryFamily& fam,
                            std::span<const qsim::StateVector> states,
                            bool with_entropy = false);

// Basis vectors of sampled member bases: U_k^dagger |index>.
std::vector<qsim::StateVector> adversarial_states(const UnitaryFamily& fam,
                                                  int member_stride,
                                                  int indices_per_member);

struct MinEntropyWitness {
  std::vector<double> w;                    // per-basis mass captured by S
  std::vector<int> excluded;                // T_eps
  std::vector<std::uint64_t> heavy;         // S, global indices into [r d]
  double s_mass = 0;                        // ||(V psi)_S||^2
  std::vector<double> tv_p_q;               // per basis
  std::vector<double> q_minentropy_bits;    // per basis
  double minentropy_floor_bits = 0;         // gamma n / 2 - log2(8/eps^2)
  bool gershgorin_ok = false;               // s_mass <= 1 + |S| d^{-gamma/2}
};

/* Lemma-2.5-style witness: S collects the floor(d^{gamma/2}) heaviest
   entries of V|psi>, w_j the per-basis S mass, T_eps = {j : w_j > eps},
   q_j the repaired distributions. Requires size >= ceil(2/eps^2). */
MinEntropyWitness minentropy_relation_check(const UnitaryFamily& mub_family,
                                            double gamma,
                                            const qsim::StateVector& psi,
                                            double eps);

/* Expected fidelity between the A marginal of a Haar state and uniform:
   sqrt(d_A) Gamma(d_B + 1/2)/Gamma(d_B) Gamma(d_A d_B)/Gamma(d_A d_B + 1/2),
   always >= sqrt(1 - 1/d_B). */
double expected_fidelity(std::uint64_t d_a, std::uint64_t d_b);
double expected_fidelity_lower_bound(std::uint64_t d_b);

struct GramSchmidtResult {
  std::vector<std::vector<qsim::cplx>> ortho;
  std::vector<double> deviation;      // ||v_i - v'_i|| per index
  std::vector<double> allowed;        // delta sqrt(32 (i-1)) per index
  double max_deviation = 0;
};

/* Classical Gram-Schmidt with the near-orthogonality deviation bound.
   Preconditions: pairwise |<v_i, v_j>| <= delta and delta <= 1/(16 r);
   violations raise std::invalid_argument. */
GramSchmidtResult gram_schmidt_orthonormalize(
    const std::vector<std::vector<qsim::cplx>>& vectors, double delta);

/* Squared projection of U_{k0}^dagger |x>|b0> onto
   F_y = span{U_k^dagger |y>|b>}. Requires the gamma-MUB overlap hypothesis
   d^{-gamma/2} <= 1/(16 t d_B); checks the 2 sqrt(32) (t d_B)^2 d^{-gamma}
   ceiling for x != y. */
double projector_overlap(const UnitaryFamily& fam, double gamma, std::uint64_t y,
                         std::uint64_t x, int k0, std::uint64_t b0);

}  // namespace qlock::urel

#endif  // QLOCK_UREL_HPP_
