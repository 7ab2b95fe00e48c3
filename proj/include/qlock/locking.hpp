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

#ifndef QLOCK_LOCKING_HPP_
#define QLOCK_LOCKING_HPP_

#include <cstdint>
#include <vector>

#include "qlock/qsim.hpp"
#include "qlock/rng.hpp"
#include "qlock/urel.hpp"

namespace qlock::locking {

/* Encoder built from a metric uncertainty relation: the message sits on
   the A system, the B input is fresh randomness (Padded) or message bits
   one-time-padded into the key (OneTimePadB, where the ciphertext has as
   many qubits as the message has bits). */
enum class Mode { Padded, OneTimePadB };

struct LockingScheme {
  urel::UnitaryFamily family;
  Mode mode = Mode::Padded;

  int cipher_qubits() const { return family.qubits; }
  std::uint64_t message_count() const {
    return mode == Mode::Padded ? family.d_a() : family.d_a() * family.d_b();
  }
  std::uint64_t key_count() const {
    std::uint64_t t = static_cast<std::uint64_t>(family.size());
    return mode == Mode::Padded ? t : t * family.d_b();
  }
  std::uint64_t randomness_count() const {
    return mode == Mode::Padded ? family.d_b() : 1;
  }
};

// Ciphertext U_k^dagger |x>|b>. Padded mode: x in [d_A], b fresh randomness
// in [d_B]. OneTimePadB: the message is (x, b_msg) packed as x, the key is
// (k, pad) and the B input is b_msg xor pad; pass b = 0.
qsim::StateVector lock_encode(const LockingScheme& scheme, std::uint64_t x,
                              std::uint64_t k, std::uint64_t b);

// Applies U_k and reads the deterministic outcome; throws
// "ciphertext/key mismatch" when the marginal is not a point mass.
std::uint64_t lock_decode(const LockingScheme& scheme,
                          const qsim::StateVector& ciphertext, std::uint64_t k);

// Rank-one POVM {xi_i |e_i><e_i|}.
struct Povm {
  std::vector<std::vector<qsim::cplx>> vectors;
  std::vector<double> weights;
};

Povm computational_povm(int qubits);
Povm hadamard_basis_povm(int qubits);
// Basis {U_k^dagger |i>}: the measurement of an adversary guessing key k.
Povm key_guess_povm(const urel::UnitaryFamily& family, int k);
Povm random_basis_povm(int qubits, SplitStream& rng);
// Throws unless the elements resolve the identity within 1e-9.
void validate_povm(const Povm& povm, int qubits);

struct Prior {
  std::vector<std::uint64_t> support;  // uniform over support
};
Prior uniform_prior(std::uint64_t message_count);
Prior flat_prior_prefix(std::uint64_t message_count, int ell);
Prior flat_prior_random(std::uint64_t message_count, int ell, SplitStream& rng);

/* Classical-quantum ensemble: per label, a mixture of pure states. The
   adversary machinery runs on ensembles so the same code serves the
   message view (labels x) and the message+key view (labels (x,k)). */
struct Ensemble {
  int qubits = 0;
  std::vector<double> prior;
  // states[label] = list of (weight, amplitudes), weights summing to 1
  std::vector<std::vector<std::pair<double, std::vector<qsim::cplx>>>> states;
};

Ensemble message_ensemble(const LockingScheme& scheme, const Prior& prior);
// Labels run over (x, k) pairs, k minor: what a measurement reveals about
// message and key jointly.
Ensemble message_key_ensemble(const LockingScheme& scheme, const Prior& prior);

struct AttackReport {
  double worst_tv = 0;            // max over outcomes of TV(posterior, prior)
  double avg_tv = 0;              // outcome-probability-weighted average
  double mutual_info_bits = 0;    // I(label; outcome)
  int outcomes_used = 0;
  double skipped_mass = 0;        // outcomes below the probability floor
};

AttackReport adversary_posterior(const Ensemble& ensemble, const Povm& povm);
AttackReport adversary_posterior(const LockingScheme& scheme, const Prior& prior,
                                 const Povm& povm);

struct SearchBudget {
  int restarts = 64;
  int steps = 200;
};

/* Heuristic accessible-information maximization over orthonormal-basis
   measurements: seeded with the computational basis plus random bases,
   refined by random Givens rotations with decaying angle. Returns the best
   I(label; outcome) found, a lower bound on the accessible information. */
double accessible_info_search(const Ensemble& ensemble, const SearchBudget& budget,
                              SplitStream& rng);

struct PauliReport {
  double tv_lower_bound = 0;  // 1 - |S| / 2^n
  double measured_tv = 0;     // worst outcome, computational-basis attack
};

/* Pauli-subset scheme E(x, (u,v)) = sigma_x^u sigma_z^v |x>, keys uniform
   on the given subset of {0,1}^{2n} packed as (u << n) | v. */
PauliReport pauli_locking_bound(int n, std::span<const std::uint64_t> key_subset);

}  // namespace qlock::locking

#endif  // QLOCK_LOCKING_HPP_
