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

#ifndef QLOCK_QID_HPP_
#define QLOCK_QID_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "qlock/qsim.hpp"
#include "qlock/rng.hpp"
#include "qlock/urel.hpp"

namespace qlock::qid {

/* Identification encoder: prepare a uniform superposition over the key
   register, apply U_k controlled on it, measure the A system and send the
   outcome classically; B and the key register travel over the quantum
   channel. The decoder POVMs are non-constructive (imported wholesale in
   the source material), so this module certifies the forgetfulness premise
   and reports the implied identification error 6 eps^{1/4} instead of
   simulating decoding. */

struct EncodingSample {
  double probability = 0;       // chance of this classical outcome
  std::uint64_t classical_a = 0;
  qsim::StateVector residual;   // on B x K, K minor
};

// Full post-measurement ensemble {(prob, a, residual)} of the coherent
// circuit; probabilities sum to one.
std::vector<EncodingSample> qid_encode_coherent(const urel::UnitaryFamily& fam,
                                                const qsim::StateVector& psi);

// One draw (k, then a) through the circuit; the residual carries the key
// branch label.
EncodingSample qid_encode_sampled(const urel::UnitaryFamily& fam,
                                  const qsim::StateVector& psi, SplitStream& rng);

struct QidReport {
  std::vector<double> per_state_deficit;  // TV(rho^E, uniform)
  std::vector<double> per_state_avg_tv;   // (1/t) sum_k TV(p^A_k, uniform)
  double max_deficit = 0;
  double implied_id_error = 0;  // 6 max_deficit^{1/4}
  int violations = 0;           // deficit above the per-state average TV
};

/* rho^E is diagonal with entries (1/t) sum_k p^A_{U_k psi}(a); the deficit
   is its distance from maximally mixed and never exceeds the per-state
   average TV (convexity), checked exactly per state. */
QidReport forgetfulness_deficit(const urel::UnitaryFamily& fam,
                                std::span<const qsim::StateVector> states);

// Quantum cost of the encoder: B qubits plus key-register qubits.
int quantum_cost_qubits(const urel::UnitaryFamily& fam);

}  // namespace qlock::qid

#endif  // QLOCK_QID_HPP_
