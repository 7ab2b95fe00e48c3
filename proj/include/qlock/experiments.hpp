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

#ifndef QLOCK_EXPERIMENTS_HPP_
#define QLOCK_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "qlock/codes.hpp"
#include "qlock/locking.hpp"
#include "qlock/urel.hpp"

namespace qlock::experiments {

/* Mask codes for 1/2-MUB families at the supported desk widths: Hadamard
   code at powers of two (doubled = with complements), the twice-punctured
   width-8 Hadamard code at n = 6 (min distance 3). */
codes::BinaryCode desk_code(int qubits, bool doubled);

/* Desk uncertainty-relation family: members P_y V_j over all MUB members
   and all leftover-hash seeds, padded to a power of two. mub is "hadamard"
   (r fixed by the code) or "galois" (r members, identity included). */
urel::UnitaryFamily desk_ur_family(int qubits, int a_qubits, const std::string& mub,
                                   int galois_r, bool doubled_code);

// trials Haar states (stream = trial index) plus optionally every
// computational basis state.
std::vector<qsim::StateVector> standard_states(int qubits, int trials,
                                               std::uint64_t seed,
                                               bool include_basis);

// Unit vectors with pairwise overlaps at most delta (verified), built from
// a perturbed random orthonormal frame.
std::vector<std::vector<qsim::cplx>> near_orthogonal_family(int count, int dim,
                                                            double delta,
                                                            SplitStream& rng);

// The original two-basis scheme: one qubit, keys {identity, Hadamard}.
locking::LockingScheme two_basis_scheme();

// Padded locking scheme over the desk UR family.
locking::LockingScheme desk_locking_scheme(int qubits, int a_qubits,
                                           const std::string& mub, int galois_r);

}  // namespace qlock::experiments

#endif  // QLOCK_EXPERIMENTS_HPP_
