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

#include "qlock/experiments.hpp"

#include <bit>
#include <stdexcept>

namespace qlock::experiments {

codes::BinaryCode desk_code(int qubits, bool doubled) {
  if (qubits == 6) {
    if (doubled) throw std::invalid_argument("doubled code needs a power-of-two width");
    int drop[] = {0, 1};
    return codes::punctured(codes::hadamard(3), drop);
  }
  if (!std::has_single_bit(static_cast<unsigned>(qubits))) {
    throw std::invalid_argument("unsupported mask-code width");
  }
  int n_prime = std::countr_zero(static_cast<unsigned>(qubits));
  return doubled ? codes::augmented_hadamard(n_prime) : codes::hadamard(n_prime);
}

urel::UnitaryFamily desk_ur_family(int qubits, int a_qubits, const std::string& mub,
                                   int galois_r, bool doubled_code) {
  auto field = gf2x::FieldContext::make(qubits);
  permext::FamilyPtr ext = permext::make_lhl(field, a_qubits, qubits / 2);
  if (mub == "hadamard") {
    auto fam = mub::build_hadamard_family(desk_code(qubits, doubled_code));
    return urel::build_metric_ur(fam, *ext);
  }
  if (mub == "galois") {
    auto fam = mub::build_galois_mub_tables(qubits, galois_r);
    return urel::build_metric_ur(fam, *ext);
  }
  throw std::invalid_argument("unknown mub kind: " + mub);
}

std::vector<qsim::StateVector> standard_states(int qubits, int trials,
                                               std::uint64_t seed,
                                               bool include_basis) {
  std::vector<qsim::StateVector> states;
  if (include_basis) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << qubits); ++i) {
      states.push_back(qsim::basis_state(qubits, i));
    }
  }
  for (int t = 0; t < trials; ++t) {
    SplitStream rng(seed, static_cast<std::uint64_t>(t));
    states.push_back(qsim::haar_state(qubits, rng));
  }
  return states;
}

std::vector<std::vector<qsim::cplx>> near_orthogonal_family(int count, int dim,
                                                            double delta,
                                                            SplitStream& rng) {
  if (count > dim) throw std::invalid_argument("count exceeds dimension");
  for (double scale = delta / 8.0;; scale /= 2.0) {
    // random orthonormal frame
    std::vector<std::vector<qsim::cplx>> frame(count, std::vector<qsim::cplx>(dim));
    for (auto& v : frame) {
      for (auto& x : v) x = qsim::cplx(rng.next_gaussian(), rng.next_gaussian());
    }
    for (int i = 0; i < count; ++i) {
      for (int j = 0; j < i; ++j) {
        qsim::cplx c(0, 0);
        for (int t = 0; t < dim; ++t) c += std::conj(frame[j][t]) * frame[i][t];
        for (int t = 0; t < dim; ++t) frame[i][t] -= c * frame[j][t];
      }
      double nn = 0;
      for (const auto& x : frame[i]) nn += std::norm(x);
      nn = std::sqrt(nn);
      for (auto& x : frame[i]) x /= nn;
    }
    // perturb and renormalize
    for (auto& v : frame) {
      for (auto& x : v) {
        x += scale * qsim::cplx(rng.next_gaussian(), rng.next_gaussian());
      }
      double nn = 0;
      for (const auto& x : v) nn += std::norm(x);
      nn = std::sqrt(nn);
      for (auto& x : v) x /= nn;
    }
    bool ok = true;
    for (int i = 0; i < count && ok; ++i) {
      for (int j = i + 1; j < count && ok; ++j) {
        qsim::cplx c(0, 0);
        for (int t = 0; t < dim; ++t) c += std::conj(frame[i][t]) * frame[j][t];
        if (std::abs(c) > delta) ok = false;
      }
    }
    if (ok) return frame;
    if (scale < 1e-12) throw std::logic_error("perturbation scale underflow");
  }
}

locking::LockingScheme two_basis_scheme() {
  urel::UnitaryFamily fam;
  fam.qubits = 1;
  fam.a_qubits = 1;
  fam.provenance = "two_basis";
  qsim::StructuredUnitary identity;
  identity.qubits = 1;
  fam.members.push_back(identity);
  qsim::StructuredUnitary hadamard;
  hadamard.qubits = 1;
  hadamard.stages.push_back(qsim::hadamard_mask_stage(1, 1));
  fam.members.push_back(hadamard);
  locking::LockingScheme scheme;
  scheme.family = std::move(fam);
  scheme.mode = locking::Mode::Padded;
  return scheme;
}

locking::LockingScheme desk_locking_scheme(int qubits, int a_qubits,
                                           const std::string& mub, int galois_r) {
  locking::LockingScheme scheme;
  scheme.family = desk_ur_family(qubits, a_qubits, mub, galois_r, false);
  scheme.mode = locking::Mode::Padded;
  return scheme;
}

}  // namespace qlock::experiments
