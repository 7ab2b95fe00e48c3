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

#include "qlock/qid.hpp"

#include <cmath>
#include <stdexcept>

#include "qlock/parallel.hpp"

namespace qlock::qid {

std::vector<EncodingSample> qid_encode_coherent(const urel::UnitaryFamily& fam,
                                                const qsim::StateVector& psi) {
  if (psi.qubits != fam.qubits) throw std::invalid_argument("dimension mismatch");
  std::size_t t = fam.members.size();
  std::size_t d_a = fam.d_a();
  std::size_t d_b = fam.d_b();
  double key_amp = 1.0 / std::sqrt(static_cast<double>(t));

  // outputs[k] = U_k |psi>
  std::vector<qsim::StateVector> outputs(t);
  for (std::size_t k = 0; k < t; ++k) outputs[k] = qsim::apply(fam.members[k], psi);

  std::vector<EncodingSample> ensemble;
  for (std::size_t a = 0; a < d_a; ++a) {
    EncodingSample s;
    s.classical_a = a;
    s.residual.qubits = fam.qubits - fam.a_qubits;  // B x K flattened below
    s.residual.amps.assign(d_b * t, qsim::cplx(0, 0));
    double prob = 0;
    for (std::size_t k = 0; k < t; ++k) {
      for (std::size_t b = 0; b < d_b; ++b) {
        qsim::cplx amp = key_amp * outputs[k].amps[a * d_b + b];
        s.residual.amps[b * t + k] = amp;
        prob += std::norm(amp);
      }
    }
    s.probability = prob;
    if (prob > 0) {
      double scale = 1.0 / std::sqrt(prob);
      for (auto& x : s.residual.amps) x *= scale;
    }
    // residual register is d_b * t dimensional; track qubit count only
    // when both factors are powers of two
    s.residual.qubits = 0;
    ensemble.push_back(std::move(s));
  }
  return ensemble;
}

EncodingSample qid_encode_sampled(const urel::UnitaryFamily& fam,
                                  const qsim::StateVector& psi, SplitStream& rng) {
  if (psi.qubits != fam.qubits) throw std::invalid_argument("dimension mismatch");
  std::size_t t = fam.members.size();
  std::size_t k = rng.next_below(t);
  qsim::StateVector out = qsim::apply(fam.members[k], psi);
  std::vector<double> pa = qsim::marginal_on_prefix(out, fam.a_qubits);
  double u = rng.next_double();
  std::size_t a = 0;
  double acc = 0;
  for (; a + 1 < pa.size(); ++a) {
    acc += pa[a];
    if (u < acc) break;
  }
  EncodingSample s;
  s.classical_a = a;
  s.probability = pa[a] / static_cast<double>(t);
  std::size_t d_b = fam.d_b();
  s.residual.qubits = fam.qubits - fam.a_qubits;
  s.residual.amps.assign(d_b, qsim::cplx(0, 0));
  if (pa[a] > 0) {
    double scale = 1.0 / std::sqrt(pa[a]);
    for (std::size_t b = 0; b < d_b; ++b) {
      s.residual.amps[b] = out.amps[a * d_b + b] * scale;
    }
  }
  return s;
}

QidReport forgetfulness_deficit(const urel::UnitaryFamily& fam,
                                std::span<const qsim::StateVector> states) {
  QidReport rep;
  rep.per_state_deficit.resize(states.size());
  rep.per_state_avg_tv.resize(states.size());
  std::size_t d_a = fam.d_a();
  parallel_for(states.size(), [&](std::size_t si) {
    std::vector<double> rho_e(d_a, 0.0);
    double tv_sum = 0;
    for (const auto& u : fam.members) {
      qsim::StateVector out = qsim::apply(u, states[si]);
      std::vector<double> pa = qsim::marginal_on_prefix(out, fam.a_qubits);
      tv_sum += qsim::tv_from_uniform(pa);
      for (std::size_t a = 0; a < d_a; ++a) rho_e[a] += pa[a];
    }
    double t = static_cast<double>(fam.members.size());
    for (auto& x : rho_e) x /= t;
    rep.per_state_deficit[si] = qsim::tv_from_uniform(rho_e);
    rep.per_state_avg_tv[si] = tv_sum / t;
  });
  for (std::size_t si = 0; si < states.size(); ++si) {
    rep.max_deficit = std::max(rep.max_deficit, rep.per_state_deficit[si]);
    if (rep.per_state_deficit[si] > rep.per_state_avg_tv[si] + 1e-12) ++rep.violations;
  }
  rep.implied_id_error = 6.0 * std::pow(rep.max_deficit, 0.25);
  return rep;
}

int quantum_cost_qubits(const urel::UnitaryFamily& fam) {
  int key_qubits = 0;
  while ((std::size_t{1} << key_qubits) < fam.members.size()) ++key_qubits;
  return (fam.qubits - fam.a_qubits) + key_qubits;
}

}  // namespace qlock::qid
