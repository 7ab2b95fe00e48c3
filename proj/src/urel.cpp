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

#include "qlock/urel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qlock/parallel.hpp"

namespace qlock::urel {

namespace {

// Basis index <-> string/field-element packing differ by bit reversal:
// string position j sits at index bit (n-1-j).
std::uint64_t bitrev(std::uint64_t x, int n) {
  std::uint64_t r = 0;
  for (int b = 0; b < n; ++b) {
    if (x >> b & 1) r |= std::uint64_t{1} << (n - 1 - b);
  }
  return r;
}

qsim::Stage permutation_stage_from_seed(const permext::PermutationFamily& ext,
                                        std::size_t seed_index) {
  int n = ext.input_bits();
  std::vector<std::uint32_t> perm(std::size_t{1} << n);
  for (std::uint64_t i = 0; i < perm.size(); ++i) {
    perm[i] = static_cast<std::uint32_t>(bitrev(ext.forward(seed_index, bitrev(i, n)), n));
  }
  return qsim::basis_permutation_stage(std::move(perm));
}

template <typename MemberFn>
UnitaryFamily build_ur_impl(int qubits, int r, MemberFn member,
                            const permext::PermutationFamily& ext, bool pad_pow2,
                            const std::string& provenance) {
  if (ext.input_bits() != qubits) throw std::invalid_argument("extractor width mismatch");
  if (qubits > 14) throw std::invalid_argument("simulator cap exceeded");
  UnitaryFamily fam;
  fam.qubits = qubits;
  fam.a_qubits = ext.condensed_bits();
  fam.provenance = provenance;
  std::size_t seeds = ext.seed_count();
  std::vector<qsim::Stage> perm_stages(seeds);
  for (std::size_t y = 0; y < seeds; ++y) {
    perm_stages[y] = permutation_stage_from_seed(ext, y);
  }
  for (int j = 0; j < r; ++j) {
    qsim::StructuredUnitary v = member(j);
    for (std::size_t y = 0; y < seeds; ++y) {
      qsim::StructuredUnitary u = v;
      u.stages.push_back(perm_stages[y]);
      fam.members.push_back(std::move(u));
    }
  }
  if (pad_pow2) {
    std::size_t t = fam.members.size();
    std::size_t p = 1;
    while (p < t) p <<= 1;
    // repeat trailing members, which keeps identity-like members unweighted
    std::size_t pad = p - t;
    for (std::size_t i = 0; i < pad; ++i) {
      fam.members.push_back(fam.members[t - pad + i]);
    }
  }
  return fam;
}

}  // namespace

/* The measurement bases of the family are {member^dagger |x>}. For those
   bases to be pairwise unbiased the members must have near-orthogonal ROWS
   across the family, i.e. small V_j V_i^dagger entries. The Galois members
   D_u H satisfy the column form |<x| V_i^dagger V_j |y>| = 2^{-n/2}, so the
   adjoints H D_u^dagger are the members with unbiased rows; Hadamard masks
   are self-adjoint and unaffected. */
UnitaryFamily family_from_galois(const mub::GaloisMubFamily& fam, int a_qubits) {
  UnitaryFamily out;
  out.qubits = fam.qubits;
  out.a_qubits = a_qubits;
  out.provenance = "galois_mub";
  for (int j = 0; j < fam.size; ++j) {
    out.members.push_back(qsim::adjoint(mub::galois_member(fam, j)));
  }
  return out;
}

UnitaryFamily family_from_hadamard(const mub::HadamardMubFamily& fam, int a_qubits) {
  UnitaryFamily out;
  out.qubits = fam.qubits;
  out.a_qubits = a_qubits;
  out.provenance = "hadamard_mub";
  for (std::size_t j = 0; j < fam.masks.size(); ++j) {
    out.members.push_back(mub::hadamard_member(fam, static_cast<int>(j)));
  }
  return out;
}

UnitaryFamily build_metric_ur(const mub::GaloisMubFamily& mubs,
                              const permext::PermutationFamily& ext, bool pad_pow2) {
  // adjoint orientation: see family_from_galois
  return build_ur_impl(
      mubs.qubits, mubs.size,
      [&](int j) { return qsim::adjoint(mub::galois_member(mubs, j)); }, ext,
      pad_pow2, "ur_key_opt");
}

UnitaryFamily build_metric_ur(const mub::HadamardMubFamily& mubs,
                              const permext::PermutationFamily& ext, bool pad_pow2) {
  return build_ur_impl(
      mubs.qubits, static_cast<int>(mubs.masks.size()),
      [&](int j) { return mub::hadamard_member(mubs, j); }, ext, pad_pow2,
      "ur_key_opt");
}

namespace {

// Lift a stage of a unitary on the low `sub` qubits of an n-qubit system.
qsim::Stage lift_stage_low(const qsim::Stage& s, int n, int sub) {
  std::size_t sub_dim = std::size_t{1} << sub;
  std::size_t dim = std::size_t{1} << n;
  qsim::Stage out;
  switch (s.kind) {
    case qsim::Stage::Kind::HadamardMask:
      out = s;  // index-bit mask already addresses the low bits
      return out;
    case qsim::Stage::Kind::DiagonalPhase: {
      std::vector<std::uint8_t> expo(dim);
      for (std::size_t i = 0; i < dim; ++i) expo[i] = s.phase_exponent[i & (sub_dim - 1)];
      return qsim::diagonal_phase_stage(std::move(expo));
    }
    case qsim::Stage::Kind::BasisPermutation: {
      std::vector<std::uint32_t> perm(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        perm[i] = static_cast<std::uint32_t>((i & ~(sub_dim - 1)) |
                                             s.perm[i & (sub_dim - 1)]);
      }
      return qsim::basis_permutation_stage(std::move(perm));
    }
  }
  throw std::logic_error("unknown stage kind");
}

// Lift a stage of a unitary on the high `sub` qubits of an n-qubit system.
qsim::Stage lift_stage_high(const qsim::Stage& s, int n, int sub) {
  int low = n - sub;
  std::size_t dim = std::size_t{1} << n;
  switch (s.kind) {
    case qsim::Stage::Kind::HadamardMask: {
      qsim::Stage out = s;
      out.index_bit_mask = s.index_bit_mask << low;
      return out;
    }
    case qsim::Stage::Kind::DiagonalPhase: {
      std::vector<std::uint8_t> expo(dim);
      for (std::size_t i = 0; i < dim; ++i) expo[i] = s.phase_exponent[i >> low];
      return qsim::diagonal_phase_stage(std::move(expo));
    }
    case qsim::Stage::Kind::BasisPermutation: {
      std::vector<std::uint32_t> perm(dim);
      std::size_t low_mask = (std::size_t{1} << low) - 1;
      for (std::size_t i = 0; i < dim; ++i) {
        perm[i] = static_cast<std::uint32_t>(
            (static_cast<std::size_t>(s.perm[i >> low]) << low) | (i & low_mask));
      }
      return qsim::basis_permutation_stage(std::move(perm));
    }
  }
  throw std::logic_error("unknown stage kind");
}

}  // namespace

UnitaryFamily compose_sequential(const UnitaryFamily& first,
                                 const UnitaryFamily& second) {
  int n = first.qubits;
  int b1 = n - first.a_qubits;
  if (second.qubits != b1) {
    throw std::invalid_argument("second family must act on the B system of the first");
  }
  if (n > 14) throw std::invalid_argument("simulator cap exceeded");
  UnitaryFamily out;
  out.qubits = n;
  out.a_qubits = first.a_qubits + second.a_qubits;
  out.provenance = "ur_composed";
  if (first.declared_eps >= 0 && second.declared_eps >= 0) {
    out.declared_eps = first.declared_eps + second.declared_eps;
  }
  for (const auto& u1 : first.members) {
    for (const auto& u2 : second.members) {
      qsim::StructuredUnitary u;
      u.qubits = n;
      u.stages = u1.stages;
      for (const auto& s : u2.stages) u.stages.push_back(lift_stage_low(s, n, b1));
      out.members.push_back(std::move(u));
    }
  }
  return out;
}

UnitaryFamily compose_parallel(const UnitaryFamily& first, const UnitaryFamily& second) {
  int n = first.qubits + second.qubits;
  if (n > 14) throw std::invalid_argument("simulator cap exceeded");
  UnitaryFamily out;
  out.qubits = n;
  out.a_qubits = first.a_qubits + second.a_qubits;  // see a_qubit_positions
  out.provenance = "parallel";
  if (first.declared_eps >= 0 && second.declared_eps >= 0) {
    out.declared_eps = 2.0 * std::max(first.declared_eps, second.declared_eps);
  }
  for (const auto& u1 : first.members) {
    for (const auto& u2 : second.members) {
      qsim::StructuredUnitary u;
      u.qubits = n;
      for (const auto& s : u1.stages) u.stages.push_back(lift_stage_high(s, n, first.qubits));
      for (const auto& s : u2.stages) u.stages.push_back(lift_stage_low(s, n, second.qubits));
      out.members.push_back(std::move(u));
    }
  }
  for (int q = 0; q < first.a_qubits; ++q) out.a_positions.push_back(q);
  for (int q = 0; q < second.a_qubits; ++q) out.a_positions.push_back(first.qubits + q);
  return out;
}

std::vector<int> a_qubit_positions(const UnitaryFamily& fam) {
  if (!fam.a_positions.empty()) return fam.a_positions;
  std::vector<int> qs;
  for (int q = 0; q < fam.a_qubits; ++q) qs.push_back(q);
  return qs;
}

double eta_nats(double eps) {
  if (eps <= 0) return 0;
  return -2.0 * eps * std::log(2.0 * eps);
}

double entropic_bound_bits(double eps, int a_qubits) {
  return (1.0 - 2.0 * eps) * static_cast<double>(a_qubits) - eta_nats(eps);
}

UrEvalReport eval_metric_ur(const UnitaryFamily& fam,
                            std::span<const qsim::StateVector> states,
                            bool with_entropy) {
  UrEvalReport rep;
  rep.states_tested = static_cast<int>(states.size());
  rep.per_state_tv.resize(states.size());
  if (with_entropy) {
    rep.per_state_entropy.resize(states.size());
    rep.per_state_a_entropy.resize(states.size());
  }
  std::vector<int> a_pos = a_qubit_positions(fam);
  bool prefix_a = true;
  for (std::size_t i = 0; i < a_pos.size(); ++i) {
    if (a_pos[i] != static_cast<int>(i)) prefix_a = false;
  }

  parallel_for(states.size(), [&](std::size_t si) {
    const qsim::StateVector& psi = states[si];
    double tv_sum = 0, h_sum = 0, ha_sum = 0;
    for (const auto& u : fam.members) {
      qsim::StateVector out = qsim::apply(u, psi);
      std::vector<double> pa =
          prefix_a ? qsim::marginal_on_prefix(out, fam.a_qubits)
                   : qsim::marginal_on_qubits(out, a_pos);
      tv_sum += qsim::tv_from_uniform(pa);
      if (with_entropy) {
        ha_sum += qsim::shannon_entropy_bits(pa);
        h_sum += qsim::shannon_entropy_bits(qsim::outcome_distribution(out));
      }
    }
    double t = static_cast<double>(fam.members.size());
    rep.per_state_tv[si] = tv_sum / t;
    if (with_entropy) {
      rep.per_state_entropy[si] = h_sum / t;
      rep.per_state_a_entropy[si] = ha_sum / t;
    }
  });

  for (std::size_t si = 0; si < states.size(); ++si) {
    rep.eps_hat = std::max(rep.eps_hat, rep.per_state_tv[si]);
    rep.eps_mean += rep.per_state_tv[si];
    if (with_entropy) {
      double bound = entropic_bound_bits(rep.per_state_tv[si], fam.a_qubits);
      if (rep.per_state_entropy[si] < bound - 1e-9) ++rep.entropy_violations;
    }
  }
  if (!states.empty()) rep.eps_mean /= static_cast<double>(states.size());
  rep.entropy_bound = entropic_bound_bits(rep.eps_hat, fam.a_qubits);
  return rep;
}

std::vector<qsim::StateVector> adversarial_states(const UnitaryFamily& fam,
                                                  int member_stride,
                                                  int indices_per_member) {
  std::vector<qsim::StateVector> out;
  std::size_t dim = std::size_t{1} << fam.qubits;
  for (std::size_t k = 0; k < fam.members.size();
       k += static_cast<std::size_t>(member_stride)) {
    for (int i = 0; i < indices_per_member; ++i) {
      std::uint64_t idx = (static_cast<std::uint64_t>(i) * 2654435761u) % dim;
      out.push_back(
          qsim::apply_inverse(fam.members[k], qsim::basis_state(fam.qubits, idx)));
    }
  }
  return out;
}

MinEntropyWitness minentropy_relation_check(const UnitaryFamily& mub_family,
                                            double gamma,
                                            const qsim::StateVector& psi,
                                            double eps) {
  int r = mub_family.size();
  int needed = static_cast<int>(std::ceil(2.0 / (eps * eps)));
  if (r < needed) {
    throw std::invalid_argument("family too small: need ceil(2/eps^2) members");
  }
  std::size_t d = std::size_t{1} << mub_family.qubits;
  double n_bits = static_cast<double>(mub_family.qubits);

  // all probabilities |<x| V_j |psi>|^2, stacked by basis
  std::vector<double> probs;
  probs.reserve(static_cast<std::size_t>(r) * d);
  for (const auto& v : mub_family.members) {
    qsim::StateVector out = qsim::apply(v, psi);
    for (const auto& a : out.amps) probs.push_back(std::norm(a));
  }

  MinEntropyWitness wit;
  std::size_t s_size =
      static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(d), gamma / 2.0)));
  if (s_size < 1) s_size = 1;
  std::vector<std::uint64_t> order(probs.size());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(s_size), order.end(),
                    [&](std::uint64_t a, std::uint64_t b) { return probs[a] > probs[b]; });
  wit.heavy.assign(order.begin(), order.begin() + static_cast<long>(s_size));
  std::sort(wit.heavy.begin(), wit.heavy.end());

  for (std::uint64_t z : wit.heavy) wit.s_mass += probs[z];
  double coherence = std::pow(static_cast<double>(d), -gamma / 2.0);
  wit.gershgorin_ok =
      wit.s_mass <= 1.0 + static_cast<double>(s_size) * coherence + 1e-9;

  wit.w.assign(r, 0.0);
  for (std::uint64_t z : wit.heavy) wit.w[z / d] += probs[z];
  for (int j = 0; j < r; ++j) {
    if (wit.w[j] > eps) wit.excluded.push_back(j);
  }

  wit.minentropy_floor_bits =
      gamma * n_bits / 2.0 - std::log2(8.0 / (eps * eps));
  std::vector<bool> in_s(probs.size(), false);
  for (std::uint64_t z : wit.heavy) in_s[z] = true;
  for (int j = 0; j < r; ++j) {
    double tv = 0;
    double mx = 0;
    double add = wit.w[j] / static_cast<double>(d);
    for (std::size_t x = 0; x < d; ++x) {
      std::size_t z = static_cast<std::size_t>(j) * d + x;
      double p = probs[z];
      double q = in_s[z] ? add : p + add;
      tv += std::abs(p - q);
      if (q > mx) mx = q;
    }
    wit.tv_p_q.push_back(0.5 * tv);
    wit.q_minentropy_bits.push_back(mx <= 0 ? n_bits : -std::log2(mx));
  }
  return wit;
}

double expected_fidelity(std::uint64_t d_a, std::uint64_t d_b) {
  if (d_a < 1 || d_b < 1) throw std::invalid_argument("dimensions must be positive");
  double da = static_cast<double>(d_a);
  double db = static_cast<double>(d_b);
  double lg = std::lgamma(db + 0.5) - std::lgamma(db) + std::lgamma(da * db) -
              std::lgamma(da * db + 0.5);
  return std::sqrt(da) * std::exp(lg);
}

double expected_fidelity_lower_bound(std::uint64_t d_b) {
  return std::sqrt(1.0 - 1.0 / static_cast<double>(d_b));
}

namespace {

qsim::cplx inner(const std::vector<qsim::cplx>& a, const std::vector<qsim::cplx>& b) {
  qsim::cplx s(0, 0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(const std::vector<qsim::cplx>& a) {
  double s = 0;
  for (const auto& x : a) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

GramSchmidtResult gram_schmidt_orthonormalize(
    const std::vector<std::vector<qsim::cplx>>& vectors, double delta) {
  std::size_t r = vectors.size();
  if (r == 0) throw std::invalid_argument("empty vector list");
  if (delta > 1.0 / (16.0 * static_cast<double>(r)) + 1e-12) {
    throw std::invalid_argument("inner products exceed delta: need delta <= 1/(16 r)");
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (std::abs(norm2(vectors[i]) - 1.0) > 1e-9) {
      throw std::invalid_argument("vectors must be unit length");
    }
    for (std::size_t j = i + 1; j < r; ++j) {
      if (std::abs(inner(vectors[i], vectors[j])) > delta + 1e-12) {
        throw std::invalid_argument("inner products exceed delta");
      }
    }
  }
  GramSchmidtResult res;
  res.ortho = vectors;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      qsim::cplx c = inner(res.ortho[j], res.ortho[i]);
      for (std::size_t t = 0; t < res.ortho[i].size(); ++t) {
        res.ortho[i][t] -= c * res.ortho[j][t];
      }
    }
    double nn = norm2(res.ortho[i]);
    if (nn <= 0) throw std::invalid_argument("vectors are linearly dependent");
    for (auto& x : res.ortho[i]) x /= nn;
    double dev = 0;
    for (std::size_t t = 0; t < res.ortho[i].size(); ++t) {
      dev += std::norm(res.ortho[i][t] - vectors[i][t]);
    }
    dev = std::sqrt(dev);
    double allowed = delta * std::sqrt(32.0 * static_cast<double>(i));
    res.deviation.push_back(dev);
    res.allowed.push_back(allowed);
    res.max_deviation = std::max(res.max_deviation, dev);
    if (dev > allowed + 1e-9) {
      throw std::logic_error("Gram-Schmidt deviation bound violated");
    }
  }
  return res;
}

double projector_overlap(const UnitaryFamily& fam, double gamma, std::uint64_t y,
                         std::uint64_t x, int k0, std::uint64_t b0) {
  int t = fam.size();
  double d = static_cast<double>(std::uint64_t{1} << fam.qubits);
  double d_b = static_cast<double>(fam.d_b());
  double coherence = std::pow(d, -gamma / 2.0);
  if (coherence > 1.0 / (16.0 * t * d_b) + 1e-12) {
    throw std::invalid_argument("overlap hypothesis violated: d^{-gamma/2} > 1/(16 t d_B)");
  }
  if (y >= fam.d_a() || x >= fam.d_a() || b0 >= fam.d_b() || k0 < 0 || k0 >= t) {
    throw std::invalid_argument("label out of range");
  }
  std::vector<std::vector<qsim::cplx>> span_vectors;
  for (int k = 0; k < t; ++k) {
    for (std::uint64_t b = 0; b < fam.d_b(); ++b) {
      qsim::StateVector v = qsim::apply_inverse(
          fam.members[k], qsim::basis_state(fam.qubits, y * fam.d_b() + b));
      span_vectors.push_back(std::move(v.amps));
    }
  }
  GramSchmidtResult gs = gram_schmidt_orthonormalize(span_vectors, coherence);
  qsim::StateVector probe = qsim::apply_inverse(
      fam.members[k0], qsim::basis_state(fam.qubits, x * fam.d_b() + b0));
  double overlap = 0;
  for (const auto& e : gs.ortho) overlap += std::norm(inner(e, probe.amps));
  if (x != y) {
    double ceiling = 2.0 * std::sqrt(32.0) * (t * d_b) * (t * d_b) * std::pow(d, -gamma);
    if (overlap > ceiling + 1e-9) {
      throw std::logic_error("projector overlap exceeds the subspace bound");
    }
  }
  return overlap;
}

}  // namespace qlock::urel
