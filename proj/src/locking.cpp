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

#include "qlock/locking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "qlock/parallel.hpp"

namespace qlock::locking {

namespace {
constexpr double kOutcomeFloor = 1e-12;
}

qsim::StateVector lock_encode(const LockingScheme& scheme, std::uint64_t x,
                              std::uint64_t k, std::uint64_t b) {
  const auto& fam = scheme.family;
  if (x >= scheme.message_count() || k >= scheme.key_count() ||
      b >= scheme.randomness_count()) {
    throw std::invalid_argument("index out of range");
  }
  std::uint64_t index;
  std::size_t member;
  if (scheme.mode == Mode::Padded) {
    index = x * fam.d_b() + b;
    member = static_cast<std::size_t>(k);
  } else {
    std::uint64_t pad = k % fam.d_b();
    member = static_cast<std::size_t>(k / fam.d_b());
    std::uint64_t xa = x / fam.d_b();
    std::uint64_t bm = x % fam.d_b();
    index = xa * fam.d_b() + (bm ^ pad);
  }
  return qsim::apply_inverse(fam.members[member], qsim::basis_state(fam.qubits, index));
}

std::uint64_t lock_decode(const LockingScheme& scheme,
                          const qsim::StateVector& ciphertext, std::uint64_t k) {
  const auto& fam = scheme.family;
  if (k >= scheme.key_count()) throw std::invalid_argument("index out of range");
  std::size_t member =
      scheme.mode == Mode::Padded ? static_cast<std::size_t>(k)
                                  : static_cast<std::size_t>(k / fam.d_b());
  qsim::StateVector out = qsim::apply(fam.members[member], ciphertext);
  std::vector<double> dist =
      scheme.mode == Mode::Padded
          ? qsim::marginal_on_prefix(out, fam.a_qubits)
          : qsim::outcome_distribution(out);
  std::size_t best = 0;
  for (std::size_t i = 1; i < dist.size(); ++i) {
    if (dist[i] > dist[best]) best = i;
  }
  if (dist[best] < 1.0 - 1e-9) {
    throw std::runtime_error("ciphertext/key mismatch");
  }
  if (scheme.mode == Mode::Padded) return best;
  std::uint64_t pad = k % fam.d_b();
  std::uint64_t xa = best / fam.d_b();
  std::uint64_t bm = (best % fam.d_b()) ^ pad;
  return xa * fam.d_b() + bm;
}

Povm computational_povm(int qubits) {
  Povm p;
  std::size_t dim = std::size_t{1} << qubits;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<qsim::cplx> v(dim, qsim::cplx(0, 0));
    v[i] = qsim::cplx(1, 0);
    p.vectors.push_back(std::move(v));
    p.weights.push_back(1.0);
  }
  return p;
}

Povm hadamard_basis_povm(int qubits) {
  Povm p;
  std::size_t dim = std::size_t{1} << qubits;
  qsim::StructuredUnitary h;
  h.qubits = qubits;
  h.stages.push_back(qsim::hadamard_mask_stage(qubits, (std::uint64_t{1} << qubits) - 1));
  for (std::size_t i = 0; i < dim; ++i) {
    qsim::StateVector v = qsim::apply_inverse(h, qsim::basis_state(qubits, i));
    p.vectors.push_back(std::move(v.amps));
    p.weights.push_back(1.0);
  }
  return p;
}

Povm key_guess_povm(const urel::UnitaryFamily& family, int k) {
  if (k < 0 || k >= family.size()) throw std::invalid_argument("key out of range");
  Povm p;
  std::size_t dim = std::size_t{1} << family.qubits;
  for (std::size_t i = 0; i < dim; ++i) {
    qsim::StateVector v =
        qsim::apply_inverse(family.members[k], qsim::basis_state(family.qubits, i));
    p.vectors.push_back(std::move(v.amps));
    p.weights.push_back(1.0);
  }
  return p;
}

namespace {

std::vector<std::vector<qsim::cplx>> random_orthonormal_basis(std::size_t dim,
                                                              SplitStream& rng) {
  std::vector<std::vector<qsim::cplx>> basis(dim, std::vector<qsim::cplx>(dim));
  for (auto& v : basis) {
    for (auto& x : v) x = qsim::cplx(rng.next_gaussian(), rng.next_gaussian());
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      qsim::cplx c(0, 0);
      for (std::size_t t = 0; t < dim; ++t) c += std::conj(basis[j][t]) * basis[i][t];
      for (std::size_t t = 0; t < dim; ++t) basis[i][t] -= c * basis[j][t];
    }
    double nn = 0;
    for (const auto& x : basis[i]) nn += std::norm(x);
    nn = std::sqrt(nn);
    if (nn < 1e-12) throw std::logic_error("degenerate random basis");
    for (auto& x : basis[i]) x /= nn;
  }
  return basis;
}

}  // namespace

Povm random_basis_povm(int qubits, SplitStream& rng) {
  Povm p;
  p.vectors = random_orthonormal_basis(std::size_t{1} << qubits, rng);
  p.weights.assign(p.vectors.size(), 1.0);
  return p;
}

void validate_povm(const Povm& povm, int qubits) {
  std::size_t dim = std::size_t{1} << qubits;
  if (povm.vectors.size() != povm.weights.size()) {
    throw std::invalid_argument("invalid POVM: weight/vector count mismatch");
  }
  for (double w : povm.weights) {
    if (!(w > 0)) throw std::invalid_argument("invalid POVM: weights must be positive");
  }
  std::vector<std::vector<qsim::cplx>> acc(dim, std::vector<qsim::cplx>(dim, {0, 0}));
  for (std::size_t i = 0; i < povm.vectors.size(); ++i) {
    const auto& e = povm.vectors[i];
    if (e.size() != dim) throw std::invalid_argument("invalid POVM: dimension mismatch");
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        acc[r][c] += povm.weights[i] * e[r] * std::conj(e[c]);
      }
    }
  }
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      double want = r == c ? 1.0 : 0.0;
      if (std::abs(acc[r][c] - qsim::cplx(want, 0)) > 1e-9) {
        throw std::invalid_argument("invalid POVM: does not resolve the identity");
      }
    }
  }
}

Prior uniform_prior(std::uint64_t message_count) {
  Prior p;
  p.support.resize(message_count);
  for (std::uint64_t i = 0; i < message_count; ++i) p.support[i] = i;
  return p;
}

Prior flat_prior_prefix(std::uint64_t message_count, int ell) {
  std::uint64_t want = std::uint64_t{1} << ell;
  if (want > message_count) throw std::invalid_argument("source larger than message space");
  Prior p;
  p.support.resize(want);
  for (std::uint64_t i = 0; i < want; ++i) p.support[i] = i;
  return p;
}

Prior flat_prior_random(std::uint64_t message_count, int ell, SplitStream& rng) {
  std::uint64_t want = std::uint64_t{1} << ell;
  if (want > message_count) throw std::invalid_argument("source larger than message space");
  std::unordered_set<std::uint64_t> chosen;
  Prior p;
  for (std::uint64_t j = message_count - want; j < message_count; ++j) {
    std::uint64_t t = rng.next_below(j + 1);
    if (chosen.count(t)) t = j;
    chosen.insert(t);
    p.support.push_back(t);
  }
  std::sort(p.support.begin(), p.support.end());
  return p;
}

Ensemble message_ensemble(const LockingScheme& scheme, const Prior& prior) {
  Ensemble e;
  e.qubits = scheme.cipher_qubits();
  double pr = 1.0 / static_cast<double>(prior.support.size());
  double w = 1.0 / (static_cast<double>(scheme.key_count()) *
                    static_cast<double>(scheme.randomness_count()));
  for (std::uint64_t x : prior.support) {
    e.prior.push_back(pr);
    std::vector<std::pair<double, std::vector<qsim::cplx>>> mix;
    for (std::uint64_t k = 0; k < scheme.key_count(); ++k) {
      for (std::uint64_t b = 0; b < scheme.randomness_count(); ++b) {
        mix.emplace_back(w, lock_encode(scheme, x, k, b).amps);
      }
    }
    e.states.push_back(std::move(mix));
  }
  return e;
}

Ensemble message_key_ensemble(const LockingScheme& scheme, const Prior& prior) {
  Ensemble e;
  e.qubits = scheme.cipher_qubits();
  double pr = 1.0 / (static_cast<double>(prior.support.size()) *
                     static_cast<double>(scheme.key_count()));
  double w = 1.0 / static_cast<double>(scheme.randomness_count());
  for (std::uint64_t x : prior.support) {
    for (std::uint64_t k = 0; k < scheme.key_count(); ++k) {
      e.prior.push_back(pr);
      std::vector<std::pair<double, std::vector<qsim::cplx>>> mix;
      for (std::uint64_t b = 0; b < scheme.randomness_count(); ++b) {
        mix.emplace_back(w, lock_encode(scheme, x, k, b).amps);
      }
      e.states.push_back(std::move(mix));
    }
  }
  return e;
}

namespace {

/* Posterior statistics from the conditional matrix cond[i][label] =
   Pr[I = i | label] (each row already a distribution over outcomes given
   the label, up to shared normalization). */
AttackReport report_from_conditionals(const std::vector<double>& prior,
                                      const std::vector<std::vector<double>>& cond) {
  AttackReport rep;
  std::size_t labels = prior.size();
  double mi = 0;
  for (const auto& row : cond) {
    double pi = 0;
    for (std::size_t x = 0; x < labels; ++x) pi += prior[x] * row[x];
    if (pi < kOutcomeFloor) {
      rep.skipped_mass += pi;
      continue;
    }
    ++rep.outcomes_used;
    double tv = 0;
    for (std::size_t x = 0; x < labels; ++x) {
      double post = prior[x] * row[x] / pi;
      tv += std::abs(post - prior[x]);
      if (post > 0) mi += pi * post * std::log2(post / prior[x]);
    }
    tv *= 0.5;
    rep.worst_tv = std::max(rep.worst_tv, tv);
    rep.avg_tv += pi * tv;
  }
  rep.mutual_info_bits = mi;
  return rep;
}

std::vector<std::vector<double>> ensemble_conditionals(const Ensemble& ensemble,
                                                       const Povm& povm) {
  std::size_t labels = ensemble.prior.size();
  std::vector<std::vector<double>> cond(povm.vectors.size(),
                                        std::vector<double>(labels, 0.0));
  parallel_for(povm.vectors.size(), [&](std::size_t i) {
    const auto& e = povm.vectors[i];
    for (std::size_t x = 0; x < labels; ++x) {
      double s = 0;
      for (const auto& [w, psi] : ensemble.states[x]) {
        qsim::cplx ip(0, 0);
        for (std::size_t t = 0; t < e.size(); ++t) ip += std::conj(e[t]) * psi[t];
        s += w * std::norm(ip);
      }
      cond[i][x] = povm.weights[i] * s;
    }
  });
  return cond;
}

}  // namespace

AttackReport adversary_posterior(const Ensemble& ensemble, const Povm& povm) {
  if (ensemble.qubits <= 8) validate_povm(povm, ensemble.qubits);
  return report_from_conditionals(ensemble.prior, ensemble_conditionals(ensemble, povm));
}

AttackReport adversary_posterior(const LockingScheme& scheme, const Prior& prior,
                                 const Povm& povm) {
  const auto& fam = scheme.family;
  if (fam.qubits <= 8) validate_povm(povm, fam.qubits);
  std::size_t labels = prior.support.size();
  std::size_t t = fam.members.size();
  // Pr[i | x] = (xi_i / d_B) (1/t) sum_k p^A_{U_k e_i}(x_A); in OneTimePadB
  // mode the B part of the message is one-time padded away and the
  // conditional depends on the label only through its A part.
  std::vector<std::vector<double>> cond(povm.vectors.size(),
                                        std::vector<double>(labels, 0.0));
  parallel_for(povm.vectors.size(), [&](std::size_t i) {
    qsim::StateVector e;
    e.qubits = fam.qubits;
    std::vector<double> avg(fam.d_a(), 0.0);
    for (std::size_t k = 0; k < t; ++k) {
      e.amps = povm.vectors[i];
      qsim::apply_in_place(fam.members[k], e);
      std::vector<double> pa = qsim::marginal_on_prefix(e, fam.a_qubits);
      for (std::size_t a = 0; a < pa.size(); ++a) avg[a] += pa[a];
    }
    double scale = povm.weights[i] / (static_cast<double>(t) *
                                      static_cast<double>(fam.d_b()));
    for (std::size_t x = 0; x < labels; ++x) {
      std::uint64_t xa = scheme.mode == Mode::Padded
                             ? prior.support[x]
                             : prior.support[x] / fam.d_b();
      cond[i][x] = scale * avg[xa];
    }
  });
  std::vector<double> pr(labels, 1.0 / static_cast<double>(labels));
  return report_from_conditionals(pr, cond);
}

double accessible_info_search(const Ensemble& ensemble, const SearchBudget& budget,
                              SplitStream& rng) {
  std::size_t dim = ensemble.states.empty() ? 1 : ensemble.states[0][0].second.size();
  auto score = [&](const std::vector<std::vector<qsim::cplx>>& basis) {
    Povm p;
    p.vectors = basis;
    p.weights.assign(basis.size(), 1.0);
    std::vector<std::vector<double>> cond = ensemble_conditionals(ensemble, p);
    return report_from_conditionals(ensemble.prior, cond).mutual_info_bits;
  };

  std::vector<std::vector<qsim::cplx>> identity(dim, std::vector<qsim::cplx>(dim, {0, 0}));
  for (std::size_t i = 0; i < dim; ++i) identity[i][i] = qsim::cplx(1, 0);

  double best = score(identity);
  for (int restart = 0; restart < budget.restarts; ++restart) {
    std::vector<std::vector<qsim::cplx>> basis =
        restart == 0 ? identity : random_orthonormal_basis(dim, rng);
    double current = score(basis);
    for (int step = 0; step < budget.steps; ++step) {
      std::size_t p = rng.next_below(dim);
      std::size_t q = rng.next_below(dim);
      if (p == q) continue;
      double angle = 1.2 * std::pow(0.97, step) * (rng.next_double() - 0.5);
      double phase = 6.283185307179586 * rng.next_double();
      qsim::cplx ph = std::polar(1.0, phase);
      auto cand = basis;
      for (std::size_t tIdx = 0; tIdx < dim; ++tIdx) {
        qsim::cplx a = basis[p][tIdx];
        qsim::cplx b = basis[q][tIdx];
        cand[p][tIdx] = std::cos(angle) * a + ph * std::sin(angle) * b;
        cand[q][tIdx] = -std::conj(ph) * std::sin(angle) * a + std::cos(angle) * b;
      }
      double s = score(cand);
      if (s > current) {
        current = s;
        basis = std::move(cand);
      }
    }
    best = std::max(best, current);
  }
  return best;
}

PauliReport pauli_locking_bound(int n, std::span<const std::uint64_t> key_subset) {
  if (n < 1 || n > 10) throw std::invalid_argument("n out of range");
  if (key_subset.empty()) throw std::invalid_argument("empty key subset");
  std::uint64_t dim = std::uint64_t{1} << n;
  // sigma_x^u sigma_z^v |x> = (+-) |x xor u>, so the computational-basis
  // attack sees I = X xor U and every outcome shares the same posterior
  // shape. Enumerate the u histogram.
  std::vector<double> hist(dim, 0.0);
  for (std::uint64_t key : key_subset) {
    if (key >> (2 * n)) throw std::invalid_argument("key out of range");
    hist[key >> n] += 1.0;
  }
  double total = static_cast<double>(key_subset.size());
  PauliReport rep;
  rep.tv_lower_bound = 1.0 - total / static_cast<double>(dim);
  double tv = 0;
  for (std::uint64_t w = 0; w < dim; ++w) {
    tv += std::abs(hist[w] / total - 1.0 / static_cast<double>(dim));
  }
  rep.measured_tv = 0.5 * tv;
  return rep;
}

}  // namespace qlock::locking
