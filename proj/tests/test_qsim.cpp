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

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "qlock/qsim.hpp"
#include "qlock/rng.hpp"

using namespace qlock;
using qsim::cplx;

TEST_CASE("haar states are normalized") {
  SplitStream rng(3, 0);
  auto psi0 = qsim::haar_state(0, rng);
  CHECK(psi0.amps.size() == 1);
  CHECK(std::abs(psi0.norm() - 1.0) < 1e-12);
  for (int trial = 0; trial < 20; ++trial) {
    auto psi = qsim::haar_state(5, rng);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("haar first-amplitude moment matches 1/d") {
  int n = 3;
  double d = 8;
  double sum = 0, sum_sq = 0;
  int trials = 100000;
  for (int t = 0; t < trials; ++t) {
    SplitStream rng(11, t);
    auto psi = qsim::haar_state(n, rng);
    double v = std::norm(psi.amps[0]);
    sum += v;
    sum_sq += v * v;
  }
  double mean = sum / trials;
  double se = std::sqrt((sum_sq / trials - mean * mean) / trials);
  CHECK(std::abs(mean - 1.0 / d) < 3 * se + 1e-9);
}

TEST_CASE("hadamard mask stage hand examples") {
  qsim::StructuredUnitary u;
  u.qubits = 1;
  u.stages.push_back(qsim::hadamard_mask_stage(1, 1));
  auto out = qsim::apply(u, qsim::basis_state(1, 0));
  CHECK(std::abs(out.amps[0] - cplx(M_SQRT1_2, 0)) < 1e-12);
  CHECK(std::abs(out.amps[1] - cplx(M_SQRT1_2, 0)) < 1e-12);

  qsim::StructuredUnitary id;
  id.qubits = 3;
  id.stages.push_back(qsim::hadamard_mask_stage(3, 0));
  auto same = qsim::apply(id, qsim::basis_state(3, 5));
  CHECK(std::abs(same.amps[5] - cplx(1, 0)) < 1e-12);
}

TEST_CASE("permutation stage round trip and verification") {
  std::vector<std::uint32_t> perm = {2, 0, 3, 1};
  qsim::StructuredUnitary u;
  u.qubits = 2;
  u.stages.push_back(qsim::basis_permutation_stage(perm));
  SplitStream rng(5, 0);
  auto psi = qsim::haar_state(2, rng);
  auto there = qsim::apply(u, psi);
  auto back = qsim::apply_inverse(u, there);
  for (std::size_t i = 0; i < psi.amps.size(); ++i) {
    CHECK(std::abs(back.amps[i] - psi.amps[i]) < 1e-12);
  }
  CHECK(std::abs(there.amps[2] - psi.amps[0]) < 1e-12);

  std::vector<std::uint32_t> not_bijective = {0, 0, 1, 2};
  CHECK_THROWS_AS(qsim::basis_permutation_stage(not_bijective), std::invalid_argument);
}

TEST_CASE("structured unitaries preserve the norm") {
  SplitStream rng(17, 0);
  std::vector<std::uint8_t> phases(16);
  for (auto& p : phases) p = static_cast<std::uint8_t>(rng.next_below(4));
  std::vector<std::uint32_t> perm(16);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.next_below(i)]);
  }
  qsim::StructuredUnitary u;
  u.qubits = 4;
  u.stages.push_back(qsim::hadamard_mask_stage(4, 0b1010));
  u.stages.push_back(qsim::diagonal_phase_stage(phases));
  u.stages.push_back(qsim::basis_permutation_stage(perm));
  for (int trial = 0; trial < 100; ++trial) {
    auto psi = qsim::haar_state(4, rng);
    auto out = qsim::apply(u, psi);
    REQUIRE(std::abs(out.norm() - 1.0) < 1e-12);
    auto back = qsim::apply_inverse(u, out);
    for (std::size_t i = 0; i < psi.amps.size(); ++i) {
      REQUIRE(std::abs(back.amps[i] - psi.amps[i]) < 1e-12);
    }
  }
}

TEST_CASE("stage list multiplies like s2 * s1 (dense oracle)") {
  SplitStream rng(23, 0);
  std::vector<std::uint8_t> phases(8);
  for (auto& p : phases) p = static_cast<std::uint8_t>(rng.next_below(4));
  qsim::StructuredUnitary s1, s2, both;
  s1.qubits = s2.qubits = both.qubits = 3;
  s1.stages.push_back(qsim::hadamard_mask_stage(3, 0b101));
  s2.stages.push_back(qsim::diagonal_phase_stage(phases));
  both.stages = s1.stages;
  both.stages.push_back(s2.stages[0]);

  auto m1 = qsim::dense_matrix(s1);
  auto m2 = qsim::dense_matrix(s2);
  auto mb = qsim::dense_matrix(both);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      cplx acc(0, 0);
      for (int k = 0; k < 8; ++k) acc += m2[r][k] * m1[k][c];
      REQUIRE(std::abs(acc - mb[r][c]) < 1e-12);
    }
  }
}

TEST_CASE("marginals") {
  auto psi = qsim::basis_state(2, 0);
  auto pa = qsim::marginal_on_prefix(psi, 1);
  CHECK(pa[0] == doctest::Approx(1.0));
  CHECK(pa[1] == doctest::Approx(0.0));
  CHECK(qsim::tv_from_uniform(pa) == doctest::Approx(0.5));

  qsim::StructuredUnitary h;
  h.qubits = 3;
  h.stages.push_back(qsim::hadamard_mask_stage(3, 0b111));
  auto unif = qsim::apply(h, qsim::basis_state(3, 0));
  auto pu = qsim::marginal_on_prefix(unif, 2);
  for (double v : pu) CHECK(v == doctest::Approx(0.25));

  // d_B = 1: the marginal is the full outcome distribution
  auto full = qsim::marginal_on_prefix(unif, 3);
  auto dist = qsim::outcome_distribution(unif);
  for (std::size_t i = 0; i < dist.size(); ++i) CHECK(full[i] == doctest::Approx(dist[i]));

  CHECK_THROWS_AS(qsim::marginal_on_prefix(psi, 5), std::invalid_argument);
}

TEST_CASE("marginal on explicit qubit sets matches the prefix marginal") {
  SplitStream rng(31, 0);
  auto psi = qsim::haar_state(4, rng);
  std::vector<int> prefix = {0, 1};
  auto a = qsim::marginal_on_prefix(psi, 2);
  auto b = qsim::marginal_on_qubits(psi, prefix);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]));
}

TEST_CASE("distance and entropy hand values") {
  std::vector<double> point = {1.0, 0.0};
  std::vector<double> unif = {0.5, 0.5};
  auto r = qsim::distance_and_entropy(point, unif);
  CHECK(r.tv == doctest::Approx(0.5));
  CHECK(r.fidelity == doctest::Approx(M_SQRT1_2));
  CHECK(r.minentropy_bits == doctest::Approx(0.0));
  CHECK(r.shannon_bits == doctest::Approx(0.0));

  auto same = qsim::distance_and_entropy(unif, unif);
  CHECK(same.tv == doctest::Approx(0.0));
  CHECK(same.fidelity == doctest::Approx(1.0));
}

TEST_CASE("fidelity sandwich on random distribution pairs") {
  SplitStream rng(41, 0);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<double> p(8), q(8);
    double sp = 0, sq = 0;
    for (int i = 0; i < 8; ++i) {
      p[i] = rng.next_double() + 1e-12;
      q[i] = rng.next_double() + 1e-12;
      sp += p[i];
      sq += q[i];
    }
    for (int i = 0; i < 8; ++i) {
      p[i] /= sp;
      q[i] /= sq;
    }
    // throws if 1 - F <= TV <= sqrt(1 - F^2) fails
    REQUIRE_NOTHROW(qsim::distance_and_entropy(p, q));
  }
}
