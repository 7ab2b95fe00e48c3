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

#include "doctest.h"
#include "qlock/experiments.hpp"
#include "qlock/locking.hpp"

using namespace qlock;

namespace {

locking::LockingScheme small_galois_scheme(int qubits, int a_qubits, int r,
                                           locking::Mode mode) {
  auto mubs = mub::build_galois_mub_tables(qubits, r);
  locking::LockingScheme scheme;
  scheme.family = urel::family_from_galois(mubs, a_qubits);
  scheme.mode = mode;
  return scheme;
}

}  // namespace

TEST_CASE("bb84-style encoding: encode(0, 1) is |+>") {
  auto scheme = experiments::two_basis_scheme();
  auto plus = locking::lock_encode(scheme, 0, 1, 0);
  CHECK(std::abs(plus.amps[0] - qsim::cplx(M_SQRT1_2, 0)) < 1e-12);
  CHECK(std::abs(plus.amps[1] - qsim::cplx(M_SQRT1_2, 0)) < 1e-12);
  auto same = locking::lock_encode(scheme, 1, 0, 0);
  CHECK(std::abs(same.amps[1] - qsim::cplx(1, 0)) < 1e-12);
}

TEST_CASE("decode inverts encode exhaustively (padded mode)") {
  // spans d_B up to 4 and t up to 8
  for (auto [n, a, r] : {std::array<int, 3>{4, 3, 5}, {4, 2, 8}, {3, 1, 8}}) {
    auto scheme = small_galois_scheme(n, a, r, locking::Mode::Padded);
    for (std::uint64_t x = 0; x < scheme.message_count(); ++x) {
      for (std::uint64_t k = 0; k < scheme.key_count(); ++k) {
        for (std::uint64_t b = 0; b < scheme.randomness_count(); ++b) {
          REQUIRE(locking::lock_decode(scheme, locking::lock_encode(scheme, x, k, b), k) ==
                  x);
        }
      }
    }
  }
}

TEST_CASE("decode inverts encode exhaustively (one-time-pad mode)") {
  auto scheme = small_galois_scheme(3, 2, 4, locking::Mode::OneTimePadB);
  CHECK(scheme.message_count() == 8);   // full ciphertext width
  CHECK(scheme.key_count() == 8);       // t * d_B
  for (std::uint64_t x = 0; x < scheme.message_count(); ++x) {
    for (std::uint64_t k = 0; k < scheme.key_count(); ++k) {
      REQUIRE(locking::lock_decode(scheme, locking::lock_encode(scheme, x, k, 0), k) == x);
    }
  }
}

TEST_CASE("wrong key is flagged, not silent") {
  auto scheme = small_galois_scheme(3, 3, 4, locking::Mode::Padded);
  auto ct = locking::lock_encode(scheme, 5, 1, 0);
  // key 1 is a rotated basis; the identity key sees a spread state
  CHECK_THROWS_WITH_AS(locking::lock_decode(scheme, ct, 0), "ciphertext/key mismatch",
                       std::runtime_error);
}

TEST_CASE("same-key distinct messages have orthogonal ciphertexts") {
  auto scheme = small_galois_scheme(3, 2, 4, locking::Mode::Padded);
  for (std::uint64_t k = 0; k < scheme.key_count(); ++k) {
    for (std::uint64_t x = 0; x < scheme.message_count(); ++x) {
      for (std::uint64_t x2 = x + 1; x2 < scheme.message_count(); ++x2) {
        for (std::uint64_t b = 0; b < scheme.randomness_count(); ++b) {
          for (std::uint64_t b2 = 0; b2 < scheme.randomness_count(); ++b2) {
            auto c1 = locking::lock_encode(scheme, x, k, b);
            auto c2 = locking::lock_encode(scheme, x2, k, b2);
            qsim::cplx ip(0, 0);
            for (std::size_t i = 0; i < c1.amps.size(); ++i) {
              ip += std::conj(c1.amps[i]) * c2.amps[i];
            }
            REQUIRE(std::abs(ip) < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("computational attack on the two-basis scheme: posterior (3/4, 1/4)") {
  auto scheme = experiments::two_basis_scheme();
  auto prior = locking::uniform_prior(2);
  auto rep = locking::adversary_posterior(scheme, prior, locking::computational_povm(1));
  CHECK(rep.worst_tv == doctest::Approx(0.25));
  CHECK(rep.avg_tv == doctest::Approx(0.25));
}

TEST_CASE("ensemble and family paths agree") {
  auto scheme = small_galois_scheme(3, 2, 3, locking::Mode::Padded);
  auto prior = locking::flat_prior_prefix(scheme.message_count(), 1);
  auto povm = locking::computational_povm(3);
  auto fast = locking::adversary_posterior(scheme, prior, povm);
  auto slow = locking::adversary_posterior(locking::message_ensemble(scheme, prior), povm);
  CHECK(fast.worst_tv == doctest::Approx(slow.worst_tv));
  CHECK(fast.mutual_info_bits == doctest::Approx(slow.mutual_info_bits));
}

TEST_CASE("posterior consistency: mixture of posteriors returns the prior") {
  // total probability is what report_from_conditionals consumes; verify on
  // a direct ensemble computation
  auto scheme = small_galois_scheme(3, 2, 3, locking::Mode::Padded);
  auto prior = locking::uniform_prior(scheme.message_count());
  auto ens = locking::message_ensemble(scheme, prior);
  SplitStream rng(3, 0);
  auto povm = locking::random_basis_povm(3, rng);
  // Pr[i]-weighted posteriors summing to the prior is equivalent to each
  // conditional row summing to one over outcomes
  std::vector<double> total(ens.prior.size(), 0.0);
  for (std::size_t i = 0; i < povm.vectors.size(); ++i) {
    for (std::size_t x = 0; x < ens.prior.size(); ++x) {
      double s = 0;
      for (const auto& [w, psi] : ens.states[x]) {
        qsim::cplx ip(0, 0);
        for (std::size_t t = 0; t < psi.size(); ++t) {
          ip += std::conj(povm.vectors[i][t]) * psi[t];
        }
        s += w * std::norm(ip);
      }
      total[x] += povm.weights[i] * s;
    }
  }
  for (double v : total) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("key-guessing adversary attains the guessing floor") {
  auto scheme = small_galois_scheme(3, 3, 4, locking::Mode::Padded);
  auto prior = locking::uniform_prior(scheme.message_count());
  double t = static_cast<double>(scheme.key_count());
  double floor = 1.0 / t - 1.0 / 8.0;
  double worst = 0;
  for (int k = 0; k < scheme.family.size(); ++k) {
    auto rep = locking::adversary_posterior(scheme, prior,
                                            locking::key_guess_povm(scheme.family, k));
    worst = std::max(worst, rep.worst_tv);
  }
  CHECK(worst >= floor - 1e-9);
}

TEST_CASE("aligned basis measurement on a keyless scheme pins the message") {
  // t = 1: the adversary knows the basis, so the posterior concentrates
  auto scheme = small_galois_scheme(3, 3, 1, locking::Mode::Padded);
  auto prior = locking::uniform_prior(8);
  auto rep = locking::adversary_posterior(scheme, prior,
                                          locking::key_guess_povm(scheme.family, 0));
  CHECK(rep.worst_tv == doctest::Approx(1.0 - 1.0 / 8.0));
  CHECK(rep.mutual_info_bits == doctest::Approx(3.0));
}

TEST_CASE("invalid povm is rejected") {
  locking::Povm bad;
  bad.vectors.push_back({qsim::cplx(1, 0), qsim::cplx(0, 0)});
  bad.weights.push_back(1.0);
  auto scheme = experiments::two_basis_scheme();
  auto prior = locking::uniform_prior(2);
  CHECK_THROWS_AS(locking::adversary_posterior(scheme, prior, bad),
                  std::invalid_argument);
}

TEST_CASE("accessible info search: known basis recovers the message") {
  auto scheme = small_galois_scheme(3, 3, 1, locking::Mode::Padded);  // t = 1, identity
  auto prior = locking::uniform_prior(8);
  auto ens = locking::message_ensemble(scheme, prior);
  SplitStream rng(7, 0);
  double info = locking::accessible_info_search(ens, {4, 40}, rng);
  CHECK(info >= 3.0 - 0.01);
  CHECK(info <= 3.0 + 1e-9);
}

TEST_CASE("accessible info never exceeds log d_A") {
  auto scheme = small_galois_scheme(2, 2, 3, locking::Mode::Padded);
  auto prior = locking::uniform_prior(4);
  auto ens = locking::message_ensemble(scheme, prior);
  SplitStream rng(8, 0);
  double info = locking::accessible_info_search(ens, {6, 60}, rng);
  CHECK(info <= 2.0 + 1e-9);
}

TEST_CASE("two-basis pair view reaches one half bit") {
  auto scheme = experiments::two_basis_scheme();
  auto prior = locking::uniform_prior(2);
  auto ens = locking::message_key_ensemble(scheme, prior);
  SplitStream rng(9, 0);
  double info = locking::accessible_info_search(ens, {16, 120}, rng);
  CHECK(info >= 0.45);
  CHECK(info <= 0.501);
}

TEST_CASE("pauli hand example: n=2 with 2 keys leaves tv at least 1/2") {
  std::vector<std::uint64_t> keys = {0b0000, 0b0101};  // (u,v) pairs
  auto rep = locking::pauli_locking_bound(2, keys);
  CHECK(rep.tv_lower_bound == doctest::Approx(0.5));
  CHECK(rep.measured_tv >= 0.5 - 1e-12);
}

TEST_CASE("full pauli key set is a perfect one-time pad") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::uint64_t> all(std::size_t{1} << (2 * n));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    auto rep = locking::pauli_locking_bound(n, all);
    CHECK(rep.measured_tv < 1e-12);
    CHECK(rep.tv_lower_bound <= 0.0);
  }
}

TEST_CASE("pauli floor holds on random subsets up to n = 6") {
  SplitStream rng(99, 0);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(5));
    std::uint64_t space = std::uint64_t{1} << (2 * n);
    int size = 1 + static_cast<int>(rng.next_below(std::min<std::uint64_t>(space, 64)));
    std::vector<std::uint64_t> keys;
    while (keys.size() < static_cast<std::size_t>(size)) {
      std::uint64_t k = rng.next_below(space);
      bool dup = false;
      for (auto q : keys) dup = dup || (q == k);
      if (!dup) keys.push_back(k);
    }
    auto rep = locking::pauli_locking_bound(n, keys);
    REQUIRE(rep.measured_tv >= rep.tv_lower_bound - 1e-12);
  }
}

TEST_CASE("flat-source locking bound on a small scheme") {
  // galois family at n = 4 with d_A = 4: measure the family's error on the
  // povm vectors and check the flat-source posterior bound
  auto scheme = small_galois_scheme(4, 2, 17, locking::Mode::Padded);
  auto comp = locking::computational_povm(4);
  SplitStream rng(17, 0);
  auto rnd = locking::random_basis_povm(4, rng);

  std::vector<qsim::StateVector> states;
  for (std::uint64_t i = 0; i < 16; ++i) states.push_back(qsim::basis_state(4, i));
  for (const auto& povm : {comp, rnd}) {
    for (const auto& v : povm.vectors) {
      qsim::StateVector s;
      s.qubits = 4;
      s.amps = v;
      states.push_back(std::move(s));
    }
  }
  auto ur = urel::eval_metric_ur(scheme.family, states);
  double eps_hat = ur.eps_hat;
  int n_msg = 2;
  for (int ell : {n_msg - 1}) {
    double ratio = std::exp2(ell - n_msg);
    REQUIRE(eps_hat < ratio);
    double bound = 2.0 * eps_hat / (ratio - eps_hat) + 0.01;
    auto prior = locking::flat_prior_prefix(scheme.message_count(), ell);
    for (const auto& povm : {comp, rnd}) {
      auto rep = locking::adversary_posterior(scheme, prior, povm);
      REQUIRE(rep.worst_tv <= bound);
    }
  }
}
