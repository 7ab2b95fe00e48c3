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

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qlock/experiments.hpp"
#include "qlock/gf2x.hpp"
#include "qlock/locking.hpp"
#include "qlock/mub.hpp"
#include "qlock/permext.hpp"
#include "qlock/qid.hpp"
#include "qlock/qsim.hpp"
#include "qlock/report.hpp"
#include "qlock/rng.hpp"
#include "qlock/urel.hpp"

using namespace qlock;

namespace {

struct Common {
  int n = 6;
  double epsilon = 0.5;
  int trials = 50;
  std::uint64_t rng_seed = 1;
  std::string preset = "desk";
  std::string mub = "hadamard";
  std::string out_path;
};

int emit(report::ExperimentReport& rep,
         std::chrono::steady_clock::time_point start, const Common& common,
         int violations) {
  rep.rng_seed = common.rng_seed;
  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  std::string text = rep.to_string();
  if (common.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(common.out_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot open " << common.out_path << "\n";
      return 1;
    }
    f << text;
  }
  return violations > 0 ? 2 : 0;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--n", c.n, "problem size (qubits / field bits)");
  cmd->add_option("--epsilon", c.epsilon, "error parameter");
  cmd->add_option("--trials", c.trials, "number of randomized trials");
  cmd->add_option("--rng-seed", c.rng_seed, "root seed for all randomness");
  cmd->add_option("--preset", c.preset, "parameter preset")
      ->check(CLI::IsMember({"paper", "desk"}));
  cmd->add_option("--mub", c.mub, "mub family kind")
      ->check(CLI::IsMember({"galois", "hadamard"}));
  cmd->add_option("--out", c.out_path, "write the JSON report to this path");
}

// ---------------------------------------------------------------- field-check
int run_field_check(const Common& c) {
  auto start = std::chrono::steady_clock::now();
  report::ExperimentReport rep;
  rep.experiment = "field-check";
  rep.params["n"] = c.n;
  auto field = gf2x::FieldContext::make(c.n);
  int violations = 0;

  // generator order by walking all powers
  std::uint64_t order = 0;
  std::uint32_t x = 1;
  do {
    x = field.mul(x, field.generator());
    ++order;
  } while (x != 1 && order <= field.order());
  if (order != field.order() - 1) ++violations;

  // field axioms on random triples (exhaustive for small fields)
  SplitStream rng(c.rng_seed, 0);
  int axiom_failures = 0;
  int triples = c.n <= 4 ? -1 : std::max(1000, c.trials);
  auto check_triple = [&](std::uint32_t a, std::uint32_t b, std::uint32_t cc) {
    if (field.mul(a, field.mul(b, cc)) != field.mul(field.mul(a, b), cc)) ++axiom_failures;
    if (field.mul(a, field.add(b, cc)) !=
        field.add(field.mul(a, b), field.mul(a, cc))) {
      ++axiom_failures;
    }
    if (a != 0 && field.mul(a, field.inv(a)) != 1) ++axiom_failures;
  };
  if (triples < 0) {
    for (std::uint32_t a = 0; a < field.order(); ++a) {
      for (std::uint32_t b = 0; b < field.order(); ++b) {
        for (std::uint32_t cc = 0; cc < field.order(); ++cc) check_triple(a, b, cc);
      }
    }
  } else {
    for (int i = 0; i < triples; ++i) {
      check_triple(static_cast<std::uint32_t>(rng.next_below(field.order())),
                   static_cast<std::uint32_t>(rng.next_below(field.order())),
                   static_cast<std::uint32_t>(rng.next_below(field.order())));
    }
  }
  violations += axiom_failures;

  // evaluation / interpolation round trip
  int roundtrip_failures = 0;
  int degree = std::min(4, c.n);
  for (int t = 0; t < c.trials; ++t) {
    SplitStream trial_rng(c.rng_seed, 1000 + static_cast<std::uint64_t>(t));
    gf2x::FieldPoly poly(degree);
    for (auto& coeff : poly) {
      coeff = static_cast<std::uint32_t>(trial_rng.next_below(field.order()));
    }
    std::vector<std::uint32_t> points;
    while (points.size() < poly.size()) {
      auto p = static_cast<std::uint32_t>(trial_rng.next_below(field.order()));
      bool dup = false;
      for (auto q : points) dup = dup || (q == p);
      if (!dup) points.push_back(p);
    }
    auto values = gf2x::poly_eval(field, poly, points);
    if (gf2x::poly_interpolate(field, points, values) != poly) ++roundtrip_failures;
  }
  violations += roundtrip_failures;

  rep.metrics["modulus"] = static_cast<double>(field.modulus());
  rep.metrics["generator"] = static_cast<double>(field.generator());
  rep.metrics["generator_order"] = static_cast<double>(order);
  rep.metrics["axiom_failures"] = axiom_failures;
  rep.metrics["interp_roundtrip_failures"] = roundtrip_failures;
  return emit(rep, start, c, violations);
}

// ------------------------------------------------------------------ mub-check
int run_mub_check(const Common& c, int r_opt) {
  auto start = std::chrono::steady_clock::now();
  report::ExperimentReport rep;
  rep.experiment = "mub-check";
  rep.params["n"] = c.n;
  rep.params["mub"] = c.mub;
  int violations = 0;
  if (c.mub == "galois") {
    int r = r_opt > 0 ? r_opt : (1 << c.n) + 1;
    rep.params["r"] = r;
    auto fam = mub::build_galois_mub_tables(c.n, r);
    double target = std::exp2(-c.n);
    double max_dev = 0;
    std::size_t dim = std::size_t{1} << c.n;
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        if (i == j) continue;
        auto vi = mub::galois_member(fam, i);
        auto vj = mub::galois_member(fam, j);
        for (std::size_t y = 0; y < dim; ++y) {
          auto col = qsim::apply_inverse(vi, qsim::apply(vj, qsim::basis_state(c.n, y)));
          for (const auto& amp : col.amps) {
            max_dev = std::max(max_dev, std::abs(std::norm(amp) - target));
          }
        }
      }
    }
    if (max_dev > 1e-10) ++violations;
    rep.metrics["max_unbiasedness_deviation"] = max_dev;
    rep.metrics["pairs_checked"] = static_cast<double>(r) * (r - 1);
  } else {
    bool doubled = r_opt == 2 * c.n;
    auto code = experiments::desk_code(c.n, doubled);
    auto fam = mub::build_hadamard_family(code);
    rep.params["r"] = static_cast<int>(fam.masks.size());
    double max_err = 0;
    for (std::size_t i = 0; i < fam.masks.size(); ++i) {
      for (std::size_t j = i + 1; j < fam.masks.size(); ++j) {
        std::uint64_t w = fam.masks[i] ^ fam.masks[j];
        int dist = std::popcount(w);
        qsim::StructuredUnitary hw;
        hw.qubits = c.n;
        hw.stages.push_back(qsim::hadamard_mask_stage(c.n, w));
        double max_overlap = 0;
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << c.n); ++y) {
          auto col = qsim::apply(hw, qsim::basis_state(c.n, y));
          for (const auto& amp : col.amps) {
            max_overlap = std::max(max_overlap, std::abs(amp));
          }
        }
        max_err = std::max(max_err, std::abs(max_overlap - std::exp2(-dist / 2.0)));
      }
    }
    if (max_err > 1e-12) ++violations;
    rep.metrics["gamma"] = fam.gamma;
    rep.metrics["max_overlap_error"] = max_err;
  }
  return emit(rep, start, c, violations);
}

// ------------------------------------------------------------------ ext-build
permext::GuvDeskParams desk_guv_params_for(int n, double eps) {
  // two-level recursion exercising the RS condenser, the block leftover
  // hash, their composition, and residual re-extraction
  permext::GuvDeskParams params;
  params.input_bits = n;
  params.eps = eps;
  if (n == 12) {
    params.levels.push_back({.rs_field_bits = 3,
                             .rs_symbols = 4,
                             .rs_condensed_symbols = 2,
                             .lhl_blocks = 2,
                             .lhl_extract_bits = 2});
    params.levels.push_back({.rs_field_bits = 0,
                             .rs_symbols = 0,
                             .rs_condensed_symbols = 0,
                             .lhl_blocks = 1,
                             .lhl_extract_bits = 2});
    params.k_in = 10;
    return params;
  }
  // generic fallback: single leftover-hash level extracting n/4 bits
  params.levels.push_back({.rs_field_bits = 0,
                           .rs_symbols = 0,
                           .rs_condensed_symbols = 0,
                           .lhl_blocks = 1,
                           .lhl_extract_bits = std::max(1, n / 4)});
  params.k_in = std::max(2 + n / 4, n / 2);
  return params;
}

int run_ext_build(const Common& c, long long k_opt, double delta) {
  auto start = std::chrono::steady_clock::now();
  report::ExperimentReport rep;
  rep.experiment = "ext-build";
  rep.params["preset"] = c.preset;
  rep.params["n"] = c.n;
  int violations = 0;
  if (c.preset == "paper") {
    long long n = c.n;
    long long k = k_opt > 0 ? k_opt : n / 2;
    rep.params["k"] = k;
    rep.params["epsilon"] = c.epsilon;
    rep.params["delta"] = delta;
    long long d = permext::paper_d(n, c.epsilon);
    auto step = permext::paper_extractor_spec(n, k, c.epsilon);
    auto top = permext::paper_top_spec(n, k, c.epsilon, delta);
    if (step.seed_bits > d) ++violations;
    if (step.condensed_bits < k / 4) ++violations;
    if (top.condensed_bits < static_cast<long long>((1.0 - delta) * k)) ++violations;
    rep.metrics["t_eps"] = static_cast<double>(permext::paper_t(n, c.epsilon));
    rep.metrics["d_eps"] = static_cast<double>(d);
    rep.metrics["step_seed_bits"] = static_cast<double>(step.seed_bits);
    rep.metrics["step_extracted_bits"] = static_cast<double>(step.condensed_bits);
    rep.metrics["top_seed_bits"] = static_cast<double>(top.seed_bits);
    rep.metrics["top_extracted_bits"] = static_cast<double>(top.condensed_bits);
    rep.metrics["top_applications"] = static_cast<double>(top.children.size());
    return emit(rep, start, c, violations);
  }
  auto params = desk_guv_params_for(c.n, c.epsilon);
  if (k_opt > 0) params.k_in = static_cast<int>(k_opt);
  auto fam = permext::build_guv_desk(params);
  bool bijective = permext::exhaustive_bijectivity_check(*fam);
  if (!bijective) ++violations;
  rep.params["k"] = params.k_in;
  rep.metrics["input_bits"] = fam->input_bits();
  rep.metrics["extracted_bits"] = fam->condensed_bits();
  rep.metrics["seed_count"] = static_cast<double>(fam->seed_count());
  rep.metrics["bijective"] = bijective ? 1.0 : 0.0;
  rep.metrics["declared_eps"] = fam->contract().eps;
  return emit(rep, start, c, violations);
}

// ------------------------------------------------------------------- ext-eval
int run_ext_eval(const Common& c, int m, int k) {
  auto start = std::chrono::steady_clock::now();
  report::ExperimentReport rep;
  rep.experiment = "ext-eval";
  rep.params["n"] = c.n;
  rep.params["m"] = m;
  rep.params["k"] = k;
  rep.params["trials"] = c.trials;
  auto field = gf2x::FieldContext::make(c.n);
  auto fam = permext::make_lhl(field, m, k);
  double lhl_bound = std::exp2(0.5 * (m - k) - 1.0) + std::exp2(-c.n);
  int violations = 0;
  double max_tv = 0, min_residual = 1e9, max_gamma_mass = 0;
  for (int t = 0; t < c.trials; ++t) {
    SplitStream rng(c.rng_seed, static_cast<std::uint64_t>(t));
    auto source = permext::random_subset_source(c.n, k, rng);
    auto r = permext::eval_extractor_tv(*fam, source);
    max_tv = std::max(max_tv, r.tv_joint);
    min_residual = std::min(min_residual, r.residual_minentropy);
    max_gamma_mass = std::max(max_gamma_mass, r.gamma_mass);
    if (r.tv_joint > lhl_bound + 1e-12) ++violations;
    if (r.residual_minentropy < k - m - 1 - 1e-9) ++violations;
  }
  rep.metrics["max_tv_joint"] = max_tv;
  rep.metrics["lhl_bound"] = lhl_bound;
  rep.metrics["min_residual_minentropy"] = min_residual;
  rep.metrics["residual_floor"] = static_cast<double>(k - m - 1);
  rep.metrics["max_gamma_mass"] = max_gamma_mass;
  rep.metrics["violations"] = violations;
  return emit(rep, start, c, violations);
}

// ------------------------------------------------------------------- ur-build
int run_ur_build(const Common& c, int a_qubits, int galois_r, bool doubled) {
  auto start = std::chrono::steady_clock::now();
  report::ExperimentReport rep;
  rep.experiment = "ur-build";
  rep.params["n"] = c.n;
  rep.params["da_qubits"] = a_qubits;
  rep.params["mub"] = c.mub;
  auto fam = experiments::desk_ur_family(c.n, a_qubits, c.mub, galois_r, doubled);
  int violations = 0;
  double max_norm_dev = 0;
  for (int t = 0; t < std::min(c.trials, 20); ++t) {
    SplitStream rng(c.rng_seed, static_cast<std::uint64_t>(t));
    auto psi = qsim::haar_state(c.n, rng);
    for (std::size_t k = 0; k < fam.members.size();
         k += std::max<std::size_t>(1, fam.members.size() / 16)) {
      auto out = qsim::apply(fam.members[k], psi);
      max_norm_dev = std::max(max_norm_dev, std::abs(out.norm() - 1.0));
    }
  }
  if (max_norm_dev > 1e-9) ++violations;
  rep.metrics["t"] = static_cast<double>(fam.members.size());
  rep.metrics["a_qubits"] = fam.a_qubits;
  rep.metrics["max_norm_deviation"] = max_norm_dev;
  return emit(rep, start, c, violations);
}

// -------------------------------------------------------------------- ur-eval
int run_ur_eval(const Common& c, int a_qubits, int galois_r, bool doubled) {
  auto start = std::chrono::steady_clock::now();
  report::ExperimentReport rep;
  rep.experiment = "ur-eval";
  rep.params["n"] = c.n;
  rep.params["da_qubits"] = a_qubits;
  rep.params["mub"] = c.mub;
  rep.params["trials"] = c.trials;
  auto fam = experiments::desk_ur_family(c.n, a_qubits, c.mub, galois_r, doubled);
  auto states = experiments::standard_states(c.n, c.trials, c.rng_seed, true);
  auto r = urel::eval_metric_ur(fam, states, true);
  double min_margin = 1e9;
  for (std::size_t i = 0; i < states.size(); ++i) {
    min_margin = std::min(min_margin,
                          r.per_state_entropy[i] -
                              urel::entropic_bound_bits(r.per_state_tv[i], fam.a_qubits));
  }
  rep.metrics["t"] = static_cast<double>(fam.members.size());
  rep.metrics["states_tested"] = r.states_tested;
  rep.metrics["eps_hat"] = r.eps_hat;
  rep.metrics["eps_mean"] = r.eps_mean;
  rep.metrics["entropy_bound_at_eps_hat"] = r.entropy_bound;
  rep.metrics["min_entropy_margin"] = min_margin;
  rep.metrics["entropy_violations"] = r.entropy_violations;
  return emit(rep, start, c, r.entropy_violations);
}

// ----------------------------------------------------------------- lock-attack
int run_lock_attack(const Common& c, const std::string& scheme_kind, int a_qubits,
                    int galois_r, int restarts) {
  auto start = std::chrono::steady_clock::now();
  report::ExperimentReport rep;
  rep.experiment = "lock-attack";
  rep.params["scheme"] = scheme_kind;
  int violations = 0;

  if (scheme_kind == "two-basis") {
    auto scheme = experiments::two_basis_scheme();
    auto prior = locking::uniform_prior(scheme.message_count());
    auto comp = locking::adversary_posterior(scheme, prior,
                                             locking::computational_povm(1));
    SplitStream rng(c.rng_seed, 0);
    locking::SearchBudget budget{restarts, 250};
    double info_xk = locking::accessible_info_search(
        locking::message_key_ensemble(scheme, prior), budget, rng);
    SplitStream rng2(c.rng_seed, 1);
    double info_x = locking::accessible_info_search(
        locking::message_ensemble(scheme, prior), budget, rng2);
    rep.params["restarts"] = restarts;
    rep.metrics["computational_worst_tv"] = comp.worst_tv;
    rep.metrics["accessible_info_xk"] = info_xk;
    rep.metrics["accessible_info_x"] = info_x;
    if (std::abs(comp.worst_tv - 0.25) > 1e-9) ++violations;
    if (info_xk < 0.45 || info_xk > 0.501) ++violations;
    return emit(rep, start, c, violations);
  }

  rep.params["n"] = c.n;
  rep.params["da_qubits"] = a_qubits;
  rep.params["mub"] = c.mub;
  auto scheme = experiments::desk_locking_scheme(c.n, a_qubits, c.mub, galois_r);
  const auto& fam = scheme.family;
  int n_msg = fam.a_qubits;

  // adversary menu
  std::vector<std::pair<std::string, locking::Povm>> menu;
  menu.emplace_back("computational", locking::computational_povm(c.n));
  menu.emplace_back("hadamard", locking::hadamard_basis_povm(c.n));
  for (int i = 0; i < 3; ++i) {
    SplitStream rng(c.rng_seed, 100 + static_cast<std::uint64_t>(i));
    menu.emplace_back("random" + std::to_string(i), locking::random_basis_povm(c.n, rng));
  }
  menu.emplace_back("key_guess0", locking::key_guess_povm(fam, 0));
  menu.emplace_back("key_guess_mid", locking::key_guess_povm(fam, fam.size() / 2));

  // eps_hat over sampled states, all basis states, and every POVM vector
  auto states = experiments::standard_states(c.n, c.trials, c.rng_seed, true);
  for (const auto& [name, povm] : menu) {
    for (const auto& v : povm.vectors) {
      qsim::StateVector s;
      s.qubits = c.n;
      s.amps = v;
      states.push_back(std::move(s));
    }
  }
  auto ur = urel::eval_metric_ur(fam, states, false);
  double eps_hat = ur.eps_hat;
  rep.metrics["eps_hat"] = eps_hat;
  rep.metrics["t"] = static_cast<double>(fam.members.size());

  for (int ell : {n_msg - 1, n_msg - 2}) {
    double ratio = std::exp2(ell - n_msg);
    double bound = ratio > eps_hat
                       ? 2.0 * eps_hat / (ratio - eps_hat) + 0.01
                       : 1e9;
    double worst = 0;
    auto prior = locking::flat_prior_prefix(scheme.message_count(), ell);
    for (const auto& [name, povm] : menu) {
      auto att = locking::adversary_posterior(scheme, prior, povm);
      worst = std::max(worst, att.worst_tv);
      if (att.worst_tv > bound) ++violations;
    }
    std::string suffix = "_ell" + std::to_string(ell);
    rep.metrics["worst_tv" + suffix] = worst;
    rep.metrics["bound" + suffix] = std::min(bound, 1e9);
  }
  rep.metrics["violations"] = violations;
  return emit(rep, start, c, violations);
}

// ----------------------------------------------------------------- pauli-check
int run_pauli_check(const Common& c, int subset_size) {
  auto start = std::chrono::steady_clock::now();
  report::ExperimentReport rep;
  rep.experiment = "pauli-check";
  rep.params["n"] = c.n;
  rep.params["subset_size"] = subset_size;
  rep.params["trials"] = c.trials;
  int violations = 0;
  double floor = 1.0 - static_cast<double>(subset_size) / std::exp2(c.n);
  double min_margin = 1e9;
  for (int t = 0; t < c.trials; ++t) {
    SplitStream rng(c.rng_seed, static_cast<std::uint64_t>(t));
    std::vector<std::uint64_t> keys;
    std::uint64_t space = std::uint64_t{1} << (2 * c.n);
    while (keys.size() < static_cast<std::size_t>(subset_size)) {
      std::uint64_t k = rng.next_below(space);
      bool dup = false;
      for (auto q : keys) dup = dup || (q == k);
      if (!dup) keys.push_back(k);
    }
    auto r = locking::pauli_locking_bound(c.n, keys);
    min_margin = std::min(min_margin, r.measured_tv - r.tv_lower_bound);
    if (r.measured_tv < r.tv_lower_bound - 1e-12) ++violations;
  }
  rep.metrics["tv_lower_bound"] = floor;
  rep.metrics["min_margin"] = min_margin;
  rep.metrics["violations"] = violations;
  if (2 * c.n <= 24) {
    std::vector<std::uint64_t> all(std::size_t{1} << (2 * c.n));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    auto r = locking::pauli_locking_bound(c.n, all);
    rep.metrics["full_key_set_tv"] = r.measured_tv;
    if (r.measured_tv > 1e-12) ++violations;
  }
  return emit(rep, start, c, violations);
}

// --------------------------------------------------------------- qid-forgetful
int run_qid_forgetful(const Common& c, int a_qubits, int galois_r) {
  auto start = std::chrono::steady_clock::now();
  report::ExperimentReport rep;
  rep.experiment = "qid-forgetful";
  rep.params["n"] = c.n;
  rep.params["da_qubits"] = a_qubits;
  rep.params["mub"] = c.mub;
  rep.params["trials"] = c.trials;
  auto fam = experiments::desk_ur_family(c.n, a_qubits, c.mub, galois_r, false);
  auto states = experiments::standard_states(c.n, c.trials, c.rng_seed, true);
  auto r = qid::forgetfulness_deficit(fam, states);
  rep.metrics["max_deficit"] = r.max_deficit;
  rep.metrics["implied_id_error"] = r.implied_id_error;
  rep.metrics["violations"] = r.violations;
  rep.metrics["quantum_cost_qubits"] = qid::quantum_cost_qubits(fam);
  return emit(rep, start, c, r.violations);
}

// --------------------------------------------------------------- gamma-formula
int run_gamma_formula(const Common& c, std::uint64_t d_a, std::uint64_t d_b,
                      std::uint64_t grid_max) {
  auto start = std::chrono::steady_clock::now();
  report::ExperimentReport rep;
  rep.experiment = "gamma-formula";
  rep.params["d_a"] = d_a;
  rep.params["d_b"] = d_b;
  int violations = 0;
  rep.metrics["expected_fidelity"] = urel::expected_fidelity(d_a, d_b);
  rep.metrics["lower_bound"] = urel::expected_fidelity_lower_bound(d_b);
  if (c.trials > 0 && d_a * d_b <= 64) {
    int qubits = 0;
    while ((std::uint64_t{1} << qubits) < d_a * d_b) ++qubits;
    if ((std::uint64_t{1} << qubits) != d_a * d_b) {
      throw CLI::ValidationError("--da * --db must be a power of two for sampling");
    }
    int a_qubits = 0;
    while ((std::uint64_t{1} << a_qubits) < d_a) ++a_qubits;
    double sum = 0, sum_sq = 0;
    for (int t = 0; t < c.trials; ++t) {
      SplitStream rng(c.rng_seed, static_cast<std::uint64_t>(t));
      auto psi = qsim::haar_state(qubits, rng);
      auto pa = qsim::marginal_on_prefix(psi, a_qubits);
      std::vector<double> unif(pa.size(), 1.0 / static_cast<double>(pa.size()));
      double f = qsim::fidelity(pa, unif);
      sum += f;
      sum_sq += f * f;
    }
    double mean = sum / c.trials;
    double var = std::max(0.0, sum_sq / c.trials - mean * mean);
    double se = std::sqrt(var / c.trials);
    rep.metrics["mc_mean"] = mean;
    rep.metrics["mc_stderr"] = se;
    if (std::abs(mean - rep.metrics["expected_fidelity"]) > 3.0 * se + 1e-9) {
      ++violations;
    }
  }
  if (grid_max > 0) {
    int grid_violations = 0;
    for (std::uint64_t da = 1; da <= grid_max; da *= 2) {
      for (std::uint64_t db = 1; da * db <= grid_max; db *= 2) {
        if (urel::expected_fidelity(da, db) <
            urel::expected_fidelity_lower_bound(db) - 1e-12) {
          ++grid_violations;
        }
      }
    }
    rep.metrics["grid_violations"] = grid_violations;
    violations += grid_violations;
  }
  return emit(rep, start, c, violations);
}

// ---------------------------------------------------------------- gram-schmidt
int run_gram_schmidt(const Common& c, int r, double delta, int dim) {
  auto start = std::chrono::steady_clock::now();
  report::ExperimentReport rep;
  rep.experiment = "gram-schmidt";
  rep.params["r"] = r;
  rep.params["delta"] = delta;
  rep.params["dim"] = dim;
  rep.params["trials"] = c.trials;
  int violations = 0;
  double max_ratio = 0;
  for (int t = 0; t < c.trials; ++t) {
    SplitStream rng(c.rng_seed, static_cast<std::uint64_t>(t));
    auto vecs = experiments::near_orthogonal_family(r, dim, delta, rng);
    auto res = urel::gram_schmidt_orthonormalize(vecs, delta);
    for (std::size_t i = 1; i < res.deviation.size(); ++i) {
      if (res.deviation[i] > res.allowed[i] + 1e-12) ++violations;
      if (res.allowed[i] > 0) {
        max_ratio = std::max(max_ratio, res.deviation[i] / res.allowed[i]);
      }
    }
  }
  rep.metrics["max_deviation_ratio"] = max_ratio;
  rep.metrics["violations"] = violations;
  return emit(rep, start, c, violations);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlock: uncertainty relations, permutation extractors, and "
               "information locking at desk scale"};
  app.require_subcommand(1);

  Common c;
  int r_opt = 0, a_qubits = 2, galois_r = 17, m_bits = 2, k_bits = 0;
  int subset_size = 4, gs_r = 8, gs_dim = 64, restarts = 64;
  long long k_paper = 0;
  double delta = 0.25, gs_delta = 1.0 / 200.0;
  std::uint64_t d_a = 1, d_b = 2, grid_max = 0;
  std::string scheme_kind = "ur";
  bool doubled = false;

  auto* field_check = app.add_subcommand("field-check", "GF(2^m) construction and axioms");
  add_common(field_check, c);

  auto* mub_check = app.add_subcommand("mub-check", "MUB unbiasedness verification");
  add_common(mub_check, c);
  mub_check->add_option("--r", r_opt, "family size (galois) or 2n for the doubled code");

  auto* ext_build = app.add_subcommand("ext-build", "permutation extractor construction");
  add_common(ext_build, c);
  ext_build->add_option("--k", k_paper, "source min-entropy");
  ext_build->add_option("--delta", delta, "extraction deficit (paper preset)");

  auto* ext_eval = app.add_subcommand("ext-eval", "exhaustive extractor evaluation");
  add_common(ext_eval, c);
  ext_eval->add_option("--m", m_bits, "extracted bits");
  ext_eval->add_option("--source-k", k_bits, "flat-source min-entropy");

  auto* ur_build = app.add_subcommand("ur-build", "metric uncertainty relation build");
  add_common(ur_build, c);
  ur_build->add_option("--da", a_qubits, "A-system qubits");
  ur_build->add_option("--r", galois_r, "galois family size");
  ur_build->add_flag("--doubled-code", doubled, "use the doubled mask code");

  auto* ur_eval = app.add_subcommand("ur-eval", "metric uncertainty relation evaluation");
  add_common(ur_eval, c);
  ur_eval->add_option("--da", a_qubits, "A-system qubits");
  ur_eval->add_option("--r", galois_r, "galois family size");
  ur_eval->add_flag("--doubled-code", doubled, "use the doubled mask code");

  auto* lock_attack = app.add_subcommand("lock-attack", "locking adversary simulation");
  add_common(lock_attack, c);
  lock_attack->add_option("--scheme", scheme_kind, "two-basis | ur")
      ->check(CLI::IsMember({"two-basis", "ur"}));
  lock_attack->add_option("--da", a_qubits, "A-system qubits");
  lock_attack->add_option("--r", galois_r, "galois family size");
  lock_attack->add_option("--restarts", restarts, "search restarts");

  auto* pauli_check = app.add_subcommand("pauli-check", "Pauli-subset locking floor");
  add_common(pauli_check, c);
  pauli_check->add_option("--subset-size", subset_size, "key subset size");

  auto* qid_forgetful = app.add_subcommand("qid-forgetful", "identification forgetfulness");
  add_common(qid_forgetful, c);
  qid_forgetful->add_option("--da", a_qubits, "A-system qubits");
  qid_forgetful->add_option("--r", galois_r, "galois family size");

  auto* gamma_formula = app.add_subcommand("gamma-formula", "expected-fidelity formula");
  add_common(gamma_formula, c);
  gamma_formula->add_option("--da", d_a, "A dimension");
  gamma_formula->add_option("--db", d_b, "B dimension");
  gamma_formula->add_option("--grid-max", grid_max, "check the bound for d_a d_b up to this");

  auto* gram_schmidt = app.add_subcommand("gram-schmidt", "orthonormalization deviation bound");
  add_common(gram_schmidt, c);
  gram_schmidt->add_option("--r", gs_r, "vector count");
  gram_schmidt->add_option("--delta", gs_delta, "pairwise overlap bound");
  gram_schmidt->add_option("--dim", gs_dim, "ambient dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  try {
    if (field_check->parsed()) return run_field_check(c);
    if (mub_check->parsed()) return run_mub_check(c, r_opt);
    if (ext_build->parsed()) return run_ext_build(c, k_paper, delta);
    if (ext_eval->parsed()) {
      if (k_bits <= 0) k_bits = std::max(1, c.n / 2);
      return run_ext_eval(c, m_bits, k_bits);
    }
    if (ur_build->parsed()) return run_ur_build(c, a_qubits, galois_r, doubled);
    if (ur_eval->parsed()) return run_ur_eval(c, a_qubits, galois_r, doubled);
    if (lock_attack->parsed()) {
      if (lock_attack->count("--mub") == 0) c.mub = "galois";
      return run_lock_attack(c, scheme_kind, a_qubits, galois_r, restarts);
    }
    if (pauli_check->parsed()) return run_pauli_check(c, subset_size);
    if (qid_forgetful->parsed()) return run_qid_forgetful(c, a_qubits, galois_r);
    if (gamma_formula->parsed()) return run_gamma_formula(c, d_a, d_b, grid_max);
    if (gram_schmidt->parsed()) return run_gram_schmidt(c, gs_r, gs_delta, gs_dim);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
