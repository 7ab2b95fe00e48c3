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

#include "qlock/qsim.hpp"

#include <cmath>
#include <stdexcept>

namespace qlock::qsim {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;
const cplx kPhase[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
}  // namespace

double StateVector::norm() const {
  double s = 0;
  for (const cplx& a : amps) s += std::norm(a);
  return std::sqrt(s);
}

StateVector basis_state(int qubits, std::uint64_t index) {
  if (qubits < 0 || qubits > 20) throw std::invalid_argument("qubit count out of range");
  StateVector psi;
  psi.qubits = qubits;
  psi.amps.assign(std::size_t{1} << qubits, cplx(0, 0));
  if (index >= psi.amps.size()) throw std::invalid_argument("basis index out of range");
  psi.amps[index] = cplx(1, 0);
  return psi;
}

StateVector haar_state(int qubits, SplitStream& rng) {
  if (qubits < 0 || qubits > 14) throw std::invalid_argument("qubit count out of range");
  StateVector psi;
  psi.qubits = qubits;
  psi.amps.resize(std::size_t{1} << qubits);
  double s = 0;
  for (cplx& a : psi.amps) {
    double re = rng.next_gaussian();
    double im = rng.next_gaussian();
    a = cplx(re, im);
    s += re * re + im * im;
  }
  double scale = 1.0 / std::sqrt(s);
  for (cplx& a : psi.amps) a *= scale;
  return psi;
}

Stage hadamard_mask_stage(int qubits, std::uint64_t qubit_mask) {
  if (qubit_mask >> qubits) throw std::invalid_argument("mask exceeds qubit count");
  Stage s;
  s.kind = Stage::Kind::HadamardMask;
  for (int q = 0; q < qubits; ++q) {
    if (qubit_mask >> q & 1) s.index_bit_mask |= std::uint64_t{1} << (qubits - 1 - q);
  }
  return s;
}

Stage diagonal_phase_stage(std::vector<std::uint8_t> exponents) {
  Stage s;
  s.kind = Stage::Kind::DiagonalPhase;
  s.phase_exponent = std::move(exponents);
  for (std::uint8_t& e : s.phase_exponent) e &= 3;
  return s;
}

Stage basis_permutation_stage(std::vector<std::uint32_t> perm) {
  Stage s;
  s.kind = Stage::Kind::BasisPermutation;
  s.perm_inv.assign(perm.size(), UINT32_MAX);
  for (std::size_t x = 0; x < perm.size(); ++x) {
    if (perm[x] >= perm.size() || s.perm_inv[perm[x]] != UINT32_MAX) {
      throw std::invalid_argument("permutation is not a bijection");
    }
    s.perm_inv[perm[x]] = static_cast<std::uint32_t>(x);
  }
  s.perm = std::move(perm);
  return s;
}

namespace {

void apply_hadamard_bits(std::uint64_t index_bit_mask, std::vector<cplx>& a) {
  std::size_t dim = a.size();
  for (std::size_t b = 0; (std::size_t{1} << b) < dim; ++b) {
    if (!(index_bit_mask >> b & 1)) continue;
    std::size_t step = std::size_t{1} << b;
    for (std::size_t base = 0; base < dim; base += 2 * step) {
      for (std::size_t i = base; i < base + step; ++i) {
        cplx lo = a[i];
        cplx hi = a[i + step];
        a[i] = (lo + hi) * kInvSqrt2;
        a[i + step] = (lo - hi) * kInvSqrt2;
      }
    }
  }
}

void apply_stage(const Stage& s, std::vector<cplx>& a, std::vector<cplx>& scratch,
                 bool inverse) {
  switch (s.kind) {
    case Stage::Kind::HadamardMask:
      apply_hadamard_bits(s.index_bit_mask, a);  // self-inverse
      return;
    case Stage::Kind::DiagonalPhase: {
      if (s.phase_exponent.size() != a.size()) {
        throw std::invalid_argument("phase table dimension mismatch");
      }
      for (std::size_t v = 0; v < a.size(); ++v) {
        int t = s.phase_exponent[v];
        a[v] *= kPhase[inverse ? (4 - t) & 3 : t];
      }
      return;
    }
    case Stage::Kind::BasisPermutation: {
      const auto& p = inverse ? s.perm_inv : s.perm;
      if (p.size() != a.size()) {
        throw std::invalid_argument("permutation dimension mismatch");
      }
      scratch.resize(a.size());
      for (std::size_t x = 0; x < a.size(); ++x) scratch[p[x]] = a[x];
      a.swap(scratch);
      return;
    }
  }
}

}  // namespace

void apply_in_place(const StructuredUnitary& u, StateVector& psi) {
  if (psi.qubits != u.qubits) throw std::invalid_argument("dimension mismatch");
  std::vector<cplx> scratch;
  for (const Stage& s : u.stages) apply_stage(s, psi.amps, scratch, false);
}

void apply_inverse_in_place(const StructuredUnitary& u, StateVector& psi) {
  if (psi.qubits != u.qubits) throw std::invalid_argument("dimension mismatch");
  std::vector<cplx> scratch;
  for (auto it = u.stages.rbegin(); it != u.stages.rend(); ++it) {
    apply_stage(*it, psi.amps, scratch, true);
  }
}

StateVector apply(const StructuredUnitary& u, const StateVector& psi) {
  StateVector out = psi;
  apply_in_place(u, out);
  return out;
}

StateVector apply_inverse(const StructuredUnitary& u, const StateVector& psi) {
  StateVector out = psi;
  apply_inverse_in_place(u, out);
  return out;
}

StructuredUnitary adjoint(const StructuredUnitary& u) {
  StructuredUnitary out;
  out.qubits = u.qubits;
  for (auto it = u.stages.rbegin(); it != u.stages.rend(); ++it) {
    Stage s = *it;
    switch (s.kind) {
      case Stage::Kind::HadamardMask:
        break;  // self-inverse
      case Stage::Kind::DiagonalPhase:
        for (auto& e : s.phase_exponent) e = static_cast<std::uint8_t>((4 - e) & 3);
        break;
      case Stage::Kind::BasisPermutation:
        std::swap(s.perm, s.perm_inv);
        break;
    }
    out.stages.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<cplx>> dense_matrix(const StructuredUnitary& u) {
  if (u.qubits > 10) throw std::invalid_argument("dense oracle capped at 10 qubits");
  std::size_t dim = std::size_t{1} << u.qubits;
  std::vector<std::vector<cplx>> m(dim, std::vector<cplx>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector e = basis_state(u.qubits, col);
    apply_in_place(u, e);
    for (std::size_t row = 0; row < dim; ++row) m[row][col] = e.amps[row];
  }
  return m;
}

std::vector<double> outcome_distribution(const StateVector& psi) {
  std::vector<double> p(psi.amps.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(psi.amps[i]);
  return p;
}

std::vector<double> marginal_on_prefix(std::span<const double> probs, int qubits,
                                       int a_qubits) {
  if (a_qubits < 0 || a_qubits > qubits) throw std::invalid_argument("invalid split");
  std::size_t d_b = std::size_t{1} << (qubits - a_qubits);
  std::vector<double> out(std::size_t{1} << a_qubits, 0.0);
  for (std::size_t i = 0; i < probs.size(); ++i) out[i / d_b] += probs[i];
  return out;
}

std::vector<double> marginal_on_prefix(const StateVector& psi, int a_qubits) {
  if (a_qubits < 0 || a_qubits > psi.qubits) throw std::invalid_argument("invalid split");
  std::size_t d_b = std::size_t{1} << (psi.qubits - a_qubits);
  std::vector<double> out(std::size_t{1} << a_qubits, 0.0);
  for (std::size_t i = 0; i < psi.amps.size(); ++i) out[i / d_b] += std::norm(psi.amps[i]);
  return out;
}

std::vector<double> marginal_on_qubits(const StateVector& psi,
                                       std::span<const int> qubit_set) {
  for (int q : qubit_set) {
    if (q < 0 || q >= psi.qubits) throw std::invalid_argument("qubit out of range");
  }
  std::vector<double> out(std::size_t{1} << qubit_set.size(), 0.0);
  for (std::size_t i = 0; i < psi.amps.size(); ++i) {
    std::size_t key = 0;
    for (std::size_t j = 0; j < qubit_set.size(); ++j) {
      key <<= 1;
      key |= (i >> (psi.qubits - 1 - qubit_set[j])) & 1;
    }
    out[key] += std::norm(psi.amps[i]);
  }
  return out;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("support size mismatch");
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double tv_from_uniform(std::span<const double> p) {
  double u = 1.0 / static_cast<double>(p.size());
  double s = 0;
  for (double x : p) s += std::abs(x - u);
  return 0.5 * s;
}

double fidelity(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("support size mismatch");
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::sqrt(p[i] * q[i]);
  return s;
}

double shannon_entropy_bits(std::span<const double> p) {
  double s = 0;
  for (double x : p) {
    if (x > 0) s -= x * std::log2(x);
  }
  return s;
}

double min_entropy_bits(std::span<const double> p) {
  double mx = 0;
  for (double x : p) {
    if (x > mx) mx = x;
  }
  return mx <= 0 ? 0.0 : -std::log2(mx);
}

DistanceReport distance_and_entropy(std::span<const double> p,
                                    std::span<const double> q) {
  DistanceReport r;
  r.tv = total_variation(p, q);
  r.fidelity = fidelity(p, q);
  r.shannon_bits = shannon_entropy_bits(p);
  r.minentropy_bits = min_entropy_bits(p);
  double lo = 1.0 - r.fidelity;
  double hi = std::sqrt(std::max(0.0, 1.0 - r.fidelity * r.fidelity));
  if (r.tv < lo - 1e-9 || r.tv > hi + 1e-9) {
    throw std::logic_error("trace-distance/fidelity sandwich violated");
  }
  return r;
}

}  // namespace qlock::qsim
