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

#ifndef QLOCK_PERMEXT_HPP_
#define QLOCK_PERMEXT_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qlock/gf2x.hpp"
#include "qlock/rng.hpp"

namespace qlock::permext {

/* Bit packing: an n-bit string occupies the low n bits of a word with
   string position i at bit i, which for field elements is the coefficient
   of X^i (little-endian). The condensed/extracted part of an output is its
   first condensed_bits positions, i.e. the low bits. */

struct Contract {
  int input_bits = 0;
  int k_in = 0;           // declared source min-entropy
  int condensed_bits = 0; // prefix size m
  int k_out = 0;          // declared output min-entropy (== m for extractors)
  double eps = 1.0;
  bool strong_extractor = false;
  bool empirical = true;  // desk-preset parameters, bounds checked statistically
};

/* Seeded family of bijections of {0,1}^n with a declared condensed prefix.
   Forward/inverse are evaluated per explicit seed index; seed sets are
   stored as element lists so excluded values (the zero seed) stay visible. */
class PermutationFamily {
 public:
  virtual ~PermutationFamily() = default;

  int input_bits() const { return contract_.input_bits; }
  int condensed_bits() const { return contract_.condensed_bits; }
  const Contract& contract() const { return contract_; }

  virtual std::size_t seed_count() const = 0;
  virtual std::string describe() const = 0;
  virtual std::uint64_t forward(std::size_t seed_index, std::uint64_t x) const = 0;
  virtual std::uint64_t inverse(std::size_t seed_index, std::uint64_t x) const = 0;

  std::uint64_t extracted(std::size_t seed_index, std::uint64_t x) const {
    return forward(seed_index, x) & ((std::uint64_t{1} << condensed_bits()) - 1);
  }

 protected:
  Contract contract_;
};

using FamilyPtr = std::unique_ptr<PermutationFamily>;

// Trivial family: one seed, identity map. Unit for composition.
FamilyPtr make_identity(int n_bits, int condensed_bits);

/* Leftover-hash extractor: P_y(x) = x*y in F_{2^n}, seeds F_{2^n}^*,
   extracted part = first m bits of the product. Declared contract
   (n, k_in) -> m with eps = 2^{(m-k_in)/2 - 1} + 2^{-n}. */
FamilyPtr make_lhl(const gf2x::FieldContext& field, int extract_bits, int k_in);

/* Reed-Solomon condenser: inputs are polynomials of degree < symbols over
   F_{2^t} (symbol i = coefficient i); seed y in F_q^* (zero excluded);
   output symbol i is f(zeta^i y) with zeta the field generator; the first
   `condensed_symbols` symbols form the condensed part. */
FamilyPtr make_rs_condenser(const gf2x::FieldContext& field, int symbols,
                            int condensed_symbols);

/* Per-block leftover hash: input split into `blocks` contiguous equal
   blocks of width w (leftmost block first), one shared seed in F_{2^w}^*,
   each block extracting its first extract_bits_per_block bits. Output is
   all extracted parts first, then all residuals, preserving block order. */
FamilyPtr make_block_lhl(const gf2x::FieldContext& block_field, int blocks,
                         int extract_bits_per_block, int k_in);

/* Composition of strong permutation condensers: the inner family is
   applied to the outer family's condensed part; residuals concatenate
   (inner residual first). Seed set is the Cartesian product, outer seed
   index major. Requires inner input width == outer condensed width. */
FamilyPtr compose_condensers(FamilyPtr outer, FamilyPtr inner);

/* Repeated extraction: each stage acts on the previous stage's residual;
   extracted prefixes accumulate in order. Seed set is the Cartesian
   product, first stage major. */
FamilyPtr chain_extractors(std::vector<FamilyPtr> stages);

// ---------------------------------------------------------------------
// Desk-scale recursive construction (empirical contracts)

struct GuvDeskLevel {
  int rs_field_bits = 0;       // t; 0 = plain block-LHL level
  int rs_symbols = 0;          // level input = rs_symbols * t when RS present
  int rs_condensed_symbols = 0;
  int lhl_blocks = 1;
  int lhl_extract_bits = 0;    // per block
};

struct GuvDeskParams {
  int input_bits = 0;
  int k_in = 0;
  double eps = 0.25;
  std::vector<GuvDeskLevel> levels;
};

// Throws if k_in is below the construction minimum.
FamilyPtr build_guv_desk(const GuvDeskParams& params);

// ---------------------------------------------------------------------
// Paper-preset construction, as a parameter/seed-size bookkeeping tree
// (no evaluation; the constants are astronomically large for simulation).

struct CondenserSpec {
  std::string kind;
  long long input_bits = 0;
  long long k_in = 0;
  long long condensed_bits = 0;
  long long k_out = 0;
  double eps = 0;
  long long seed_bits = 0;  // total for this node, repeats included
  int repeat = 1;           // logical applications of the child block
  std::vector<CondenserSpec> children;
};

// t and d from the recursive construction's fixed constants.
long long paper_t(long long n, double eps);  // ceil(200 log2(24 n^2 / eps))
long long paper_d(long long n, double eps);  // 200 * paper_t

/* Single extraction step (output k/4) with seed budget paper_d(n, eps);
   below 2e6 input bits this is one block-LHL application, above it the
   four-fold recursive step. Throws if k is outside
   [paper_d(n, eps), n]. */
CondenserSpec paper_extractor_spec(long long n, long long k, double eps);

/* Repeated application until (1-delta) k bits are extracted. Throws if k
   is below the construction minimum. */
CondenserSpec paper_top_spec(long long n, long long k, double eps, double delta);

// ---------------------------------------------------------------------
// Flat sources and exhaustive evaluation

std::vector<std::uint64_t> prefix_source(int n_bits, int k);
std::vector<std::uint64_t> random_subset_source(int n_bits, int k, SplitStream& rng);

struct TvReport {
  double tv_joint = 0;             // average over seeds of the extracted-vs-uniform TV
  double residual_minentropy = 0;  // min over heavy (seed, extracted) pairs, bits
  double gamma_mass = 0;           // probability of landing on a light pair
  long long heavy_pairs = 0;
};

/* Enumeration over the seed set and the source support. Exact mode
   requires input_bits + log2(seed_count) <= 24 and errors otherwise; with
   exact = false the seed set is subsampled deterministically (evenly
   spaced, at most 1024 seeds) while each sampled seed is still enumerated
   exactly. residual_minentropy conditions on (seed, extracted) pairs whose
   probability is at least half the uniform value, matching the
   ideal-residual construction. */
TvReport eval_extractor_tv(const PermutationFamily& fam,
                           std::span<const std::uint64_t> source, bool exact = true);

// Exhaustive forward/inverse and bijectivity check for every seed; n <= 16.
bool exhaustive_bijectivity_check(const PermutationFamily& fam);

}  // namespace qlock::permext

#endif  // QLOCK_PERMEXT_HPP_
