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

#include "qlock/permext.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace qlock::permext {

namespace {

std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

class IdentityFamily final : public PermutationFamily {
 public:
  IdentityFamily(int n_bits, int condensed) {
    contract_.input_bits = n_bits;
    contract_.condensed_bits = condensed;
    contract_.k_in = n_bits;
    contract_.k_out = condensed;
    contract_.eps = 1.0;
    contract_.empirical = true;
  }
  std::size_t seed_count() const override { return 1; }
  std::string describe() const override { return "identity"; }
  std::uint64_t forward(std::size_t, std::uint64_t x) const override { return x; }
  std::uint64_t inverse(std::size_t, std::uint64_t x) const override { return x; }
};

class LhlFamily final : public PermutationFamily {
 public:
  LhlFamily(gf2x::FieldContext field, int extract_bits, int k_in)
      : field_(std::move(field)) {
    int n = field_.bits();
    if (extract_bits < 0 || extract_bits > n) {
      throw std::invalid_argument("extract width exceeds input width");
    }
    contract_.input_bits = n;
    contract_.condensed_bits = extract_bits;
    contract_.k_in = k_in;
    contract_.k_out = extract_bits;
    contract_.strong_extractor = true;
    contract_.eps = std::min(
        1.0, std::exp2(0.5 * (extract_bits - k_in) - 1.0) + std::exp2(-n));
    contract_.empirical = false;  // Leftover Hash Lemma bound
  }
  std::size_t seed_count() const override { return field_.order() - 1; }
  std::string describe() const override { return "lhl"; }
  std::uint64_t forward(std::size_t seed_index, std::uint64_t x) const override {
    return field_.mul(static_cast<std::uint32_t>(x), seed_value(seed_index));
  }
  std::uint64_t inverse(std::size_t seed_index, std::uint64_t x) const override {
    return field_.mul(static_cast<std::uint32_t>(x),
                      field_.inv(seed_value(seed_index)));
  }

 private:
  std::uint32_t seed_value(std::size_t seed_index) const {
    if (seed_index + 1 >= field_.order()) {
      throw std::out_of_range("seed index out of range");
    }
    return static_cast<std::uint32_t>(seed_index + 1);  // zero seed excluded
  }
  gf2x::FieldContext field_;
};

class RsFamily final : public PermutationFamily {
 public:
  RsFamily(gf2x::FieldContext field, int symbols, int condensed_symbols)
      : field_(std::move(field)), symbols_(symbols), condensed_(condensed_symbols) {
    int t = field_.bits();
    if (symbols < 1 || condensed_symbols < 1 || condensed_symbols > symbols) {
      throw std::invalid_argument("inconsistent condenser widths");
    }
    if (static_cast<std::uint64_t>(symbols) > field_.order() - 1) {
      // need symbols distinct evaluation points y, zeta y, ...
      throw std::invalid_argument("too many symbols for the field");
    }
    if (symbols * t > 62) throw std::invalid_argument("input too wide");
    contract_.input_bits = symbols * t;
    contract_.condensed_bits = condensed_symbols * t;
    contract_.k_in = (condensed_symbols + 1) * t;
    contract_.k_out = -1;  // declared per preset by callers
    contract_.empirical = true;
    // evaluation points for seed y: y, zeta y, ..., zeta^{symbols-1} y
    zeta_powers_.resize(symbols_);
    std::uint32_t z = 1;
    for (int i = 0; i < symbols_; ++i) {
      zeta_powers_[i] = z;
      z = field_.mul(z, field_.generator());
    }
  }
  std::size_t seed_count() const override { return field_.order() - 1; }
  std::string describe() const override { return "rs_condenser"; }

  std::uint64_t forward(std::size_t seed_index, std::uint64_t x) const override {
    std::uint32_t y = seed_value(seed_index);
    int t = field_.bits();
    gf2x::FieldPoly f(symbols_);
    for (int i = 0; i < symbols_; ++i) {
      f[i] = static_cast<std::uint32_t>(x >> (i * t)) & static_cast<std::uint32_t>(low_mask(t));
    }
    std::uint64_t out = 0;
    for (int i = 0; i < symbols_; ++i) {
      std::uint32_t point = field_.mul(zeta_powers_[i], y);
      out |= static_cast<std::uint64_t>(gf2x::poly_eval_at(field_, f, point)) << (i * t);
    }
    return out;
  }

  std::uint64_t inverse(std::size_t seed_index, std::uint64_t x) const override {
    std::uint32_t y = seed_value(seed_index);
    int t = field_.bits();
    std::vector<std::uint32_t> points(symbols_), values(symbols_);
    for (int i = 0; i < symbols_; ++i) {
      points[i] = field_.mul(zeta_powers_[i], y);
      values[i] = static_cast<std::uint32_t>(x >> (i * t)) & static_cast<std::uint32_t>(low_mask(t));
    }
    gf2x::FieldPoly f = gf2x::poly_interpolate(field_, points, values);
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      out |= static_cast<std::uint64_t>(f[i]) << (i * t);
    }
    return out;
  }

 private:
  std::uint32_t seed_value(std::size_t seed_index) const {
    if (seed_index + 1 >= field_.order()) {
      throw std::invalid_argument("seed zero excluded");
    }
    return static_cast<std::uint32_t>(seed_index + 1);
  }
  gf2x::FieldContext field_;
  int symbols_;
  int condensed_;
  std::vector<std::uint32_t> zeta_powers_;
};

class BlockLhlFamily final : public PermutationFamily {
 public:
  BlockLhlFamily(gf2x::FieldContext field, int blocks, int extract_bits, int k_in)
      : field_(std::move(field)), blocks_(blocks), mb_(extract_bits) {
    int w = field_.bits();
    if (blocks < 1 || extract_bits < 0 || extract_bits > w) {
      throw std::invalid_argument("inconsistent block widths");
    }
    if (blocks * w > 62) throw std::invalid_argument("input too wide");
    contract_.input_bits = blocks * w;
    contract_.condensed_bits = blocks * extract_bits;
    contract_.k_in = k_in;
    contract_.k_out = contract_.condensed_bits;
    contract_.strong_extractor = true;
    contract_.empirical = true;
  }
  std::size_t seed_count() const override { return field_.order() - 1; }
  std::string describe() const override { return blocks_ == 1 ? "lhl" : "block_lhl"; }

  std::uint64_t forward(std::size_t seed_index, std::uint64_t x) const override {
    std::uint32_t y = seed_value(seed_index);
    int w = field_.bits();
    std::uint64_t extracted = 0;
    std::uint64_t residual = 0;
    for (int b = 0; b < blocks_; ++b) {
      std::uint32_t xb = static_cast<std::uint32_t>(x >> (b * w)) &
                         static_cast<std::uint32_t>(low_mask(w));
      std::uint32_t p = field_.mul(xb, y);
      extracted |= static_cast<std::uint64_t>(p & low_mask(mb_)) << (b * mb_);
      residual |= static_cast<std::uint64_t>(p >> mb_) << (b * (w - mb_));
    }
    return extracted | (residual << (blocks_ * mb_));
  }

  std::uint64_t inverse(std::size_t seed_index, std::uint64_t x) const override {
    std::uint32_t y_inv = field_.inv(seed_value(seed_index));
    int w = field_.bits();
    std::uint64_t extracted = x & low_mask(blocks_ * mb_);
    std::uint64_t residual = x >> (blocks_ * mb_);
    std::uint64_t out = 0;
    for (int b = 0; b < blocks_; ++b) {
      std::uint32_t e = static_cast<std::uint32_t>(extracted >> (b * mb_)) &
                        static_cast<std::uint32_t>(low_mask(mb_));
      std::uint32_t r = static_cast<std::uint32_t>(residual >> (b * (w - mb_))) &
                        static_cast<std::uint32_t>(low_mask(w - mb_));
      std::uint32_t p = e | (r << mb_);
      out |= static_cast<std::uint64_t>(field_.mul(p, y_inv)) << (b * w);
    }
    return out;
  }

 private:
  std::uint32_t seed_value(std::size_t seed_index) const {
    if (seed_index + 1 >= field_.order()) {
      throw std::invalid_argument("seed zero excluded");
    }
    return static_cast<std::uint32_t>(seed_index + 1);
  }
  gf2x::FieldContext field_;
  int blocks_;
  int mb_;
};

class ComposedFamily final : public PermutationFamily {
 public:
  ComposedFamily(FamilyPtr outer, FamilyPtr inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {
    if (inner_->input_bits() != outer_->condensed_bits()) {
      throw std::invalid_argument("inner input width must equal outer condensed width");
    }
    contract_.input_bits = outer_->input_bits();
    contract_.condensed_bits = inner_->condensed_bits();
    contract_.k_in = outer_->contract().k_in;
    contract_.k_out = inner_->contract().k_out;
    contract_.eps = std::min(1.0, outer_->contract().eps + inner_->contract().eps);
    contract_.strong_extractor = inner_->contract().strong_extractor;
    contract_.empirical =
        outer_->contract().empirical || inner_->contract().empirical;
  }
  std::size_t seed_count() const override {
    return outer_->seed_count() * inner_->seed_count();
  }
  std::string describe() const override {
    return "compose(" + outer_->describe() + "," + inner_->describe() + ")";
  }

  std::uint64_t forward(std::size_t seed_index, std::uint64_t x) const override {
    auto [yo, yi] = split_seed(seed_index);
    std::uint64_t o = outer_->forward(yo, x);
    int mo = outer_->condensed_bits();
    std::uint64_t condensed = o & low_mask(mo);
    std::uint64_t residual = o >> mo;
    std::uint64_t oi = inner_->forward(yi, condensed);
    return oi | (residual << mo);
  }

  std::uint64_t inverse(std::size_t seed_index, std::uint64_t x) const override {
    auto [yo, yi] = split_seed(seed_index);
    int mo = outer_->condensed_bits();
    std::uint64_t oi = x & low_mask(mo);
    std::uint64_t residual = x >> mo;
    std::uint64_t condensed = inner_->inverse(yi, oi);
    return outer_->inverse(yo, condensed | (residual << mo));
  }

 private:
  std::pair<std::size_t, std::size_t> split_seed(std::size_t seed_index) const {
    std::size_t inner_count = inner_->seed_count();
    if (seed_index >= seed_count()) throw std::out_of_range("seed index out of range");
    return {seed_index / inner_count, seed_index % inner_count};
  }
  FamilyPtr outer_;
  FamilyPtr inner_;
};

class ChainedFamily final : public PermutationFamily {
 public:
  explicit ChainedFamily(std::vector<FamilyPtr> stages) : stages_(std::move(stages)) {
    if (stages_.empty()) throw std::invalid_argument("empty chain");
    int n = stages_[0]->input_bits();
    int remaining = n;
    int extracted = 0;
    double eps = 0;
    bool empirical = false;
    for (const auto& st : stages_) {
      if (st->input_bits() != remaining) {
        throw std::invalid_argument("stage width must match running residual");
      }
      extracted += st->condensed_bits();
      remaining -= st->condensed_bits();
      eps += st->contract().eps;
      empirical = empirical || st->contract().empirical;
    }
    contract_.input_bits = n;
    contract_.condensed_bits = extracted;
    contract_.k_in = stages_[0]->contract().k_in;
    contract_.k_out = extracted;
    contract_.eps = std::min(1.0, eps);
    contract_.strong_extractor = true;
    contract_.empirical = empirical;
  }

  std::size_t seed_count() const override {
    std::size_t c = 1;
    for (const auto& st : stages_) c *= st->seed_count();
    return c;
  }
  std::string describe() const override {
    std::string s = "chain(";
    for (std::size_t i = 0; i < stages_.size(); ++i) {
      if (i) s += ",";
      s += stages_[i]->describe();
    }
    return s + ")";
  }

  std::uint64_t forward(std::size_t seed_index, std::uint64_t x) const override {
    std::vector<std::size_t> seeds = split_seed(seed_index);
    std::uint64_t acc = 0;
    int shift = 0;
    std::uint64_t rem = x;
    for (std::size_t s = 0; s < stages_.size(); ++s) {
      std::uint64_t o = stages_[s]->forward(seeds[s], rem);
      int m = stages_[s]->condensed_bits();
      acc |= (o & low_mask(m)) << shift;
      rem = o >> m;
      shift += m;
    }
    return acc | (rem << shift);
  }

  std::uint64_t inverse(std::size_t seed_index, std::uint64_t x) const override {
    std::vector<std::size_t> seeds = split_seed(seed_index);
    int total_m = contract_.condensed_bits;
    std::uint64_t rem = x >> total_m;
    int shift = total_m;
    for (std::size_t s = stages_.size(); s-- > 0;) {
      int m = stages_[s]->condensed_bits();
      shift -= m;
      std::uint64_t e = (x >> shift) & low_mask(m);
      rem = stages_[s]->inverse(seeds[s], e | (rem << m));
    }
    return rem;
  }

 private:
  std::vector<std::size_t> split_seed(std::size_t seed_index) const {
    if (seed_index >= seed_count()) throw std::out_of_range("seed index out of range");
    std::vector<std::size_t> out(stages_.size());
    for (std::size_t s = stages_.size(); s-- > 0;) {
      std::size_t c = stages_[s]->seed_count();
      out[s] = seed_index % c;
      seed_index /= c;
    }
    return out;
  }
  std::vector<FamilyPtr> stages_;
};

}  // namespace

FamilyPtr make_identity(int n_bits, int condensed_bits) {
  return std::make_unique<IdentityFamily>(n_bits, condensed_bits);
}

FamilyPtr make_lhl(const gf2x::FieldContext& field, int extract_bits, int k_in) {
  return std::make_unique<LhlFamily>(field, extract_bits, k_in);
}

FamilyPtr make_rs_condenser(const gf2x::FieldContext& field, int symbols,
                            int condensed_symbols) {
  return std::make_unique<RsFamily>(field, symbols, condensed_symbols);
}

FamilyPtr make_block_lhl(const gf2x::FieldContext& block_field, int blocks,
                         int extract_bits_per_block, int k_in) {
  return std::make_unique<BlockLhlFamily>(block_field, blocks,
                                          extract_bits_per_block, k_in);
}

FamilyPtr compose_condensers(FamilyPtr outer, FamilyPtr inner) {
  return std::make_unique<ComposedFamily>(std::move(outer), std::move(inner));
}

FamilyPtr chain_extractors(std::vector<FamilyPtr> stages) {
  return std::make_unique<ChainedFamily>(std::move(stages));
}

FamilyPtr build_guv_desk(const GuvDeskParams& params) {
  if (params.levels.empty()) throw std::invalid_argument("no levels");
  std::vector<FamilyPtr> stages;
  int width = params.input_bits;
  int total_extract = 0;
  for (const GuvDeskLevel& lv : params.levels) {
    FamilyPtr stage;
    if (lv.rs_field_bits > 0) {
      if (lv.rs_symbols * lv.rs_field_bits != width) {
        throw std::invalid_argument("level width mismatch");
      }
      auto rs_field = gf2x::FieldContext::make(lv.rs_field_bits);
      FamilyPtr rs = make_rs_condenser(rs_field, lv.rs_symbols, lv.rs_condensed_symbols);
      int condensed = rs->condensed_bits();
      if (condensed % lv.lhl_blocks != 0) {
        throw std::invalid_argument("blocks must divide the condensed width");
      }
      int w = condensed / lv.lhl_blocks;
      auto blk_field = gf2x::FieldContext::make(w);
      FamilyPtr blk = make_block_lhl(blk_field, lv.lhl_blocks, lv.lhl_extract_bits,
                                     /*k_in=*/condensed);
      stage = compose_condensers(std::move(rs), std::move(blk));
    } else {
      if (width % lv.lhl_blocks != 0) {
        throw std::invalid_argument("blocks must divide the level width");
      }
      int w = width / lv.lhl_blocks;
      auto blk_field = gf2x::FieldContext::make(w);
      stage = make_block_lhl(blk_field, lv.lhl_blocks, lv.lhl_extract_bits,
                             /*k_in=*/width);
    }
    total_extract += stage->condensed_bits();
    width -= stage->condensed_bits();
    stages.push_back(std::move(stage));
  }
  int first_level_floor = 0;
  if (params.levels[0].rs_field_bits > 0) {
    first_level_floor =
        (params.levels[0].rs_condensed_symbols + 1) * params.levels[0].rs_field_bits;
  }
  int k_min = std::max(first_level_floor, total_extract + 1);
  if (params.k_in < k_min || params.k_in > params.input_bits) {
    throw std::invalid_argument(
        "k below construction minimum: admissible range is [" +
        std::to_string(k_min) + ", " + std::to_string(params.input_bits) + "]");
  }
  FamilyPtr fam = stages.size() == 1 ? std::move(stages[0])
                                     : chain_extractors(std::move(stages));
  // Desk preset: the declared contract is empirical.
  return fam;
}

// ---------------------------------------------------------------------

long long paper_t(long long n, double eps) {
  double v = 200.0 * std::log2(24.0 * static_cast<double>(n) * static_cast<double>(n) / eps);
  return static_cast<long long>(std::ceil(v));
}

long long paper_d(long long n, double eps) { return 200 * paper_t(n, eps); }

namespace {

// Lemma-5.4-style base extractor spec: (n, 2 l t) -> l t with
// t = ceil(8 s log2(24 n^2 (4s+1)/eps)) and seed 2 l t / s + t.
CondenserSpec base_block_spec(long long n, long long k, double eps, long long s) {
  long long t = static_cast<long long>(std::ceil(
      8.0 * static_cast<double>(s) *
      std::log2(24.0 * static_cast<double>(n) * static_cast<double>(n) *
                (4.0 * static_cast<double>(s) + 1.0) / eps)));
  long long ell = k / (2 * t);
  CondenserSpec spec;
  spec.kind = "block_lhl";
  spec.input_bits = n;
  spec.k_in = k;
  spec.condensed_bits = ell * t;
  spec.k_out = ell * t;
  spec.eps = eps;
  spec.seed_bits = 2 * ell * t / s + t;
  return spec;
}

CondenserSpec recursive_spec(long long n, double eps, int level);

// Q extractor: RS condense, split in two, base-extract the first half, use
// the output to seed the level-(i-2) extractor on the second half.
CondenserSpec q_spec(long long n, double eps0, int level) {
  CondenserSpec q;
  q.kind = "q_extractor";
  long long d0 = paper_d(n, eps0);
  q.input_bits = n;
  q.k_in = (std::int64_t{1} << level) * 9 * d0 / 2;  // 2^i * 4.5 d
  q.condensed_bits = (std::int64_t{1} << level) * d0;
  q.k_out = q.condensed_bits;
  q.eps = 5 * eps0;

  CondenserSpec rs;
  rs.kind = "rs_condenser";
  rs.input_bits = n;
  rs.k_in = q.k_in;
  rs.condensed_bits = q.k_in;  // lossy condensation keeps the width
  rs.eps = eps0;
  rs.seed_bits = paper_t(n, eps0);

  CondenserSpec base = base_block_spec(n, 2 * d0, eps0, 20);

  q.children.push_back(rs);
  q.children.push_back(base);
  if (level >= 2) q.children.push_back(recursive_spec(n, eps0, level - 2));
  q.seed_bits = rs.seed_bits + base.seed_bits;
  return q;
}

// Level-i extractor of the recursion: four applications of Q with fresh
// seeds, extracting 2^{i-1} * 8 d(eps) from a 2^i * 8 d(eps) source.
CondenserSpec recursive_spec(long long n, double eps, int level) {
  long long d = paper_d(n, eps);
  if (level <= 1) {
    CondenserSpec base = base_block_spec(n, (std::int64_t{1} << level) * 8 * d, eps / 81, 20);
    return base;
  }
  double eps0 = eps / 20;
  CondenserSpec spec;
  spec.kind = "repeat4";
  spec.input_bits = n;
  spec.k_in = (std::int64_t{1} << level) * 8 * d;
  // four Q applications each release 2^i d(eps0) >= 2^i d(eps) bits
  spec.condensed_bits = (std::int64_t{1} << (level - 1)) * 8 * d;
  spec.k_out = spec.condensed_bits;
  spec.eps = eps;
  spec.repeat = 4;
  spec.children.push_back(q_spec(n, eps0, level));
  spec.seed_bits = 4 * spec.children[0].seed_bits;
  return spec;
}

}  // namespace

CondenserSpec paper_extractor_spec(long long n, long long k, double eps) {
  long long d = paper_d(n, eps);
  CondenserSpec spec;
  if (n <= 2000000) {
    // base branch: one block-extractor application with s = 200; needs
    // 2 l t <= k with l >= 1
    long long t = static_cast<long long>(std::ceil(
        1600.0 * std::log2(24.0 * static_cast<double>(n) * static_cast<double>(n) *
                           801.0 / eps)));
    if (k < 2 * t || k > n) {
      throw std::invalid_argument("k below construction minimum: admissible range is [" +
                                  std::to_string(2 * t) + ", " + std::to_string(n) + "]");
    }
    spec = base_block_spec(n, k, eps, 200);
    spec.kind = "perm_ext1/base";
  } else {
    if (k < 8 * d || k > n) {
      throw std::invalid_argument("k below construction minimum: admissible range is [" +
                                  std::to_string(8 * d) + ", " + std::to_string(n) + "]");
    }
    int level = 0;
    while ((std::int64_t{1} << (level + 1)) * 8 * d <= k) ++level;
    spec = recursive_spec(n, eps, level);
    spec.kind = "perm_ext1/" + spec.kind;
    spec.k_in = k;
  }
  spec.input_bits = n;
  spec.eps = eps;
  return spec;
}

CondenserSpec paper_top_spec(long long n, long long k, double eps, double delta) {
  CondenserSpec top;
  top.kind = "top";
  top.input_bits = n;
  top.k_in = k;
  top.eps = 0;
  long long remaining_k = k;
  long long remaining_n = n;
  long long target = static_cast<long long>(std::ceil((1.0 - delta) * static_cast<double>(k)));
  long long extracted = 0;
  int applications = static_cast<int>(
      std::ceil(std::log(delta) / std::log(0.75)));  // (3/4)^j <= delta
  double eps_step = eps / std::max(1, applications);
  bool first = true;
  while (extracted < target) {
    CondenserSpec step;
    try {
      step = paper_extractor_spec(remaining_n, remaining_k, eps_step);
    } catch (const std::invalid_argument&) {
      if (first) throw;
      break;  // residual entropy below the construction minimum
    }
    first = false;
    long long m = step.condensed_bits > 0 ? step.condensed_bits : remaining_k / 4;
    if (m <= 0) break;
    extracted += m;
    remaining_n -= m;
    remaining_k = remaining_k - m - 1;  // entropy conservation, one bit lost
    top.seed_bits += step.seed_bits;
    top.eps += step.eps;
    top.children.push_back(std::move(step));
  }
  top.condensed_bits = extracted;
  top.k_out = extracted;
  return top;
}

// ---------------------------------------------------------------------

std::vector<std::uint64_t> prefix_source(int n_bits, int k) {
  if (k < 0 || k > n_bits || k > 24) throw std::invalid_argument("source too large");
  std::vector<std::uint64_t> out(std::size_t{1} << k);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

std::vector<std::uint64_t> random_subset_source(int n_bits, int k, SplitStream& rng) {
  if (k < 0 || k > n_bits || k > 24) throw std::invalid_argument("source too large");
  std::size_t want = std::size_t{1} << k;
  std::uint64_t space = std::uint64_t{1} << n_bits;
  // Floyd-style sampling without replacement, then sorted support.
  std::unordered_map<std::uint64_t, bool> chosen;
  std::vector<std::uint64_t> out;
  out.reserve(want);
  for (std::uint64_t j = space - want; j < space; ++j) {
    std::uint64_t t = rng.next_below(j + 1);
    if (chosen.count(t)) t = j;
    chosen[t] = true;
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TvReport eval_extractor_tv(const PermutationFamily& fam,
                           std::span<const std::uint64_t> source, bool exact) {
  if (exact) {
    double log_seeds = std::log2(static_cast<double>(fam.seed_count()));
    if (fam.input_bits() + log_seeds > 24.0 + 1e-9) {
      throw std::invalid_argument("exact mode infeasible: n + log|S| exceeds 24");
    }
  }
  if (source.empty()) throw std::invalid_argument("empty source");
  int m = fam.condensed_bits();
  std::size_t d_m = std::size_t{1} << m;
  std::size_t seeds = fam.seed_count();
  std::size_t stride = 1;
  if (!exact && seeds > 1024) stride = (seeds + 1023) / 1024;
  double src_p = 1.0 / static_cast<double>(source.size());
  double uniform = 1.0 / static_cast<double>(d_m);

  TvReport rep;
  double light_mass = 0;
  double min_cond = -1;
  std::size_t seeds_used = 0;
  std::vector<std::uint32_t> bucket(d_m);
  for (std::size_t y = 0; y < seeds; y += stride) {
    ++seeds_used;
    std::fill(bucket.begin(), bucket.end(), 0);
    for (std::uint64_t x : source) {
      std::uint64_t out = fam.forward(y, x);
      ++bucket[out & ((std::uint64_t{1} << m) - 1)];
    }
    double tv = 0;
    for (std::size_t z = 0; z < d_m; ++z) {
      double pz = bucket[z] * src_p;
      tv += std::abs(pz - uniform);
      if (bucket[z] == 0) continue;
      if (pz >= 0.5 * uniform) {
        ++rep.heavy_pairs;
        // flat source: conditional residual is uniform on bucket[z] points
        double h = std::log2(static_cast<double>(bucket[z]));
        if (min_cond < 0 || h < min_cond) min_cond = h;
      } else {
        light_mass += pz;
      }
    }
    rep.tv_joint += 0.5 * tv;
  }
  rep.tv_joint /= static_cast<double>(seeds_used);
  rep.gamma_mass = light_mass / static_cast<double>(seeds_used);
  rep.residual_minentropy = min_cond < 0 ? 0 : min_cond;
  return rep;
}

bool exhaustive_bijectivity_check(const PermutationFamily& fam) {
  int n = fam.input_bits();
  if (n > 16) throw std::invalid_argument("exhaustive check capped at 16 bits");
  std::size_t dim = std::size_t{1} << n;
  std::vector<bool> seen(dim);
  for (std::size_t y = 0; y < fam.seed_count(); ++y) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::uint64_t x = 0; x < dim; ++x) {
      std::uint64_t out = fam.forward(y, x);
      if (out >= dim || seen[out]) return false;
      seen[out] = true;
      if (fam.inverse(y, out) != x) return false;
    }
  }
  return true;
}

}  // namespace qlock::permext
