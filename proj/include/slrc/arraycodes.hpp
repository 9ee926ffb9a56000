#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "slrc/fields.hpp"
#include "slrc/linalg.hpp"

namespace slrc {

enum class ArrayFamily { InterleavedRs, Zigzag, Aligned };

// One node's content: α values and, when tracked, the evaluation point of
// each value under the outer linearized polynomial.
struct TrackedBlock {
  std::vector<ExtElem> values;
  std::vector<ExtElem> points;

  friend bool operator==(const TrackedBlock&, const TrackedBlock&) = default;
};

struct DownloadedSymbol {
  std::size_t source;  // helper node
  std::size_t index;   // position within that helper's download
  ExtElem value;
  ExtElem point;
};

struct RepairTranscript {
  std::size_t failed = 0;
  std::vector<DownloadedSymbol> symbols;
};

// Linear repair: helper h sends download[h] * x_h (beta_h symbols), and the
// failed block is (all downloads) * rebuild.
struct RepairPlan {
  std::vector<std::size_t> helpers;
  std::vector<BaseMatrix> download;
  BaseMatrix rebuild;

  std::size_t bandwidth() const;
};

// Linear (n, k) array code over F_q with α symbols per node. The generator
// maps the flattened message (block i, row c -> i*α + c) to the flattened
// codeword (node j, row c -> j*α + c) and is systematic on the first k nodes.
class ArrayCode {
 public:
  ArrayCode(ArrayFamily family, std::size_t n_blocks, std::size_t k_blocks, std::size_t alpha, BaseMatrix gen);

  ArrayFamily family() const { return family_; }
  std::size_t n_blocks() const { return n_; }
  std::size_t k_blocks() const { return k_; }
  std::size_t alpha() const { return alpha_; }
  unsigned q() const { return gen_.q(); }
  const BaseMatrix& gen() const { return gen_; }

  BaseMatrix block_columns(std::span<const std::size_t> nodes) const;

  // Plan whose downloads are given; the rebuild matrix is solved for.
  RepairPlan make_plan(std::size_t failed, std::vector<std::size_t> helpers, std::vector<BaseMatrix> download) const;
  // Full-block downloads from `helpers`.
  RepairPlan full_block_plan(std::size_t failed, std::vector<std::size_t> helpers) const;

  const std::optional<RepairPlan>& efficient_plan(std::size_t node) const { return efficient_.at(node); }
  void set_efficient_plan(std::size_t node, RepairPlan plan) { efficient_.at(node) = std::move(plan); }

 private:
  ArrayFamily family_;
  std::size_t n_, k_, alpha_;
  BaseMatrix gen_;
  std::vector<std::optional<RepairPlan>> efficient_;
};

using MdsArraySpec = ArrayCode;
using CodePtr = std::shared_ptr<const ArrayCode>;

struct ZigzagSpec {
  std::size_t k = 0;
  std::size_t p = 0;
  std::vector<unsigned> lambda;                 // per systematic column
  std::vector<std::vector<std::size_t>> y_sets;  // repair rows per systematic column
  CodePtr code;

  std::size_t alpha() const { return code->alpha(); }
  unsigned coeff(std::size_t parity, std::size_t row, std::size_t column) const;
  // Row of column `column` that parity `parity` row `row` reads: row - parity*e_column.
  std::size_t source_row(std::size_t parity, std::size_t row, std::size_t column) const;
};

// (k+2, k) code with α = 2·layers and single-symbol-per-layer systematic
// repair, built by aligning interference along a common eigenvector.
struct AlignedSpec {
  std::size_t k = 0;
  std::size_t layers = 0;
  std::vector<BaseMatrix> parity_mats;  // 2x2 per systematic column
  CodePtr code;
};

MdsArraySpec make_interleaved_rs(std::size_t n_blocks, std::size_t k_blocks, std::size_t alpha, unsigned q);
ZigzagSpec make_zigzag(std::size_t k, std::size_t p, unsigned q, std::size_t max_attempts = 8);
AlignedSpec make_aligned_msr(std::size_t k, std::size_t layers, unsigned q, std::size_t max_attempts = 8);

// First k-subset of nodes (lexicographic) whose generator columns are rank
// deficient, or nullopt when the code is MDS. The parallel and serial
// versions return identical results.
std::optional<std::vector<std::size_t>> mds_witness(const ArrayCode& code);
std::optional<std::vector<std::size_t>> mds_witness_serial(const ArrayCode& code);

// out[j] = sum_i in[i] * gen(i, j) for F_q matrix gen
std::vector<ExtElem> apply_generator(const FieldTower& tower, std::span<const ExtElem> in, const BaseMatrix& gen);

std::vector<std::vector<ExtElem>> mds_encode(const FieldTower& tower, const ArrayCode& code,
                                             const std::vector<std::vector<ExtElem>>& blocks);
std::vector<TrackedBlock> encode_tracked(const FieldTower& tower, const ArrayCode& code,
                                         std::span<const TrackedBlock> blocks);

// Blocks indexed by node; nullptr marks an erased node.
using NodeView = std::vector<const TrackedBlock*>;

std::vector<std::vector<ExtElem>> mds_decode(const FieldTower& tower, const ArrayCode& code, const NodeView& nodes);

struct RepairResult {
  TrackedBlock block;
  RepairTranscript transcript;
};

RepairResult run_repair(const FieldTower& tower, const ArrayCode& code, const RepairPlan& plan, std::size_t failed,
                        const NodeView& nodes);

RepairResult zigzag_repair_systematic(const FieldTower& tower, const ZigzagSpec& spec, std::size_t failed,
                                      const NodeView& nodes);

// dim of the intersection (resp. sum) of the row spaces of the download
// matrices helper i uses when each node of `repaired` is repaired.
std::size_t repair_subspace_dims(const ArrayCode& code, std::size_t helper, std::span<const std::size_t> repaired);
std::size_t repair_union_dims(const ArrayCode& code, std::size_t helper, std::span<const std::size_t> repaired);

}  // namespace slrc
