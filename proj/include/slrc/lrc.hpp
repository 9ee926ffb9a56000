#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "slrc/arraycodes.hpp"
#include "slrc/linearized.hpp"

namespace slrc {

enum class InnerKind { Mds, Msr };
enum class LrcCase { Divides, Remainder };
enum class RepairMode { Naive, BandwidthEfficient };

struct LocalGroup {
  std::size_t first_node = 0;
  std::size_t data_nodes = 0;  // r, or β0 for the short group
  std::size_t size = 0;        // data_nodes + δ - 1
  std::size_t gab_offset = 0;  // first outer symbol carried by the group
  CodePtr inner;
};

// Outer Gabidulin [N, ℳ] code over F_{q^N} split into local groups, each
// protected by an inner array code over F_q.
struct LrcSpec {
  std::size_t n = 0, r = 0, delta = 0, alpha = 0, file_size = 0;
  std::size_t g = 0, beta0 = 0, N = 0;
  LrcCase lrc_case = LrcCase::Divides;
  InnerKind inner_kind = InnerKind::Mds;
  std::vector<LocalGroup> groups;
  std::vector<std::size_t> group_of;  // per node
  std::shared_ptr<const GabidulinCode> gab;
  std::vector<std::string> warnings;

  const FieldTower& tower() const { return gab->tower(); }
  const TowerPtr& tower_ptr() const { return gab->tower_ptr(); }
  unsigned q() const { return tower().q(); }
  std::size_t repair_degree() const { return r + delta - 2; }
  // per-helper download of bandwidth-efficient repair
  std::size_t efficient_beta() const { return alpha / (delta - 1); }
  bool is_data_node(std::size_t node) const;
};

struct ShardSet {
  std::vector<TrackedBlock> blocks;
  std::vector<bool> alive;
  std::vector<std::size_t> group;

  NodeView view() const;
};

LrcSpec build_lrc(std::size_t n, std::size_t r, std::size_t delta, std::size_t alpha, std::size_t file_size,
                  unsigned q, InnerKind inner);

// A single local group holding the whole outer codeword; the plain and
// secure MSR schemes are this shape around a zigzag code.
LrcSpec single_group_spec(CodePtr inner, std::size_t file_size, InnerKind kind);

ShardSet lrc_encode(const LrcSpec& spec, std::span<const ExtElem> message);
// Tracked points of every node (independent of the message).
std::vector<std::vector<ExtElem>> node_points(const LrcSpec& spec);

RepairResult local_repair(const LrcSpec& spec, const ShardSet& shards, std::size_t failed, RepairMode mode);

std::vector<ExtElem> global_decode(const LrcSpec& spec, const ShardSet& shards);

// n - max{|A| : F_q-rank of the points on A < ℳ}. `max_enum` bounds the
// number of subsets examined.
std::size_t measure_dmin(const LrcSpec& spec, std::uint64_t max_enum = 1'000'000);
std::size_t measure_dmin_serial(const LrcSpec& spec, std::uint64_t max_enum = 1'000'000);

// Attempts decoding with every `erasures`-subset of nodes removed; returns
// the number of patterns whose decoded message equals `message`.
std::size_t decode_erasure_patterns(const LrcSpec& spec, const ShardSet& shards, std::span<const ExtElem> message,
                                    std::size_t erasures);
std::size_t decode_erasure_patterns_serial(const LrcSpec& spec, const ShardSet& shards,
                                           std::span<const ExtElem> message, std::size_t erasures);

}  // namespace slrc
