#include "slrc/lrc.hpp"

#include <atomic>

#include "slrc/combinatorics.hpp"
#include "slrc/errors.hpp"

namespace slrc {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

CodePtr msr_inner(std::size_t r, std::size_t delta, std::size_t alpha, unsigned q) {
  const std::size_t p = delta - 1;
  if (alpha == ipow(p, r)) return make_zigzag(r, p, q).code;
  if (p == 2 && r <= 3 && alpha % 2 == 0) return make_aligned_msr(r, alpha / 2, q).code;
  throw Error(ErrorKind::UnsupportedShape, "no MSR group code for r=" + std::to_string(r) +
                                               ", delta=" + std::to_string(delta) + ", alpha=" + std::to_string(alpha));
}

void finish(LrcSpec& spec, unsigned q) {
  if (spec.N > kMaxDegree)
    throw Error(ErrorKind::TooLarge, "outer length N=" + std::to_string(spec.N) + " exceeds supported degree");
  auto tower = make_field_tower(q, spec.N);
  spec.gab = std::make_shared<const GabidulinCode>(tower, spec.N, spec.file_size);
  spec.group_of.assign(spec.n, 0);
  for (std::size_t g = 0; g < spec.groups.size(); ++g)
    for (std::size_t i = 0; i < spec.groups[g].size; ++i) spec.group_of[spec.groups[g].first_node + i] = g;
}

}  // namespace

bool LrcSpec::is_data_node(std::size_t node) const {
  const auto& grp = groups.at(group_of.at(node));
  return node - grp.first_node < grp.data_nodes;
}

NodeView ShardSet::view() const {
  NodeView v(blocks.size(), nullptr);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (alive[i]) v[i] = &blocks[i];
  return v;
}

LrcSpec build_lrc(std::size_t n, std::size_t r, std::size_t delta, std::size_t alpha, std::size_t file_size,
                  unsigned q, InnerKind inner) {
  if (r < 1 || delta < 2 || alpha < 1 || file_size < 1)
    throw Error(ErrorKind::InvalidArgument, "need r >= 1, delta >= 2, alpha >= 1, file size >= 1");
  const std::size_t width = r + delta - 1;
  if (width >= n) throw Error(ErrorKind::InvalidArgument, "need r + delta - 1 < n");
  if (!is_prime(q)) throw Error(ErrorKind::NotPrime, "q=" + std::to_string(q) + " is not prime");
  if (q < width)
    throw Error(ErrorKind::FieldTooSmall, "q=" + std::to_string(q) + " below r + delta - 1 = " + std::to_string(width));

  LrcSpec spec;
  spec.n = n;
  spec.r = r;
  spec.delta = delta;
  spec.alpha = alpha;
  spec.file_size = file_size;
  spec.inner_kind = inner;
  const std::size_t rem = n % width;
  if (rem == 0) {
    spec.lrc_case = LrcCase::Divides;
    spec.g = n / width;
    spec.N = spec.g * r * alpha;
  } else {
    if (rem <= delta - 1)
      throw Error(ErrorKind::UnsupportedShape, "n mod (r + delta - 1) = " + std::to_string(rem) +
                                                   " leaves no data node in a short group");
    if (inner == InnerKind::Msr)
      throw Error(ErrorKind::UnsupportedShape, "MSR groups need (r + delta - 1) | n");
    spec.lrc_case = LrcCase::Remainder;
    spec.beta0 = rem - (delta - 1);
    spec.g = ceil_div(n, width);
    spec.N = (spec.g - 1) * r * alpha + spec.beta0 * alpha;
    const std::size_t tail = ceil_div(file_size, alpha) % r;
    if (!(tail > 0 && spec.beta0 >= tail))
      spec.warnings.push_back("short group width " + std::to_string(spec.beta0) + " vs ceil(M/alpha) mod r = " +
                              std::to_string(tail) + ": distance optimality not guaranteed");
  }
  if (file_size > spec.N)
    throw Error(ErrorKind::InvalidArgument,
                "file size " + std::to_string(file_size) + " exceeds outer length " + std::to_string(spec.N));

  unsigned field_q = q;
  CodePtr full, shortg;
  if (inner == InnerKind::Msr) {
    full = msr_inner(r, delta, alpha, q);
    field_q = full->q();
    if (field_q != q) spec.warnings.push_back("base field raised to q=" + std::to_string(field_q) + " for the group code");
  } else {
    full = std::make_shared<const ArrayCode>(make_interleaved_rs(width, r, alpha, q));
    if (spec.lrc_case == LrcCase::Remainder)
      shortg = std::make_shared<const ArrayCode>(make_interleaved_rs(spec.beta0 + delta - 1, spec.beta0, alpha, q));
  }
  std::size_t node = 0, offset = 0;
  for (std::size_t i = 0; i < spec.g; ++i) {
    const bool is_short = spec.lrc_case == LrcCase::Remainder && i + 1 == spec.g;
    LocalGroup grp;
    grp.first_node = node;
    grp.data_nodes = is_short ? spec.beta0 : r;
    grp.size = grp.data_nodes + delta - 1;
    grp.gab_offset = offset;
    grp.inner = is_short ? shortg : full;
    node += grp.size;
    offset += grp.data_nodes * alpha;
    spec.groups.push_back(grp);
  }
  finish(spec, field_q);
  return spec;
}

LrcSpec single_group_spec(CodePtr inner, std::size_t file_size, InnerKind kind) {
  LrcSpec spec;
  spec.n = inner->n_blocks();
  spec.r = inner->k_blocks();
  spec.delta = inner->n_blocks() - inner->k_blocks() + 1;
  spec.alpha = inner->alpha();
  spec.file_size = file_size;
  spec.inner_kind = kind;
  spec.g = 1;
  spec.N = spec.r * spec.alpha;
  if (file_size < 1 || file_size > spec.N) throw Error(ErrorKind::InvalidArgument, "file size outside [1, k*alpha]");
  spec.groups.push_back(LocalGroup{0, spec.r, spec.n, 0, inner});
  finish(spec, inner->q());
  return spec;
}

ShardSet lrc_encode(const LrcSpec& spec, std::span<const ExtElem> message) {
  const FieldTower& tower = spec.tower();
  const auto codeword = spec.gab->encode(message);
  const auto& pts = spec.gab->points();
  ShardSet out;
  out.blocks.resize(spec.n);
  out.alive.assign(spec.n, true);
  out.group = spec.group_of;
  for (const auto& grp : spec.groups) {
    std::vector<TrackedBlock> data(grp.data_nodes);
    for (std::size_t t = 0; t < grp.data_nodes; ++t) {
      const std::size_t base = grp.gab_offset + t * spec.alpha;
      data[t].values.assign(codeword.begin() + base, codeword.begin() + base + spec.alpha);
      data[t].points.assign(pts.begin() + base, pts.begin() + base + spec.alpha);
    }
    auto encoded = encode_tracked(tower, *grp.inner, data);
    for (std::size_t t = 0; t < grp.size; ++t) out.blocks[grp.first_node + t] = std::move(encoded[t]);
  }
  return out;
}

std::vector<std::vector<ExtElem>> node_points(const LrcSpec& spec) {
  const std::vector<ExtElem> zero(spec.file_size);
  auto shards = lrc_encode(spec, zero);
  std::vector<std::vector<ExtElem>> out;
  for (auto& b : shards.blocks) out.push_back(std::move(b.points));
  return out;
}

RepairResult local_repair(const LrcSpec& spec, const ShardSet& shards, std::size_t failed, RepairMode mode) {
  if (failed >= spec.n) throw Error(ErrorKind::InvalidArgument, "node " + std::to_string(failed) + " out of range");
  const auto& grp = spec.groups[spec.group_of[failed]];
  const std::size_t local = failed - grp.first_node;
  NodeView view(grp.size, nullptr);
  for (std::size_t t = 0; t < grp.size; ++t)
    if (t != local && shards.alive[grp.first_node + t]) view[t] = &shards.blocks[grp.first_node + t];

  const RepairPlan* plan = nullptr;
  RepairPlan naive;
  if (mode == RepairMode::BandwidthEfficient) {
    if (spec.inner_kind != InnerKind::Msr)
      throw Error(ErrorKind::ModeUnsupported, "bandwidth-efficient repair needs MSR group codes");
    if (const auto& eff = grp.inner->efficient_plan(local)) {
      for (std::size_t h : eff->helpers)
        if (!view[h])
          throw Error(ErrorKind::InsufficientSurvivors,
                      "bandwidth-efficient repair needs all " + std::to_string(spec.repair_degree()) + " group helpers");
      plan = &*eff;
    }
  }
  if (!plan) {
    std::vector<std::size_t> helpers;
    for (std::size_t t = 0; t < grp.size && helpers.size() < grp.data_nodes; ++t)
      if (view[t]) helpers.push_back(t);
    if (helpers.size() < grp.data_nodes)
      throw Error(ErrorKind::InsufficientSurvivors, "group of node " + std::to_string(failed) + " has " +
                                                        std::to_string(helpers.size()) + " live helpers, needs " +
                                                        std::to_string(grp.data_nodes));
    naive = grp.inner->full_block_plan(local, std::move(helpers));
    plan = &naive;
  }
  RepairResult res = run_repair(spec.tower(), *grp.inner, *plan, local, view);
  res.transcript.failed = failed;
  for (auto& s : res.transcript.symbols) s.source += grp.first_node;
  return res;
}

std::vector<ExtElem> global_decode(const LrcSpec& spec, const ShardSet& shards) {
  std::vector<KnownEvaluation> known;
  for (std::size_t i = 0; i < spec.n; ++i) {
    if (!shards.alive[i]) continue;
    const auto& b = shards.blocks[i];
    for (std::size_t c = 0; c < b.values.size(); ++c) known.emplace_back(b.points[c], b.values[c]);
  }
  return spec.gab->decode_erasures(known);
}

namespace {

bool rank_below(const FieldTower& tower, const std::vector<std::vector<ExtElem>>& pts,
                const std::vector<std::size_t>& nodes, std::size_t target) {
  EchelonBasis basis(tower.m(), tower.q());
  for (std::size_t node : nodes)
    for (const auto& p : pts[node]) {
      basis.insert(p.data());
      if (basis.rank() >= target) return false;
    }
  return true;
}

void charge(std::uint64_t& used, std::uint64_t add, std::uint64_t max_enum) {
  used += add;
  if (used > max_enum)
    throw Error(ErrorKind::TooLarge, "subset enumeration exceeds guard of " + std::to_string(max_enum));
}

}  // namespace

std::size_t measure_dmin_serial(const LrcSpec& spec, std::uint64_t max_enum) {
  const auto pts = node_points(spec);
  std::uint64_t used = 0;
  for (std::size_t s = spec.n; s-- > 0;) {
    charge(used, binomial(spec.n, s), max_enum);
    for (const auto& subset : all_subsets(spec.n, s))
      if (rank_below(spec.tower(), pts, subset, spec.file_size)) return spec.n - s;
  }
  return spec.n;
}

std::size_t measure_dmin(const LrcSpec& spec, std::uint64_t max_enum) {
  const auto pts = node_points(spec);
  std::uint64_t used = 0;
  for (std::size_t s = spec.n; s-- > 0;) {
    charge(used, binomial(spec.n, s), max_enum);
    const auto subsets = all_subsets(spec.n, s);
    const long count = static_cast<long>(subsets.size());
    std::atomic<bool> found{false};
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      if (found.load(std::memory_order_relaxed)) continue;
      if (rank_below(spec.tower(), pts, subsets[i], spec.file_size)) found.store(true, std::memory_order_relaxed);
    }
    if (found) return spec.n - s;
  }
  return spec.n;
}

namespace {

bool pattern_decodes(const LrcSpec& spec, const ShardSet& shards, std::span<const ExtElem> message,
                     const std::vector<std::size_t>& erased) {
  ShardSet copy = shards;
  for (std::size_t e : erased) copy.alive[e] = false;
  try {
    const auto got = global_decode(spec, copy);
    return std::equal(got.begin(), got.end(), message.begin(), message.end());
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

std::size_t decode_erasure_patterns_serial(const LrcSpec& spec, const ShardSet& shards,
                                           std::span<const ExtElem> message, std::size_t erasures) {
  std::size_t ok = 0;
  for (const auto& e : all_subsets(spec.n, erasures)) ok += pattern_decodes(spec, shards, message, e);
  return ok;
}

std::size_t decode_erasure_patterns(const LrcSpec& spec, const ShardSet& shards, std::span<const ExtElem> message,
                                    std::size_t erasures) {
  const auto patterns = all_subsets(spec.n, erasures);
  const long count = static_cast<long>(patterns.size());
  std::size_t ok = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : ok)
  for (long i = 0; i < count; ++i) ok += pattern_decodes(spec, shards, message, patterns[i]);
  return ok;
}

}  // namespace slrc
