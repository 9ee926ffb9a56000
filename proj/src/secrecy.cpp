#include "slrc/secrecy.hpp"

#include <algorithm>
#include <exception>

#include "slrc/bounds.hpp"
#include "slrc/combinatorics.hpp"
#include "slrc/errors.hpp"
#include "slrc/rng.hpp"

namespace slrc {

namespace {

bool contains(std::span<const std::size_t> v, std::size_t x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// F_q-independent subset of the points, in input order.
std::vector<ExtElem> independent_points(const FieldTower& tower, std::span<const ExtElem> points) {
  EchelonBasis basis(tower.m(), tower.q());
  std::vector<ExtElem> out;
  for (const auto& p : points)
    if (basis.insert(p.data())) out.push_back(p);
  return out;
}

std::size_t ext_rank_of_columns(const FieldTower& tower, const std::vector<std::vector<ExtElem>>& powers,
                                std::size_t cols) {
  if (powers.empty() || cols == 0) return 0;
  ExtMatrix m(powers.size(), cols);
  for (std::size_t i = 0; i < powers.size(); ++i)
    for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = powers[i][c];
  return rank(tower, m, Level::Extension);
}

void require_pattern(const LrcSpec& code, const EavesdropperPattern& pat) {
  for (std::size_t v : pat.e1)
    if (v >= code.n) throw Error(ErrorKind::InvalidArgument, "E1 node " + std::to_string(v) + " out of range");
  for (std::size_t v : pat.e2) {
    if (v >= code.n) throw Error(ErrorKind::InvalidArgument, "E2 node " + std::to_string(v) + " out of range");
    if (contains(pat.e1, v)) throw Error(ErrorKind::InvalidArgument, "E1 and E2 must be disjoint");
  }
}

}  // namespace

const char* to_string(SecureScheme s) {
  switch (s) {
    case SecureScheme::SecureMsr: return "secure_msr";
    case SecureScheme::SecureLrcDelta2: return "secure_lrc_delta2";
    case SecureScheme::SecureMsrLrc: return "secure_msr_lrc";
  }
  return "unknown";
}

std::vector<ExtElem> ObservationLedger::points() const {
  std::vector<ExtElem> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.point);
  return out;
}

bool SecureSpec::guaranteed_e2(std::size_t node) const {
  switch (scheme) {
    case SecureScheme::SecureMsr: return node < zz_k;
    case SecureScheme::SecureLrcDelta2: return true;
    case SecureScheme::SecureMsrLrc: return code.is_data_node(node);
  }
  return false;
}

std::vector<ExtElem> secrecy_precode(const FieldTower& tower, std::span<const ExtElem> secret, std::size_t pad,
                                     std::uint64_t seed) {
  std::vector<ExtElem> msg = random_elements(tower, pad, seed);
  msg.insert(msg.end(), secret.begin(), secret.end());
  return msg;
}

ObservationLedger collect_observations(const SecureSpec& spec, const ShardSet& shards,
                                       const EavesdropperPattern& pattern, std::span<const std::size_t> schedule) {
  require_pattern(spec.code, pattern);
  const std::span<const std::size_t> order = schedule.empty() ? std::span<const std::size_t>(pattern.e2) : schedule;
  for (std::size_t v : pattern.e2)
    if (!contains(order, v))
      throw Error(ErrorKind::ScheduleMismatch, "E2 node " + std::to_string(v) + " is never repaired", v);

  ObservationLedger ledger;
  ledger.pad = spec.pad;
  ShardSet live = shards;
  for (std::size_t v : order) {
    live.alive.at(v) = false;
    RepairResult res = local_repair(spec.code, live, v, spec.repair_mode);
    live.alive[v] = true;
    if (res.block.values != shards.blocks[v].values)
      throw Error(ErrorKind::RepairImpossible, "repair of node " + std::to_string(v) + " was not exact", v);
    if (!contains(pattern.e2, v)) continue;
    for (const auto& s : res.transcript.symbols)
      ledger.entries.push_back({s.value, s.point, Provenance::Downloaded, v, s.source});
  }
  auto store = [&](std::size_t v) {
    const auto& b = shards.blocks[v];
    for (std::size_t c = 0; c < b.values.size(); ++c)
      ledger.entries.push_back({b.values[c], b.points[c], Provenance::Stored, v, v});
  };
  for (std::size_t v : pattern.e1) store(v);
  for (std::size_t v : pattern.e2) store(v);
  return ledger;
}

std::size_t leakage_mi(const FieldTower& tower, const ObservationLedger& ledger, std::size_t message_length) {
  if (ledger.pad > message_length) throw Error(ErrorKind::InvalidArgument, "pad exceeds message length");
  const auto pts = ledger.points();
  const auto basis = independent_points(tower, pts);
  // Moore rows are F_q-linear in the point, so a basis of the points spans
  // the same functionals as the full ledger.
  std::vector<std::vector<ExtElem>> powers;
  for (const auto& p : basis) {
    std::vector<ExtElem> row(message_length);
    ExtElem cur = p;
    for (std::size_t c = 0; c < message_length; ++c) {
      row[c] = cur;
      cur = tower.pow_q(cur);
    }
    powers.push_back(std::move(row));
  }
  return ext_rank_of_columns(tower, powers, message_length) - ext_rank_of_columns(tower, powers, ledger.pad);
}

std::size_t leakage_mi(const ObservationLedger& ledger, const SecureSpec& spec) {
  return leakage_mi(spec.code.tower(), ledger, spec.message_length());
}

PointRank point_rank_count(const FieldTower& tower, const ObservationLedger& ledger, std::size_t alpha) {
  const auto pts = ledger.points();
  PointRank out;
  out.symbols = base_rank_of_points(tower, pts);
  out.nodes = Rational(static_cast<std::int64_t>(out.symbols), static_cast<std::int64_t>(alpha));
  return out;
}

bool pad_recoverable(const FieldTower& tower, const ObservationLedger& ledger, std::span<const ExtElem> message) {
  const std::size_t pad = ledger.pad;
  if (pad == 0) return true;
  std::vector<KnownEvaluation> known;
  known.reserve(ledger.entries.size());
  for (const auto& e : ledger.entries) {
    ExtElem v = e.value;
    ExtElem cur = e.point;
    for (std::size_t c = 0; c < message.size(); ++c) {
      if (c >= pad) v = tower.sub(v, tower.mul(message[c], cur));
      cur = tower.pow_q(cur);
    }
    known.emplace_back(e.point, v);
  }
  try {
    const auto rec = decode_evaluations(tower, pad, known);
    return std::equal(rec.begin(), rec.end(), message.begin());
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::RankDeficient || err.kind() == ErrorKind::InconsistentEvaluations) return false;
    throw;
  }
}

SecureSpec make_secure_msr(std::size_t k, std::size_t p, std::size_t l1, std::size_t l2, unsigned q,
                           std::uint64_t seed) {
  if (l1 + l2 >= k)
    throw Error(ErrorKind::DegenerateSecrecy, "l1 + l2 >= k leaves no secure capacity",
                static_cast<long long>(l1 + l2));
  ZigzagSpec zz = make_zigzag(k, p, q);
  SecureSpec s;
  s.scheme = SecureScheme::SecureMsr;
  s.l1 = l1;
  s.l2 = l2;
  s.seed = seed;
  s.zz_k = k;
  s.zz_p = p;
  s.repair_mode = RepairMode::BandwidthEfficient;
  s.code = single_group_spec(zz.code, k * zz.alpha(), InnerKind::Msr);
  if (zz.code->q() != q) s.code.warnings.push_back("base field raised to q=" + std::to_string(zz.code->q()));
  s.secret = s.code.file_size - zigzag_leak_count(k, p, l1, 0, l2);
  s.pad = s.code.file_size - s.secret;
  return s;
}

SecureSpec make_secure_lrc_delta2(std::size_t n, std::size_t r, std::size_t alpha, std::size_t file_size,
                                  std::size_t l1, std::size_t l2, unsigned q, std::uint64_t seed) {
  const long long dmin = dmin_bound(n, file_size, r, 2, alpha);
  if (dmin < 1) throw Error(ErrorKind::InvalidArgument, "distance bound below 1", dmin);
  const GroupSplit split = group_split(n, r, 2, static_cast<std::size_t>(dmin));
  const std::size_t reach = split.mu * r + split.h;
  if (file_size != reach * alpha)
    throw Error(ErrorKind::InvalidArgument, "file size must be (mu r + h) alpha = " + std::to_string(reach * alpha),
                static_cast<long long>(file_size));
  const std::size_t seen = l2 * r + l1;
  if (seen >= reach)
    throw Error(ErrorKind::DegenerateSecrecy, "l2 r + l1 >= mu r + h leaves no secure capacity",
                static_cast<long long>(seen));
  SecureSpec s;
  s.scheme = SecureScheme::SecureLrcDelta2;
  s.l1 = l1;
  s.l2 = l2;
  s.seed = seed;
  s.repair_mode = RepairMode::Naive;
  s.code = build_lrc(n, r, 2, alpha, file_size, q, InnerKind::Mds);
  s.secret = (reach - seen) * alpha;
  s.pad = seen * alpha;
  return s;
}

SecureSpec make_secure_msr_lrc(std::size_t n, std::size_t r, std::size_t delta, std::size_t alpha,
                               std::size_t file_size, std::size_t l1, std::size_t l2, unsigned q, std::uint64_t seed) {
  if (delta < 3) throw Error(ErrorKind::InvalidArgument, "MSR local groups need delta >= 3");
  if (n % (r + delta - 1) != 0) throw Error(ErrorKind::UnsupportedShape, "need (r + delta - 1) | n");
  if (alpha % (delta - 1) != 0) throw Error(ErrorKind::InvalidArgument, "alpha must be a multiple of delta - 1");
  const long long dmin = dmin_bound(n, file_size, r, delta, alpha);
  if (dmin < 1) throw Error(ErrorKind::InvalidArgument, "distance bound below 1", dmin);
  const GroupSplit split = group_split(n, r, delta, static_cast<std::size_t>(dmin));
  const std::size_t reach = split.mu * r + std::min(split.h, r);
  if (file_size != reach * alpha)
    throw Error(ErrorKind::InvalidArgument,
                "file size must be (mu r + min{h, r}) alpha = " + std::to_string(reach * alpha),
                static_cast<long long>(file_size));
  const std::size_t beta = alpha / (delta - 1);
  const std::size_t kappa = (l1 + l2) * alpha + l2 * (r - 1) * beta;
  if (kappa >= file_size)
    throw Error(ErrorKind::DegenerateSecrecy, "padding of " + std::to_string(kappa) + " leaves no secure capacity",
                static_cast<long long>(kappa));
  SecureSpec s;
  s.scheme = SecureScheme::SecureMsrLrc;
  s.l1 = l1;
  s.l2 = l2;
  s.seed = seed;
  s.repair_mode = RepairMode::BandwidthEfficient;
  s.code = build_lrc(n, r, delta, alpha, file_size, q, InnerKind::Msr);
  if (l2 * r + l1 > reach)
    s.code.warnings.push_back("l2 r + l1 exceeds mu r + min{h, r}: secure size is achievable but not known optimal");
  s.pad = kappa;
  s.secret = file_size - kappa;
  return s;
}

SecureSpec with_pad(SecureSpec spec, std::size_t pad) {
  if (pad > spec.message_length()) throw Error(ErrorKind::InvalidArgument, "pad exceeds message length");
  spec.pad = pad;
  spec.secret = spec.message_length() - pad;
  return spec;
}

std::vector<EavesdropperPattern> admissible_patterns(const SecureSpec& spec, bool include_outside) {
  std::vector<std::size_t> e2_pool;
  for (std::size_t v = 0; v < spec.code.n; ++v)
    if (include_outside || spec.guaranteed_e2(v)) e2_pool.push_back(v);
  std::vector<EavesdropperPattern> out;
  for (const auto& e2 : subsets_of(e2_pool, spec.l2)) {
    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < spec.code.n; ++v)
      if (!contains(e2, v)) rest.push_back(v);
    for (const auto& e1 : subsets_of(rest, spec.l1)) out.push_back({e1, e2});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> expected_point_rank(const SecureSpec& spec, const EavesdropperPattern& pat,
                                               bool* upper_bound) {
  if (upper_bound) *upper_bound = false;
  const LrcSpec& c = spec.code;
  switch (spec.scheme) {
    case SecureScheme::SecureMsr: {
      for (std::size_t v : pat.e2)
        if (v >= spec.zz_k) return std::nullopt;
      std::size_t sys = 0;
      for (std::size_t v : pat.e1) sys += v < spec.zz_k;
      return zigzag_leak_count(spec.zz_k, spec.zz_p, sys, pat.e1.size() - sys, pat.e2.size());
    }
    case SecureScheme::SecureLrcDelta2: {
      std::size_t total = 0;
      for (std::size_t g = 0; g < c.groups.size(); ++g) {
        std::size_t stored = 0;
        bool repaired = false;
        for (std::size_t v : pat.e1) stored += c.group_of[v] == g;
        for (std::size_t v : pat.e2) repaired |= c.group_of[v] == g;
        const std::size_t data = c.groups[g].data_nodes;
        total += (repaired ? data : std::min(stored, data)) * c.alpha;
      }
      return total;
    }
    case SecureScheme::SecureMsrLrc: {
      for (std::size_t v : pat.e2)
        if (!c.is_data_node(v)) return std::nullopt;
      if (upper_bound) *upper_bound = true;
      const std::size_t beta = c.efficient_beta();
      return (pat.e1.size() + pat.e2.size()) * c.alpha + pat.e2.size() * (c.r - 1) * beta;
    }
  }
  return std::nullopt;
}

namespace {

struct SweepContext {
  const SecureSpec& spec;
  std::vector<ExtElem> message;
  ShardSet shards;
};

SweepContext prepare(const SecureSpec& spec, std::size_t patterns, std::uint64_t max_patterns) {
  if (patterns > max_patterns)
    throw Error(ErrorKind::TooLarge, std::to_string(patterns) + " patterns exceed the limit " +
                                         std::to_string(max_patterns),
                static_cast<long long>(patterns));
  const FieldTower& tower = spec.code.tower();
  const auto secret = random_elements(tower, spec.secret, spec.seed, 1);
  SweepContext ctx{spec, secrecy_precode(tower, secret, spec.pad, spec.seed), {}};
  ctx.shards = lrc_encode(spec.code, ctx.message);
  return ctx;
}

PatternResult evaluate(const SweepContext& ctx, const EavesdropperPattern& pat) {
  const SecureSpec& spec = ctx.spec;
  const FieldTower& tower = spec.code.tower();
  PatternResult res;
  res.pattern = pat;
  for (std::size_t v : pat.e2) res.outside_guarantee |= !spec.guaranteed_e2(v);
  const ObservationLedger ledger = collect_observations(spec, ctx.shards, pat);
  res.leakage = leakage_mi(tower, ledger, spec.message_length());
  res.point_rank = point_rank_count(tower, ledger, spec.code.alpha).symbols;
  res.expected_rank = expected_point_rank(spec, pat, &res.rank_is_upper_bound);
  if (res.point_rank >= spec.pad) res.pad_recovered = pad_recoverable(tower, ledger, ctx.message);
  return res;
}

SweepReport summarize(const SecureSpec& spec, std::vector<PatternResult> results) {
  SweepReport rep;
  rep.scheme = spec.scheme;
  rep.pad = spec.pad;
  rep.secret = spec.secret;
  rep.seed = spec.seed;
  rep.results = std::move(results);
  for (std::size_t i = 0; i < rep.results.size(); ++i) {
    const PatternResult& r = rep.results[i];
    if (r.expected_rank) {
      const bool ok = r.rank_is_upper_bound ? r.point_rank <= *r.expected_rank : r.point_rank == *r.expected_rank;
      if (!ok) rep.count_mismatch.push_back(i);
    }
    if (r.outside_guarantee) continue;
    rep.max_leakage = std::max(rep.max_leakage, r.leakage);
    if (r.leakage > 0) rep.violations.push_back(i);
    if (r.point_rank > spec.pad || r.pad_recovered == false) rep.pad_conditions = false;
  }
  return rep;
}

}  // namespace

SweepReport secrecy_sweep_serial(const SecureSpec& spec, std::span<const EavesdropperPattern> family,
                                 std::uint64_t max_patterns) {
  const SweepContext ctx = prepare(spec, family.size(), max_patterns);
  std::vector<PatternResult> results;
  results.reserve(family.size());
  for (const auto& pat : family) results.push_back(evaluate(ctx, pat));
  return summarize(spec, std::move(results));
}

SweepReport secrecy_sweep(const SecureSpec& spec, std::span<const EavesdropperPattern> family,
                          std::uint64_t max_patterns) {
  const SweepContext ctx = prepare(spec, family.size(), max_patterns);
  std::vector<PatternResult> results(family.size());
  std::exception_ptr failure;
  const long long count = static_cast<long long>(family.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      results[static_cast<std::size_t>(i)] = evaluate(ctx, family[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(slrc_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(spec, std::move(results));
}

}  // namespace slrc
