#include <doctest.h>

#include <functional>

#include "slrc/bounds.hpp"
#include "slrc/combinatorics.hpp"
#include "slrc/errors.hpp"
#include "slrc/lrc.hpp"
#include "slrc/rng.hpp"

using namespace slrc;

namespace {

const LrcSpec& lrc14() {
  static const LrcSpec s = build_lrc(14, 4, 2, 1, 9, 5, InnerKind::Mds);
  return s;
}
const LrcSpec& vec_mds() {
  static const LrcSpec s = build_lrc(15, 3, 3, 4, 28, 5, InnerKind::Mds);
  return s;
}
const LrcSpec& vec_msr() {
  static const LrcSpec s = build_lrc(15, 3, 3, 4, 28, 5, InnerKind::Msr);
  return s;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("construction shapes") {
  const LrcSpec& a = lrc14();
  CHECK(a.lrc_case == LrcCase::Remainder);
  CHECK(a.beta0 == 3);
  CHECK(a.N == 11);
  CHECK(a.g == 3);
  CHECK(a.groups[0].size == 5);
  CHECK(a.groups[1].size == 5);
  CHECK(a.groups[2].size == 4);
  CHECK(a.groups[2].first_node == 10);
  CHECK(a.tower().m() == 11);

  const LrcSpec& b = vec_mds();
  CHECK(b.lrc_case == LrcCase::Divides);
  CHECK(b.N == 36);
  CHECK(b.g == 3);
  CHECK(b.tower().m() == 36);

  const LrcSpec c = build_lrc(13, 4, 2, 1, 6, 5, InnerKind::Mds);
  CHECK(c.beta0 == 2);
  CHECK(kind_of([] { build_lrc(11, 4, 2, 1, 6, 5, InnerKind::Mds); }) == ErrorKind::UnsupportedShape);
  CHECK(kind_of([] { build_lrc(15, 3, 3, 4, 28, 3, InnerKind::Mds); }) == ErrorKind::FieldTooSmall);
  CHECK(kind_of([] { build_lrc(15, 3, 3, 4, 28, 6, InnerKind::Mds); }) == ErrorKind::NotPrime);
  CHECK(kind_of([] { build_lrc(15, 3, 3, 4, 40, 5, InnerKind::Mds); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { build_lrc(14, 4, 2, 1, 9, 5, InnerKind::Msr); }) == ErrorKind::UnsupportedShape);
}

TEST_CASE("side-condition warning for the short group") {
  // ceil(M/alpha) mod r = 3 > beta0 = 2
  const LrcSpec s = build_lrc(13, 4, 2, 1, 7, 5, InnerKind::Mds);
  CHECK_FALSE(s.warnings.empty());
  CHECK(lrc14().warnings.empty());
}

TEST_CASE("encoding and tracked points") {
  const LrcSpec& s = vec_mds();
  const FieldTower& t = s.tower();
  const ShardSet zero = lrc_encode(s, std::vector<ExtElem>(28));
  for (const auto& b : zero.blocks) CHECK(b.values == std::vector<ExtElem>(4));
  CHECK_THROWS_AS(lrc_encode(s, std::vector<ExtElem>(27)), Error);

  const auto msg = random_elements(t, 28, 5);
  const ShardSet sh = lrc_encode(s, msg);
  const LinearizedPoly f{msg};
  for (const auto& b : sh.blocks)
    for (std::size_t c = 0; c < b.values.size(); ++c) CHECK(lin_eval(t, f, b.points[c]) == b.values[c]);
}

TEST_CASE("point-rank law on the (15,28,3,3,4) code, subsets up to 6 nodes") {
  const LrcSpec& s = vec_mds();
  const auto pts = node_points(s);
  for (std::size_t size = 1; size <= 6; ++size)
    for (const auto& sub : all_subsets(s.n, size)) {
      std::vector<ExtElem> all;
      std::vector<std::size_t> per_group(s.g, 0);
      for (std::size_t v : sub) {
        all.insert(all.end(), pts[v].begin(), pts[v].end());
        ++per_group[s.group_of[v]];
      }
      std::size_t expect = 0;
      for (std::size_t c : per_group) expect += std::min(c, s.r) * s.alpha;
      CHECK(base_rank_of_points(s.tower(), all) == expect);
    }
}

TEST_CASE("local repair") {
  SUBCASE("naive repair on the MDS-grouped code downloads 12 symbols and is exact") {
    const LrcSpec& s = vec_mds();
    const ShardSet sh = lrc_encode(s, random_elements(s.tower(), 28, 9));
    for (std::size_t v = 0; v < s.n; ++v) {
      ShardSet live = sh;
      live.alive[v] = false;
      const RepairResult res = local_repair(s, live, v, RepairMode::Naive);
      CHECK(res.block == sh.blocks[v]);
      CHECK(res.transcript.symbols.size() == 12);
      // the 3 lowest-index live nodes of the group
      const std::size_t first = s.groups[s.group_of[v]].first_node;
      for (const auto& d : res.transcript.symbols) {
        CHECK(s.group_of[d.source] == s.group_of[v]);
        CHECK(d.source != v);
        CHECK(d.source < first + 4);
      }
    }
    ShardSet live = sh;
    live.alive[0] = false;
    CHECK(kind_of([&] { local_repair(s, live, 0, RepairMode::BandwidthEfficient); }) == ErrorKind::ModeUnsupported);
    live.alive[1] = live.alive[2] = false;
    CHECK(kind_of([&] { local_repair(s, live, 0, RepairMode::Naive); }) == ErrorKind::InsufficientSurvivors);
  }
  SUBCASE("bandwidth-efficient repair on the MSR-grouped code downloads d·β = 8") {
    const LrcSpec& s = vec_msr();
    CHECK(s.repair_degree() == 4);
    CHECK(s.efficient_beta() == 2);
    const ShardSet sh = lrc_encode(s, random_elements(s.tower(), 28, 10));
    for (std::size_t v = 0; v < s.n; ++v) {
      ShardSet live = sh;
      live.alive[v] = false;
      const RepairResult eff = local_repair(s, live, v, RepairMode::BandwidthEfficient);
      CHECK(eff.block == sh.blocks[v]);
      CHECK(eff.transcript.symbols.size() == (s.is_data_node(v) ? 8u : 12u));
      const RepairResult naive = local_repair(s, live, v, RepairMode::Naive);
      CHECK(naive.block == sh.blocks[v]);
      CHECK(naive.transcript.symbols.size() == 12);
    }
    ShardSet live = sh;
    live.alive[0] = live.alive[4] = false;
    CHECK(kind_of([&] { local_repair(s, live, 0, RepairMode::BandwidthEfficient); }) ==
          ErrorKind::InsufficientSurvivors);
  }
}

TEST_CASE("(r, delta) locality: every group survives delta-1 erasures") {
  for (const LrcSpec* s : {&lrc14(), &vec_mds(), &vec_msr()}) {
    const ShardSet sh = lrc_encode(*s, random_elements(s->tower(), s->file_size, 14));
    for (const auto& g : s->groups) {
      NodeView full;
      for (std::size_t i = 0; i < g.size; ++i) full.push_back(&sh.blocks[g.first_node + i]);
      std::vector<std::vector<ExtElem>> data;
      for (std::size_t i = 0; i < g.data_nodes; ++i) data.push_back(sh.blocks[g.first_node + i].values);
      for (const auto& erased : all_subsets(g.size, s->delta - 1)) {
        NodeView v = full;
        for (std::size_t e : erased) v[e] = nullptr;
        CHECK(mds_decode(s->tower(), *g.inner, v) == data);
      }
    }
  }
}

TEST_CASE("global decode") {
  const LrcSpec& s = lrc14();
  const auto msg = random_elements(s.tower(), 9, 3);
  const ShardSet sh = lrc_encode(s, msg);
  CHECK(decode_erasure_patterns(s, sh, msg, 3) == binomial(14, 3));
  CHECK(decode_erasure_patterns(s, sh, msg, 3) == decode_erasure_patterns_serial(s, sh, msg, 3));
  // nodes 10..13 form the short group and carry 3 of the 11 outer symbols; losing it leaves rank 8 < 9
  ShardSet cut = sh;
  for (std::size_t v = 10; v < 14; ++v) cut.alive[v] = false;
  try {
    global_decode(s, cut);
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankDeficient);
    CHECK(e.value() == 8);
  }
}

TEST_CASE("measure_dmin") {
  CHECK(measure_dmin(lrc14()) == 4);
  CHECK(measure_dmin_serial(lrc14()) == 4);
  CHECK(measure_dmin(vec_msr()) == 5);
  // full replication: every node holds the same block
  const LrcSpec rep = single_group_spec(std::make_shared<const ArrayCode>(make_interleaved_rs(4, 1, 2, 5)), 2,
                                        InnerKind::Mds);
  CHECK(measure_dmin(rep) == 4);
  CHECK(kind_of([] { measure_dmin(vec_mds(), 10); }) == ErrorKind::TooLarge);
}

TEST_CASE("MSR-grouped file size matches mu r alpha + min{h, r} alpha") {
  const LrcSpec& s = vec_msr();
  const long long dmin = dmin_bound(s.n, s.file_size, s.r, s.delta, s.alpha);
  const GroupSplit sp = group_split(s.n, s.r, s.delta, static_cast<std::size_t>(dmin));
  CHECK(s.file_size == sp.mu * s.r * s.alpha + std::min(sp.h, s.r) * s.alpha);
}

TEST_CASE("seeded sweep: measured distance meets the bound on conforming parameters") {
  CounterRng rng(2024);
  std::size_t tried = 0;
  for (int attempt = 0; attempt < 400 && tried < 20; ++attempt) {
    const std::size_t r = 2 + rng.next() % 2, delta = 2 + rng.next() % 2, alpha = 1 + rng.next() % 2;
    const std::size_t w = r + delta - 1;
    const std::size_t n = w + 1 + rng.next() % 8;
    const std::size_t rem = n % w;
    if (rem != 0 && rem <= delta - 1) continue;
    const std::size_t N = rem == 0 ? n / w * r * alpha : (n / w) * r * alpha + (rem - (delta - 1)) * alpha;
    const std::size_t M = 1 + rng.next() % N;
    const LrcSpec s = build_lrc(n, r, delta, alpha, M, 5, InnerKind::Mds);
    const long long bound = dmin_bound(n, M, r, delta, alpha);
    const std::size_t measured = measure_dmin(s);
    CHECK(static_cast<long long>(measured) <= bound);
    const std::size_t tail = (M + alpha - 1) / alpha % r;
    const bool conforming = rem == 0 || (tail > 0 && s.beta0 >= tail);
    if (conforming) CHECK(static_cast<long long>(measured) == bound);
    ++tried;
  }
  CHECK(tried == 20);
}
