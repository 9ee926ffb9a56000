#include <doctest.h>

#include <functional>
#include <map>

#include "oracles.hpp"
#include "slrc/bounds.hpp"
#include "slrc/errors.hpp"
#include "slrc/flow.hpp"
#include "slrc/rng.hpp"

using namespace slrc;

namespace {

Rational R(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

BoundParams zigzag_params(std::size_t k, std::size_t p) {
  BoundParams b;
  b.n = k + p;
  b.k = k;
  b.d = k + p - 1;
  std::int64_t alpha = 1;
  for (std::size_t i = 0; i < k; ++i) alpha *= static_cast<std::int64_t>(p);
  b.alpha = R(alpha);
  b.beta = R(alpha, static_cast<std::int64_t>(p));
  return b;
}

BoundParams lrc_params(std::size_t n, std::size_t r, std::size_t delta, std::int64_t alpha, Rational beta,
                       std::size_t dmin) {
  BoundParams b;
  b.n = n;
  b.r = r;
  b.delta = delta;
  b.alpha = R(alpha);
  b.beta = beta;
  b.d = r + delta - 2;
  b.dmin = dmin;
  return b;
}

}  // namespace

TEST_CASE("rational arithmetic") {
  CHECK(R(6, -4) == R(-3, 2));
  CHECK(R(6, -4).num() == -3);
  CHECK(R(6, -4).den() == 2);
  CHECK(R(1, 3) + R(1, 6) == R(1, 2));
  CHECK(R(1, 3) - R(1, 2) == R(-1, 6));
  CHECK(R(2, 3) * R(9, 4) == R(3, 2));
  CHECK(R(2, 3) / R(4, 9) == R(3, 2));
  CHECK(R(1, 3) < R(1, 2));
  CHECK(R(-1, 2) < R(0));
  CHECK(R(7, 2).to_string() == "7/2");
  CHECK(R(8, 2).to_string() == "4");
  CHECK(R(8, 2).is_integer());
  CHECK(positive_part(R(-5)) == R(0));
  CHECK(kind_of([] { R(1, 0); }) == ErrorKind::DivideByZero);
  CHECK(kind_of([] { (void)(R(1) / R(0)); }) == ErrorKind::DivideByZero);
  CHECK(kind_of([] { (void)(R(INT64_MAX) * R(4)); }) == ErrorKind::TooLarge);
}

TEST_CASE("distance bound") {
  CHECK(dmin_bound(14, 9, 4, 2, 1) == 4);
  CHECK(dmin_bound(15, 28, 3, 3, 4) == 5);
  // one group's worth of data: the locality term vanishes
  for (std::size_t m = 1; m <= 12; ++m) CHECK(dmin_bound(20, m, 3, 3, 4) == 20 - static_cast<long long>((m + 3) / 4) + 1);
  CHECK(dmin_bound(4, 40, 1, 2, 1) < 0);
}

TEST_CASE("group split") {
  const GroupSplit s = group_split(15, 3, 3, 5);
  CHECK(s.mu == 2);
  CHECK(s.h == 1);
  const GroupSplit t = group_split(14, 4, 2, 4);
  CHECK(t.mu == 2);
  CHECK(t.h == 1);
  const GroupSplit u = group_split(10, 3, 3, 10);
  CHECK(u.mu == 0);
  CHECK(u.h == 1);
}

TEST_CASE("regenerating trade-off and operating points") {
  for (std::size_t k = 1; k <= 5; ++k)
    for (std::size_t d = k; d <= 7; ++d)
      for (std::int64_t m : {12, 60, 35}) {
        const OperatingPoint msr = msr_point(R(m), k, d);
        CHECK(msr.alpha == R(m, static_cast<std::int64_t>(k)));
        CHECK(msr.beta * R(static_cast<std::int64_t>(d - k + 1)) == msr.alpha);
        CHECK(regen_tradeoff(k, d, msr.alpha, msr.beta) == R(m));
        const OperatingPoint mbr = mbr_point(R(m), k, d);
        CHECK(mbr.alpha == R(static_cast<std::int64_t>(d)) * mbr.beta);
        CHECK(regen_tradeoff(k, d, mbr.alpha, mbr.beta) == R(m));
        // below the MSR point the file does not fit
        CHECK(regen_tradeoff(k, d, msr.alpha, msr.beta - R(1, 1000)) < R(m));
      }
}

TEST_CASE("LRC file-size bound") {
  const FileSizeBound msr15 = lrc_file_size_bound(15, 3, 3, R(4), R(2), 4, 5);
  CHECK(msr15.general == R(28));
  REQUIRE(msr15.reduced.has_value());
  CHECK(*msr15.reduced == R(28));
  CHECK(msr15.split.mu == 2);
  CHECK(msr15.split.h == 1);

  // β large: every group term saturates
  for (std::size_t dmin = 1; dmin <= 15; ++dmin) {
    const FileSizeBound b = lrc_file_size_bound(15, 3, 3, R(4), R(100), 4, dmin);
    CHECK(b.general == R(static_cast<std::int64_t>(b.split.mu * 12 + std::min<std::size_t>(b.split.h, 3) * 4)));
    CHECK_FALSE(b.reduced.has_value());
  }
  // d_min = n: one node, bounded by its own storage and its repair flow
  const FileSizeBound one = lrc_file_size_bound(15, 3, 3, R(4), R(1), 3, 15);
  CHECK(one.split.mu == 0);
  CHECK(one.split.h == 1);
  CHECK(one.general == R(3));
  // fractional β
  const FileSizeBound frac = lrc_file_size_bound(15, 3, 3, R(3), R(3, 2), 4, 5);
  REQUIRE(frac.reduced.has_value());
  CHECK(*frac.reduced == R(21));
  CHECK(frac.general == R(21));
}

TEST_CASE("secrecy bounds on the (5,3) zigzag") {
  const BoundParams zz = zigzag_params(3, 2);
  auto value = [&](std::size_t l1, std::size_t l2, SecrecyVariant v) { return secrecy_bound(zz, l1, l2, v).value; };

  CHECK(value(1, 1, SecrecyVariant::ZigzagCapacity) == R(4));
  CHECK(value(1, 1, SecrecyVariant::MsrIa) == R(4));
  CHECK(value(0, 2, SecrecyVariant::MsrIa) == R(2));
  CHECK(value(0, 2, SecrecyVariant::Goparaju) == R(2));
  CHECK(value(0, 2, SecrecyVariant::ZigzagCapacity) == R(2));
  CHECK(secrecy_bound(zz, 0, 2, SecrecyVariant::ZigzagCapacity).capacity);

  for (std::size_t l2 = 0; l2 <= 2; ++l2)
    for (std::size_t l1 = 0; l1 + l2 < 3; ++l1) {
      const Rational cap = value(l1, l2, SecrecyVariant::ZigzagCapacity);
      CHECK(cap == value(l1, l2, SecrecyVariant::MsrIa));
      CHECK(cap == value(l1, l2, SecrecyVariant::Goparaju));
      CHECK(cap <= value(l1, l2, SecrecyVariant::MsrGeneric));
      CHECK(cap <= value(l1, l2, SecrecyVariant::Pawar));
      std::int64_t expect = static_cast<std::int64_t>(3 - l1 - l2) * 8;
      for (std::size_t i = 0; i < l2; ++i) expect /= 2;
      CHECK(cap == R(expect));
    }
  // the generic bound ignores repair structure when nothing is repaired
  CHECK(value(1, 0, SecrecyVariant::MsrGeneric) == R(16));
  CHECK(value(1, 1, SecrecyVariant::MsrGeneric) == R(4));
  // at the MSR point every Pawar term equals α
  CHECK(value(1, 0, SecrecyVariant::Pawar) == R(16));
  CHECK(kind_of([&] { secrecy_bound(zz, 0, 3, SecrecyVariant::MsrIa); }) == ErrorKind::InvalidVariantParams);
  CHECK(kind_of([&] { secrecy_bound(zz, 0, 0, SecrecyVariant::LrcDelta2); }) == ErrorKind::InvalidVariantParams);
}

TEST_CASE("Pawar bound below the MSR point") {
  BoundParams b;
  b.n = 6;
  b.k = 3;
  b.d = 4;
  b.alpha = R(4);
  b.beta = R(1);
  // terms i = 2, 3: min{3, 4} + min{2, 4}
  CHECK(secrecy_bound(b, 1, 0, SecrecyVariant::Pawar).value == R(5));
  CHECK(secrecy_bound(b, 0, 1, SecrecyVariant::Pawar).value == R(5));
  CHECK(secrecy_bound(b, 0, 0, SecrecyVariant::Pawar).value == regen_tradeoff(3, 4, R(4), R(1)));
}

TEST_CASE("secrecy bounds for locally repairable codes") {
  const BoundParams d2 = lrc_params(14, 4, 2, 1, R(1), 4);
  CHECK(secrecy_bound(d2, 1, 0, SecrecyVariant::LrcDelta2).value == R(8));
  CHECK(secrecy_bound(d2, 0, 1, SecrecyVariant::LrcDelta2).value == R(5));
  CHECK(secrecy_bound(d2, 2, 2, SecrecyVariant::LrcDelta2).value == R(0));
  CHECK(secrecy_bound(d2, 1, 0, SecrecyVariant::LrcDelta2).capacity);

  const BoundParams msr15 = lrc_params(15, 3, 3, 4, R(2), 5);
  CHECK(secrecy_bound(msr15, 1, 1, SecrecyVariant::MsrLrc).value == R(16));
  CHECK(secrecy_bound(msr15, 2, 0, SecrecyVariant::MsrLrc).value == R(20));
  CHECK(kind_of([&] { secrecy_bound(msr15, 2, 2, SecrecyVariant::MsrLrc); }) == ErrorKind::InvalidVariantParams);
  CHECK(kind_of([&] { secrecy_bound(msr15, 1, 0, SecrecyVariant::LrcDelta2); }) == ErrorKind::InvalidVariantParams);

  // The general bound never exceeds the capacity where both apply.
  for (std::size_t l2 = 0; l2 <= 2; ++l2)
    for (std::size_t l1 = 0; l2 * 3 + l1 <= 7; ++l1) {
      const BoundEntry g = secrecy_bound(msr15, l1, l2, SecrecyVariant::MsrLrcGeneral);
      CHECK(g.value <= secrecy_bound(msr15, l1, l2, SecrecyVariant::MsrLrc).value);
      CHECK(g.value >= R(0));
    }
  CHECK(secrecy_bound(msr15, 1, 0, SecrecyVariant::MsrLrcGeneral).value == R(24));
}

TEST_CASE("theta lower bounds") {
  bool flag = false;
  CHECK(theta_lower(R(4), R(2), 3, 0, &flag) == R(0));
  CHECK_FALSE(flag);
  CHECK(theta_lower(R(4), R(2), 3, 1, &flag) == R(2));
  CHECK(theta_lower(R(4), R(2), 3, 2, &flag) == R(3));
  CHECK_FALSE(flag);
  CHECK(theta_lower(R(4), R(2), 3, 3, &flag) == R(7, 2));
  CHECK(flag);
  // δ - 1 = 3: spread 9 - (2/3)^t 9
  CHECK(theta_lower(R(9), R(3), 4, 1) == R(3));
  CHECK(theta_lower(R(9), R(3), 4, 2) == R(5));
  CHECK(theta_lower(R(9), R(3), 4, 3) == R(19, 3));
}

TEST_CASE("zigzag union and leak counts") {
  CHECK(zigzag_union_size(3, 2, 1) == 4);
  CHECK(zigzag_union_size(3, 2, 2) == 6);
  CHECK(zigzag_leak_count(3, 2, 1, 0, 1) == 20);
  CHECK(zigzag_leak_count(3, 2, 0, 1, 1) == 20);
  CHECK(zigzag_leak_count(3, 2, 0, 0, 0) == 0);
  CHECK(zigzag_leak_count(3, 2, 2, 1, 0) == 24);
  for (std::size_t k = 2; k <= 4; ++k)
    for (std::size_t p = 2; p <= 3; ++p) {
      std::size_t alpha = 1;
      for (std::size_t i = 0; i < k; ++i) alpha *= p;
      for (std::size_t l2 = 0; l2 <= k; ++l2) {
        std::size_t covered = 0;
        for (std::size_t row = 0; row < alpha; ++row) {
          bool any = false;
          std::size_t rest = row;
          for (std::size_t j = 0; j < l2; ++j, rest /= p) any |= rest % p == 0;
          covered += any;
        }
        CHECK(zigzag_union_size(k, p, l2) == covered);
      }
    }
  CHECK(kind_of([] { zigzag_leak_count(3, 2, 0, 0, 4); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("max flow agrees with brute-force min cut") {
  CounterRng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t nodes = 2 + rng.next() % 9;
    std::vector<oracle::CutEdge> edges;
    FlowGraph g;
    for (std::size_t i = 0; i < nodes; ++i) g.add_node();
    const std::size_t m = rng.next() % (nodes * 3);
    for (std::size_t e = 0; e < m; ++e) {
      const std::size_t a = rng.next() % nodes, b = rng.next() % nodes;
      if (a == b) continue;
      const std::int64_t c = static_cast<std::int64_t>(rng.next() % 10);
      edges.push_back({a, b, c});
      g.add_edge(a, b, c);
    }
    CHECK(g.max_flow(0, nodes - 1) == oracle::brute_min_cut(nodes, edges, 0, nodes - 1));
  }
}

TEST_CASE("information-flow scenarios") {
  SUBCASE("canonical family for n=15, r=3, delta=3, alpha=4") {
    CHECK(canonical_mincut(15, 3, 3, R(4), R(2), 4, 5) == R(28));
    for (const FlowScenario& sc : canonical_scenarios(15, 3, 3, R(4), R(2), 4, 5)) CHECK(flow_mincut(sc) >= R(28));
  }
  SUBCASE("storage-limited plain system") {
    for (std::size_t k = 1; k <= 4; ++k) {
      const FlowScenario sc = regenerating_scenario(6, k, 5, R(3), R(5));
      CHECK(flow_mincut(sc) == R(static_cast<std::int64_t>(3 * k)));
    }
  }
  SUBCASE("plain chain meets the trade-off") {
    for (std::size_t k = 1; k <= 4; ++k)
      for (std::size_t d = k; d <= 5; ++d)
        for (Rational beta : {R(1), R(1, 2), R(2, 3)}) {
          const FlowScenario sc = regenerating_scenario(6, k, d, R(2), beta);
          CHECK(flow_mincut(sc) == regen_tradeoff(k, d, R(2), beta));
        }
  }
  SUBCASE("a single group gate binds at r alpha") {
    FlowScenario sc;
    sc.n = 5;
    sc.group_of.assign(5, 0);
    sc.r = 3;
    sc.alpha = R(4);
    sc.beta = R(2);
    sc.collector = {0, 1, 2, 3, 4};
    CHECK(flow_mincut(sc) == R(12));
    sc.gates = false;
    CHECK(flow_mincut(sc) == R(20));
  }
  SUBCASE("canonical family reproduces the general file-size bound on a grid") {
    std::size_t checked = 0;
    for (std::size_t r = 1; r <= 3; ++r)
      for (std::size_t delta = 2; delta <= 4; ++delta)
        for (std::size_t groups = 2; groups <= 3; ++groups) {
          const std::size_t n = groups * (r + delta - 1);
          for (std::size_t d = r; d <= r + delta - 2; ++d)
            for (std::size_t dmin = 1; dmin <= n; ++dmin)
              for (Rational beta : {R(1), R(2), R(4, 3)}) {
                const FileSizeBound b = lrc_file_size_bound(n, r, delta, R(4), beta, d, dmin);
                CHECK(canonical_mincut(n, r, delta, R(4), beta, d, dmin) == b.general);
                ++checked;
              }
        }
    CHECK(checked > 300);
  }
}
