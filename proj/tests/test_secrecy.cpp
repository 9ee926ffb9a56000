#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>

#include "oracles.hpp"
#include "slrc/bounds.hpp"
#include "slrc/combinatorics.hpp"
#include "slrc/errors.hpp"
#include "slrc/rng.hpp"
#include "slrc/secrecy.hpp"

using namespace slrc;

namespace {

std::vector<ExtElem> all_elements(const FieldTower& t) {
  std::vector<ExtElem> out{t.zero()};
  for (std::size_t i = 0; i < t.m(); ++i) {
    const std::size_t before = out.size();
    for (unsigned d = 1; d < t.q(); ++d)
      for (std::size_t j = 0; j < before; ++j) {
        ExtElem e = out[j];
        e[i] = static_cast<Digit>(d);
        out.push_back(e);
      }
  }
  return out;
}

std::vector<unsigned> key_of(const FieldTower& t, const ExtElem& e) {
  return std::vector<unsigned>(e.data(), e.data() + t.m());
}

// I(secret; observations) in units of one extension symbol, by enumerating
// every (pad, secret) pair with equal weight.
double brute_mi(const FieldTower& t, std::size_t k, std::size_t pad, const std::vector<ExtElem>& points) {
  const auto elems = all_elements(t);
  std::map<std::vector<unsigned>, std::size_t> obs_counts, joint_counts;
  std::size_t total = 0;
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    LinearizedPoly f;
    for (std::size_t i : idx) f.coeffs.push_back(elems[i]);
    std::vector<unsigned> obs, joint;
    for (const auto& y : points) {
      const auto v = key_of(t, lin_eval(t, f, y));
      obs.insert(obs.end(), v.begin(), v.end());
    }
    joint = obs;
    for (std::size_t c = pad; c < k; ++c) joint.push_back(static_cast<unsigned>(idx[c]));
    ++obs_counts[obs];
    ++joint_counts[joint];
    ++total;
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == elems.size()) idx[pos++] = 0;
    if (pos == k) break;
  }
  const double h_secret = static_cast<double>(k - pad) * std::log2(static_cast<double>(elems.size()));
  const double mi = oracle::entropy(obs_counts, total) + h_secret - oracle::entropy(joint_counts, total);
  return mi / std::log2(static_cast<double>(elems.size()));
}

ObservationLedger ledger_of(std::size_t pad, const std::vector<ExtElem>& points) {
  ObservationLedger l;
  l.pad = pad;
  for (const auto& p : points) l.entries.push_back({ExtElem{}, p, Provenance::Stored, 0, 0});
  return l;
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

void check_clean(const SweepReport& rep) {
  CHECK(rep.max_leakage == 0);
  CHECK(rep.violations.empty());
  CHECK(rep.count_mismatch.empty());
  CHECK(rep.pad_conditions);
}

bool same_results(const SweepReport& a, const SweepReport& b) {
  if (a.results.size() != b.results.size()) return false;
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    const PatternResult &x = a.results[i], &y = b.results[i];
    if (!(x.pattern == y.pattern) || x.leakage != y.leakage || x.point_rank != y.point_rank ||
        x.expected_rank != y.expected_rank || x.pad_recovered != y.pad_recovered)
      return false;
  }
  return a.max_leakage == b.max_leakage && a.violations == b.violations && a.count_mismatch == b.count_mismatch;
}

}  // namespace

TEST_CASE("leakage matches an exhaustive entropy computation") {
  SUBCASE("one-time pad over F_4, K = 2, one pad symbol") {
    auto t = make_field_tower(2, 2);
    const auto elems = all_elements(*t);
    for (std::size_t size = 0; size <= 2; ++size)
      for (const auto& pick : all_subsets(elems.size(), size)) {
        std::vector<ExtElem> pts;
        for (std::size_t i : pick) pts.push_back(elems[i]);
        const double mi = brute_mi(*t, 2, 1, pts);
        CHECK(std::abs(mi - std::round(mi)) < 1e-9);
        CHECK(leakage_mi(*t, ledger_of(1, pts), 2) == static_cast<std::size_t>(std::lround(mi)));
      }
  }
  SUBCASE("F_8, K = 3, pad 1 and 2") {
    auto t = make_field_tower(2, 3);
    const auto elems = all_elements(*t);
    for (std::size_t pad = 1; pad <= 2; ++pad)
      for (std::size_t size = 1; size <= 3; ++size)
        for (const auto& pick : all_subsets(elems.size(), size)) {
          std::vector<ExtElem> pts;
          for (std::size_t i : pick) pts.push_back(elems[i]);
          const double mi = brute_mi(*t, 3, pad, pts);
          CHECK(leakage_mi(*t, ledger_of(pad, pts), 3) == static_cast<std::size_t>(std::lround(mi)));
        }
  }
  SUBCASE("no pad leaks the observed rank") {
    auto t = make_field_tower(3, 3);
    const std::vector<ExtElem> pts = random_elements(*t, 2, 8);
    CHECK(leakage_mi(*t, ledger_of(0, pts), 3) == base_rank_of_points(*t, pts));
    CHECK(kind_of([&] { leakage_mi(*t, ledger_of(4, pts), 3); }) == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("precoding places the pad in the low coefficients") {
  auto t = make_field_tower(3, 4);
  const auto secret = random_elements(*t, 2, 5, 1);
  const auto msg = secrecy_precode(*t, secret, 2, 5);
  REQUIRE(msg.size() == 4);
  CHECK(std::vector<ExtElem>(msg.begin(), msg.begin() + 2) == random_elements(*t, 2, 5));
  CHECK(std::vector<ExtElem>(msg.begin() + 2, msg.end()) == secret);
}

TEST_CASE("secure (5,3) zigzag: capacity, tightness and counting") {
  const std::size_t expected_secret[3][3] = {{24, 8, 2}, {16, 4, 0}, {8, 0, 0}};
  for (std::size_t l2 = 0; l2 <= 2; ++l2)
    for (std::size_t l1 = 0; l1 + l2 < 3; ++l1) {
      CAPTURE(l1);
      CAPTURE(l2);
      const SecureSpec s = make_secure_msr(3, 2, l1, l2, 7, 11);
      CHECK(s.secret == expected_secret[l1][l2]);
      CHECK(s.pad + s.secret == 24);
      const auto family = admissible_patterns(s);
      CHECK(family.size() == binomial(3, l2) * binomial(5 - l2, l1));
      const SweepReport rep = secrecy_sweep(s, family);
      check_clean(rep);
      for (const auto& r : rep.results) {
        REQUIRE(r.expected_rank.has_value());
        CHECK(r.point_rank == *r.expected_rank);
      }
      // the capacity formula and the converse coincide
      BoundParams b;
      b.n = 5;
      b.k = 3;
      b.d = 4;
      b.alpha = Rational(8);
      b.beta = Rational(4);
      CHECK(secrecy_bound(b, l1, l2, SecrecyVariant::ZigzagCapacity).value == Rational(static_cast<long>(s.secret)));

      if (s.pad > 0) {
        const SweepReport loose = secrecy_sweep(with_pad(s, s.pad - 1), family);
        CHECK(loose.max_leakage >= 1);
      }
    }
  CHECK(kind_of([] { make_secure_msr(3, 2, 2, 1, 7, 1); }) == ErrorKind::DegenerateSecrecy);
  CHECK(kind_of([] { make_secure_msr(3, 2, 0, 3, 7, 1); }) == ErrorKind::DegenerateSecrecy);
}

TEST_CASE("secure (4,2) zigzag: counting formula on every pattern") {
  for (std::size_t l2 = 0; l2 <= 1; ++l2)
    for (std::size_t l1 = 0; l1 + l2 < 2; ++l1) {
      const SecureSpec s = make_secure_msr(2, 2, l1, l2, 5, 3);
      const auto family = admissible_patterns(s, true);
      const SweepReport rep = secrecy_sweep(s, family);
      CHECK(rep.count_mismatch.empty());
      CHECK(rep.max_leakage == 0);
    }
}

TEST_CASE("repairs outside the guarantee can leak") {
  const SecureSpec s = make_secure_msr(3, 2, 0, 1, 7, 11);
  const auto family = admissible_patterns(s, true);
  CHECK(family.size() == 5);
  const SweepReport rep = secrecy_sweep(s, family);
  CHECK(rep.max_leakage == 0);
  std::size_t outside = 0, leaking = 0;
  for (const auto& r : rep.results) {
    outside += r.outside_guarantee;
    leaking += r.outside_guarantee && r.leakage > 0;
  }
  CHECK(outside == 2);
  CHECK(leaking == 2);
}

TEST_CASE("parallel and serial sweeps agree") {
  const SecureSpec s = make_secure_msr(3, 2, 1, 1, 7, 4);
  const auto family = admissible_patterns(s, true);
  CHECK(same_results(secrecy_sweep(s, family), secrecy_sweep_serial(s, family)));
  const SecureSpec loose = with_pad(s, s.pad - 2);
  CHECK(same_results(secrecy_sweep(loose, family), secrecy_sweep_serial(loose, family)));
  CHECK(kind_of([&] { secrecy_sweep(s, family, 3); }) == ErrorKind::TooLarge);
}

TEST_CASE("observation ledger") {
  const SecureSpec s = make_secure_msr(3, 2, 1, 1, 7, 2);
  const auto msg = secrecy_precode(s.code.tower(), random_elements(s.code.tower(), s.secret, 2, 1), s.pad, 2);
  const ShardSet sh = lrc_encode(s.code, msg);
  const EavesdropperPattern pat{{4}, {0}};
  const ObservationLedger l = collect_observations(s, sh, pat);
  std::size_t stored = 0, downloaded = 0;
  for (const auto& e : l.entries) (e.kind == Provenance::Stored ? stored : downloaded)++;
  CHECK(stored == 16);
  CHECK(downloaded == 16);
  CHECK(point_rank_count(s.code.tower(), l, 8).symbols == 20);
  CHECK(point_rank_count(s.code.tower(), l, 8).nodes == Rational(5, 2));
  CHECK(pad_recoverable(s.code.tower(), l, msg));

  const std::vector<std::size_t> other{1};
  CHECK(kind_of([&] { collect_observations(s, sh, pat, other); }) == ErrorKind::ScheduleMismatch);
  // repairing node 1 first does not change what the pattern sees
  const std::vector<std::size_t> longer{1, 0};
  CHECK(collect_observations(s, sh, pat, longer).entries.size() == l.entries.size());
  CHECK(kind_of([&] { collect_observations(s, sh, {{0}, {0}}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { collect_observations(s, sh, {{9}, {}}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("secure LRC with delta = 2") {
  const SecureSpec a = make_secure_lrc_delta2(14, 4, 1, 9, 1, 0, 5, 7);
  CHECK(a.secret == 8);
  check_clean(secrecy_sweep(a, admissible_patterns(a)));
  CHECK(secrecy_sweep(with_pad(a, a.pad - 1), admissible_patterns(a)).max_leakage >= 1);

  const SecureSpec b = make_secure_lrc_delta2(14, 4, 1, 9, 0, 1, 5, 7);
  CHECK(b.secret == 5);
  check_clean(secrecy_sweep(b, admissible_patterns(b)));
  CHECK(secrecy_sweep(with_pad(b, b.pad - 1), admissible_patterns(b)).max_leakage >= 1);

  CHECK(kind_of([] { make_secure_lrc_delta2(14, 4, 1, 9, 1, 2, 5, 7); }) == ErrorKind::DegenerateSecrecy);
  CHECK(kind_of([] { make_secure_lrc_delta2(14, 4, 1, 9, 9, 0, 5, 7); }) == ErrorKind::DegenerateSecrecy);
  CHECK(kind_of([] { make_secure_lrc_delta2(14, 4, 2, 9, 1, 0, 5, 7); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("secure MSR-LRC on the n=15, r=3, delta=3, alpha=4 code") {
  const SecureSpec s = make_secure_msr_lrc(15, 3, 3, 4, 28, 1, 1, 5, 3);
  CHECK(s.pad == 12);
  CHECK(s.secret == 16);
  CHECK(s.code.warnings.empty());
  const auto family = admissible_patterns(s);
  CHECK(family.size() == 126);
  const SweepReport rep = secrecy_sweep(s, family);
  check_clean(rep);
  CHECK(secrecy_sweep(with_pad(s, s.pad - 1), family).max_leakage >= 1);

  const SecureSpec plain = make_secure_msr_lrc(15, 3, 3, 4, 28, 2, 0, 5, 3);
  CHECK(plain.secret == 20);
  check_clean(secrecy_sweep(plain, admissible_patterns(plain)));

  CHECK(kind_of([] { make_secure_msr_lrc(15, 3, 3, 4, 28, 7, 0, 5, 3); }) == ErrorKind::DegenerateSecrecy);
  CHECK(kind_of([] { make_secure_msr_lrc(14, 3, 3, 4, 28, 1, 1, 5, 3); }) == ErrorKind::UnsupportedShape);
  CHECK(kind_of([] { make_secure_msr_lrc(15, 3, 2, 4, 28, 1, 1, 5, 3); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("verified secure sizes never exceed the converse bounds") {
  BoundParams msr15;
  msr15.n = 15;
  msr15.r = 3;
  msr15.delta = 3;
  msr15.alpha = Rational(4);
  msr15.beta = Rational(2);
  msr15.d = 4;
  msr15.dmin = 5;
  for (auto [l1, l2] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}, {2, 0}, {0, 1}, {1, 1}}) {
    const SecureSpec s = make_secure_msr_lrc(15, 3, 3, 4, 28, l1, l2, 5, 3);
    CHECK(Rational(static_cast<long>(s.secret)) <= secrecy_bound(msr15, l1, l2, SecrecyVariant::MsrLrc).value);
  }
}
