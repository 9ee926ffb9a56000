#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slrc/lrc.hpp"
#include "slrc/rational.hpp"

namespace slrc {

enum class SecureScheme { SecureMsr, SecureLrcDelta2, SecureMsrLrc };
const char* to_string(SecureScheme s);

struct EavesdropperPattern {
  std::vector<std::size_t> e1;  // storage-eavesdropped
  std::vector<std::size_t> e2;  // download-eavesdropped

  friend bool operator==(const EavesdropperPattern&, const EavesdropperPattern&) = default;
  friend auto operator<=>(const EavesdropperPattern&, const EavesdropperPattern&) = default;
};

enum class Provenance { Stored, Downloaded };

struct Observation {
  ExtElem value;
  ExtElem point;
  Provenance kind = Provenance::Stored;
  std::size_t node = 0;    // holder, or the repaired node for downloads
  std::size_t source = 0;  // helper for downloads
};

// Message coordinates [0, pad) are random, [pad, K) are secret.
struct ObservationLedger {
  std::size_t pad = 0;
  std::vector<Observation> entries;

  std::vector<ExtElem> points() const;
};

struct SecureSpec {
  SecureScheme scheme = SecureScheme::SecureMsr;
  std::size_t l1 = 0, l2 = 0;
  std::size_t pad = 0, secret = 0;
  std::uint64_t seed = 0;
  LrcSpec code;
  RepairMode repair_mode = RepairMode::Naive;
  // zigzag shape for the MSR scheme (k, p)
  std::size_t zz_k = 0, zz_p = 0;

  std::size_t message_length() const { return code.file_size; }
  // Nodes whose repairs fall under the construction's guarantee.
  bool guaranteed_e2(std::size_t node) const;
};

// (r, f^s): `pad` random symbols from the seeded generator in the low
// coefficients, then the secret.
std::vector<ExtElem> secrecy_precode(const FieldTower& tower, std::span<const ExtElem> secret, std::size_t pad,
                                     std::uint64_t seed);

// Replays one repair per scheduled node and records what the pattern sees.
// An empty schedule means "repair E2 in order".
ObservationLedger collect_observations(const SecureSpec& spec, const ShardSet& shards,
                                       const EavesdropperPattern& pattern, std::span<const std::size_t> schedule = {});

// I(f^s; e) in units of one F_{q^m} symbol: rank[A|B] - rank[A] over the
// Moore rows of the observed points (A = pad columns, B = secret columns).
std::size_t leakage_mi(const FieldTower& tower, const ObservationLedger& ledger, std::size_t message_length);
std::size_t leakage_mi(const ObservationLedger& ledger, const SecureSpec& spec);

struct PointRank {
  std::size_t symbols = 0;  // F_q-rank of the observed points
  Rational nodes{0};        // symbols / α
};
PointRank point_rank_count(const FieldTower& tower, const ObservationLedger& ledger, std::size_t alpha);

// Subtracts the secret's contribution and interpolates the pad from the
// ledger; true when the recovered pad matches `message`.
bool pad_recoverable(const FieldTower& tower, const ObservationLedger& ledger, std::span<const ExtElem> message);

SecureSpec make_secure_msr(std::size_t k, std::size_t p, std::size_t l1, std::size_t l2, unsigned q,
                           std::uint64_t seed);
SecureSpec make_secure_lrc_delta2(std::size_t n, std::size_t r, std::size_t alpha, std::size_t file_size,
                                  std::size_t l1, std::size_t l2, unsigned q, std::uint64_t seed);
SecureSpec make_secure_msr_lrc(std::size_t n, std::size_t r, std::size_t delta, std::size_t alpha,
                               std::size_t file_size, std::size_t l1, std::size_t l2, unsigned q, std::uint64_t seed);

// Same code with a different pad/secret split.
SecureSpec with_pad(SecureSpec spec, std::size_t pad);

// All disjoint (E1, E2) with |E1| = l1 over every node and |E2| = l2 over
// the guaranteed nodes; `include_outside` adds E2 sets that leave them.
std::vector<EavesdropperPattern> admissible_patterns(const SecureSpec& spec, bool include_outside = false);

struct PatternResult {
  EavesdropperPattern pattern;
  std::size_t leakage = 0;
  std::size_t point_rank = 0;
  std::optional<std::size_t> expected_rank;  // counting formula, when one applies
  bool rank_is_upper_bound = false;          // expected_rank bounds point_rank from above
  std::optional<bool> pad_recovered;         // checked when point_rank >= pad
  bool outside_guarantee = false;
};

struct SweepReport {
  SecureScheme scheme = SecureScheme::SecureMsr;
  std::size_t pad = 0, secret = 0;
  std::uint64_t seed = 0;
  std::vector<PatternResult> results;
  std::size_t max_leakage = 0;             // over guaranteed patterns
  std::vector<std::size_t> violations;     // guaranteed patterns with leakage > 0
  std::vector<std::size_t> count_mismatch; // patterns disagreeing with expected_rank
  bool pad_conditions = true;            // rank <= pad and pad recovery on every guaranteed pattern
};

// Counting formula for the independent symbols a pattern sees.
std::optional<std::size_t> expected_point_rank(const SecureSpec& spec, const EavesdropperPattern& pattern,
                                               bool* upper_bound = nullptr);

SweepReport secrecy_sweep(const SecureSpec& spec, std::span<const EavesdropperPattern> family,
                          std::uint64_t max_patterns = 100'000);
SweepReport secrecy_sweep_serial(const SecureSpec& spec, std::span<const EavesdropperPattern> family,
                                 std::uint64_t max_patterns = 100'000);

}  // namespace slrc
