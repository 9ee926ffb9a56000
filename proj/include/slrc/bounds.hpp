#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "slrc/rational.hpp"

namespace slrc {

// sum_{i<k} min{(d-i)β, α}
Rational regen_tradeoff(std::size_t k, std::size_t d, Rational alpha, Rational beta);

struct OperatingPoint {
  Rational alpha, beta;
};
OperatingPoint msr_point(Rational file_size, std::size_t k, std::size_t d);
OperatingPoint mbr_point(Rational file_size, std::size_t k, std::size_t d);

// n - ceil(ℳ/α) + 1 - (ceil(ℳ/(rα)) - 1)(δ - 1); may be negative.
long long dmin_bound(std::size_t n, std::size_t file_size, std::size_t r, std::size_t delta, std::size_t alpha);

// μ full groups plus h nodes of one more group make up n - d_min + 1 nodes.
struct GroupSplit {
  std::size_t mu = 0, h = 0;
};
GroupSplit group_split(std::size_t n, std::size_t r, std::size_t delta, std::size_t dmin);

struct FileSizeBound {
  Rational general;
  std::optional<Rational> reduced;  // present when β = α/(d-r+1)
  GroupSplit split;
};
FileSizeBound lrc_file_size_bound(std::size_t n, std::size_t r, std::size_t delta, Rational alpha, Rational beta,
                                  std::size_t d, std::size_t dmin);

enum class SecrecyVariant { Pawar, MsrGeneric, MsrIa, Goparaju, ZigzagCapacity, LrcDelta2, MsrLrc, MsrLrcGeneral };
const char* to_string(SecrecyVariant v);
std::vector<SecrecyVariant> all_secrecy_variants();

// Parameters shared by the secrecy bounds. MSR variants read n, k, d, α, β;
// LRC variants read n, r, δ, α, β, d_min.
struct BoundParams {
  std::size_t n = 0, k = 0, d = 0;
  Rational alpha{0}, beta{0};
  std::size_t r = 0, delta = 0, dmin = 0;
};

struct BoundEntry {
  std::string name;
  std::string formula;
  Rational value;
  bool capacity = false;  // value is a characterized capacity, not only a bound
  std::string note;
};

struct BoundReport {
  BoundParams params;
  std::size_t l1 = 0, l2 = 0;
  std::vector<BoundEntry> entries;
  std::vector<std::string> warnings;
};

BoundEntry secrecy_bound(const BoundParams& params, std::size_t l1, std::size_t l2, SecrecyVariant variant);

// Lower bound on what one intact MSR-LRC node reveals while t nodes of its
// group are repaired. `bound_only` is set for t >= 3.
Rational theta_lower(Rational alpha, Rational beta, std::size_t delta, std::size_t t, bool* bound_only = nullptr);

// Independent symbols seen on a (k+p, k) zigzag by ℓ1 stored nodes and ℓ2
// repaired systematic nodes.
std::size_t zigzag_leak_count(std::size_t k, std::size_t p, std::size_t l1_sys, std::size_t l1_par, std::size_t l2);
// |Y_1 ∪ ... ∪ Y_l2|
std::size_t zigzag_union_size(std::size_t k, std::size_t p, std::size_t l2);

}  // namespace slrc
