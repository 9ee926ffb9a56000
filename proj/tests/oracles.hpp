#pragma once

// Slow reference implementations used to check the library. They share no
// code with it beyond plain integers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <vector>

namespace oracle {

inline unsigned inv_mod(unsigned a, unsigned q) {
  for (unsigned x = 1; x < q; ++x)
    if (a * x % q == 1) return x;
  return 0;
}

// Rank of integer rows mod q by textbook elimination.
inline std::size_t rank_mod(std::vector<std::vector<unsigned>> rows, unsigned q) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] % q == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const unsigned inv = inv_mod(rows[rank][c] % q, q);
    for (auto& v : rows[rank]) v = v * inv % q;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] % q == 0) continue;
      const unsigned f = rows[r][c] % q;
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] = (rows[r][k] % q + q * q - f * rows[rank][k]) % q;
    }
    ++rank;
  }
  return rank;
}

// Remainder of a divided by monic b over F_q; coefficients constant-first.
inline std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& b, unsigned q) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const unsigned lead = a.back() % q;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + q * q - lead * b[i]) % q;
    a.pop_back();
  }
  return a;
}

// True when no monic polynomial of degree 1..deg/2 divides poly.
inline bool irreducible_by_trial(const std::vector<unsigned>& poly, unsigned q) {
  const std::size_t m = poly.size() - 1;
  for (std::size_t d = 1; d <= m / 2; ++d) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= q;
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<unsigned> div(d + 1, 0);
      std::size_t c = code;
      for (std::size_t i = 0; i < d; ++i, c /= q) div[i] = static_cast<unsigned>(c % q);
      div[d] = 1;
      const auto rem = poly_mod(poly, div, q);
      if (std::all_of(rem.begin(), rem.end(), [](unsigned v) { return v == 0; })) return false;
    }
  }
  return true;
}

// Multiplication in F_q[x]/(mod) on digit vectors, schoolbook.
inline std::vector<unsigned> ext_mul(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                                     const std::vector<unsigned>& mod, unsigned q) {
  std::vector<unsigned> prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % q;
  auto r = poly_mod(prod, mod, q);
  r.resize(mod.size() - 1, 0);
  return r;
}

// Entropy (in bits) of the distribution of keys produced by enumerating
// every outcome with equal weight.
inline double entropy(const std::map<std::vector<unsigned>, std::size_t>& counts, std::size_t total) {
  double h = 0;
  for (const auto& [_, c] : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

// Minimum s-t cut by enumerating every vertex bipartition. Edges are
// (from, to, capacity); only for a handful of vertices.
struct CutEdge {
  std::size_t from, to;
  std::int64_t cap;
};
inline std::int64_t brute_min_cut(std::size_t nodes, const std::vector<CutEdge>& edges, std::size_t s,
                                  std::size_t t) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nodes); ++mask) {
    if (!((mask >> s) & 1) || ((mask >> t) & 1)) continue;
    std::int64_t cut = 0;
    for (const auto& e : edges)
      if (((mask >> e.from) & 1) && !((mask >> e.to) & 1)) cut += e.cap;
    best = std::min(best, cut);
  }
  return best;
}

}  // namespace oracle
