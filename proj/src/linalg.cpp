#include "slrc/linalg.hpp"

#include <algorithm>

#include "slrc/errors.hpp"

namespace slrc {

BaseMatrix::BaseMatrix(std::size_t rows, std::size_t cols, unsigned q)
    : rows_(rows), cols_(cols), q_(q), data_(rows * cols, 0) {}

BaseMatrix BaseMatrix::identity(std::size_t n, unsigned q) {
  BaseMatrix m(n, n, q);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

BaseMatrix BaseMatrix::columns(std::span<const std::size_t> idx) const {
  BaseMatrix out(rows_, idx.size(), q_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) out.at(r, c) = at(r, idx[c]);
  return out;
}

BaseMatrix BaseMatrix::rows_subset(std::span<const std::size_t> idx) const {
  BaseMatrix out(idx.size(), cols_, q_);
  for (std::size_t r = 0; r < idx.size(); ++r) std::copy_n(row(idx[r]), cols_, out.row(r));
  return out;
}

BaseMatrix BaseMatrix::transpose() const {
  BaseMatrix out(cols_, rows_, q_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  return out;
}

namespace {

// In-place reduced row echelon form restricted to the first `limit` columns.
// Returns pivot columns in row order.
std::vector<std::size_t> rref(BaseMatrix& m, std::size_t limit) {
  const PrimeField f{m.q()};
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m.at(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) std::swap_ranges(m.row(p), m.row(p) + m.cols(), m.row(r));
    const unsigned inv = f.inv(m.at(r, c));
    Digit* pr = m.row(r);
    for (std::size_t j = c; j < m.cols(); ++j) pr[j] = static_cast<Digit>(f.mul(pr[j], inv));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const unsigned factor = m.at(i, c);
      if (!factor) continue;
      Digit* row = m.row(i);
      const unsigned nf = f.neg(factor);
      for (std::size_t j = c; j < m.cols(); ++j) row[j] = static_cast<Digit>((row[j] + nf * pr[j]) % f.q);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const BaseMatrix& m) {
  BaseMatrix copy = m;
  return rref(copy, copy.cols()).size();
}

std::size_t rank(const FieldTower& tower, const ExtMatrix& m, Level level) {
  if (level == Level::Base) {
    const std::size_t deg = tower.m();
    BaseMatrix expanded(m.rows() * deg, m.cols(), tower.q());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t k = 0; k < deg; ++k) expanded.at(r * deg + k, c) = m.at(r, c)[k];
    return rank(expanded);
  }
  ExtMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a.at(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(p, j), a.at(r, j));
    const ExtElem inv = tower.inv(a.at(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a.at(r, j) = tower.mul(a.at(r, j), inv);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a.at(i, c).is_zero()) continue;
      const ExtElem nf = tower.neg(a.at(i, c));
      for (std::size_t j = c; j < a.cols(); ++j) tower.mul_add(a.at(i, j), nf, a.at(r, j));
    }
    ++r;
  }
  return r;
}

BaseMatrix multiply(const BaseMatrix& a, const BaseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "matrix product dimensions");
  BaseMatrix out(a.rows(), b.cols(), a.q());
  std::vector<unsigned> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0u);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const unsigned v = a.at(i, k);
      if (!v) continue;
      const Digit* br = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] = (acc[j] + v * br[j]) % a.q();
    }
    for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) = static_cast<Digit>(acc[j]);
  }
  return out;
}

BaseMatrix hstack(const BaseMatrix& a, const BaseMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "hstack row count");
  BaseMatrix out(a.rows(), a.cols() + b.cols(), a.q());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::copy_n(a.row(r), a.cols(), out.row(r));
    std::copy_n(b.row(r), b.cols(), out.row(r) + a.cols());
  }
  return out;
}

BaseMatrix vstack(const BaseMatrix& a, const BaseMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::ShapeMismatch, "vstack column count");
  BaseMatrix out(a.rows() + b.rows(), a.cols(), a.q());
  for (std::size_t r = 0; r < a.rows(); ++r) std::copy_n(a.row(r), a.cols(), out.row(r));
  for (std::size_t r = 0; r < b.rows(); ++r) std::copy_n(b.row(r), b.cols(), out.row(a.rows() + r));
  return out;
}

std::optional<BaseMatrix> solve(const BaseMatrix& a, const BaseMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "solve row count");
  BaseMatrix aug = hstack(a, b);
  const auto pivots = rref(aug, a.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
    for (std::size_t j = a.cols(); j < aug.cols(); ++j)
      if (aug.at(r, j)) return std::nullopt;
  BaseMatrix x(a.cols(), b.cols(), a.q());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    std::copy_n(aug.row(i) + a.cols(), b.cols(), x.row(pivots[i]));
  return x;
}

std::optional<BaseMatrix> inverse(const BaseMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  return solve(a, BaseMatrix::identity(a.rows(), a.q()));
}

BaseMatrix row_basis(const BaseMatrix& a) {
  BaseMatrix copy = a;
  const auto pivots = rref(copy, copy.cols());
  std::vector<std::size_t> idx(pivots.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return copy.rows_subset(idx);
}

BaseMatrix intersect_row_spaces(const BaseMatrix& a, const BaseMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::ShapeMismatch, "subspace ambient dimensions differ");
  const std::size_t n = a.cols();
  BaseMatrix z(a.rows() + b.rows(), 2 * n, a.q());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::copy_n(a.row(r), n, z.row(r));
    std::copy_n(a.row(r), n, z.row(r) + n);
  }
  for (std::size_t r = 0; r < b.rows(); ++r) std::copy_n(b.row(r), n, z.row(a.rows() + r));
  const auto pivots = rref(z, z.cols());
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] >= n) keep.push_back(i);
  BaseMatrix out(keep.size(), n, a.q());
  for (std::size_t i = 0; i < keep.size(); ++i) std::copy_n(z.row(keep[i]) + n, n, out.row(i));
  return out;
}

EchelonBasis::EchelonBasis(std::size_t length, unsigned q) : length_(length), f_{q}, scratch_(length) {}

bool EchelonBasis::insert(const Digit* v) {
  std::copy_n(v, length_, scratch_.begin());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const unsigned c = scratch_[pivots_[i]];
    if (!c) continue;
    const unsigned nc = f_.neg(c);
    const Digit* row = rows_[i].data();
    for (std::size_t j = pivots_[i]; j < length_; ++j)
      scratch_[j] = static_cast<Digit>((scratch_[j] + nc * row[j]) % f_.q);
  }
  std::size_t p = 0;
  while (p < length_ && scratch_[p] == 0) ++p;
  if (p == length_) return false;
  const unsigned inv = f_.inv(scratch_[p]);
  for (std::size_t j = p; j < length_; ++j) scratch_[j] = static_cast<Digit>(f_.mul(scratch_[j], inv));
  rows_.push_back(scratch_);
  pivots_.push_back(p);
  return true;
}

std::size_t base_rank_of_points(const FieldTower& tower, std::span<const ExtElem> points) {
  EchelonBasis basis(tower.m(), tower.q());
  for (const auto& p : points) {
    basis.insert(p.data());
    if (basis.rank() == tower.m()) break;
  }
  return basis.rank();
}

std::optional<std::vector<ExtElem>> solve_left(const FieldTower& tower, const ExtMatrix& m,
                                               std::span<const ExtElem> rhs) {
  const std::size_t n = m.rows();
  if (m.cols() != n || rhs.size() != n) throw Error(ErrorKind::ShapeMismatch, "solve_left needs a square system");
  // x m = rhs  <=>  m^T x^T = rhs^T
  ExtMatrix a(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) = m.at(j, i);
    a.at(i, n) = rhs[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a.at(p, c).is_zero()) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j <= n; ++j) std::swap(a.at(p, j), a.at(c, j));
    const ExtElem inv = tower.inv(a.at(c, c));
    for (std::size_t j = c; j <= n; ++j) a.at(c, j) = tower.mul(a.at(c, j), inv);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a.at(i, c).is_zero()) continue;
      const ExtElem nf = tower.neg(a.at(i, c));
      for (std::size_t j = c; j <= n; ++j) tower.mul_add(a.at(i, j), nf, a.at(c, j));
    }
  }
  std::vector<ExtElem> x(n);
  for (std::size_t i = n; i-- > 0;) {
    ExtElem v = a.at(i, n);
    for (std::size_t j = i + 1; j < n; ++j) v = tower.sub(v, tower.mul(a.at(i, j), x[j]));
    x[i] = v;
  }
  return x;
}

}  // namespace slrc
