#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "slrc/fields.hpp"

namespace slrc {

enum class Level { Base, Extension };

// Dense matrix over F_q.
class BaseMatrix {
 public:
  BaseMatrix() = default;
  BaseMatrix(std::size_t rows, std::size_t cols, unsigned q);
  static BaseMatrix identity(std::size_t n, unsigned q);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  unsigned q() const { return q_; }

  Digit& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Digit at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Digit* row(std::size_t r) { return data_.data() + r * cols_; }
  const Digit* row(std::size_t r) const { return data_.data() + r * cols_; }

  BaseMatrix columns(std::span<const std::size_t> idx) const;
  BaseMatrix rows_subset(std::span<const std::size_t> idx) const;
  BaseMatrix transpose() const;

  friend bool operator==(const BaseMatrix&, const BaseMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  unsigned q_ = 2;
  std::vector<Digit> data_;
};

// Dense matrix over F_{q^m}.
class ExtMatrix {
 public:
  ExtMatrix() = default;
  ExtMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  ExtElem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const ExtElem& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<ExtElem> data_;
};

std::size_t rank(const BaseMatrix& m);
// Base level expands every extension entry into its m digits down a column,
// so a row of N entries becomes an m x N block over F_q.
std::size_t rank(const FieldTower& tower, const ExtMatrix& m, Level level);

BaseMatrix multiply(const BaseMatrix& a, const BaseMatrix& b);
BaseMatrix hstack(const BaseMatrix& a, const BaseMatrix& b);
BaseMatrix vstack(const BaseMatrix& a, const BaseMatrix& b);
std::optional<BaseMatrix> inverse(const BaseMatrix& a);
// Some X with a * X = b, if one exists.
std::optional<BaseMatrix> solve(const BaseMatrix& a, const BaseMatrix& b);
// Reduced basis of the row space.
BaseMatrix row_basis(const BaseMatrix& a);
// Basis of rowspace(a) ∩ rowspace(b) (Zassenhaus).
BaseMatrix intersect_row_spaces(const BaseMatrix& a, const BaseMatrix& b);

// Incremental echelon basis over F_q for vectors of fixed length.
class EchelonBasis {
 public:
  EchelonBasis(std::size_t length, unsigned q);
  // True if v was independent of the vectors inserted so far.
  bool insert(const Digit* v);
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::size_t length_;
  PrimeField f_;
  std::vector<std::vector<Digit>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Digit> scratch_;
};

// F_q-rank of a set of extension elements (their digit vectors).
std::size_t base_rank_of_points(const FieldTower& tower, std::span<const ExtElem> points);

// Solves x * m = rhs for x (row vector) when m is square and invertible
// over F_{q^m}; nullopt when singular.
std::optional<std::vector<ExtElem>> solve_left(const FieldTower& tower, const ExtMatrix& m,
                                               std::span<const ExtElem> rhs);

}  // namespace slrc
