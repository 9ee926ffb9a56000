#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "slrc/fields.hpp"
#include "slrc/linalg.hpp"

namespace slrc {

// Evaluation point. The ExtElem digits already are the F_q coordinates in
// the polynomial basis, so `coords` is a view rather than a second copy.
struct EvalPoint {
  ExtElem value;

  std::span<const Digit> coords(const FieldTower& tower) const { return {value.data(), tower.m()}; }
  friend bool operator==(const EvalPoint&, const EvalPoint&) = default;
};

// f(y) = sum_i a_i y^{q^(i-1)}
struct LinearizedPoly {
  std::vector<ExtElem> coeffs;
};

ExtElem lin_eval(const FieldTower& tower, const LinearizedPoly& p, const ExtElem& y);

// Entry (i, j) = points[j]^{q^i} for i < K.
ExtMatrix moore_matrix(const FieldTower& tower, std::span<const ExtElem> points, std::size_t k);

// The point whose evaluation equals sum_i coeffs[i] * f(points[i]).
// Coefficients must lie in F_q.
ExtElem track_point(const FieldTower& tower, std::span<const ExtElem> coeffs, std::span<const ExtElem> points);

using KnownEvaluation = std::pair<ExtElem, ExtElem>;  // (point, value)

// Recovers the K coefficients from evaluations at points of F_q-rank >= K.
// Uses the first K independent points in input order and checks every
// other evaluation against the result.
std::vector<ExtElem> decode_evaluations(const FieldTower& tower, std::size_t k,
                                        std::span<const KnownEvaluation> known);

class GabidulinCode {
 public:
  // Default points: 1, x, ..., x^{N-1}.
  GabidulinCode(TowerPtr tower, std::size_t n, std::size_t k);
  GabidulinCode(TowerPtr tower, std::size_t k, std::vector<ExtElem> points);

  std::size_t length() const { return points_.size(); }
  std::size_t dimension() const { return k_; }
  std::size_t distance() const { return points_.size() - k_ + 1; }
  const std::vector<ExtElem>& points() const { return points_; }
  const FieldTower& tower() const { return *tower_; }
  const TowerPtr& tower_ptr() const { return tower_; }

  std::vector<ExtElem> encode(std::span<const ExtElem> message) const;
  std::vector<ExtElem> decode_erasures(std::span<const KnownEvaluation> known) const;

 private:
  TowerPtr tower_;
  std::size_t k_;
  std::vector<ExtElem> points_;
};

}  // namespace slrc
