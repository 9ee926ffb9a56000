#include "slrc/linearized.hpp"

#include "slrc/errors.hpp"

namespace slrc {

ExtElem lin_eval(const FieldTower& tower, const LinearizedPoly& p, const ExtElem& y) {
  ExtElem acc;
  ExtElem power = y;
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    tower.mul_add(acc, p.coeffs[i], power);
    if (i + 1 < p.coeffs.size()) power = tower.pow_q(power);
  }
  return acc;
}

ExtMatrix moore_matrix(const FieldTower& tower, std::span<const ExtElem> points, std::size_t k) {
  ExtMatrix m(k, points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    ExtElem power = points[j];
    for (std::size_t i = 0; i < k; ++i) {
      m.at(i, j) = power;
      if (i + 1 < k) power = tower.pow_q(power);
    }
  }
  return m;
}

ExtElem track_point(const FieldTower& tower, std::span<const ExtElem> coeffs, std::span<const ExtElem> points) {
  if (coeffs.size() != points.size())
    throw Error(ErrorKind::LengthMismatch, "combination and point set differ in length");
  ExtElem out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].in_base_field())
      throw Error(ErrorKind::NonBaseCoefficient, "coefficient " + std::to_string(i) + " is not in F_q");
    tower.axpy(out, coeffs[i][0], points[i]);
  }
  return out;
}

std::vector<ExtElem> decode_evaluations(const FieldTower& tower, std::size_t k,
                                        std::span<const KnownEvaluation> known) {
  EchelonBasis basis(tower.m(), tower.q());
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < known.size(); ++i) {
    if (chosen.size() < k && basis.insert(known[i].first.data()))
      chosen.push_back(i);
    else
      rest.push_back(i);
  }
  if (chosen.size() < k) {
    // report the full rank of what was supplied
    throw Error(ErrorKind::RankDeficient,
                "known points have F_q-rank " + std::to_string(basis.rank()) + " < " + std::to_string(k),
                static_cast<std::int64_t>(basis.rank()));
  }
  std::vector<ExtElem> pts(k), vals(k);
  for (std::size_t i = 0; i < k; ++i) {
    pts[i] = known[chosen[i]].first;
    vals[i] = known[chosen[i]].second;
  }
  const ExtMatrix moore = moore_matrix(tower, pts, k);
  auto solution = solve_left(tower, moore, vals);
  if (!solution) throw Error(ErrorKind::RankDeficient, "Moore system singular", static_cast<std::int64_t>(k));
  const LinearizedPoly poly{*solution};
  for (std::size_t i : rest) {
    if (lin_eval(tower, poly, known[i].first) != known[i].second)
      throw Error(ErrorKind::InconsistentEvaluations,
                  "evaluation " + std::to_string(i) + " is inconsistent with the interpolated polynomial",
                  static_cast<std::int64_t>(i));
  }
  return std::move(*solution);
}

GabidulinCode::GabidulinCode(TowerPtr tower, std::size_t n, std::size_t k) : tower_(std::move(tower)), k_(k) {
  if (n > tower_->m())
    throw Error(ErrorKind::FieldTooSmall,
                "Gabidulin length " + std::to_string(n) + " exceeds extension degree " + std::to_string(tower_->m()));
  if (k < 1 || k > n) throw Error(ErrorKind::InvalidArgument, "Gabidulin dimension must satisfy 1 <= K <= N");
  for (std::size_t i = 0; i < n; ++i) points_.push_back(tower_->basis(i));
}

GabidulinCode::GabidulinCode(TowerPtr tower, std::size_t k, std::vector<ExtElem> points)
    : tower_(std::move(tower)), k_(k), points_(std::move(points)) {
  if (k < 1 || k > points_.size()) throw Error(ErrorKind::InvalidArgument, "Gabidulin dimension must satisfy 1 <= K <= N");
  if (base_rank_of_points(*tower_, points_) != points_.size())
    throw Error(ErrorKind::RankDeficient, "evaluation points are not F_q-independent");
}

std::vector<ExtElem> GabidulinCode::encode(std::span<const ExtElem> message) const {
  if (message.size() != k_)
    throw Error(ErrorKind::LengthMismatch,
                "message has " + std::to_string(message.size()) + " symbols, expected " + std::to_string(k_));
  const LinearizedPoly poly{{message.begin(), message.end()}};
  std::vector<ExtElem> out;
  out.reserve(points_.size());
  for (const auto& y : points_) out.push_back(lin_eval(*tower_, poly, y));
  return out;
}

std::vector<ExtElem> GabidulinCode::decode_erasures(std::span<const KnownEvaluation> known) const {
  return decode_evaluations(*tower_, k_, known);
}

}  // namespace slrc
