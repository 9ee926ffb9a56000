#include "slrc/arraycodes.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "slrc/combinatorics.hpp"
#include "slrc/errors.hpp"

namespace slrc {

namespace {

std::string describe(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

std::size_t digit(std::size_t row, std::size_t p, std::size_t j) { return (row / ipow(p, j)) % p; }

}  // namespace

std::size_t RepairPlan::bandwidth() const {
  std::size_t total = 0;
  for (const auto& d : download) total += d.rows();
  return total;
}

ArrayCode::ArrayCode(ArrayFamily family, std::size_t n_blocks, std::size_t k_blocks, std::size_t alpha, BaseMatrix gen)
    : family_(family), n_(n_blocks), k_(k_blocks), alpha_(alpha), gen_(std::move(gen)), efficient_(n_blocks) {
  if (gen_.rows() != k_ * alpha_ || gen_.cols() != n_ * alpha_)
    throw Error(ErrorKind::ShapeMismatch, "generator shape does not match (k, n, alpha)");
}

BaseMatrix ArrayCode::block_columns(std::span<const std::size_t> nodes) const {
  std::vector<std::size_t> cols;
  cols.reserve(nodes.size() * alpha_);
  for (std::size_t node : nodes)
    for (std::size_t c = 0; c < alpha_; ++c) cols.push_back(node * alpha_ + c);
  return gen_.columns(cols);
}

RepairPlan ArrayCode::make_plan(std::size_t failed, std::vector<std::size_t> helpers,
                                std::vector<BaseMatrix> download) const {
  if (helpers.size() != download.size()) throw Error(ErrorKind::ShapeMismatch, "one download matrix per helper");
  BaseMatrix phi(k_ * alpha_, 0, q());
  for (std::size_t h = 0; h < helpers.size(); ++h) {
    const std::size_t node[] = {helpers[h]};
    phi = hstack(phi, multiply(block_columns(node), download[h].transpose()));
  }
  const std::size_t target_node[] = {failed};
  auto rebuild = solve(phi, block_columns(target_node));
  if (!rebuild)
    throw Error(ErrorKind::RepairImpossible,
                "downloads from " + describe(helpers) + " do not determine node " + std::to_string(failed));
  return RepairPlan{std::move(helpers), std::move(download), std::move(*rebuild)};
}

RepairPlan ArrayCode::full_block_plan(std::size_t failed, std::vector<std::size_t> helpers) const {
  std::vector<BaseMatrix> download(helpers.size(), BaseMatrix::identity(alpha_, q()));
  return make_plan(failed, std::move(helpers), std::move(download));
}

unsigned ZigzagSpec::coeff(std::size_t parity, std::size_t /*row*/, std::size_t column) const {
  return PrimeField{code->q()}.pow(lambda.at(column), parity);
}

std::size_t ZigzagSpec::source_row(std::size_t parity, std::size_t row, std::size_t column) const {
  const std::size_t place = ipow(p, column);
  const std::size_t d = (row / place) % p;
  const std::size_t shifted = (d + p - parity % p) % p;
  return row - d * place + shifted * place;
}

std::optional<std::vector<std::size_t>> mds_witness_serial(const ArrayCode& code) {
  const std::size_t full = code.k_blocks() * code.alpha();
  for (const auto& s : all_subsets(code.n_blocks(), code.k_blocks()))
    if (rank(code.block_columns(s)) < full) return s;
  return std::nullopt;
}

std::optional<std::vector<std::size_t>> mds_witness(const ArrayCode& code) {
  const std::size_t full = code.k_blocks() * code.alpha();
  const auto subsets = all_subsets(code.n_blocks(), code.k_blocks());
  const long count = static_cast<long>(subsets.size());
  long first = count;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    if (rank(code.block_columns(subsets[i])) < full) {
#pragma omp critical(slrc_mds_witness)
      first = std::min(first, i);
    }
  }
  if (first == count) return std::nullopt;
  return subsets[first];
}

MdsArraySpec make_interleaved_rs(std::size_t n_blocks, std::size_t k_blocks, std::size_t alpha, unsigned q) {
  if (n_blocks < 1 || k_blocks < 1 || alpha < 1 || k_blocks > n_blocks)
    throw Error(ErrorKind::InvalidArgument, "interleaved RS needs 1 <= k_blocks <= n_blocks and alpha >= 1");
  if (!is_prime(q)) throw Error(ErrorKind::NotPrime, "q=" + std::to_string(q) + " is not prime");
  if (q < n_blocks)
    throw Error(ErrorKind::FieldTooSmall,
                "q=" + std::to_string(q) + " has fewer than " + std::to_string(n_blocks) + " evaluation points");
  const PrimeField f{q};
  BaseMatrix v(k_blocks, n_blocks, q);
  for (std::size_t i = 0; i < k_blocks; ++i)
    for (std::size_t j = 0; j < n_blocks; ++j) v.at(i, j) = static_cast<Digit>(f.pow(static_cast<unsigned>(j), i));
  std::vector<std::size_t> first(k_blocks);
  std::iota(first.begin(), first.end(), 0);
  const auto head_inv = inverse(v.columns(first));
  const BaseMatrix sys = multiply(*head_inv, v);

  BaseMatrix gen(k_blocks * alpha, n_blocks * alpha, q);
  for (std::size_t i = 0; i < k_blocks; ++i)
    for (std::size_t j = 0; j < n_blocks; ++j)
      for (std::size_t c = 0; c < alpha; ++c) gen.at(i * alpha + c, j * alpha + c) = sys.at(i, j);
  ArrayCode code(ArrayFamily::InterleavedRs, n_blocks, k_blocks, alpha, std::move(gen));
  if (auto w = mds_witness(code))
    throw Error(ErrorKind::NotMds, "interleaved RS fails on " + describe(*w), q);
  return code;
}

namespace {

ArrayCode zigzag_code(std::size_t k, std::size_t p, unsigned q, const std::vector<unsigned>& lambda) {
  const PrimeField f{q};
  const std::size_t alpha = ipow(p, k);
  const std::size_t n = k + p;
  BaseMatrix gen(k * alpha, n * alpha, q);
  for (std::size_t i = 0; i < k * alpha; ++i) gen.at(i, i) = 1;
  ZigzagSpec shape{k, p, lambda, {}, nullptr};
  for (std::size_t l = 0; l < p; ++l)
    for (std::size_t t = 0; t < alpha; ++t)
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = shape.source_row(l, t, j);
        gen.at(j * alpha + src, (k + l) * alpha + t) = static_cast<Digit>(f.pow(lambda[j], l));
      }
  return ArrayCode(ArrayFamily::Zigzag, n, k, alpha, std::move(gen));
}

}  // namespace

ZigzagSpec make_zigzag(std::size_t k, std::size_t p, unsigned q, std::size_t max_attempts) {
  if (k < 2 || p < 2) throw Error(ErrorKind::InvalidArgument, "zigzag needs k >= 2 and p >= 2");
  if (!is_prime(q)) throw Error(ErrorKind::NotPrime, "q=" + std::to_string(q) + " is not prime");
  const std::size_t alpha = ipow(p, k);
  if (k * alpha > 4096) throw Error(ErrorKind::TooLarge, "zigzag message of " + std::to_string(k * alpha) + " symbols");
  std::string last_witness = "none";
  unsigned tried = q;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt, q = next_prime(q)) {
    tried = q;
    if (q <= k) continue;  // needs k distinct nonzero lambdas
    std::vector<unsigned> lambda(k);
    std::iota(lambda.begin(), lambda.end(), 1u);
    auto code = std::make_shared<ArrayCode>(zigzag_code(k, p, q, lambda));
    if (auto w = mds_witness(*code)) {
      last_witness = describe(*w);
      continue;
    }
    ZigzagSpec spec{k, p, lambda, {}, nullptr};
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<std::size_t> ys;
      for (std::size_t i = 0; i < alpha; ++i)
        if (digit(i, p, j) == 0) ys.push_back(i);
      spec.y_sets.push_back(ys);
      std::vector<std::size_t> helpers;
      std::vector<BaseMatrix> download;
      BaseMatrix select(ys.size(), alpha, q);
      for (std::size_t r = 0; r < ys.size(); ++r) select.at(r, ys[r]) = 1;
      for (std::size_t h = 0; h < k + p; ++h) {
        if (h == j) continue;
        helpers.push_back(h);
        download.push_back(select);
      }
      code->set_efficient_plan(j, code->make_plan(j, std::move(helpers), std::move(download)));
    }
    spec.code = std::move(code);
    return spec;
  }
  throw Error(ErrorKind::NotMds, "zigzag coefficient family not MDS up to q=" + std::to_string(tried) +
                                     ", last witness " + last_witness,
              tried);
}

AlignedSpec make_aligned_msr(std::size_t k, std::size_t layers, unsigned q, std::size_t max_attempts) {
  if (k < 2 || k > 3) throw Error(ErrorKind::UnsupportedShape, "aligned (k+2, k) code supports k in {2, 3}");
  if (layers < 1) throw Error(ErrorKind::InvalidArgument, "aligned code needs at least one layer");
  if (!is_prime(q)) throw Error(ErrorKind::NotPrime, "q=" + std::to_string(q) + " is not prime");
  const std::size_t alpha = 2 * layers;
  const std::size_t n = k + 2;
  const unsigned w[3][2] = {{1, 0}, {0, 1}, {1, 1}};

  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt, q = next_prime(q)) {
    if (q < 3) continue;
    // eigenbasis of column j: the repair directions of the other columns
    std::vector<BaseMatrix> basis;
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<std::size_t> dirs;
      for (std::size_t i = 0; i < 3 && dirs.size() < 2; ++i)
        if (i != j) dirs.push_back(i);
      BaseMatrix b(2, 2, q);
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t r = 0; r < 2; ++r) b.at(r, c) = static_cast<Digit>(w[dirs[c]][r]);
      basis.push_back(b);
    }
    std::vector<std::pair<unsigned, unsigned>> eig;
    for (unsigned a = 1; a < q; ++a)
      for (unsigned b = 1; b < q; ++b)
        if (a != b) eig.emplace_back(a, b);

    std::vector<std::size_t> choice(k, 0);
    for (;;) {
      std::vector<BaseMatrix> mats;
      for (std::size_t j = 0; j < k; ++j) {
        BaseMatrix d(2, 2, q);
        d.at(0, 0) = static_cast<Digit>(eig[choice[j]].first);
        d.at(1, 1) = static_cast<Digit>(eig[choice[j]].second);
        mats.push_back(multiply(multiply(basis[j], d), *inverse(basis[j])));
      }
      BaseMatrix gen(k * alpha, n * alpha, q);
      for (std::size_t i = 0; i < k * alpha; ++i) gen.at(i, i) = 1;
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t l = 0; l < layers; ++l)
          for (std::size_t a = 0; a < 2; ++a) {
            const std::size_t row = j * alpha + 2 * l + a;
            gen.at(row, k * alpha + 2 * l + a) = 1;
            for (std::size_t c = 0; c < 2; ++c) gen.at(row, (k + 1) * alpha + 2 * l + c) = mats[j].at(a, c);
          }
      auto code = std::make_shared<ArrayCode>(ArrayFamily::Aligned, n, k, alpha, std::move(gen));
      if (!mds_witness(*code)) {
        bool repairable = true;
        for (std::size_t j = 0; j < k && repairable; ++j) {
          BaseMatrix select(layers, alpha, q);
          for (std::size_t l = 0; l < layers; ++l)
            for (std::size_t c = 0; c < 2; ++c) select.at(l, 2 * l + c) = static_cast<Digit>(w[j][c]);
          std::vector<std::size_t> helpers;
          for (std::size_t h = 0; h < n; ++h)
            if (h != j) helpers.push_back(h);
          std::vector<BaseMatrix> download(helpers.size(), select);
          try {
            code->set_efficient_plan(j, code->make_plan(j, std::move(helpers), std::move(download)));
          } catch (const Error&) {
            repairable = false;
          }
        }
        if (repairable) return AlignedSpec{k, layers, std::move(mats), std::move(code)};
      }
      std::size_t i = 0;
      while (i < k && ++choice[i] == eig.size()) choice[i++] = 0;
      if (i == k) break;
    }
  }
  throw Error(ErrorKind::NotMds, "no aligned MDS assignment found", q);
}

std::vector<ExtElem> apply_generator(const FieldTower& tower, std::span<const ExtElem> in, const BaseMatrix& gen) {
  if (in.size() != gen.rows()) throw Error(ErrorKind::ShapeMismatch, "input length does not match generator rows");
  std::vector<ExtElem> out(gen.cols());
  for (std::size_t i = 0; i < gen.rows(); ++i) {
    if (in[i].is_zero()) continue;
    const Digit* row = gen.row(i);
    for (std::size_t j = 0; j < gen.cols(); ++j)
      if (row[j]) tower.axpy(out[j], row[j], in[i]);
  }
  return out;
}

namespace {

std::vector<ExtElem> flatten(const std::vector<std::vector<ExtElem>>& blocks, std::size_t count, std::size_t alpha) {
  if (blocks.size() != count) throw Error(ErrorKind::ShapeMismatch, "wrong number of blocks");
  std::vector<ExtElem> flat;
  flat.reserve(count * alpha);
  for (const auto& b : blocks) {
    if (b.size() != alpha) throw Error(ErrorKind::ShapeMismatch, "block length differs from alpha");
    flat.insert(flat.end(), b.begin(), b.end());
  }
  return flat;
}

std::vector<std::vector<ExtElem>> unflatten(const std::vector<ExtElem>& flat, std::size_t alpha) {
  std::vector<std::vector<ExtElem>> out;
  for (std::size_t i = 0; i < flat.size(); i += alpha) out.emplace_back(flat.begin() + i, flat.begin() + i + alpha);
  return out;
}

}  // namespace

std::vector<std::vector<ExtElem>> mds_encode(const FieldTower& tower, const ArrayCode& code,
                                             const std::vector<std::vector<ExtElem>>& blocks) {
  const auto flat = flatten(blocks, code.k_blocks(), code.alpha());
  return unflatten(apply_generator(tower, flat, code.gen()), code.alpha());
}

std::vector<TrackedBlock> encode_tracked(const FieldTower& tower, const ArrayCode& code,
                                         std::span<const TrackedBlock> blocks) {
  std::vector<std::vector<ExtElem>> values, points;
  for (const auto& b : blocks) {
    values.push_back(b.values);
    points.push_back(b.points);
  }
  const auto vout = mds_encode(tower, code, values);
  const auto pout = mds_encode(tower, code, points);
  std::vector<TrackedBlock> out(code.n_blocks());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = TrackedBlock{vout[j], pout[j]};
  return out;
}

std::vector<std::vector<ExtElem>> mds_decode(const FieldTower& tower, const ArrayCode& code, const NodeView& nodes) {
  if (nodes.size() != code.n_blocks()) throw Error(ErrorKind::ShapeMismatch, "node view length differs from n");
  std::vector<std::size_t> chosen;
  for (std::size_t j = 0; j < nodes.size() && chosen.size() < code.k_blocks(); ++j)
    if (nodes[j]) chosen.push_back(j);
  if (chosen.size() < code.k_blocks())
    throw Error(ErrorKind::InsufficientSurvivors,
                std::to_string(chosen.size()) + " blocks available, " + std::to_string(code.k_blocks()) + " needed");
  const auto inv = inverse(code.block_columns(chosen));
  if (!inv) throw Error(ErrorKind::NotMds, "chosen blocks " + describe(chosen) + " are dependent", code.q());
  std::vector<ExtElem> avail;
  for (std::size_t j : chosen) {
    if (nodes[j]->values.size() != code.alpha()) throw Error(ErrorKind::ShapeMismatch, "block length differs from alpha");
    avail.insert(avail.end(), nodes[j]->values.begin(), nodes[j]->values.end());
  }
  return unflatten(apply_generator(tower, avail, *inv), code.alpha());
}

RepairResult run_repair(const FieldTower& tower, const ArrayCode& code, const RepairPlan& plan, std::size_t failed,
                        const NodeView& nodes) {
  RepairResult result;
  result.transcript.failed = failed;
  std::vector<ExtElem> values, points;
  for (std::size_t h = 0; h < plan.helpers.size(); ++h) {
    const std::size_t src = plan.helpers[h];
    if (src >= nodes.size() || !nodes[src])
      throw Error(ErrorKind::MissingSurvivor, "helper node " + std::to_string(src) + " is not available");
    const TrackedBlock& blk = *nodes[src];
    const bool tracked = blk.points.size() == code.alpha();
    const BaseMatrix& d = plan.download[h];
    const BaseMatrix dt = d.transpose();
    const auto v = apply_generator(tower, blk.values, dt);
    const auto p = tracked ? apply_generator(tower, blk.points, dt) : std::vector<ExtElem>(v.size());
    for (std::size_t b = 0; b < v.size(); ++b) {
      result.transcript.symbols.push_back({src, b, v[b], p[b]});
      values.push_back(v[b]);
      points.push_back(p[b]);
    }
  }
  result.block.values = apply_generator(tower, values, plan.rebuild);
  result.block.points = apply_generator(tower, points, plan.rebuild);
  return result;
}

RepairResult zigzag_repair_systematic(const FieldTower& tower, const ZigzagSpec& spec, std::size_t failed,
                                      const NodeView& nodes) {
  if (failed >= spec.k) throw Error(ErrorKind::InvalidArgument, "zigzag efficient repair covers systematic nodes only");
  return run_repair(tower, *spec.code, *spec.code->efficient_plan(failed), failed, nodes);
}

namespace {

const BaseMatrix& download_of(const ArrayCode& code, std::size_t helper, std::size_t repaired) {
  const auto& plan = code.efficient_plan(repaired);
  if (!plan) throw Error(ErrorKind::ModeUnsupported, "node " + std::to_string(repaired) + " has no efficient repair");
  for (std::size_t h = 0; h < plan->helpers.size(); ++h)
    if (plan->helpers[h] == helper) return plan->download[h];
  throw Error(ErrorKind::InvalidArgument,
              "node " + std::to_string(helper) + " is not a helper for node " + std::to_string(repaired));
}

}  // namespace

std::size_t repair_subspace_dims(const ArrayCode& code, std::size_t helper, std::span<const std::size_t> repaired) {
  if (repaired.empty()) return code.alpha();
  BaseMatrix acc = row_basis(download_of(code, helper, repaired[0]));
  for (std::size_t i = 1; i < repaired.size(); ++i)
    acc = intersect_row_spaces(acc, download_of(code, helper, repaired[i]));
  return rank(acc);
}

std::size_t repair_union_dims(const ArrayCode& code, std::size_t helper, std::span<const std::size_t> repaired) {
  BaseMatrix acc(0, code.alpha(), code.q());
  for (std::size_t j : repaired) acc = vstack(acc, download_of(code, helper, j));
  return rank(acc);
}

}  // namespace slrc
