#include "slrc/bounds.hpp"

#include "slrc/errors.hpp"

namespace slrc {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

Rational rpow(Rational b, std::size_t e) {
  Rational r(1);
  while (e--) r = r * b;
  return r;
}

std::size_t upow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

Rational capped_sum(std::size_t terms, std::size_t d, Rational alpha, Rational beta) {
  Rational total(0);
  for (std::size_t i = 0; i < terms; ++i) {
    const Rational flow = positive_part(Rational(static_cast<std::int64_t>(d) - static_cast<std::int64_t>(i)) * beta);
    total += rmin(flow, alpha);
  }
  return total;
}

Rational n_of(std::size_t v) { return Rational(static_cast<std::int64_t>(v)); }

void require(bool ok, SecrecyVariant v, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidVariantParams, std::string(to_string(v)) + ": " + what);
}

}  // namespace

Rational regen_tradeoff(std::size_t k, std::size_t d, Rational alpha, Rational beta) {
  return capped_sum(k, d, alpha, beta);
}

OperatingPoint msr_point(Rational file_size, std::size_t k, std::size_t d) {
  return {file_size / n_of(k), file_size / (n_of(k) * n_of(d - k + 1))};
}

OperatingPoint mbr_point(Rational file_size, std::size_t k, std::size_t d) {
  const Rational denom = n_of(k) * n_of(2 * d - k + 1);
  return {Rational(2) * file_size * n_of(d) / denom, Rational(2) * file_size / denom};
}

long long dmin_bound(std::size_t n, std::size_t file_size, std::size_t r, std::size_t delta, std::size_t alpha) {
  const long long blocks = static_cast<long long>(ceil_div(file_size, alpha));
  const long long groups = static_cast<long long>(ceil_div(file_size, r * alpha));
  return static_cast<long long>(n) - blocks + 1 - (groups - 1) * static_cast<long long>(delta - 1);
}

GroupSplit group_split(std::size_t n, std::size_t r, std::size_t delta, std::size_t dmin) {
  const std::size_t span = n - dmin + 1;
  const std::size_t width = r + delta - 1;
  return {span / width, span % width};
}

FileSizeBound lrc_file_size_bound(std::size_t n, std::size_t r, std::size_t delta, Rational alpha, Rational beta,
                                  std::size_t d, std::size_t dmin) {
  FileSizeBound out;
  out.split = group_split(n, r, delta, dmin);
  const Rational gate = n_of(r) * alpha;
  const Rational partial = rmin(gate, capped_sum(out.split.h, d, alpha, beta));
  const Rational full = rmin(gate, capped_sum(r + delta - 1, d, alpha, beta));
  out.general = partial + n_of(out.split.mu) * full;
  if (d >= r && beta == alpha / n_of(d - r + 1))
    out.reduced = n_of(out.split.mu * r) * alpha + n_of(std::min(out.split.h, r)) * alpha;
  return out;
}

const char* to_string(SecrecyVariant v) {
  switch (v) {
    case SecrecyVariant::Pawar: return "pawar";
    case SecrecyVariant::MsrGeneric: return "msr_generic";
    case SecrecyVariant::MsrIa: return "msr_ia";
    case SecrecyVariant::Goparaju: return "goparaju";
    case SecrecyVariant::ZigzagCapacity: return "zigzag_capacity";
    case SecrecyVariant::LrcDelta2: return "lrc_delta2";
    case SecrecyVariant::MsrLrc: return "msr_lrc";
    case SecrecyVariant::MsrLrcGeneral: return "msr_lrc_general";
  }
  return "unknown";
}

std::vector<SecrecyVariant> all_secrecy_variants() {
  return {SecrecyVariant::Pawar,          SecrecyVariant::MsrGeneric, SecrecyVariant::MsrIa,
          SecrecyVariant::Goparaju,       SecrecyVariant::ZigzagCapacity, SecrecyVariant::LrcDelta2,
          SecrecyVariant::MsrLrc,         SecrecyVariant::MsrLrcGeneral};
}

Rational theta_lower(Rational alpha, Rational beta, std::size_t delta, std::size_t t, bool* bound_only) {
  if (bound_only) *bound_only = t >= 3;
  if (t == 0) return Rational(0);
  const Rational shrink = Rational(1) - Rational(1, static_cast<std::int64_t>(delta - 1));
  const Rational spread = alpha - rpow(shrink, t) * alpha;
  if (t == 1) return rmax(beta, spread);
  if (t == 2) return rmax(Rational(2) * beta - alpha / n_of((delta - 1) * (delta - 1)), spread);
  return rmax(beta, spread);
}

BoundEntry secrecy_bound(const BoundParams& p, std::size_t l1, std::size_t l2, SecrecyVariant v) {
  BoundEntry e;
  e.name = to_string(v);
  const long long lead_ll = static_cast<long long>(p.k) - static_cast<long long>(l1 + l2);
  switch (v) {
    case SecrecyVariant::Pawar: {
      require(p.k >= 1 && p.d >= p.k, v, "needs k >= 1 and d >= k");
      e.formula = "sum_{i=l+1}^{k} min{(d-i+1)beta, alpha}, l = l1 + l2";
      Rational total(0);
      for (std::size_t i = l1 + l2 + 1; i <= p.k; ++i)
        total += rmin(n_of(p.d - i + 1) * p.beta, p.alpha);
      e.value = total;
      break;
    }
    case SecrecyVariant::MsrGeneric:
      require(p.k >= 1, v, "needs k >= 1");
      e.formula = "(k - l1 - l2)(alpha - beta)";
      e.value = Rational(lead_ll) * (p.alpha - p.beta);
      if (l2 == 0) e.value = Rational(lead_ll) * p.alpha, e.note = "no repair observed: (k - l1) alpha";
      break;
    case SecrecyVariant::MsrIa: {
      require(p.n > p.k && p.k >= 1, v, "needs n > k");
      require(l2 <= 2, v, "defined for l2 <= 2");
      Rational theta(0);
      if (l2 == 1) theta = p.beta;
      if (l2 == 2) theta = Rational(2) * p.beta - p.beta / n_of(p.n - p.k);
      e.formula = "(k - l1 - l2)(alpha - theta(l2))";
      e.value = Rational(lead_ll) * (p.alpha - theta);
      break;
    }
    case SecrecyVariant::Goparaju:
      require(p.n > p.k && p.k >= 1, v, "needs n > k");
      e.formula = "(k - l1 - l2)(1 - 1/(n-k))^l2 alpha";
      e.value = Rational(lead_ll) * rpow(Rational(1) - Rational(1, static_cast<std::int64_t>(p.n - p.k)), l2) * p.alpha;
      break;
    case SecrecyVariant::ZigzagCapacity: {
      require(p.n > p.k + 1 && p.k >= 1, v, "needs at least two parities");
      const std::size_t pp = p.n - p.k;
      e.formula = "(k - l1 - l2) p^k (1 - 1/p)^l2";
      e.value = Rational(lead_ll) * n_of(upow(pp, p.k)) * rpow(Rational(1) - Rational(1, static_cast<std::int64_t>(pp)), l2);
      e.capacity = l2 <= 2;
      break;
    }
    case SecrecyVariant::LrcDelta2: {
      require(p.delta == 2, v, "defined for delta = 2");
      require(p.r >= 1 && p.dmin >= 1 && p.dmin <= p.n, v, "needs r >= 1 and 1 <= d_min <= n");
      const GroupSplit s = group_split(p.n, p.r, 2, p.dmin);
      e.formula = "[mu r + h - (l2 r + l1)]^+ alpha";
      e.value = positive_part(n_of(s.mu * p.r + s.h) - n_of(l2 * p.r + l1)) * p.alpha;
      e.capacity = true;
      break;
    }
    case SecrecyVariant::MsrLrc: {
      require(p.r >= 1 && p.delta > 2 && p.dmin >= 1 && p.dmin <= p.n, v, "needs delta > 2 and 1 <= d_min <= n");
      const GroupSplit s = group_split(p.n, p.r, p.delta, p.dmin);
      const std::size_t reach = s.mu * p.r + std::min(s.h, p.r);
      require(l2 * p.r + l1 <= reach, v, "needs l2 r + l1 <= mu r + min{h, r}");
      e.formula = "(mu r + min{h,r} - l2 - l1) alpha - l2 (r-1) beta";
      e.value = (n_of(reach) - n_of(l1 + l2)) * p.alpha - n_of(l2 * (p.r - 1)) * p.beta;
      e.capacity = true;
      break;
    }
    case SecrecyVariant::MsrLrcGeneral: {
      require(p.r >= 1 && p.delta > 2 && p.dmin >= 1 && p.dmin <= p.n, v, "needs delta > 2 and 1 <= d_min <= n");
      const GroupSplit s = group_split(p.n, p.r, p.delta, p.dmin);
      const long long r = static_cast<long long>(p.r), mu = static_cast<long long>(s.mu),
                      h = static_cast<long long>(s.h), ll1 = static_cast<long long>(l1);
      const long long hr = std::min(h, r);
      std::optional<Rational> best;
      bool flagged = false;
      for (long long xi = 0; xi <= r; ++xi)
        for (long long rho = 0; rho <= mu; ++rho) {
          const long long nu = static_cast<long long>(l2) - xi * mu - rho;
          if (nu < 0 || nu > std::min(h, xi)) continue;
          if (rho > 0 && xi + 1 > r) continue;
          const long long nu_t = std::min(hr - nu, ll1);
          const long long xi_t = std::min((mu - rho) * (r - xi), std::max(ll1 - nu_t, 0LL));
          const long long xi_h = std::min(rho * (r - xi - 1), std::max(ll1 - nu_t - xi_t, 0LL));
          bool f1 = false, f2 = false, f3 = false;
          const Rational t1 = theta_lower(p.alpha, p.beta, p.delta, static_cast<std::size_t>(xi + 1), &f1);
          const Rational t2 = theta_lower(p.alpha, p.beta, p.delta, static_cast<std::size_t>(xi), &f2);
          const Rational t3 = theta_lower(p.alpha, p.beta, p.delta, static_cast<std::size_t>(nu), &f3);
          const Rational val = Rational(rho * (r - xi - 1) - xi_h) * (p.alpha - t1) +
                               Rational((mu - rho) * (r - xi) - xi_t) * (p.alpha - t2) +
                               Rational(hr - nu - nu_t) * (p.alpha - t3);
          if (!best || val < *best) {
            best = val;
            flagged = (rho > 0 && f1) || (mu > rho && f2) || f3;
          }
        }
      require(best.has_value(), v, "no decomposition l2 = xi mu + rho + nu with nu <= min{h, xi}");
      e.formula = "min over l2 = xi mu + rho + nu of the three-term group bound";
      e.value = positive_part(*best);
      if (flagged) e.note = "bound, not capacity";
      break;
    }
  }
  return e;
}

std::size_t zigzag_leak_count(std::size_t k, std::size_t p, std::size_t l1_sys, std::size_t l1_par, std::size_t l2) {
  if (l2 > k) throw Error(ErrorKind::InvalidArgument, "l2 exceeds the number of systematic nodes");
  const std::size_t total = k * upow(p, k);
  const std::size_t l = l1_sys + l1_par + l2;
  if (l >= k) return total;
  return total - (k - l) * upow(p, k - l2) * upow(p - 1, l2);
}

std::size_t zigzag_union_size(std::size_t k, std::size_t p, std::size_t l2) {
  if (l2 > k) throw Error(ErrorKind::InvalidArgument, "l2 exceeds the number of systematic nodes");
  return upow(p, k) - upow(p, k - l2) * upow(p - 1, l2);
}

}  // namespace slrc
