#include "slrc/fields.hpp"

#include <algorithm>
#include <sstream>

#include "slrc/errors.hpp"

namespace slrc {

bool is_prime(unsigned q) {
  if (q < 2) return false;
  for (unsigned d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

unsigned next_prime(unsigned q) {
  unsigned c = q + 1;
  while (!is_prime(c)) ++c;
  return c;
}

unsigned PrimeField::pow(unsigned a, unsigned long long e) const {
  unsigned result = 1 % q;
  unsigned b = a % q;
  while (e) {
    if (e & 1) result = mul(result, b);
    b = mul(b, b);
    e >>= 1;
  }
  return result;
}

unsigned PrimeField::inv(unsigned a) const {
  if (a % q == 0) throw Error(ErrorKind::DivideByZero, "inverse of zero in F_" + std::to_string(q));
  return pow(a, q - 2);
}

bool ExtElem::is_zero() const {
  return std::all_of(d_.begin(), d_.end(), [](Digit x) { return x == 0; });
}

bool ExtElem::in_base_field() const {
  return std::all_of(d_.begin() + 1, d_.end(), [](Digit x) { return x == 0; });
}

namespace {

using Poly = std::vector<unsigned>;  // constant term first

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_mod(Poly a, const Poly& m, const PrimeField& f) {
  trim(a);
  const int dm = degree(m);
  const unsigned lead_inv = f.inv(m.back());
  while (degree(a) >= dm) {
    const unsigned c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, const PrimeField& f) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  trim(r);
  return r;
}

Poly poly_sub(Poly a, const Poly& b, const PrimeField& f) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
  trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, const PrimeField& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, f);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(const Poly& base, unsigned long long e, const Poly& m, const PrimeField& f) {
  Poly result{1};
  Poly b = poly_mod(base, m, f);
  while (e) {
    if (e & 1) result = poly_mod(poly_mul(result, b, f), m, f);
    b = poly_mod(poly_mul(b, b, f), m, f);
    e >>= 1;
  }
  return result;
}

}  // namespace

// Ben-Or: f of degree m is irreducible iff gcd(x^{q^i} - x, f) = 1 for i <= m/2.
bool is_irreducible(const PrimeField& f, const std::vector<unsigned>& poly) {
  Poly p = poly;
  trim(p);
  const int m = degree(p);
  if (m < 1) return false;
  if (m == 1) return true;
  if (p[0] == 0) return false;
  const Poly x{0, 1};
  Poly h = x;
  for (int i = 1; i <= m / 2; ++i) {
    h = poly_powmod(h, f.q, p, f);
    Poly g = poly_gcd(p, poly_sub(h, x, f), f);
    if (degree(g) > 0) return false;
  }
  return true;
}

TowerPtr FieldTower::make(unsigned q, std::size_t m, std::optional<std::vector<unsigned>> modulus) {
  if (!is_prime(q)) throw Error(ErrorKind::NotPrime, "q=" + std::to_string(q) + " is not prime");
  if (q >= 256) throw Error(ErrorKind::InvalidArgument, "q must be below 256 for one-digit-per-byte serialization");
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "extension degree must be at least 1");
  if (m > kMaxDegree)
    throw Error(ErrorKind::TooLarge, "extension degree " + std::to_string(m) + " exceeds " + std::to_string(kMaxDegree));
  const PrimeField f{q};
  std::vector<unsigned> mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != m + 1 || mod.back() != 1)
      throw Error(ErrorKind::InvalidArgument, "modulus must be monic of degree " + std::to_string(m));
    for (unsigned c : mod)
      if (c >= q) throw Error(ErrorKind::InvalidArgument, "modulus coefficient out of range");
    if (!is_irreducible(f, mod)) throw Error(ErrorKind::Reducible, "modulus is reducible over F_" + std::to_string(q));
  } else {
    // Smallest irreducible when the low coefficients are read as a base-q
    // integer (constant term least significant).
    mod.assign(m + 1, 0);
    mod[m] = 1;
    for (;;) {
      if (is_irreducible(f, mod)) break;
      std::size_t i = 0;
      while (i < m && ++mod[i] == q) mod[i++] = 0;
      if (i == m) throw Error(ErrorKind::Reducible, "no irreducible polynomial found");
    }
  }
  return std::make_shared<const FieldTower>(q, m, std::move(mod));
}

FieldTower::FieldTower(unsigned q, std::size_t m, std::vector<unsigned> modulus)
    : base_{q}, m_(m), modulus_(std::move(modulus)) {
  // x^m = -(low part of modulus)
  ExtElem cur;
  for (std::size_t j = 0; j < m_; ++j) cur[j] = static_cast<Digit>(base_.neg(modulus_[j]));
  for (std::size_t i = 0; i + 1 < m_; ++i) {
    reduction_.push_back(cur);
    // multiply by x
    const unsigned top = cur[m_ - 1];
    ExtElem next;
    for (std::size_t j = m_ - 1; j > 0; --j) next[j] = cur[j - 1];
    for (std::size_t j = 0; j < m_; ++j)
      next[j] = static_cast<Digit>(base_.add(next[j], base_.mul(top, base_.neg(modulus_[j]))));
    cur = next;
  }
  // Frobenius table needs only mul, which needs only reduction_.
  ExtElem xq = pow(m_ > 1 ? basis(1) : from_base(base_.neg(modulus_[0])), q);
  ExtElem power = one();
  for (std::size_t i = 0; i < m_; ++i) {
    frobenius_.push_back(power);
    power = mul(power, xq);
  }
}

ExtElem FieldTower::from_base(unsigned c) const {
  ExtElem e;
  e[0] = static_cast<Digit>(c % q());
  return e;
}

ExtElem FieldTower::basis(std::size_t i) const {
  if (i >= m_) throw Error(ErrorKind::InvalidArgument, "basis index out of range");
  ExtElem e;
  e[i] = 1;
  return e;
}

ExtElem FieldTower::from_digits(std::span<const unsigned> digits) const {
  if (digits.size() > m_) throw Error(ErrorKind::LengthMismatch, "too many digits for extension degree");
  ExtElem e;
  for (std::size_t i = 0; i < digits.size(); ++i) e[i] = static_cast<Digit>(digits[i] % q());
  return e;
}

ExtElem FieldTower::add(const ExtElem& a, const ExtElem& b) const {
  ExtElem r;
  const unsigned q = base_.q;
  for (std::size_t i = 0; i < m_; ++i) {
    unsigned s = a[i] + b[i];
    r[i] = static_cast<Digit>(s >= q ? s - q : s);
  }
  return r;
}

ExtElem FieldTower::sub(const ExtElem& a, const ExtElem& b) const {
  ExtElem r;
  const unsigned q = base_.q;
  for (std::size_t i = 0; i < m_; ++i) {
    unsigned s = a[i] + q - b[i];
    r[i] = static_cast<Digit>(s >= q ? s - q : s);
  }
  return r;
}

ExtElem FieldTower::neg(const ExtElem& a) const {
  ExtElem r;
  for (std::size_t i = 0; i < m_; ++i) r[i] = static_cast<Digit>(base_.neg(a[i]));
  return r;
}

ExtElem FieldTower::scale(const ExtElem& a, unsigned c) const {
  ExtElem r;
  c %= q();
  if (c == 0) return r;
  for (std::size_t i = 0; i < m_; ++i) r[i] = static_cast<Digit>((a[i] * c) % q());
  return r;
}

void FieldTower::axpy(ExtElem& acc, unsigned c, const ExtElem& x) const {
  const unsigned q = base_.q;
  c %= q;
  if (c == 0) return;
  for (std::size_t i = 0; i < m_; ++i) acc[i] = static_cast<Digit>((acc[i] + c * x[i]) % q);
}

void FieldTower::product(const ExtElem& a, const ExtElem& b, std::uint32_t* acc) const {
  std::fill(acc, acc + 2 * m_, 0u);
  for (std::size_t i = 0; i < m_; ++i) {
    const std::uint32_t ai = a[i];
    if (!ai) continue;
    std::uint32_t* row = acc + i;
    const Digit* bd = b.data();
    for (std::size_t j = 0; j < m_; ++j) row[j] += ai * bd[j];
  }
}

void FieldTower::reduce_into(std::uint32_t* acc, ExtElem& out) const {
  const unsigned q = base_.q;
  for (std::size_t i = m_; i + 1 < 2 * m_; ++i) {
    const std::uint32_t c = acc[i] % q;
    if (!c) continue;
    const Digit* red = reduction_[i - m_].data();
    for (std::size_t j = 0; j < m_; ++j) acc[j] += c * red[j];
  }
  for (std::size_t j = 0; j < m_; ++j) out[j] = static_cast<Digit>(acc[j] % q);
}

ExtElem FieldTower::mul(const ExtElem& a, const ExtElem& b) const {
  std::uint32_t acc[2 * kMaxDegree];
  product(a, b, acc);
  ExtElem r;
  reduce_into(acc, r);
  return r;
}

void FieldTower::mul_add(ExtElem& target, const ExtElem& a, const ExtElem& b) const {
  std::uint32_t acc[2 * kMaxDegree];
  product(a, b, acc);
  for (std::size_t j = 0; j < m_; ++j) acc[j] += target[j];
  reduce_into(acc, target);
}

ExtElem FieldTower::inv(const ExtElem& a) const {
  if (a.is_zero()) throw Error(ErrorKind::DivideByZero, "inverse of zero in F_q^m");
  const PrimeField& f = base_;
  // Extended Euclid on (modulus, a) tracking the coefficient of a.
  Poly r0(modulus_.begin(), modulus_.end());
  Poly r1(a.data(), a.data() + m_);
  trim(r1);
  Poly s0{}, s1{1};
  while (degree(r1) > 0) {
    Poly q_poly;
    Poly rem = r0;
    const unsigned lead_inv = f.inv(r1.back());
    q_poly.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 1, 0);
    while (degree(rem) >= degree(r1)) {
      const unsigned c = f.mul(rem.back(), lead_inv);
      const std::size_t shift = rem.size() - r1.size();
      q_poly[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] = f.sub(rem[shift + i], f.mul(c, r1[i]));
      trim(rem);
    }
    trim(q_poly);
    Poly s2 = poly_sub(s0, poly_mul(q_poly, s1, f), f);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant c; a * s1 = c
  const unsigned c_inv = f.inv(r1.at(0));
  s1 = poly_mod(s1, Poly(modulus_.begin(), modulus_.end()), f);
  ExtElem out;
  for (std::size_t i = 0; i < s1.size(); ++i) out[i] = static_cast<Digit>(f.mul(s1[i], c_inv));
  return out;
}

ExtElem FieldTower::pow_q(const ExtElem& a) const {
  std::uint32_t acc[kMaxDegree] = {};
  for (std::size_t i = 0; i < m_; ++i) {
    const std::uint32_t ai = a[i];
    if (!ai) continue;
    const Digit* row = frobenius_[i].data();
    for (std::size_t j = 0; j < m_; ++j) acc[j] += ai * row[j];
  }
  ExtElem r;
  for (std::size_t j = 0; j < m_; ++j) r[j] = static_cast<Digit>(acc[j] % base_.q);
  return r;
}

ExtElem FieldTower::frobenius(const ExtElem& a, std::size_t times) const {
  ExtElem r = a;
  for (std::size_t i = 0; i < times % m_; ++i) r = pow_q(r);
  return r;
}

ExtElem FieldTower::pow(const ExtElem& a, unsigned long long e) const {
  ExtElem result = one();
  ExtElem b = a;
  while (e) {
    if (e & 1) result = mul(result, b);
    b = mul(b, b);
    e >>= 1;
  }
  return result;
}

bool FieldTower::is_valid(const ExtElem& a) const {
  for (std::size_t i = 0; i < kMaxDegree; ++i) {
    if (i >= m_ && a[i] != 0) return false;
    if (a[i] >= q()) return false;
  }
  return true;
}

std::vector<Digit> FieldTower::serialize(const ExtElem& a) const {
  return std::vector<Digit>(a.data(), a.data() + m_);
}

ExtElem FieldTower::deserialize(std::span<const Digit> bytes) const {
  if (bytes.size() != m_) throw Error(ErrorKind::LengthMismatch, "serialized element must have m bytes");
  ExtElem e;
  for (std::size_t i = 0; i < m_; ++i) {
    if (bytes[i] >= q()) throw Error(ErrorKind::Format, "digit out of range for F_" + std::to_string(q()));
    e[i] = bytes[i];
  }
  return e;
}

std::string FieldTower::to_string(const ExtElem& a) const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m_; ++i) os << (i ? " " : "") << static_cast<unsigned>(a[i]);
  os << ']';
  return os.str();
}

}  // namespace slrc
