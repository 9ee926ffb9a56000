#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace slrc {

// Largest supported extension degree. Elements are fixed-size values so
// that matrices of them stay contiguous and allocation-free.
inline constexpr std::size_t kMaxDegree = 128;

using Digit = std::uint8_t;

bool is_prime(unsigned q);
unsigned next_prime(unsigned q);

// Arithmetic in F_q for prime q < 256.
struct PrimeField {
  unsigned q;

  unsigned add(unsigned a, unsigned b) const { return (a + b) % q; }
  unsigned sub(unsigned a, unsigned b) const { return (a + q - b) % q; }
  unsigned neg(unsigned a) const { return (q - a) % q; }
  unsigned mul(unsigned a, unsigned b) const { return (a * b) % q; }
  unsigned pow(unsigned a, unsigned long long e) const;
  unsigned inv(unsigned a) const;  // throws DivideByZero on 0
};

// Element of F_{q^m}: digits in the polynomial basis 1, x, ..., x^{m-1}.
// Digits at positions >= m are always zero.
class ExtElem {
 public:
  ExtElem() = default;

  Digit operator[](std::size_t i) const { return d_[i]; }
  Digit& operator[](std::size_t i) { return d_[i]; }
  const Digit* data() const { return d_.data(); }
  Digit* data() { return d_.data(); }

  bool is_zero() const;
  bool in_base_field() const;

  friend bool operator==(const ExtElem&, const ExtElem&) = default;
  friend auto operator<=>(const ExtElem&, const ExtElem&) = default;

 private:
  std::array<Digit, kMaxDegree> d_{};
};

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

// F_q and F_{q^m} = F_q[x]/(modulus). Immutable after construction.
class FieldTower {
 public:
  // modulus: m+1 coefficients, constant term first, monic.
  static TowerPtr make(unsigned q, std::size_t m,
                       std::optional<std::vector<unsigned>> modulus = std::nullopt);

  unsigned q() const { return base_.q; }
  std::size_t m() const { return m_; }
  const PrimeField& base() const { return base_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }

  ExtElem zero() const { return {}; }
  ExtElem one() const { return from_base(1); }
  ExtElem from_base(unsigned c) const;
  ExtElem basis(std::size_t i) const;  // x^i, i < m
  ExtElem from_digits(std::span<const unsigned> digits) const;

  ExtElem add(const ExtElem& a, const ExtElem& b) const;
  ExtElem sub(const ExtElem& a, const ExtElem& b) const;
  ExtElem neg(const ExtElem& a) const;
  ExtElem mul(const ExtElem& a, const ExtElem& b) const;
  ExtElem inv(const ExtElem& a) const;
  ExtElem scale(const ExtElem& a, unsigned c) const;
  ExtElem pow_q(const ExtElem& a) const;
  ExtElem frobenius(const ExtElem& a, std::size_t times) const;
  ExtElem pow(const ExtElem& a, unsigned long long e) const;

  // acc += c * x for c in F_q
  void axpy(ExtElem& acc, unsigned c, const ExtElem& x) const;
  // acc += a * b
  void mul_add(ExtElem& acc, const ExtElem& a, const ExtElem& b) const;

  bool is_valid(const ExtElem& a) const;

  std::vector<Digit> serialize(const ExtElem& a) const;
  ExtElem deserialize(std::span<const Digit> bytes) const;
  std::string to_string(const ExtElem& a) const;

  FieldTower(unsigned q, std::size_t m, std::vector<unsigned> modulus);

 private:
  void product(const ExtElem& a, const ExtElem& b, std::uint32_t* acc) const;
  void reduce_into(std::uint32_t* acc, ExtElem& out) const;

  PrimeField base_;
  std::size_t m_;
  std::vector<unsigned> modulus_;
  // x^{m+i} mod modulus for i < m-1
  std::vector<ExtElem> reduction_;
  // (x^i)^q mod modulus for i < m
  std::vector<ExtElem> frobenius_;
};

inline TowerPtr make_field_tower(unsigned q, std::size_t m,
                                 std::optional<std::vector<unsigned>> modulus = std::nullopt) {
  return FieldTower::make(q, m, std::move(modulus));
}

bool is_irreducible(const PrimeField& f, const std::vector<unsigned>& poly);

}  // namespace slrc
