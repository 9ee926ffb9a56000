#pragma once

#include <cstdint>
#include <vector>

#include "slrc/fields.hpp"

namespace slrc {

// Counter-mode generator: output i is splitmix64(seed + i * golden), so any
// position of the stream can be produced without replaying the prefix.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(seed ^ (stream * 0xD1B54A32D192ED03ULL)) {}

  std::uint64_t at(std::uint64_t index) const {
    std::uint64_t z = key_ + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t next() { return at(counter_++); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// `count` elements of F_{q^m} with independent digits.
inline std::vector<ExtElem> random_elements(const FieldTower& tower, std::size_t count, std::uint64_t seed,
                                            std::uint64_t stream = 0) {
  CounterRng rng(seed, stream);
  std::vector<ExtElem> out(count);
  for (auto& e : out)
    for (std::size_t i = 0; i < tower.m(); ++i) e[i] = static_cast<Digit>(rng.next() % tower.q());
  return out;
}

}  // namespace slrc
