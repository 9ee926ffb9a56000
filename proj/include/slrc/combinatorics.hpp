#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace slrc {

std::uint64_t binomial(std::size_t n, std::size_t k);

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t k);

// All k-subsets of `pool` in lexicographic order of positions.
std::vector<std::vector<std::size_t>> subsets_of(const std::vector<std::size_t>& pool, std::size_t k);

}  // namespace slrc
