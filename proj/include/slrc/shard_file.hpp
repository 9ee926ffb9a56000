#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "slrc/config.hpp"
#include "slrc/fields.hpp"

namespace slrc {

inline constexpr std::uint16_t kShardVersion = 1;

// Little-endian on disk:
//   "SLRC" | version u16 | q u16 | m u16 | modulus (m+1 digits, constant first)
//   | scheme u8 | inner u8 | requested q u16
//   | n r delta alpha file_size k p l1 l2 (u32 each)
//   | node u32 | seed fingerprint u64 | byte length u64 | payload length u32
struct ShardHeader {
  unsigned q = 2;
  std::size_t m = 1;
  std::vector<unsigned> modulus;
  DssConfig params;  // seed is not stored, only its fingerprint
  std::size_t node = 0;
  std::uint64_t seed_fingerprint = 0;
  std::uint64_t byte_length = 0;

  friend bool operator==(const ShardHeader&, const ShardHeader&) = default;
};

struct ShardFile {
  ShardHeader header;
  std::vector<ExtElem> payload;  // α symbols, m digits each
};

std::uint64_t seed_fingerprint(std::uint64_t seed);

std::vector<std::uint8_t> serialize_header(const ShardHeader& h);
// Parses a header and returns the number of bytes consumed.
std::size_t parse_header(std::span<const std::uint8_t> bytes, ShardHeader& out);

std::vector<std::uint8_t> serialize_shard(const ShardFile& s);
ShardFile parse_shard(std::span<const std::uint8_t> bytes);

void write_shard(const std::string& path, const ShardFile& s);
ShardFile read_shard(const std::string& path);

// Point sidecar: raw α·m digits, same order as the payload.
void write_points(const std::string& path, const FieldTower& tower, std::span<const ExtElem> points);
std::vector<ExtElem> read_points(const std::string& path, const FieldTower& tower);

std::vector<std::uint8_t> read_bytes(const std::string& path);
void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes);

// Base-q digits per byte: ceil(log_q 256).
std::size_t digits_per_byte(unsigned q);
// Bytes to `count` symbols, digits little-endian within a byte, bytes in
// order, zero-padded. Throws TooLarge when the bytes do not fit.
std::vector<ExtElem> bytes_to_symbols(const FieldTower& tower, std::span<const std::uint8_t> bytes,
                                      std::size_t count);
std::vector<std::uint8_t> symbols_to_bytes(const FieldTower& tower, std::span<const ExtElem> symbols,
                                           std::size_t byte_length);
// Bytes that fit in `count` symbols.
std::size_t byte_capacity(const FieldTower& tower, std::size_t count);

}  // namespace slrc
