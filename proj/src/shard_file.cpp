#include "slrc/shard_file.hpp"

#include <fstream>
#include <iterator>

#include "slrc/errors.hpp"
#include "slrc/rng.hpp"

namespace slrc {

namespace {

class Writer {
 public:
  void put(std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> out;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : bytes_(b) {}
  std::uint64_t get(int bytes) {
    if (pos_ + static_cast<std::size_t>(bytes) > bytes_.size()) throw Error(ErrorKind::Format, "truncated shard");
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= std::uint64_t{bytes_[pos_++]} << (8 * i);
    return v;
  }
  std::size_t pos() const { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t seed_fingerprint(std::uint64_t seed) { return CounterRng(seed, 0x534C5243).at(0); }

std::vector<std::uint8_t> serialize_header(const ShardHeader& h) {
  if (h.modulus.size() != h.m + 1) throw Error(ErrorKind::Format, "modulus must have m + 1 coefficients");
  Writer w;
  for (char c : {'S', 'L', 'R', 'C'}) w.put(static_cast<std::uint8_t>(c), 1);
  w.put(kShardVersion, 2);
  w.put(h.q, 2);
  w.put(h.m, 2);
  for (unsigned c : h.modulus) w.put(c, 1);
  const DssConfig& p = h.params;
  w.put(static_cast<std::uint8_t>(p.scheme), 1);
  w.put(static_cast<std::uint8_t>(p.inner), 1);
  w.put(p.q, 2);
  for (std::size_t v : {p.n, p.r, p.delta, p.alpha, p.file_size, p.k, p.p, p.l1, p.l2}) w.put(v, 4);
  w.put(h.node, 4);
  w.put(h.seed_fingerprint, 8);
  w.put(h.byte_length, 8);
  return std::move(w.out);
}

std::size_t parse_header(std::span<const std::uint8_t> bytes, ShardHeader& h) {
  Reader r(bytes);
  for (char c : {'S', 'L', 'R', 'C'})
    if (r.get(1) != static_cast<std::uint8_t>(c)) throw Error(ErrorKind::Format, "bad shard magic");
  const auto version = r.get(2);
  if (version != kShardVersion)
    throw Error(ErrorKind::Format, "unsupported shard version " + std::to_string(version),
                static_cast<std::int64_t>(version));
  h.q = static_cast<unsigned>(r.get(2));
  h.m = r.get(2);
  h.modulus.resize(h.m + 1);
  for (auto& c : h.modulus) c = static_cast<unsigned>(r.get(1));
  DssConfig& p = h.params;
  p = DssConfig{};
  const auto scheme = r.get(1);
  if (scheme > static_cast<std::uint64_t>(SchemeKind::SecureMsrLrc)) throw Error(ErrorKind::Format, "bad scheme tag");
  p.scheme = static_cast<SchemeKind>(scheme);
  const auto inner = r.get(1);
  if (inner > 1) throw Error(ErrorKind::Format, "bad inner tag");
  p.inner = static_cast<InnerKind>(inner);
  p.q = static_cast<unsigned>(r.get(2));
  for (std::size_t* v : {&p.n, &p.r, &p.delta, &p.alpha, &p.file_size, &p.k, &p.p, &p.l1, &p.l2}) *v = r.get(4);
  h.node = r.get(4);
  h.seed_fingerprint = r.get(8);
  h.byte_length = r.get(8);
  return r.pos();
}

std::vector<std::uint8_t> serialize_shard(const ShardFile& s) {
  auto out = serialize_header(s.header);
  Writer w;
  w.put(s.payload.size() * s.header.m, 4);
  out.insert(out.end(), w.out.begin(), w.out.end());
  for (const auto& e : s.payload)
    for (std::size_t i = 0; i < s.header.m; ++i) out.push_back(e[i]);
  return out;
}

ShardFile parse_shard(std::span<const std::uint8_t> bytes) {
  ShardFile s;
  std::size_t pos = parse_header(bytes, s.header);
  Reader r(bytes.subspan(pos));
  const std::size_t len = r.get(4);
  pos += 4;
  const std::size_t m = s.header.m;
  if (m == 0 || len % m != 0 || pos + len != bytes.size())
    throw Error(ErrorKind::Format, "payload length does not match the header");
  for (std::size_t off = 0; off < len; off += m) {
    ExtElem e;
    for (std::size_t i = 0; i < m; ++i) {
      const std::uint8_t d = bytes[pos + off + i];
      if (d >= s.header.q) throw Error(ErrorKind::Format, "payload digit out of range");
      e[i] = d;
    }
    s.payload.push_back(e);
  }
  return s;
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

void write_shard(const std::string& path, const ShardFile& s) { write_bytes(path, serialize_shard(s)); }

ShardFile read_shard(const std::string& path) { return parse_shard(read_bytes(path)); }

void write_points(const std::string& path, const FieldTower& tower, std::span<const ExtElem> points) {
  std::vector<std::uint8_t> out;
  for (const auto& p : points)
    for (std::size_t i = 0; i < tower.m(); ++i) out.push_back(p[i]);
  write_bytes(path, out);
}

std::vector<ExtElem> read_points(const std::string& path, const FieldTower& tower) {
  const auto bytes = read_bytes(path);
  if (bytes.size() % tower.m() != 0) throw Error(ErrorKind::Format, "point sidecar length mismatch");
  std::vector<ExtElem> out;
  for (std::size_t off = 0; off < bytes.size(); off += tower.m())
    out.push_back(tower.deserialize(std::span<const std::uint8_t>(bytes).subspan(off, tower.m())));
  return out;
}

std::size_t digits_per_byte(unsigned q) {
  std::size_t d = 0;
  for (unsigned long long span = 1; span < 256; span *= q) ++d;
  return d;
}

std::size_t byte_capacity(const FieldTower& tower, std::size_t count) {
  return count * tower.m() / digits_per_byte(tower.q());
}

std::vector<ExtElem> bytes_to_symbols(const FieldTower& tower, std::span<const std::uint8_t> bytes,
                                      std::size_t count) {
  if (bytes.size() > byte_capacity(tower, count))
    throw Error(ErrorKind::TooLarge, std::to_string(bytes.size()) + " bytes exceed the stripe capacity of " +
                                         std::to_string(byte_capacity(tower, count)),
                static_cast<std::int64_t>(bytes.size()));
  const std::size_t per = digits_per_byte(tower.q());
  std::vector<ExtElem> out(count);
  std::size_t pos = 0;
  for (std::uint8_t b : bytes) {
    unsigned v = b;
    for (std::size_t i = 0; i < per; ++i, ++pos) {
      out[pos / tower.m()][pos % tower.m()] = static_cast<Digit>(v % tower.q());
      v /= tower.q();
    }
  }
  return out;
}

std::vector<std::uint8_t> symbols_to_bytes(const FieldTower& tower, std::span<const ExtElem> symbols,
                                           std::size_t byte_length) {
  if (byte_length > byte_capacity(tower, symbols.size()))
    throw Error(ErrorKind::Format, "recorded byte length exceeds the decoded capacity");
  const std::size_t per = digits_per_byte(tower.q());
  std::vector<std::uint8_t> out(byte_length);
  for (std::size_t b = 0; b < byte_length; ++b) {
    unsigned v = 0, scale = 1;
    for (std::size_t i = 0; i < per; ++i) {
      const std::size_t pos = b * per + i;
      v += symbols[pos / tower.m()][pos % tower.m()] * scale;
      scale *= tower.q();
    }
    if (v > 255) throw Error(ErrorKind::Format, "decoded digits do not form a byte");
    out[b] = static_cast<std::uint8_t>(v);
  }
  return out;
}

}  // namespace slrc
