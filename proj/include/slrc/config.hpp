#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "slrc/lrc.hpp"
#include "slrc/secrecy.hpp"

namespace slrc {

enum class SchemeKind { Lrc, Msr, SecureMsr, SecureLrcDelta2, SecureMsrLrc };
const char* to_string(SchemeKind s);
SchemeKind parse_scheme(const std::string& name);

// Deployment description shared by the CLI, shard headers and reports.
// Unused fields stay zero for a given scheme.
struct DssConfig {
  SchemeKind scheme = SchemeKind::Lrc;
  std::size_t n = 0, r = 0, delta = 2, alpha = 1, file_size = 0;
  unsigned q = 2;
  InnerKind inner = InnerKind::Mds;
  std::size_t k = 0, p = 0;    // zigzag shape for msr / secure_msr
  std::size_t l1 = 0, l2 = 0;  // eavesdropper class for secure schemes
  std::uint64_t seed = 0;
  std::uint64_t max_enum = 1'000'000;

  friend bool operator==(const DssConfig&, const DssConfig&) = default;
};

DssConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const DssConfig& c);
DssConfig load_config(const std::string& path);

// A built code plus, for the secure schemes, its pad layout.
struct Deployment {
  DssConfig config;
  LrcSpec code;
  std::optional<SecureSpec> secure;

  std::size_t pad() const { return secure ? secure->pad : 0; }
  // Symbols of user data carried per stripe.
  std::size_t payload_symbols() const { return code.file_size - pad(); }
  RepairMode preferred_mode() const;

  std::vector<ExtElem> build_message(std::span<const ExtElem> payload) const;
  std::vector<ExtElem> extract_payload(std::span<const ExtElem> message) const;
};

Deployment deploy(const DssConfig& c);

}  // namespace slrc
