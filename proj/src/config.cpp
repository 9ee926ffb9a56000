#include "slrc/config.hpp"

#include <fstream>

#include "slrc/errors.hpp"

namespace slrc {

using nlohmann::json;

const char* to_string(SchemeKind s) {
  switch (s) {
    case SchemeKind::Lrc: return "lrc";
    case SchemeKind::Msr: return "msr";
    case SchemeKind::SecureMsr: return "secure_msr";
    case SchemeKind::SecureLrcDelta2: return "secure_lrc_delta2";
    case SchemeKind::SecureMsrLrc: return "secure_msr_lrc";
  }
  return "unknown";
}

SchemeKind parse_scheme(const std::string& name) {
  for (SchemeKind s : {SchemeKind::Lrc, SchemeKind::Msr, SchemeKind::SecureMsr, SchemeKind::SecureLrcDelta2,
                       SchemeKind::SecureMsrLrc})
    if (name == to_string(s)) return s;
  throw Error(ErrorKind::InvalidArgument, "unknown scheme '" + name + "'");
}

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Format, std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

DssConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Format, "config must be a JSON object");
  static const std::vector<std::string> known = {"scheme", "n",  "r",  "delta", "alpha", "file_size", "q",
                                                 "inner",  "k",  "p",  "l1",    "l2",    "seed",      "max_enum"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw Error(ErrorKind::Format, "unknown config field '" + key + "'");
  DssConfig c;
  std::string scheme = "lrc", inner = "mds";
  read(j, "scheme", scheme);
  read(j, "inner", inner);
  c.scheme = parse_scheme(scheme);
  if (inner == "mds") c.inner = InnerKind::Mds;
  else if (inner == "msr") c.inner = InnerKind::Msr;
  else throw Error(ErrorKind::InvalidArgument, "inner must be 'mds' or 'msr'");
  read(j, "n", c.n);
  read(j, "r", c.r);
  read(j, "delta", c.delta);
  read(j, "alpha", c.alpha);
  read(j, "file_size", c.file_size);
  read(j, "q", c.q);
  read(j, "k", c.k);
  read(j, "p", c.p);
  read(j, "l1", c.l1);
  read(j, "l2", c.l2);
  read(j, "seed", c.seed);
  read(j, "max_enum", c.max_enum);
  return c;
}

json config_to_json(const DssConfig& c) {
  return json{{"scheme", to_string(c.scheme)},
              {"n", c.n},
              {"r", c.r},
              {"delta", c.delta},
              {"alpha", c.alpha},
              {"file_size", c.file_size},
              {"q", c.q},
              {"inner", c.inner == InnerKind::Msr ? "msr" : "mds"},
              {"k", c.k},
              {"p", c.p},
              {"l1", c.l1},
              {"l2", c.l2},
              {"seed", c.seed},
              {"max_enum", c.max_enum}};
}

DssConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config " + path);
  try {
    return config_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Format, "config " + path + ": " + e.what());
  }
}

RepairMode Deployment::preferred_mode() const {
  if (secure) return secure->repair_mode;
  return code.inner_kind == InnerKind::Msr ? RepairMode::BandwidthEfficient : RepairMode::Naive;
}

std::vector<ExtElem> Deployment::build_message(std::span<const ExtElem> payload) const {
  if (payload.size() != payload_symbols())
    throw Error(ErrorKind::LengthMismatch, "payload must have " + std::to_string(payload_symbols()) + " symbols");
  if (!secure) return {payload.begin(), payload.end()};
  return secrecy_precode(code.tower(), payload, secure->pad, secure->seed);
}

std::vector<ExtElem> Deployment::extract_payload(std::span<const ExtElem> message) const {
  if (message.size() != code.file_size) throw Error(ErrorKind::LengthMismatch, "message length mismatch");
  return {message.begin() + static_cast<std::ptrdiff_t>(pad()), message.end()};
}

Deployment deploy(const DssConfig& c) {
  Deployment d;
  d.config = c;
  switch (c.scheme) {
    case SchemeKind::Lrc:
      d.code = build_lrc(c.n, c.r, c.delta, c.alpha, c.file_size, c.q, c.inner);
      break;
    case SchemeKind::Msr: {
      if (c.k < 2 || c.p < 2) throw Error(ErrorKind::InvalidArgument, "msr needs k >= 2 and p >= 2");
      const ZigzagSpec zz = make_zigzag(c.k, c.p, c.q);
      d.code = single_group_spec(zz.code, c.file_size ? c.file_size : c.k * zz.alpha(), InnerKind::Msr);
      if (zz.code->q() != c.q) d.code.warnings.push_back("base field raised to q=" + std::to_string(zz.code->q()));
      break;
    }
    case SchemeKind::SecureMsr:
      d.secure = make_secure_msr(c.k, c.p, c.l1, c.l2, c.q, c.seed);
      break;
    case SchemeKind::SecureLrcDelta2:
      if (c.delta != 2) throw Error(ErrorKind::InvalidArgument, "secure_lrc_delta2 needs delta = 2");
      d.secure = make_secure_lrc_delta2(c.n, c.r, c.alpha, c.file_size, c.l1, c.l2, c.q, c.seed);
      break;
    case SchemeKind::SecureMsrLrc:
      d.secure = make_secure_msr_lrc(c.n, c.r, c.delta, c.alpha, c.file_size, c.l1, c.l2, c.q, c.seed);
      break;
  }
  if (d.secure) d.code = d.secure->code;
  return d;
}

}  // namespace slrc
