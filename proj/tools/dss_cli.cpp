// dss-cli: bounds, shard encode/decode/repair, eavesdropper sweeps and
// scripted simulations over the codes in libslrc.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "slrc/errors.hpp"
#include "slrc/reports.hpp"
#include "slrc/rng.hpp"
#include "slrc/shard_file.hpp"
#include "slrc/simulator.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace slrc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitDecode = 3;
constexpr int kExitSecurity = 4;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  std::optional<std::uint64_t> max_enum;
};

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::RankDeficient:
    case ErrorKind::InconsistentEvaluations:
    case ErrorKind::MissingSurvivor:
    case ErrorKind::InsufficientSurvivors:
    case ErrorKind::RepairImpossible:
    case ErrorKind::CollectFailed:
      return kExitDecode;
    default:
      return kExitValidation;
  }
}

void emit(const json& j, const Options& o) {
  if (o.format == "csv") std::cout << to_csv(j);
  else std::cout << j.dump(2) << "\n";
}

DssConfig resolve_config(const Options& o) {
  if (o.config.empty()) throw Error(ErrorKind::InvalidArgument, "--config is required");
  DssConfig c = load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.max_enum) c.max_enum = *o.max_enum;
  return c;
}

std::string shard_name(std::size_t node) {
  std::string s = std::to_string(node);
  return "node_" + std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s + ".slrc";
}

fs::path out_dir(const Options& o) {
  fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  fs::create_directories(dir);
  return dir;
}

ShardHeader header_for(const Deployment& dep, std::size_t node, std::uint64_t byte_length) {
  ShardHeader h;
  h.q = dep.code.q();
  h.m = dep.code.tower().m();
  h.modulus = dep.code.tower().modulus();
  h.params = dep.config;
  h.params.seed = 0;
  h.params.max_enum = DssConfig{}.max_enum;
  h.node = node;
  h.seed_fingerprint = seed_fingerprint(dep.config.seed);
  h.byte_length = byte_length;
  return h;
}

struct LoadedShards {
  ShardHeader header;  // of the first shard, node field meaningless
  Deployment dep;
  ShardSet shards;
};

LoadedShards load_shards(const std::vector<std::string>& paths, const Options& o) {
  if (paths.empty()) throw Error(ErrorKind::InvalidArgument, "no shard files given");
  std::vector<ShardFile> files;
  for (const auto& p : paths) files.push_back(read_shard(p));
  const ShardHeader& h0 = files.front().header;
  for (const auto& f : files) {
    ShardHeader a = f.header, b = h0;
    a.node = b.node = 0;
    if (!(a == b)) throw Error(ErrorKind::Format, "shards come from different deployments");
  }
  if (o.seed && seed_fingerprint(*o.seed) != h0.seed_fingerprint)
    throw Error(ErrorKind::Format, "seed does not match the shard fingerprint");
  LoadedShards out{h0, deploy(h0.params), {}};
  if (out.dep.code.tower().modulus() != h0.modulus || out.dep.code.q() != h0.q)
    throw Error(ErrorKind::Format, "shard field does not match the rebuilt code");
  const auto points = node_points(out.dep.code);
  out.shards.blocks.resize(out.dep.code.n);
  out.shards.alive.assign(out.dep.code.n, false);
  out.shards.group = out.dep.code.group_of;
  for (auto& f : files) {
    const std::size_t v = f.header.node;
    if (v >= out.dep.code.n) throw Error(ErrorKind::Format, "shard node index out of range");
    if (f.payload.size() != out.dep.code.alpha) throw Error(ErrorKind::Format, "shard payload is not alpha symbols");
    if (out.shards.alive[v]) throw Error(ErrorKind::Format, "duplicate shard for node " + std::to_string(v));
    out.shards.blocks[v] = TrackedBlock{std::move(f.payload), points[v]};
    out.shards.alive[v] = true;
  }
  return out;
}

int cmd_params(const Options& o) {
  emit(params_report(deploy(resolve_config(o))), o);
  return kExitOk;
}

int cmd_encode(const Options& o, const std::string& input, bool with_points) {
  const Deployment dep = deploy(resolve_config(o));
  const FieldTower& tower = dep.code.tower();
  auto bytes = read_bytes(input);
  const std::size_t cap = byte_capacity(tower, dep.payload_symbols());
  const bool truncated = bytes.size() > cap;
  if (truncated) bytes.resize(cap);
  const auto payload = bytes_to_symbols(tower, bytes, dep.payload_symbols());
  const ShardSet shards = lrc_encode(dep.code, dep.build_message(payload));
  const fs::path dir = out_dir(o);
  json written = json::array();
  for (std::size_t v = 0; v < dep.code.n; ++v) {
    const fs::path path = dir / shard_name(v);
    write_shard(path.string(), ShardFile{header_for(dep, v, bytes.size()), shards.blocks[v].values});
    if (with_points) write_points(fs::path(path).replace_extension(".pts").string(), tower, shards.blocks[v].points);
    written.push_back(path.string());
  }
  emit(json{{"shards", written}, {"bytes", bytes.size()}, {"capacity", cap}, {"truncated", truncated},
            {"warnings", dep.code.warnings}},
       o);
  return kExitOk;
}

int cmd_decode(const Options& o, const std::vector<std::string>& paths) {
  if (o.out.empty()) throw Error(ErrorKind::InvalidArgument, "--out <file> is required for decode");
  const LoadedShards l = load_shards(paths, o);
  const auto message = global_decode(l.dep.code, l.shards);
  const auto payload = l.dep.extract_payload(message);
  const auto bytes = symbols_to_bytes(l.dep.code.tower(), payload, l.header.byte_length);
  write_bytes(o.out, bytes);
  emit(json{{"output", o.out}, {"bytes", bytes.size()}, {"shards_used", paths.size()}}, o);
  return kExitOk;
}

int cmd_repair(const Options& o, std::size_t node, const std::vector<std::string>& paths, const std::string& mode) {
  LoadedShards l = load_shards(paths, o);
  if (node >= l.dep.code.n) throw Error(ErrorKind::InvalidArgument, "node out of range");
  l.shards.alive[node] = false;
  RepairMode rm = l.dep.preferred_mode();
  if (mode == "naive") rm = RepairMode::Naive;
  else if (mode == "efficient") rm = RepairMode::BandwidthEfficient;
  else if (mode != "auto") throw Error(ErrorKind::InvalidArgument, "mode must be naive, efficient or auto");
  const RepairResult res = local_repair(l.dep.code, l.shards, node, rm);
  const fs::path dir = out_dir(o);
  const fs::path path = dir / shard_name(node);
  ShardHeader h = l.header;
  h.node = node;
  write_shard(path.string(), ShardFile{h, res.block.values});
  json symbols = json::array();
  for (const auto& s : res.transcript.symbols) symbols.push_back({{"source", s.source}, {"index", s.index}});
  json transcript{{"failed", node},
                  {"mode", rm == RepairMode::Naive ? "naive" : "efficient"},
                  {"bandwidth", res.transcript.symbols.size()},
                  {"downloads", symbols}};
  std::ofstream(fs::path(path).replace_extension(".transcript.json")) << transcript.dump(2) << "\n";
  transcript["shard"] = path.string();
  emit(transcript, o);
  return kExitOk;
}

int cmd_attack(const Options& o, bool include_outside) {
  const DssConfig c = resolve_config(o);
  const Deployment dep = deploy(c);
  if (!dep.secure) throw Error(ErrorKind::InvalidArgument, "attack needs a secure scheme");
  const auto family = admissible_patterns(*dep.secure, include_outside);
  const SweepReport rep = secrecy_sweep(*dep.secure, family, c.max_enum);
  json j = sweep_report(rep);
  j["bounds"] = params_report(dep)["secrecy"];
  emit(j, o);
  return rep.max_leakage > 0 || !rep.count_mismatch.empty() ? kExitSecurity : kExitOk;
}

int cmd_verify(const Options& o) {
  const DssConfig c = resolve_config(o);
  const json j = verify_report(deploy(c), c.max_enum, c.seed);
  emit(j, o);
  return j.at("ok").get<bool>() ? kExitOk : kExitDecode;
}

int cmd_simulate(const Options& o, const std::string& script_path) {
  const DssConfig c = resolve_config(o);
  const Deployment dep = deploy(c);
  std::ifstream in(script_path);
  if (!in) throw Error(ErrorKind::Io, "cannot open script " + script_path);
  json script;
  try {
    script = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Format, std::string("script: ") + e.what());
  }
  const SimulationReport rep = simulate(dep, parse_script(script), c.seed);
  emit(simulation_report(rep), o);
  return dep.secure && rep.leakage > 0 ? kExitSecurity : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure locally repairable storage codes: bounds, shards, attacks, simulation"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON deployment config");
    sub->add_option("--seed", o.seed, "seed for pad and random payloads");
    sub->add_option("--out", o.out, "output directory (decode: output file)");
    sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--max-enum", o.max_enum, "enumeration guard");
  };

  auto* params = app.add_subcommand("params", "print the bound report for a config");
  add_common(params);

  std::string input;
  bool with_points = false;
  auto* encode = app.add_subcommand("encode", "encode a file into shards");
  add_common(encode);
  encode->add_option("file", input)->required();
  encode->add_flag("--points", with_points, "also write point sidecars");

  std::vector<std::string> shard_paths;
  auto* decode = app.add_subcommand("decode", "decode shards back into the file");
  add_common(decode);
  decode->add_option("shards", shard_paths)->required();

  std::size_t node = 0;
  std::string mode = "auto";
  auto* repair = app.add_subcommand("repair", "rebuild one node from its group");
  add_common(repair);
  repair->add_option("node", node)->required();
  repair->add_option("shards", shard_paths)->required();
  repair->add_option("--mode", mode, "naive, efficient or auto");

  bool include_outside = false;
  auto* attack = app.add_subcommand("attack", "sweep eavesdropper patterns");
  add_common(attack);
  attack->add_flag("--include-outside", include_outside, "also try E2 sets outside the guarantee");

  auto* verify = app.add_subcommand("verify", "measure d_min, MDS certificates and exact repair");
  add_common(verify);

  std::string script;
  auto* sim = app.add_subcommand("simulate", "run a failure/repair/eavesdrop script");
  add_common(sim);
  sim->add_option("script", script)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*params) return cmd_params(o);
    if (*encode) return cmd_encode(o, input, with_points);
    if (*decode) return cmd_decode(o, shard_paths);
    if (*repair) return cmd_repair(o, node, shard_paths, mode);
    if (*attack) return cmd_attack(o, include_outside);
    if (*verify) return cmd_verify(o);
    if (*sim) return cmd_simulate(o, script);
  } catch (const Error& e) {
    std::cerr << json{{"error", to_string(e.kind())}, {"message", e.what()}, {"value", e.value()}}.dump() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
