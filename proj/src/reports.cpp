#include "slrc/reports.hpp"

#include <set>
#include <sstream>

#include "slrc/errors.hpp"
#include "slrc/flow.hpp"
#include "slrc/rng.hpp"

namespace slrc {

using nlohmann::json;

json rational_json(const Rational& r) {
  if (r.is_integer()) return r.num();
  return r.to_string();
}

namespace {

bool single_group(const Deployment& dep) {
  return dep.config.scheme == SchemeKind::Msr || dep.config.scheme == SchemeKind::SecureMsr;
}

}  // namespace

BoundParams bound_params(const Deployment& dep) {
  const LrcSpec& c = dep.code;
  BoundParams p;
  p.n = c.n;
  p.r = c.r;
  p.delta = c.delta;
  p.alpha = Rational(static_cast<std::int64_t>(c.alpha));
  if (c.inner_kind == InnerKind::Msr) {
    p.d = c.repair_degree();
    p.beta = p.alpha / Rational(static_cast<std::int64_t>(c.delta - 1));
  } else {
    p.d = c.r;
    p.beta = p.alpha;
  }
  p.k = single_group(dep) ? c.r : dep.config.k;
  const long long dmin = dmin_bound(c.n, c.file_size, c.r, c.delta, c.alpha);
  p.dmin = dmin > 0 ? static_cast<std::size_t>(dmin) : 0;
  return p;
}

BoundReport bound_report(const Deployment& dep) {
  BoundReport rep;
  rep.params = bound_params(dep);
  rep.l1 = dep.config.l1;
  rep.l2 = dep.config.l2;
  for (SecrecyVariant v : all_secrecy_variants()) {
    try {
      rep.entries.push_back(secrecy_bound(rep.params, rep.l1, rep.l2, v));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidVariantParams) throw;
      rep.warnings.push_back(e.what());
    }
  }
  return rep;
}

json params_report(const Deployment& dep) {
  const LrcSpec& c = dep.code;
  const BoundReport b = bound_report(dep);
  json j;
  j["scheme"] = to_string(dep.config.scheme);
  j["config"] = config_to_json(dep.config);
  j["code"] = {{"n", c.n},     {"r", c.r},     {"delta", c.delta}, {"alpha", c.alpha},
               {"file_size", c.file_size},     {"groups", c.g},    {"outer_length", c.N},
               {"q", c.q()},   {"m", c.tower().m()},
               {"inner", c.inner_kind == InnerKind::Msr ? "msr" : "mds"},
               {"repair_degree", b.params.d}, {"beta", rational_json(b.params.beta)}};
  j["dmin_bound"] = dmin_bound(c.n, c.file_size, c.r, c.delta, c.alpha);
  if (b.params.dmin >= 1 && b.params.d >= c.r && b.params.d + 2 <= c.r + c.delta) {
    const FileSizeBound fs = lrc_file_size_bound(c.n, c.r, c.delta, b.params.alpha, b.params.beta, b.params.d,
                                                 b.params.dmin);
    j["file_size_bound"] = {{"general", rational_json(fs.general)}, {"mu", fs.split.mu}, {"h", fs.split.h}};
    if (fs.reduced) j["file_size_bound"]["reduced"] = rational_json(*fs.reduced);
    // the canonical cuts assume every group has r + delta - 1 nodes
    if (!single_group(dep) && c.lrc_case == LrcCase::Divides)
      j["flow_mincut"] = rational_json(
          canonical_mincut(c.n, c.r, c.delta, b.params.alpha, b.params.beta, b.params.d, b.params.dmin));
  }
  if (single_group(dep)) {
    j["regenerating_bound"] = rational_json(regen_tradeoff(c.r, b.params.d, b.params.alpha, b.params.beta));
    const OperatingPoint msr = msr_point(Rational(static_cast<std::int64_t>(c.file_size)), c.r, b.params.d);
    j["msr_point"] = {{"alpha", rational_json(msr.alpha)}, {"beta", rational_json(msr.beta)}};
  }
  json sec = json::array();
  for (const BoundEntry& e : b.entries) {
    json s{{"name", e.name}, {"formula", e.formula}, {"value", rational_json(e.value)}, {"capacity", e.capacity}};
    if (!e.note.empty()) s["note"] = e.note;
    sec.push_back(s);
  }
  j["secrecy"] = {{"l1", b.l1}, {"l2", b.l2}, {"bounds", sec}, {"skipped", b.warnings}};
  if (dep.secure) j["secure"] = {{"pad", dep.secure->pad}, {"secret", dep.secure->secret}};
  j["warnings"] = c.warnings;
  return j;
}

json sweep_report(const SweepReport& rep) {
  json j;
  j["scheme"] = to_string(rep.scheme);
  j["pad"] = rep.pad;
  j["secret"] = rep.secret;
  j["seed"] = rep.seed;
  j["patterns"] = rep.results.size();
  j["max_leakage"] = rep.max_leakage;
  j["violations"] = rep.violations.size();
  j["count_mismatches"] = rep.count_mismatch.size();
  j["pad_conditions"] = rep.pad_conditions;
  json rows = json::array();
  for (const PatternResult& r : rep.results) {
    json row{{"e1", r.pattern.e1},
             {"e2", r.pattern.e2},
             {"leakage", r.leakage},
             {"point_rank", r.point_rank},
             {"outside_guarantee", r.outside_guarantee}};
    if (r.expected_rank) {
      row["expected_rank"] = *r.expected_rank;
      row["expected_is_upper_bound"] = r.rank_is_upper_bound;
    }
    if (r.pad_recovered) row["pad_recovered"] = *r.pad_recovered;
    rows.push_back(row);
  }
  j["results"] = rows;
  return j;
}

json verify_report(const Deployment& dep, std::uint64_t max_enum, std::uint64_t seed) {
  const LrcSpec& c = dep.code;
  json j;
  const long long bound = dmin_bound(c.n, c.file_size, c.r, c.delta, c.alpha);
  const std::size_t measured = measure_dmin(c, max_enum);
  j["dmin"] = {{"measured", measured}, {"bound", bound}, {"ok", static_cast<long long>(measured) <= bound}};

  json certs = json::array();
  bool mds_ok = true;
  std::set<const ArrayCode*> seen;
  for (const LocalGroup& g : c.groups) {
    if (!seen.insert(g.inner.get()).second) continue;
    const auto witness = mds_witness(*g.inner);
    mds_ok &= !witness.has_value();
    json cert{{"n", g.inner->n_blocks()}, {"k", g.inner->k_blocks()}, {"alpha", g.inner->alpha()}, {"mds", !witness}};
    if (witness) cert["witness"] = *witness;
    certs.push_back(cert);
  }
  j["mds_certificates"] = certs;

  const auto payload = random_elements(c.tower(), dep.payload_symbols(), seed, 3);
  ShardSet shards = lrc_encode(c, dep.build_message(payload));
  json repairs = json::array();
  bool repair_ok = true;
  std::vector<RepairMode> modes{RepairMode::Naive};
  if (c.inner_kind == InnerKind::Msr) modes.push_back(RepairMode::BandwidthEfficient);
  for (RepairMode mode : modes)
    for (std::size_t v = 0; v < c.n; ++v) {
      ShardSet live = shards;
      live.alive[v] = false;
      json row{{"node", v}, {"mode", mode == RepairMode::Naive ? "naive" : "efficient"}};
      try {
        RepairResult res = local_repair(c, live, v, mode);
        const bool exact = res.block.values == shards.blocks[v].values;
        row["exact"] = exact;
        row["bandwidth"] = res.transcript.symbols.size();
        repair_ok &= exact;
      } catch (const Error& e) {
        row["exact"] = false;
        row["error"] = to_string(e.kind());
        repair_ok = false;
      }
      repairs.push_back(row);
    }
  j["repairs"] = repairs;
  j["ok"] = static_cast<long long>(measured) <= bound && mds_ok && repair_ok;
  return j;
}

json simulation_report(const SimulationReport& rep) {
  json log = json::array();
  for (const EventRecord& r : rep.log) {
    json row = event_to_json(r.event);
    row["time"] = r.time;
    if (r.event.kind == EventKind::Repair) row["bandwidth"] = r.bandwidth;
    if (!r.detail.empty()) row["detail"] = r.detail;
    log.push_back(row);
  }
  std::vector<int> alive(rep.alive.begin(), rep.alive.end());
  return json{{"events", log}, {"alive", alive}, {"observations", rep.observations}, {"leakage", rep.leakage}};
}

namespace {

void flatten(const json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), out);
  } else {
    std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    if (v.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : v) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      v = quoted + "\"";
    }
    out << path << "," << v << "\n";
  }
}

}  // namespace

std::string to_csv(const json& j) {
  std::ostringstream out;
  out << "key,value\n";
  flatten(j, "", out);
  return out.str();
}

}  // namespace slrc
