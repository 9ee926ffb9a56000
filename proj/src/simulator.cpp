#include "slrc/simulator.hpp"

#include "slrc/errors.hpp"
#include "slrc/rng.hpp"

namespace slrc {

using nlohmann::json;

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::Fail: return "fail";
    case EventKind::Repair: return "repair";
    case EventKind::Collect: return "collect";
    case EventKind::Eavesdrop: return "eavesdrop";
  }
  return "unknown";
}

namespace {

std::vector<std::size_t> node_list(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  try {
    return j.at(key).get<std::vector<std::size_t>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Format, std::string("event field '") + key + "': " + e.what());
  }
}

}  // namespace

std::vector<Event> parse_script(const json& j) {
  const json& events = j.is_object() ? j.value("events", json::array()) : j;
  if (!events.is_array()) throw Error(ErrorKind::Format, "script must be an array of events");
  std::vector<Event> out;
  for (const json& ev : events) {
    if (!ev.is_object() || !ev.contains("op")) throw Error(ErrorKind::Format, "every event needs an 'op'");
    const std::string op = ev.at("op").get<std::string>();
    Event e;
    if (op == "fail" || op == "repair") {
      e.kind = op == "fail" ? EventKind::Fail : EventKind::Repair;
      if (!ev.contains("node")) throw Error(ErrorKind::Format, op + " event needs 'node'");
      e.nodes = {ev.at("node").get<std::size_t>()};
      const std::string mode = ev.value("mode", "naive");
      if (mode == "naive") e.mode = RepairMode::Naive;
      else if (mode == "efficient") e.mode = RepairMode::BandwidthEfficient;
      else throw Error(ErrorKind::Format, "repair mode must be 'naive' or 'efficient'");
    } else if (op == "collect") {
      e.kind = EventKind::Collect;
      e.nodes = node_list(ev, "nodes");
    } else if (op == "eavesdrop") {
      e.kind = EventKind::Eavesdrop;
      e.pattern.e1 = node_list(ev, "e1");
      e.pattern.e2 = node_list(ev, "e2");
    } else {
      throw Error(ErrorKind::Format, "unknown event op '" + op + "'");
    }
    out.push_back(std::move(e));
  }
  return out;
}

json event_to_json(const Event& e) {
  json j{{"op", to_string(e.kind)}};
  switch (e.kind) {
    case EventKind::Fail: j["node"] = e.nodes.at(0); break;
    case EventKind::Repair:
      j["node"] = e.nodes.at(0);
      j["mode"] = e.mode == RepairMode::Naive ? "naive" : "efficient";
      break;
    case EventKind::Collect: j["nodes"] = e.nodes; break;
    case EventKind::Eavesdrop:
      j["e1"] = e.pattern.e1;
      j["e2"] = e.pattern.e2;
      break;
  }
  return j;
}

DssState::DssState(const Deployment& dep, std::vector<ExtElem> message)
    : dep_(dep), message_(std::move(message)), shards_(lrc_encode(dep.code, message_)), original_(shards_),
      watched_(dep.code.n, false) {
  ledger_.pad = dep.pad();
}

EventRecord DssState::apply(const Event& e) {
  EventRecord rec;
  rec.time = clock_++;
  rec.event = e;
  const std::size_t n = dep_.code.n;
  auto check_node = [&](std::size_t v) {
    if (v >= n) throw Error(ErrorKind::InvalidArgument, "node " + std::to_string(v) + " out of range", v);
  };
  auto observe_stored = [&](std::size_t v) {
    const auto& b = shards_.blocks[v];
    for (std::size_t c = 0; c < b.values.size(); ++c)
      ledger_.entries.push_back({b.values[c], b.points[c], Provenance::Stored, v, v});
  };
  switch (e.kind) {
    case EventKind::Fail: {
      const std::size_t v = e.nodes.at(0);
      check_node(v);
      if (!shards_.alive[v]) throw Error(ErrorKind::InvalidArgument, "node " + std::to_string(v) + " already failed", v);
      shards_.alive[v] = false;
      break;
    }
    case EventKind::Repair: {
      const std::size_t v = e.nodes.at(0);
      check_node(v);
      if (shards_.alive[v]) throw Error(ErrorKind::InvalidArgument, "node " + std::to_string(v) + " is not failed", v);
      RepairResult res = local_repair(dep_.code, shards_, v, e.mode);
      if (res.block.values != original_.blocks[v].values)
        throw Error(ErrorKind::RepairImpossible, "repair of node " + std::to_string(v) + " was not exact", v);
      shards_.blocks[v] = std::move(res.block);
      shards_.alive[v] = true;
      rec.bandwidth = res.transcript.symbols.size();
      if (watched_[v]) {
        for (const auto& s : res.transcript.symbols)
          ledger_.entries.push_back({s.value, s.point, Provenance::Downloaded, v, s.source});
        observe_stored(v);
      }
      break;
    }
    case EventKind::Collect: {
      ShardSet subset = shards_;
      std::fill(subset.alive.begin(), subset.alive.end(), false);
      for (std::size_t v : e.nodes) {
        check_node(v);
        if (!shards_.alive[v]) throw Error(ErrorKind::CollectFailed, "node " + std::to_string(v) + " is down", v);
        subset.alive[v] = true;
      }
      std::vector<ExtElem> got;
      try {
        got = global_decode(dep_.code, subset);
      } catch (const Error& err) {
        throw Error(ErrorKind::CollectFailed, std::string("collect failed: ") + err.what(), err.value());
      }
      if (got != message_) throw Error(ErrorKind::CollectFailed, "collected message differs from the stored one");
      rec.detail = "decoded " + std::to_string(got.size()) + " symbols";
      break;
    }
    case EventKind::Eavesdrop:
      for (std::size_t v : e.pattern.e1) {
        check_node(v);
        if (shards_.alive[v]) observe_stored(v);
      }
      for (std::size_t v : e.pattern.e2) {
        check_node(v);
        watched_[v] = true;
      }
      break;
  }
  log_.push_back(rec);
  return rec;
}

std::size_t DssState::leakage() const { return leakage_mi(dep_.code.tower(), ledger_, dep_.code.file_size); }

SimulationReport simulate(const Deployment& dep, const std::vector<Event>& script, std::uint64_t seed) {
  const auto payload = random_elements(dep.code.tower(), dep.payload_symbols(), seed, 2);
  DssState state(dep, dep.build_message(payload));
  for (const Event& e : script) state.apply(e);
  SimulationReport rep;
  rep.log = state.log();
  rep.alive = state.shards().alive;
  rep.observations = state.ledger().entries.size();
  rep.leakage = state.leakage();
  return rep;
}

}  // namespace slrc
