#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "slrc/config.hpp"
#include "slrc/secrecy.hpp"

namespace slrc {

enum class EventKind { Fail, Repair, Collect, Eavesdrop };
const char* to_string(EventKind k);

struct Event {
  EventKind kind = EventKind::Fail;
  std::vector<std::size_t> nodes;  // Fail/Repair: one node; Collect: the set
  RepairMode mode = RepairMode::Naive;
  EavesdropperPattern pattern;     // Eavesdrop only
};

struct EventRecord {
  std::uint64_t time = 0;
  Event event;
  std::size_t bandwidth = 0;  // symbols downloaded by a repair
  std::string detail;
};

std::vector<Event> parse_script(const nlohmann::json& j);
nlohmann::json event_to_json(const Event& e);

// One logical timeline over a deployed code. Every repair must reproduce
// the stored content exactly; every collect must decode the message.
class DssState {
 public:
  DssState(const Deployment& dep, std::vector<ExtElem> message);

  EventRecord apply(const Event& e);

  const ShardSet& shards() const { return shards_; }
  const std::vector<EventRecord>& log() const { return log_; }
  std::uint64_t clock() const { return clock_; }
  const ObservationLedger& ledger() const { return ledger_; }
  // Leakage of the accumulated observations, with the deployment's pad.
  std::size_t leakage() const;

 private:
  const Deployment& dep_;
  std::vector<ExtElem> message_;
  ShardSet shards_;
  ShardSet original_;
  std::vector<bool> watched_;
  ObservationLedger ledger_;
  std::vector<EventRecord> log_;
  std::uint64_t clock_ = 0;
};

struct SimulationReport {
  std::vector<EventRecord> log;
  std::vector<bool> alive;
  std::size_t observations = 0;
  std::size_t leakage = 0;
};

SimulationReport simulate(const Deployment& dep, const std::vector<Event>& script, std::uint64_t seed);

}  // namespace slrc
