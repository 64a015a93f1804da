#pragma once

// Reduction to normal form under a deterministic pair-selection strategy.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "itnet/interaction.hpp"
#include "itnet/oracle.hpp"
#include "itnet/symbols.hpp"
#include "itnet/term.hpp"

namespace itnet {

enum class StrategyKind { Fifo, Lifo, Random };

struct Strategy {
  StrategyKind kind = StrategyKind::Fifo;
  std::uint64_t seed = 0;  // Random only

  static Strategy fifo() { return {StrategyKind::Fifo, 0}; }
  static Strategy lifo() { return {StrategyKind::Lifo, 0}; }
  static Strategy random(std::uint64_t seed) { return {StrategyKind::Random, seed}; }
};

const char* to_string(StrategyKind k);
std::optional<StrategyKind> parse_strategy(const std::string& s);

struct TraceEvent {
  std::uint64_t step = 0;  // 1-based
  std::string first;       // rule key, in rule orientation
  std::string second;
  std::string label;
  std::pair<AgentId, AgentId> consumed;
  std::vector<AgentId> created;

  bool operator==(const TraceEvent&) const = default;
};

TraceEvent make_event(std::uint64_t step, const RuleFiring& f, const InteractionSystem& system);

// {"step","rule":[A,B],"consumed":[a,b],"created":[...]}
nlohmann::ordered_json to_json(const TraceEvent& e);
TraceEvent trace_event_from_json(const nlohmann::json& j);

struct ReductionReport {
  std::uint64_t steps = 0;
  std::uint64_t evaluation_steps = 0;  // pairs involving tok, capp or ItC
  std::uint64_t management_steps = 0;
  std::map<std::string, std::uint64_t> per_rule;  // "A><B" -> count
  bool fuel_exhausted = false;
};

nlohmann::ordered_json to_json(const ReductionReport& r);

struct ReduceOptions {
  Strategy strategy;
  std::uint64_t fuel = kDefaultFuel;
  // Called after each firing with the updated net.
  std::function<void(const TraceEvent&, const Net&)> on_step;
  // Called after each firing with what is needed to revert it.
  std::function<void(const RuleFiring&)> on_firing;
};

// Fires active pairs until none remain or `fuel` firings have happened. A
// pair without a rule raises NoRuleError with the net left as it was
// before that firing.
ReductionReport reduce(Net& net, const InteractionSystem& system, const ReduceOptions& opts = {});

// Fires exactly the recorded pairs in order, checking that each event
// matches what the firing produces.
ReductionReport replay(Net& net, const InteractionSystem& system,
                       const std::vector<TraceEvent>& trace);

class ReplayError : public std::runtime_error {
 public:
  explicit ReplayError(const std::string& what) : std::runtime_error(what) {}
};

// Reduces ⇓T⟦t⟧, reads the value back and then reduces the arguments of
// constructor values the same way, so numerals and lists come out fully
// evaluated. `t` must carry site labels from gen_system. Fuel is shared
// across all sub-reductions; running out throws FuelExhausted.
Term reduce_deep(const Term& t, const InteractionSystem& system, const SymbolTable& symtab,
                 const ReduceOptions& opts = {});

}  // namespace itnet
