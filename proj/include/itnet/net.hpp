#pragma once

// Port graphs of agents.
//
// Every agent has a principal port (index 0) and `arity` auxiliary ports
// (1..arity). A net also has an ordered interface of free ports ("slots").
// Wires are undirected and stored as symmetric peer links: each agent port
// and each slot records the single port on the other end of its wire.

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace itnet {

using AgentId = std::uint32_t;
using SymbolId = std::uint32_t;

struct Port {
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  bool free = false;          // interface slot rather than agent port
  std::uint32_t node = kNone;  // agent id, or slot index
  std::uint32_t index = 0;     // port index on the agent; 0 for slots

  static Port agent(AgentId a, std::uint32_t i) { return {false, a, i}; }
  static Port slot(std::uint32_t s) { return {true, s, 0}; }
  static Port none() { return {}; }

  bool is_none() const { return node == kNone; }
  bool is_principal() const { return !free && !is_none() && index == 0; }

  auto operator<=>(const Port&) const = default;
};

class Net {
 public:
  AgentId add_agent(SymbolId symbol, std::uint32_t arity);
  std::uint32_t add_slot(std::string name);

  // Connects two ports with a wire, overwriting their previous peers.
  void link(Port a, Port b);
  // Overwrites only the peer recorded at `a`. Used by deserialization and
  // by tests that need malformed nets.
  void set_peer_raw(Port a, Port b);
  Port peer(Port p) const;

  bool alive(AgentId a) const { return a < agents_.size() && agents_[a].alive; }
  SymbolId symbol(AgentId a) const { return agents_.at(a).symbol; }
  std::uint32_t arity(AgentId a) const {
    return static_cast<std::uint32_t>(agents_.at(a).peers.size() - 1);
  }

  // Marks the agent dead without touching its neighbours.
  void erase_agent(AgentId a);
  // Undo support: reinstates a previously erased agent with the given peers,
  // or drops agents allocated at the end of the id range.
  void restore_agent(AgentId a, SymbolId symbol, std::vector<Port> peers);
  void truncate(AgentId next_id);

  // Live agents in ascending id order.
  std::vector<AgentId> agents() const;
  std::size_t agent_count() const { return live_; }
  AgentId next_id() const { return static_cast<AgentId>(agents_.size()); }

  std::size_t slot_count() const { return slots_.size(); }
  const std::string& slot_name(std::uint32_t s) const { return slot_names_.at(s); }

 private:
  struct Agent {
    SymbolId symbol = 0;
    bool alive = false;
    std::vector<Port> peers;
  };
  Port& peer_ref(Port p);

  std::vector<Agent> agents_;
  std::vector<Port> slots_;
  std::vector<std::string> slot_names_;
  std::size_t live_ = 0;
};

// Defects found by validate(). `message` names the offending port.
struct Defect {
  std::string message;
};

class InteractionSystem;

// Empty result means the net is well formed. With a system, symbol ids and
// arities are checked against its declarations too.
std::vector<Defect> validate(const Net& net, const InteractionSystem* system = nullptr);

struct ActivePair {
  AgentId first = 0;   // lower id
  AgentId second = 0;  // higher id
  auto operator<=>(const ActivePair&) const = default;
};

// Wires joining two principal ports, ordered by their lower agent id.
std::vector<ActivePair> active_pairs(const Net& net);

// Rooted isomorphism: parallel traversal from corresponding interface slots
// must match symbols, port indices and wiring bijectively. Components not
// reachable from the interface are compared by canonical encoding.
struct IsoReport {
  bool isomorphic = false;
  bool disconnected_components = false;
};
IsoReport net_iso_report(const Net& a, const Net& b);
bool net_iso(const Net& a, const Net& b);

}  // namespace itnet
