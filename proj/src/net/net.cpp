#include "itnet/net.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "itnet/interaction.hpp"

namespace itnet {

AgentId Net::add_agent(SymbolId symbol, std::uint32_t arity) {
  AgentId id = next_id();
  agents_.push_back({symbol, true, std::vector<Port>(arity + 1, Port::none())});
  ++live_;
  return id;
}

std::uint32_t Net::add_slot(std::string name) {
  slots_.push_back(Port::none());
  slot_names_.push_back(std::move(name));
  return static_cast<std::uint32_t>(slots_.size() - 1);
}

Port& Net::peer_ref(Port p) {
  if (p.free) return slots_.at(p.node);
  return agents_.at(p.node).peers.at(p.index);
}

void Net::link(Port a, Port b) {
  peer_ref(a) = b;
  peer_ref(b) = a;
}

void Net::set_peer_raw(Port a, Port b) { peer_ref(a) = b; }

Port Net::peer(Port p) const {
  if (p.free) return slots_.at(p.node);
  return agents_.at(p.node).peers.at(p.index);
}

void Net::erase_agent(AgentId a) {
  auto& ag = agents_.at(a);
  if (!ag.alive) throw std::logic_error("erase_agent: agent already dead");
  ag.alive = false;
  --live_;
}

void Net::restore_agent(AgentId a, SymbolId symbol, std::vector<Port> peers) {
  auto& ag = agents_.at(a);
  if (ag.alive) throw std::logic_error("restore_agent: agent is alive");
  ag = {symbol, true, std::move(peers)};
  ++live_;
}

void Net::truncate(AgentId next) {
  while (agents_.size() > next) {
    if (agents_.back().alive) --live_;
    agents_.pop_back();
  }
}

std::vector<AgentId> Net::agents() const {
  std::vector<AgentId> out;
  out.reserve(live_);
  for (AgentId a = 0; a < agents_.size(); ++a)
    if (agents_[a].alive) out.push_back(a);
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string describe(Port p) {
  if (p.free) return "interface slot " + std::to_string(p.node);
  return "agent " + std::to_string(p.node) + " port " + std::to_string(p.index);
}

bool resolves(const Net& net, Port p) {
  if (p.is_none()) return false;
  if (p.free) return p.node < net.slot_count();
  return net.alive(p.node) && p.index <= net.arity(p.node);
}

}  // namespace

std::vector<Defect> validate(const Net& net, const InteractionSystem* system) {
  std::vector<Defect> defects;
  auto check = [&](Port p) {
    Port q = net.peer(p);
    if (q.is_none()) {
      defects.push_back({"port unwired: " + describe(p)});
    } else if (!resolves(net, q)) {
      defects.push_back({"dangling reference from " + describe(p) + " to " + describe(q)});
    } else if (q == p) {
      defects.push_back({"port wired to itself: " + describe(p)});
    } else if (net.peer(q) != p) {
      defects.push_back({"port doubly wired: " + describe(q)});
    }
  };
  for (AgentId a : net.agents()) {
    if (system) {
      if (net.symbol(a) >= system->symbols().size()) {
        defects.push_back({"unknown symbol on agent " + std::to_string(a)});
      } else if (system->symbol(net.symbol(a)).arity != net.arity(a)) {
        defects.push_back({"arity mismatch on agent " + std::to_string(a)});
      }
    }
    for (std::uint32_t i = 0; i <= net.arity(a); ++i) check(Port::agent(a, i));
  }
  for (std::uint32_t s = 0; s < net.slot_count(); ++s) check(Port::slot(s));
  return defects;
}

std::vector<ActivePair> active_pairs(const Net& net) {
  std::vector<ActivePair> out;
  for (AgentId a : net.agents()) {
    Port q = net.peer(Port::agent(a, 0));
    if (q.is_principal() && a < q.node) out.push_back({a, q.node});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

class Matcher {
 public:
  Matcher(const Net& a, const Net& b) : a_(a), b_(b) {}

  bool run_from_interface() {
    for (std::uint32_t s = 0; s < a_.slot_count(); ++s)
      if (!match(a_.peer(Port::slot(s)), b_.peer(Port::slot(s)))) return false;
    return drain();
  }

  // Starts a traversal at a given pair of agents; used for components.
  bool run_from(AgentId x, AgentId y) {
    if (!bind(x, y)) return false;
    return drain();
  }

  bool visited_a(AgentId x) const { return fwd_.count(x) != 0; }
  bool visited_b(AgentId y) const { return bwd_.count(y) != 0; }

 private:
  bool bind(AgentId x, AgentId y) {
    auto fx = fwd_.find(x);
    auto by = bwd_.find(y);
    if (fx != fwd_.end() || by != bwd_.end())
      return fx != fwd_.end() && by != bwd_.end() && fx->second == y && by->second == x;
    if (a_.symbol(x) != b_.symbol(y) || a_.arity(x) != b_.arity(y)) return false;
    fwd_.emplace(x, y);
    bwd_.emplace(y, x);
    queue_.emplace_back(x, y);
    return true;
  }

  bool match(Port p, Port q) {
    if (p.free != q.free || p.is_none() || q.is_none()) return false;
    if (p.free) return p.node == q.node;
    if (p.index != q.index) return false;
    return bind(p.node, q.node);
  }

  bool drain() {
    while (!queue_.empty()) {
      auto [x, y] = queue_.front();
      queue_.pop_front();
      for (std::uint32_t i = 0; i <= a_.arity(x); ++i)
        if (!match(a_.peer(Port::agent(x, i)), b_.peer(Port::agent(y, i)))) return false;
    }
    return true;
  }

  const Net& a_;
  const Net& b_;
  std::unordered_map<AgentId, AgentId> fwd_;
  std::unordered_map<AgentId, AgentId> bwd_;
  std::deque<std::pair<AgentId, AgentId>> queue_;
};

using Encoding = std::vector<std::uint64_t>;

// Breadth-first encoding of the component containing `start`, numbering
// agents in discovery order. Equal encodings from some pair of starts means
// isomorphic components.
Encoding encode_from(const Net& net, AgentId start) {
  std::unordered_map<AgentId, std::uint64_t> local;
  std::deque<AgentId> queue{start};
  local.emplace(start, 0);
  Encoding out;
  while (!queue.empty()) {
    AgentId x = queue.front();
    queue.pop_front();
    out.push_back(net.symbol(x));
    for (std::uint32_t i = 0; i <= net.arity(x); ++i) {
      Port q = net.peer(Port::agent(x, i));
      if (q.free || q.is_none()) {
        out.push_back(~0ULL);
        continue;
      }
      auto [it, inserted] = local.emplace(q.node, local.size());
      if (inserted) queue.push_back(q.node);
      out.push_back(it->second * 64 + q.index);
    }
  }
  return out;
}

std::vector<AgentId> component(const Net& net, AgentId start) {
  std::vector<AgentId> out{start};
  std::unordered_map<AgentId, bool> seen{{start, true}};
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (std::uint32_t i = 0; i <= net.arity(out[k]); ++i) {
      Port q = net.peer(Port::agent(out[k], i));
      if (q.free || q.is_none()) continue;
      if (seen.emplace(q.node, true).second) out.push_back(q.node);
    }
  }
  return out;
}

std::vector<Encoding> leftover_components(const Net& net, const std::vector<AgentId>& unvisited) {
  std::vector<Encoding> out;
  std::unordered_map<AgentId, bool> done;
  for (AgentId a : unvisited) {
    if (done.count(a)) continue;
    Encoding best;
    bool first = true;
    for (AgentId m : component(net, a)) {
      done.emplace(m, true);
      Encoding e = encode_from(net, m);
      if (first || e < best) best = std::move(e);
      first = false;
    }
    out.push_back(std::move(best));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

IsoReport net_iso_report(const Net& a, const Net& b) {
  IsoReport report;
  if (a.slot_count() != b.slot_count() || a.agent_count() != b.agent_count()) return report;
  Matcher m(a, b);
  if (!m.run_from_interface()) return report;
  std::vector<AgentId> rest_a;
  std::vector<AgentId> rest_b;
  for (AgentId x : a.agents())
    if (!m.visited_a(x)) rest_a.push_back(x);
  for (AgentId y : b.agents())
    if (!m.visited_b(y)) rest_b.push_back(y);
  if (rest_a.size() != rest_b.size()) return report;
  if (!rest_a.empty()) {
    report.disconnected_components = true;
    if (leftover_components(a, rest_a) != leftover_components(b, rest_b)) return report;
  }
  report.isomorphic = true;
  return report;
}

bool net_iso(const Net& a, const Net& b) { return net_iso_report(a, b).isomorphic; }

}  // namespace itnet
