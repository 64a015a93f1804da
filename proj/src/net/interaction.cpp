#include "itnet/interaction.hpp"

#include <algorithm>
#include <array>

namespace itnet {

const char* to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::Token:
      return "token";
    case SymbolKind::SyntacticApp:
      return "syntactic-app";
    case SymbolKind::ComputationApp:
      return "computation-app";
    case SymbolKind::Lambda:
      return "lambda";
    case SymbolKind::Constructor:
      return "constructor";
    case SymbolKind::Copy:
      return "copy";
    case SymbolKind::Duplicator:
      return "duplicator";
    case SymbolKind::Eraser:
      return "eraser";
    case SymbolKind::IteratorSyntactic:
      return "iterator-syntactic";
    case SymbolKind::IteratorComputation:
      return "iterator-computation";
  }
  return "?";
}

bool is_evaluation_kind(SymbolKind k) {
  return k == SymbolKind::Token || k == SymbolKind::ComputationApp ||
         k == SymbolKind::IteratorComputation;
}

NoRuleError::NoRuleError(std::string first, std::string second)
    : std::runtime_error("no rule for pair (" + first + ", " + second + ")"),
      first_(std::move(first)),
      second_(std::move(second)) {}

SymbolId InteractionSystem::add_symbol(std::string name, std::uint32_t arity, SymbolKind kind) {
  if (by_name_.count(name)) throw std::logic_error("duplicate symbol " + name);
  SymbolId id = static_cast<SymbolId>(symbols_.size());
  by_name_.emplace(name, id);
  symbols_.push_back({id, std::move(name), arity, kind});
  return id;
}

std::optional<SymbolId> InteractionSystem::find_symbol(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

void InteractionSystem::add_rule(RuleTemplate rule) {
  if (find_rule(rule.first, rule.second))
    throw std::logic_error("duplicate rule for (" + symbol(rule.first).name + ", " +
                           symbol(rule.second).name + ")");
  if (rule.replacement.slot_count() != symbol(rule.first).arity + symbol(rule.second).arity)
    throw std::logic_error("hole count mismatch in rule for (" + symbol(rule.first).name + ", " +
                           symbol(rule.second).name + ")");
  auto key = std::make_pair(rule.first, rule.second);
  rules_.emplace(key, std::move(rule));
}

const RuleTemplate* InteractionSystem::find_rule(SymbolId a, SymbolId b) const {
  auto it = rules_.find({a, b});
  if (it != rules_.end()) return &it->second;
  it = rules_.find({b, a});
  if (it != rules_.end()) return &it->second;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Rewriting

namespace {

// Each hole of the template joins an outer wire (what the consumed agent's
// aux port was connected to) with an inner wire (what the replacement
// connects to the hole). Either end may lead to another hole when the
// consumed agents were wired to each other or the replacement wires two
// holes together; those chains are followed until real ports are found.
struct HoleEnd {
  bool real = false;
  Port port;            // when real
  std::uint32_t hole = 0;  // otherwise
};

}  // namespace

RuleFiring apply_rule(Net& net, const ActivePair& pair, const InteractionSystem& system) {
  if (!net.alive(pair.first) || !net.alive(pair.second) ||
      net.peer(Port::agent(pair.first, 0)) != Port::agent(pair.second, 0))
    throw std::logic_error("apply_rule: pair is not active");

  SymbolId sa = net.symbol(pair.first);
  SymbolId sb = net.symbol(pair.second);
  const RuleTemplate* rule = system.find_rule(sa, sb);
  if (!rule) throw NoRuleError(system.symbol(sa).name, system.symbol(sb).name);

  AgentId first = pair.first;
  AgentId second = pair.second;
  if (rule->first != sa || rule->second != sb) std::swap(first, second);

  RuleFiring firing;
  firing.rule = rule;
  firing.consumed = {first, second};
  firing.previous_next_id = net.next_id();

  const std::uint32_t arity_first = net.arity(first);
  const std::uint32_t holes = arity_first + net.arity(second);

  auto snapshot = [&](AgentId a) {
    RuleFiring::Removed r{a, net.symbol(a), {}};
    for (std::uint32_t i = 0; i <= net.arity(a); ++i) r.peers.push_back(net.peer(Port::agent(a, i)));
    return r;
  };
  firing.removed_first = snapshot(first);
  firing.removed_second = snapshot(second);

  auto hole_of = [&](Port p) -> std::optional<std::uint32_t> {
    if (p.free || p.index == 0) return std::nullopt;
    if (p.node == first) return p.index - 1;
    if (p.node == second) return arity_first + p.index - 1;
    return std::nullopt;
  };

  std::vector<HoleEnd> outer(holes);
  for (std::uint32_t h = 0; h < holes; ++h) {
    Port p = h < arity_first ? firing.removed_first.peers[h + 1]
                             : firing.removed_second.peers[h - arity_first + 1];
    if (auto other = hole_of(p))
      outer[h] = {false, {}, *other};
    else
      outer[h] = {true, p, 0};
  }

  net.erase_agent(first);
  net.erase_agent(second);

  const Net& tmpl = rule->replacement;
  std::vector<AgentId> tmpl_agents = tmpl.agents();
  std::vector<AgentId> fresh(tmpl.next_id(), 0);
  for (AgentId t : tmpl_agents) {
    fresh[t] = net.add_agent(tmpl.symbol(t), tmpl.arity(t));
    firing.created.push_back(fresh[t]);
  }
  auto map_port = [&](Port p) { return Port::agent(fresh[p.node], p.index); };

  for (AgentId t : tmpl_agents) {
    for (std::uint32_t i = 0; i <= tmpl.arity(t); ++i) {
      Port here = Port::agent(t, i);
      Port there = tmpl.peer(here);
      if (!there.free && here < there) net.link(map_port(here), map_port(there));
    }
  }

  std::vector<HoleEnd> inner(holes);
  for (std::uint32_t h = 0; h < holes; ++h) {
    Port p = tmpl.peer(Port::slot(h));
    if (p.free)
      inner[h] = {false, {}, p.node};
    else
      inner[h] = {true, map_port(p), 0};
  }

  // visited[h][0] = outer side, visited[h][1] = inner side
  std::vector<std::array<bool, 2>> visited(holes, {false, false});
  std::vector<Port> touched;
  auto end_at = [&](std::uint32_t h, int side) -> const HoleEnd& {
    return side == 0 ? outer[h] : inner[h];
  };
  for (std::uint32_t h0 = 0; h0 < holes; ++h0) {
    for (int s0 = 0; s0 < 2; ++s0) {
      if (visited[h0][s0] || !end_at(h0, s0).real) continue;
      Port start = end_at(h0, s0).port;
      std::uint32_t h = h0;
      int side = s0;
      visited[h][side] = true;
      while (true) {
        int other = 1 - side;
        visited[h][other] = true;
        const HoleEnd& e = end_at(h, other);
        if (e.real) {
          net.link(start, e.port);
          touched.push_back(start);
          touched.push_back(e.port);
          break;
        }
        h = e.hole;
        side = other;
        visited[h][side] = true;
      }
    }
  }

  auto note_pair = [&](Port p) {
    if (!p.is_principal()) return;
    Port q = net.peer(p);
    if (!q.is_principal()) return;
    firing.new_pairs.push_back({std::min(p.node, q.node), std::max(p.node, q.node)});
  };
  for (AgentId c : firing.created) note_pair(Port::agent(c, 0));
  for (Port p : touched) note_pair(p);
  std::sort(firing.new_pairs.begin(), firing.new_pairs.end());
  firing.new_pairs.erase(std::unique(firing.new_pairs.begin(), firing.new_pairs.end()),
                         firing.new_pairs.end());
  return firing;
}

void revert(Net& net, const RuleFiring& firing) {
  net.truncate(firing.previous_next_id);
  for (const auto* r : {&firing.removed_first, &firing.removed_second})
    net.restore_agent(r->id, r->symbol, r->peers);
  for (const auto* r : {&firing.removed_first, &firing.removed_second}) {
    for (std::uint32_t i = 0; i < r->peers.size(); ++i) {
      Port p = r->peers[i];
      bool internal = !p.free && (p.node == firing.removed_first.id || p.node == firing.removed_second.id);
      if (!internal) net.set_peer_raw(p, Port::agent(r->id, i));
    }
  }
}

}  // namespace itnet
