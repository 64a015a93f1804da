#include "itnet/io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace itnet {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json agent_end(Port p) { return ordered_json::array({"a", p.node, p.index}); }
ordered_json free_end(const std::string& name) { return ordered_json::array({"free", name}); }

// Sort key for a wire end: agent ends first by (id, port), then free names.
using EndKey = std::tuple<int, std::uint32_t, std::uint32_t, std::string>;

}  // namespace

ordered_json net_to_json(const Net& net, const InteractionSystem& system) {
  ordered_json j;
  j["agents"] = ordered_json::array();
  std::vector<std::pair<EndKey, EndKey>> wires;
  for (AgentId a : net.agents()) {
    ordered_json agent;
    agent["id"] = a;
    agent["symbol"] = system.symbol(net.symbol(a)).name;
    j["agents"].push_back(std::move(agent));
    for (std::uint32_t i = 0; i <= net.arity(a); ++i) {
      Port here = Port::agent(a, i);
      Port there = net.peer(here);
      if (there.free || there.is_none() || there < here) continue;
      wires.push_back({{0, a, i, ""}, {0, there.node, there.index, ""}});
    }
  }
  ordered_json iface = ordered_json::array();
  for (std::uint32_t s = 0; s < net.slot_count(); ++s) {
    Port there = net.peer(Port::slot(s));
    if (!there.free && !there.is_none()) {
      iface.push_back(agent_end(there));
      continue;
    }
    iface.push_back(free_end(net.slot_name(s)));
    if (there.free && s < there.node)
      wires.push_back({{1, 0, 0, net.slot_name(s)}, {1, 0, 0, net.slot_name(there.node)}});
  }
  std::sort(wires.begin(), wires.end());
  auto end_json = [](const EndKey& k) {
    return std::get<0>(k) == 0 ? agent_end(Port::agent(std::get<1>(k), std::get<2>(k)))
                               : free_end(std::get<3>(k));
  };
  j["wires"] = ordered_json::array();
  for (const auto& [x, y] : wires) j["wires"].push_back(ordered_json::array({end_json(x), end_json(y)}));
  j["interface"] = std::move(iface);
  return j;
}

Net net_from_json(const json& j, const InteractionSystem& system) {
  try {
    Net net;
    std::map<AgentId, SymbolId> symbols;
    for (const auto& a : j.at("agents")) {
      auto id = a.at("id").get<AgentId>();
      auto name = a.at("symbol").get<std::string>();
      auto s = system.find_symbol(name);
      if (!s) throw FormatError("unknown symbol '" + name + "'");
      if (!symbols.emplace(id, *s).second) throw FormatError("duplicate agent id " + std::to_string(id));
    }
    AgentId next = symbols.empty() ? 0 : symbols.rbegin()->first + 1;
    for (AgentId id = 0; id < next; ++id) {
      auto it = symbols.find(id);
      SymbolId s = it == symbols.end() ? 0 : it->second;
      net.add_agent(s, system.symbol(s).arity);
      if (it == symbols.end()) net.erase_agent(id);
    }

    std::map<std::string, std::uint32_t> slot_by_name;
    const auto& iface = j.at("interface");
    for (std::uint32_t s = 0; s < iface.size(); ++s) {
      const auto& e = iface[s];
      if (e.at(0) == "free") {
        auto name = e.at(1).get<std::string>();
        net.add_slot(name);
        slot_by_name.emplace(name, s);
      } else {
        net.add_slot("s" + std::to_string(s));
      }
    }

    auto port_of = [&](const json& e) -> Port {
      auto tag = e.at(0).get<std::string>();
      if (tag == "free") {
        auto it = slot_by_name.find(e.at(1).get<std::string>());
        if (it == slot_by_name.end()) throw FormatError("unknown free port " + e.dump());
        return Port::slot(it->second);
      }
      if (tag != "a") throw FormatError("bad port reference " + e.dump());
      Port p = Port::agent(e.at(1).get<AgentId>(), e.at(2).get<std::uint32_t>());
      if (!net.alive(p.node) || p.index > net.arity(p.node))
        throw FormatError("port reference out of range " + e.dump());
      return p;
    };
    for (std::uint32_t s = 0; s < iface.size(); ++s)
      if (iface[s].at(0) == "a") net.link(Port::slot(s), port_of(iface[s]));
    for (const auto& w : j.at("wires")) {
      if (w.size() != 2) throw FormatError("wire must have two ends: " + w.dump());
      net.link(port_of(w[0]), port_of(w[1]));
    }
    return net;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed Net JSON: ") + e.what());
  }
}

std::uint64_t net_hash(const Net& net, const InteractionSystem& system) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : net_to_json(net, system).dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string export_dot(const Net& net, const InteractionSystem& system) {
  std::ostringstream out;
  out << "graph net {\n";
  for (AgentId a : net.agents())
    out << "  a" << a << " [label=\"" << system.symbol(net.symbol(a)).name << "#" << a << "\"];\n";
  for (std::uint32_t s = 0; s < net.slot_count(); ++s)
    out << "  s" << s << " [shape=point, xlabel=\"" << net.slot_name(s) << "\"];\n";

  auto node = [](Port p) {
    return (p.free ? "s" : "a") + std::to_string(p.node);
  };
  auto edge = [&](Port x, Port y) {
    std::vector<std::string> attrs;
    if (x.is_principal() && y.is_principal())
      attrs.push_back("style=bold, color=red");
    else if (x.is_principal() || y.is_principal())
      attrs.push_back("style=bold");
    if (!x.free && x.index > 0) attrs.push_back("taillabel=\"" + std::to_string(x.index) + "\"");
    if (!y.free && y.index > 0) attrs.push_back("headlabel=\"" + std::to_string(y.index) + "\"");
    out << "  " << node(x) << " -- " << node(y);
    if (!attrs.empty()) {
      out << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) out << (i ? ", " : "") << attrs[i];
      out << "]";
    }
    out << ";\n";
  };
  for (AgentId a : net.agents()) {
    for (std::uint32_t i = 0; i <= net.arity(a); ++i) {
      Port here = Port::agent(a, i);
      Port there = net.peer(here);
      if (there.is_none() || (!there.free && there < here)) continue;
      edge(here, there);
    }
  }
  for (std::uint32_t s = 0; s < net.slot_count(); ++s) {
    Port there = net.peer(Port::slot(s));
    if (there.free && s < there.node) edge(Port::slot(s), there);
  }
  out << "}\n";
  return out.str();
}

std::string dump_system(const InteractionSystem& system, bool with_nets) {
  std::ostringstream out;
  for (const auto& s : system.symbols())
    out << "symbol " << s.name << "/" << s.arity << "/" << to_string(s.kind) << "\n";
  for (const auto& [key, rule] : system.rules()) {
    out << "rule " << system.symbol(rule.first).name << " >< " << system.symbol(rule.second).name
        << " -> " << rule.replacement.agent_count() << " agents, " << rule.replacement.slot_count()
        << " holes [" << rule.label << "]\n";
    if (with_nets) out << "  " << net_to_json(rule.replacement, system).dump() << "\n";
  }
  return out.str();
}

}  // namespace itnet
