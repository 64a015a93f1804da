#pragma once

// Machine-readable forms of nets and systems: Net JSON, Graphviz DOT and the
// textual system dump.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "itnet/interaction.hpp"

namespace itnet {

class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// {"agents":[{"id","symbol"}],"wires":[[end,end]],"interface":[end]} with
// ends ["a",id,port] or ["free",name]. Agents ascend by id and wires are
// sorted, so equal nets serialize to equal bytes. An interface slot wired
// straight to an agent port is listed as that port; two slots wired to each
// other are listed as free names joined by a wire.
nlohmann::ordered_json net_to_json(const Net& net, const InteractionSystem& system);

// Inverse of net_to_json. Agent ids are preserved; symbols are resolved by
// name against `system`.
Net net_from_json(const nlohmann::json& j, const InteractionSystem& system);

// FNV-1a over the compact Net JSON text.
std::uint64_t net_hash(const Net& net, const InteractionSystem& system);

std::string export_dot(const Net& net, const InteractionSystem& system);

// One `symbol name/arity/kind` line per symbol, then one
// `rule A >< B -> N agents, M holes [label]` line per rule. With
// `with_nets`, each rule line is followed by its replacement's Net JSON.
std::string dump_system(const InteractionSystem& system, bool with_nets = false);

}  // namespace itnet
