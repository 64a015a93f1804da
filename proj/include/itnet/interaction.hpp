#pragma once

// Interaction systems (symbol declarations plus one rule per unordered pair
// of symbols) and the single rewrite step.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "itnet/net.hpp"

namespace itnet {

enum class SymbolKind {
  Token,
  SyntacticApp,
  ComputationApp,
  Lambda,
  Constructor,
  Copy,
  Duplicator,
  Eraser,
  IteratorSyntactic,
  IteratorComputation,
};

const char* to_string(SymbolKind k);

struct SymbolDecl {
  SymbolId id = 0;
  std::string name;
  std::uint32_t arity = 0;
  SymbolKind kind = SymbolKind::Constructor;
};

// Interactions involving one of these drive evaluation; all other rules are
// management (copying and erasing).
bool is_evaluation_kind(SymbolKind k);

// Right-hand side of a rule. The replacement net's interface slots are the
// holes: slot i stands for the wire formerly attached to auxiliary port i+1
// of `first`, then continuing with the auxiliary ports of `second`.
struct RuleTemplate {
  SymbolId first = 0;
  SymbolId second = 0;
  Net replacement;
  std::string label;  // R1, R2, ... grouping rules by schema
};

class NoRuleError : public std::runtime_error {
 public:
  NoRuleError(std::string first, std::string second);
  const std::string& first() const { return first_; }
  const std::string& second() const { return second_; }

 private:
  std::string first_;
  std::string second_;
};

class InteractionSystem {
 public:
  SymbolId add_symbol(std::string name, std::uint32_t arity, SymbolKind kind);
  // Throws std::logic_error if a rule already exists for the unordered pair
  // or the template's hole count does not match the arities.
  void add_rule(RuleTemplate rule);

  const std::vector<SymbolDecl>& symbols() const { return symbols_; }
  const SymbolDecl& symbol(SymbolId id) const { return symbols_.at(id); }
  std::optional<SymbolId> find_symbol(const std::string& name) const;

  // The rule for {a, b} in whichever orientation it was declared.
  const RuleTemplate* find_rule(SymbolId a, SymbolId b) const;
  const std::map<std::pair<SymbolId, SymbolId>, RuleTemplate>& rules() const { return rules_; }

  bool is_evaluation_pair(SymbolId a, SymbolId b) const {
    return is_evaluation_kind(symbol(a).kind) || is_evaluation_kind(symbol(b).kind);
  }

 private:
  std::vector<SymbolDecl> symbols_;
  std::map<std::string, SymbolId> by_name_;
  std::map<std::pair<SymbolId, SymbolId>, RuleTemplate> rules_;
};

// One fired interaction with everything needed to revert it.
struct RuleFiring {
  const RuleTemplate* rule = nullptr;
  // Consumed agents in rule orientation (rule->first, rule->second).
  std::pair<AgentId, AgentId> consumed;
  std::vector<AgentId> created;
  // Pairs that became active because of this step.
  std::vector<ActivePair> new_pairs;

  struct Removed {
    AgentId id;
    SymbolId symbol;
    std::vector<Port> peers;
  };
  Removed removed_first;
  Removed removed_second;
  AgentId previous_next_id = 0;
};

// Replaces the two agents of `pair` by a fresh instance of the rule's
// replacement net. Throws NoRuleError when the system has no rule for the
// pair and std::logic_error when `pair` is not active in `net`.
RuleFiring apply_rule(Net& net, const ActivePair& pair, const InteractionSystem& system);

// Undoes the most recent firing on `net`.
void revert(Net& net, const RuleFiring& firing);

}  // namespace itnet
