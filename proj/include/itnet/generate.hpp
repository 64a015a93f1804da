#pragma once

// Interaction systems: the fixed base system and the per-program extension
// with one symbol pair per iterator occurrence.

#include <vector>

#include "itnet/interaction.hpp"
#include "itnet/symbols.hpp"
#include "itnet/term.hpp"

namespace itnet {

// Token rules (R1-R3), beta (R4), erasing (R9) and copying (R10-R13).
const InteractionSystem& base_system();

struct GeneratedSystem {
  Term term;  // the input with every iterator occurrence labelled
  InteractionSystem system;
  SymbolTable symbols;
};

// Labels iterator occurrences in preorder (1, 2, ...), declares
// It_<kind>_<n> / ItC_<kind>_<n> for each, then adds their rules. Existing
// labels on the input are replaced.
GeneratedSystem gen_system(const Term& t);

// Token rule (R5), one case rule per constructor (R6), erasing (R7) and
// copying (R8) for one iterator occurrence. Every occurrence reachable from
// the parameters must already be registered in `symtab`.
std::vector<RuleTemplate> iterator_rules(const IteratorDescriptor& d, const SymbolTable& symtab);

}  // namespace itnet
