#pragma once

// Symbols of the base system and the per-program iterator symbol table.

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "itnet/interaction.hpp"
#include "itnet/term.hpp"

namespace itnet {

// Fixed ids of the base symbols; base_system() declares them in this order.
namespace sym {
inline constexpr SymbolId token = 0;    // evaluation token, arity 1
inline constexpr SymbolId app = 1;      // syntactic application: aux1 function, aux2 argument
inline constexpr SymbolId capp = 2;     // computation application: principal faces the function,
                                        // aux1 root, aux2 argument
inline constexpr SymbolId lam = 3;      // aux1 binder, aux2 body
inline constexpr SymbolId tru = 4;
inline constexpr SymbolId fls = 5;
inline constexpr SymbolId zero = 6;
inline constexpr SymbolId nil = 7;
inline constexpr SymbolId suc = 8;      // aux1 predecessor
inline constexpr SymbolId cons = 9;     // aux1 head, aux2 tail
inline constexpr SymbolId copy = 10;    // fan-out on shared variable wires
inline constexpr SymbolId dup = 11;     // duplicator spawned by copy rules
inline constexpr SymbolId eraser = 12;
inline constexpr SymbolId base_count = 13;
}  // namespace sym

enum class IteratorKind { Bool, Nat, List };

const char* to_string(IteratorKind k);

// One iterator occurrence. Its agents have aux1 for the scrutinee and one
// further aux port per entry of `free_vars`, in that order.
struct IteratorDescriptor {
  IteratorKind kind = IteratorKind::Bool;
  Site site = 0;
  std::string binder;   // nat: x; list: head binder
  std::string binder2;  // list: accumulator binder
  // bool: on_true, on_false. nat and list: step, base.
  std::array<Term, 2> params{Term::zero(), Term::zero()};
  // Free variables of the parameters (binders removed), first occurrence order.
  std::vector<std::string> free_vars;
  SymbolId syntactic = 0;
  SymbolId computation = 0;

  // The iterator term for this occurrence applied to `scrutinee`.
  Term with_scrutinee(const Term& scrutinee) const;
};

class SymbolTable {
 public:
  void add(IteratorDescriptor d);
  const IteratorDescriptor* by_site(Site s) const;
  const IteratorDescriptor* by_symbol(SymbolId s) const;
  const std::vector<IteratorDescriptor>& descriptors() const { return descriptors_; }

 private:
  std::vector<IteratorDescriptor> descriptors_;
  std::unordered_map<Site, std::size_t> site_index_;
  std::unordered_map<SymbolId, std::size_t> symbol_index_;
};

}  // namespace itnet
