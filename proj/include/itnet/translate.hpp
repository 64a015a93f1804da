#pragma once

// Terms to nets and back.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "itnet/interaction.hpp"
#include "itnet/symbols.hpp"
#include "itnet/term.hpp"

namespace itnet {

class TranslationError : public std::runtime_error {
 public:
  explicit TranslationError(const std::string& what) : std::runtime_error(what) {}
};

// Emits translated terms into an existing net. Used for whole programs and
// for the right-hand sides of generated iterator rules.
class TermEmitter {
 public:
  // Occurrences of each free variable, in emission order.
  using Uses = std::map<std::string, std::vector<Port>>;

  TermEmitter(Net& net, const SymbolTable& symtab) : net_(net), symtab_(symtab) {}

  // Emits the syntax tree of `t` with its root wired to `root`. Occurrences
  // of free variables are not wired; their ports are appended to `uses`.
  void emit(const Term& t, Port root, Uses& uses);

  // Wires `source` to a variable's occurrences: an eraser for none, a direct
  // wire for one, a right-leaning tree of copy agents for more.
  void bind(Port source, const std::vector<Port>& uses);

  // The single port that stands for all occurrences (the root of the copy
  // tree when there are several), or nothing when there are none.
  std::optional<Port> gather(const std::vector<Port>& uses);

  Net& net() { return net_; }

 private:
  Net& net_;
  const SymbolTable& symtab_;
};

struct TranslationResult {
  Net net;
  std::uint32_t root_slot = 0;
  std::map<std::string, std::uint32_t> var_slots;
};

// Iterator occurrences must carry a site registered in `symtab`; their
// parameters may differ from the registered ones only by a substitution for
// the registered free variables.
TranslationResult translate(const Term& t, const SymbolTable& symtab);

// Connects an evaluation token to the root. The term must be closed.
Net attach_token(TranslationResult r);

// attach_token(translate(t, symtab)).
Net token_net(const Term& t, const SymbolTable& symtab);

// Substitution that turns the registered iterator parameters into the ones
// of `t`, keyed by the descriptor's free variables. Nothing when `t` is not
// an instance of the occurrence.
std::optional<std::map<std::string, Term>> match_iterator(const IteratorDescriptor& d,
                                                          const Term& t);

class ReadbackError : public std::runtime_error {
 public:
  enum class Reason { NotSyntactic, Garbage, Malformed };
  ReadbackError(Reason reason, const std::string& what, std::vector<std::string> symbols = {},
                std::vector<AgentId> agents = {})
      : std::runtime_error(what),
        reason_(reason),
        symbols_(std::move(symbols)),
        agents_(std::move(agents)) {}

  Reason reason() const { return reason_; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::vector<AgentId>& agents() const { return agents_; }

 private:
  Reason reason_;
  std::vector<std::string> symbols_;
  std::vector<AgentId> agents_;
};

// Decodes a net made of syntactic agents back into a term, reading from
// interface slot 0. Abstractions come back without type annotations and
// with generated binder names; further slots read as free variables named
// after the slot.
Term readback(const Net& net, const InteractionSystem& system, const SymbolTable& symtab);

}  // namespace itnet
