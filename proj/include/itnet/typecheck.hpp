#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "itnet/term.hpp"

namespace itnet {

class TypeError : public std::runtime_error {
 public:
  explicit TypeError(const std::string& message) : std::runtime_error(message) {}
};

using TypeEnv = std::map<std::string, Type>;

// Iterator typing:
//   iterbool <V:T> <F:T> (b:bool)                         : T
//   iternat  <\x. S> <Z:T> (n:nat)       with x:T |- S:T  : T
//   iterlist <\x y. C> <N:T> (l:list E)  with x:E, y:T |- C:T : T
//
// `nil` gets a list type whose element is solved by unification; element
// types that stay unconstrained default to nat.
Type typecheck(const Term& t, const TypeEnv& env = {});

// True iff `t` can be given type `expected` (unconstrained `nil` elements
// adapt to `expected`).
bool has_type(const Term& t, const Type& expected, const TypeEnv& env = {});

}  // namespace itnet
