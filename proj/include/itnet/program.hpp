#pragma once

// Source text to everything needed for reduction.

#include <string_view>

#include "itnet/generate.hpp"
#include "itnet/term.hpp"

namespace itnet {

struct Program {
  Type type;
  GeneratedSystem gen;  // gen.term is the parsed program with site labels
};

// Parses, typechecks and generates the interaction system. Throws
// ParseError or TypeError.
Program compile_program(std::string_view source);

}  // namespace itnet
