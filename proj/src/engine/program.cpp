#include "itnet/program.hpp"

#include "itnet/syntax.hpp"
#include "itnet/typecheck.hpp"

namespace itnet {

Program compile_program(std::string_view source) {
  Term t = parse(source);
  Type ty = typecheck(t);
  return {ty, gen_system(t)};
}

}  // namespace itnet
