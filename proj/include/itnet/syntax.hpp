#pragma once

// Concrete syntax.
//
//   term  ::= '\' ident ':' type '.' term | app
//   app   ::= head aexp* ['\' ...]          (left-associative application)
//   head  ::= 'suc' aexp | 'cons' aexp aexp
//           | 'iterbool' '<' term '>' '<' term '>' aexp
//           | 'iternat' '<' '\' ident '.' term '>' '<' term '>' aexp
//           | 'iterlist' '<' '\' ident ident '.' term '>' '<' term '>' aexp
//           | aexp
//   aexp  ::= ident | 'true' | 'false' | '0' | 'nil' | '(' term ')'
//   type  ::= 'bool' | 'nat' | 'list' atype | atype '->' type
//
// Line comments start with `--`.

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "itnet/term.hpp"

namespace itnet {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::set<std::string> expected, std::string found);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::set<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  int line_;
  int column_;
  std::set<std::string> expected_;
  std::string found_;
};

Term parse(std::string_view source);
Type parse_type(std::string_view source);

std::string to_string(const Type& t);
std::string to_string(const Term& t);

}  // namespace itnet
