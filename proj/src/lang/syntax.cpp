#include "itnet/syntax.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace itnet {

namespace {

std::string describe(const std::set<std::string>& expected, const std::string& found) {
  std::ostringstream os;
  os << "expected ";
  bool first = true;
  for (const auto& e : expected) {
    if (!first) os << " | ";
    os << e;
    first = false;
  }
  os << ", found " << found;
  return os.str();
}

}  // namespace

ParseError::ParseError(int line, int column, std::set<std::string> expected, std::string found)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": syntax error: " +
                         describe(expected, found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok {
  Ident,
  Keyword,
  Backslash,
  Colon,
  Dot,
  LParen,
  RParen,
  LAngle,
  RAngle,
  Arrow,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"true",     "false",    "0",        "nil",  "suc",
                                       "cons",     "iterbool", "iternat",  "iterlist",
                                       "bool",     "nat",      "list"};
  return k;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::End, std::string(1, c), line, col};
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Tok::Arrow;
      t.text = "->";
      out.push_back(t);
      advance(2);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_' || src[j] == '\''))
        ++j;
      t.text = std::string(src.substr(i, j - i));
      t.kind = keywords().count(t.text) ? Tok::Keyword : Tok::Ident;
      out.push_back(t);
      advance(j - i);
      continue;
    }
    switch (c) {
      case '0':
        t.kind = Tok::Keyword;
        break;
      case '\\':
        t.kind = Tok::Backslash;
        break;
      case ':':
        t.kind = Tok::Colon;
        break;
      case '.':
        t.kind = Tok::Dot;
        break;
      case '(':
        t.kind = Tok::LParen;
        break;
      case ')':
        t.kind = Tok::RParen;
        break;
      case '<':
        t.kind = Tok::LAngle;
        break;
      case '>':
        t.kind = Tok::RAngle;
        break;
      default:
        throw ParseError(line, col, {"token"}, quoted(t.text));
    }
    out.push_back(t);
    advance(1);
  }
  out.push_back({Tok::End, "end of input", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Term whole_term() {
    Term t = term();
    expect_end();
    return t;
  }

  Type whole_type() {
    Type t = type();
    expect_end();
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at_keyword(const char* kw) const {
    return peek().kind == Tok::Keyword && peek().text == kw;
  }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    const auto& t = peek();
    throw ParseError(t.line, t.column, std::move(expected),
                     t.kind == Tok::End ? t.text : quoted(t.text));
  }

  void expect_end() const {
    if (peek().kind != Tok::End) fail({"end of input"});
  }

  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail({what});
    return toks_[pos_++];
  }

  void expect_keyword(const char* kw) {
    if (!at_keyword(kw)) fail({quoted(kw)});
    ++pos_;
  }

  std::string ident() { return expect(Tok::Ident, "identifier").text; }

  // --- types

  Type type() {
    Type lhs = type_app();
    if (peek().kind == Tok::Arrow) {
      ++pos_;
      return Type::arrow(lhs, type());
    }
    return lhs;
  }

  Type type_app() {
    if (at_keyword("list")) {
      ++pos_;
      return Type::list(type_atom());
    }
    return type_atom();
  }

  Type type_atom() {
    if (at_keyword("bool")) {
      ++pos_;
      return Type::boolean();
    }
    if (at_keyword("nat")) {
      ++pos_;
      return Type::nat();
    }
    if (at_keyword("list")) return type_app();
    if (peek().kind == Tok::LParen) {
      ++pos_;
      Type t = type();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail({"'bool'", "'nat'", "'list'", "'('"});
  }

  // --- terms

  Term term() {
    if (peek().kind == Tok::Backslash) return lambda();
    return application();
  }

  Term lambda() {
    expect(Tok::Backslash, "'\\'");
    std::string x = ident();
    expect(Tok::Colon, "':'");
    Type ty = type();
    expect(Tok::Dot, "'.'");
    return Term::abs(std::move(x), std::move(ty), term());
  }

  bool starts_atom() const {
    const auto& t = peek();
    if (t.kind == Tok::Ident || t.kind == Tok::LParen) return true;
    if (t.kind != Tok::Keyword) return false;
    return t.text == "true" || t.text == "false" || t.text == "0" || t.text == "nil";
  }

  Term application() {
    Term t = head();
    while (true) {
      if (starts_atom()) {
        t = Term::app(t, atom());
      } else if (peek().kind == Tok::Backslash) {
        return Term::app(t, lambda());
      } else {
        return t;
      }
    }
  }

  Term bracketed() {
    expect(Tok::LAngle, "'<'");
    Term t = term();
    expect(Tok::RAngle, "'>'");
    return t;
  }

  Term head() {
    if (at_keyword("suc")) {
      ++pos_;
      return Term::suc(atom());
    }
    if (at_keyword("cons")) {
      ++pos_;
      Term h = atom();
      return Term::cons(h, atom());
    }
    if (at_keyword("iterbool")) {
      ++pos_;
      Term v = bracketed();
      Term f = bracketed();
      return Term::iter_bool(v, f, atom());
    }
    if (at_keyword("iternat")) {
      ++pos_;
      expect(Tok::LAngle, "'<'");
      expect(Tok::Backslash, "'\\'");
      std::string x = ident();
      expect(Tok::Dot, "'.'");
      Term s = term();
      expect(Tok::RAngle, "'>'");
      Term z = bracketed();
      return Term::iter_nat(std::move(x), s, z, atom());
    }
    if (at_keyword("iterlist")) {
      ++pos_;
      expect(Tok::LAngle, "'<'");
      expect(Tok::Backslash, "'\\'");
      std::string x = ident();
      std::string y = ident();
      expect(Tok::Dot, "'.'");
      Term c = term();
      expect(Tok::RAngle, "'>'");
      Term n = bracketed();
      return Term::iter_list(std::move(x), std::move(y), c, n, atom());
    }
    if (starts_atom()) return atom();
    fail({"identifier", "'true'", "'false'", "'0'", "'nil'", "'suc'", "'cons'", "'iterbool'",
          "'iternat'", "'iterlist'", "'('", "'\\'"});
  }

  Term atom() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      ++pos_;
      return Term::var(t.text);
    }
    if (t.kind == Tok::LParen) {
      ++pos_;
      Term inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Keyword) {
      if (t.text == "true") return ++pos_, Term::tru();
      if (t.text == "false") return ++pos_, Term::fls();
      if (t.text == "0") return ++pos_, Term::zero();
      if (t.text == "nil") return ++pos_, Term::nil();
    }
    fail({"identifier", "'true'", "'false'", "'0'", "'nil'", "'('"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// --- printing

void print_type(std::ostream& os, const Type& t, bool atomic) {
  switch (t.kind()) {
    case Type::Kind::Bool:
      os << "bool";
      return;
    case Type::Kind::Nat:
      os << "nat";
      return;
    case Type::Kind::List:
      if (atomic) os << "(";
      os << "list ";
      print_type(os, t.elem(), true);
      if (atomic) os << ")";
      return;
    case Type::Kind::Arrow:
      if (atomic) os << "(";
      print_type(os, t.dom(), true);
      os << " -> ";
      print_type(os, t.cod(), false);
      if (atomic) os << ")";
      return;
  }
}

bool is_atomic(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::True:
    case TermKind::False:
    case TermKind::Zero:
    case TermKind::Nil:
      return true;
    default:
      return false;
  }
}

void print_term(std::ostream& os, const Term& t);

void print_atom(std::ostream& os, const Term& t) {
  if (is_atomic(t)) {
    print_term(os, t);
  } else {
    os << "(";
    print_term(os, t);
    os << ")";
  }
}

void print_term(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
      os << t.name();
      return;
    case TermKind::True:
      os << "true";
      return;
    case TermKind::False:
      os << "false";
      return;
    case TermKind::Zero:
      os << "0";
      return;
    case TermKind::Nil:
      os << "nil";
      return;
    case TermKind::Abs:
      os << "\\" << t.name();
      if (t.annotation()) {
        os << ":";
        print_type(os, *t.annotation(), false);
      }
      os << ". ";
      print_term(os, t.body());
      return;
    case TermKind::App:
      if (t.fun().kind() == TermKind::App)
        print_term(os, t.fun());
      else
        print_atom(os, t.fun());
      os << " ";
      print_atom(os, t.arg());
      return;
    case TermKind::Suc:
      os << "suc ";
      print_atom(os, t.pred());
      return;
    case TermKind::Cons:
      os << "cons ";
      print_atom(os, t.head());
      os << " ";
      print_atom(os, t.tail());
      return;
    case TermKind::IterBool:
      os << "iterbool <";
      print_term(os, t.first_param());
      os << "> <";
      print_term(os, t.second_param());
      os << "> ";
      print_atom(os, t.scrutinee());
      return;
    case TermKind::IterNat:
      os << "iternat <\\" << t.name() << ". ";
      print_term(os, t.first_param());
      os << "> <";
      print_term(os, t.second_param());
      os << "> ";
      print_atom(os, t.scrutinee());
      return;
    case TermKind::IterList:
      os << "iterlist <\\" << t.name() << " " << t.name2() << ". ";
      print_term(os, t.first_param());
      os << "> <";
      print_term(os, t.second_param());
      os << "> ";
      print_atom(os, t.scrutinee());
      return;
  }
}

}  // namespace

Term parse(std::string_view source) { return Parser(source).whole_term(); }

Type parse_type(std::string_view source) { return Parser(source).whole_type(); }

std::string to_string(const Type& t) {
  std::ostringstream os;
  print_type(os, t, false);
  return os.str();
}

std::string to_string(const Term& t) {
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}

}  // namespace itnet
