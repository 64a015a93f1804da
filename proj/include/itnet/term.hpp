#pragma once

// Abstract syntax of the source language: a simply-typed lambda calculus
// with booleans, naturals, lists and one iterator per data type.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace itnet {

class Type {
 public:
  enum class Kind { Bool, Nat, List, Arrow };

  static Type boolean();
  static Type nat();
  static Type list(Type elem);
  static Type arrow(Type dom, Type cod);

  Kind kind() const;
  const Type& elem() const;  // List
  const Type& dom() const;   // Arrow
  const Type& cod() const;   // Arrow

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Type::Node {
  Kind kind;
  std::vector<Type> args;
};

inline Type::Kind Type::kind() const { return node_->kind; }

enum class TermKind {
  Var,
  Abs,
  App,
  True,
  False,
  IterBool,
  Zero,
  Suc,
  IterNat,
  Nil,
  Cons,
  IterList,
};

// Iterator occurrences carry an optional site label. Labels are assigned by
// system generation and survive substitution, so every copy of an iterator
// term can be mapped back to the agent symbols generated for its occurrence.
// Labels are annotations only: alpha_eq and operator== ignore them.
using Site = std::uint32_t;

class Term {
 public:
  static Term var(std::string name);
  // `annotation` is absent only for abstractions rebuilt from nets.
  static Term abs(std::string binder, std::optional<Type> annotation, Term body);
  static Term app(Term fun, Term arg);
  static Term tru();
  static Term fls();
  static Term iter_bool(Term on_true, Term on_false, Term scrutinee,
                        std::optional<Site> site = std::nullopt);
  static Term zero();
  static Term suc(Term pred);
  static Term iter_nat(std::string binder, Term step, Term base, Term scrutinee,
                       std::optional<Site> site = std::nullopt);
  static Term nil();
  static Term cons(Term head, Term tail);
  static Term iter_list(std::string head_binder, std::string acc_binder, Term step,
                        Term base, Term scrutinee, std::optional<Site> site = std::nullopt);

  TermKind kind() const { return node_->kind; }

  // Var name, Abs binder, IterNat binder, IterList head binder.
  const std::string& name() const { return node_->name; }
  // IterList accumulator binder.
  const std::string& name2() const { return node_->name2; }
  const std::optional<Type>& annotation() const { return node_->annotation; }
  const std::optional<Site>& site() const { return node_->site; }

  // Abs
  const Term& body() const { return child(0); }
  // App
  const Term& fun() const { return child(0); }
  const Term& arg() const { return child(1); }
  // Suc
  const Term& pred() const { return child(0); }
  // Cons
  const Term& head() const { return child(0); }
  const Term& tail() const { return child(1); }
  // IterBool: true branch / false branch. IterNat, IterList: step / base.
  const Term& first_param() const { return child(0); }
  const Term& second_param() const { return child(1); }
  const Term& scrutinee() const { return child(2); }

  std::size_t arity() const { return node_->kids.size(); }
  const Term& child(std::size_t i) const { return node_->kids.at(i); }

  bool is_iterator() const;
  bool is_value() const;  // weak canonical form

  Term with_site(std::optional<Site> site) const;
  // Same constructor and binders, new children.
  Term rebuild(std::vector<Term> kids) const;
  Term rebuild(std::vector<Term> kids, std::string name, std::string name2) const;

  // Structural equality, names and annotations included, sites ignored.
  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    TermKind kind;
    std::string name;
    std::string name2;
    std::optional<Type> annotation;
    std::optional<Site> site;
    std::vector<Term> kids;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(Node n);

  std::shared_ptr<const Node> node_;
};

// Number of binders a child introduces, and their names.
std::vector<std::string> binders_of(const Term& t, std::size_t child);

// Free variables in order of first occurrence in a left-to-right preorder walk.
std::vector<std::string> free_vars(const Term& t);
bool occurs_free(const Term& t, const std::string& x);

// `base` with its trailing digits stripped, followed by the least positive
// integer suffix that is not in `avoid`.
std::string fresh_name(const std::string& base, const std::vector<std::string>& avoid);

// Capture-avoiding substitution of `u` for the free occurrences of `x`.
Term subst(const Term& t, const std::string& x, const Term& u);
// Simultaneous capture-avoiding substitution.
Term subst_all(const Term& t, const std::map<std::string, Term>& s);

bool alpha_eq(const Term& a, const Term& b);

std::size_t term_size(const Term& t);

}  // namespace itnet
