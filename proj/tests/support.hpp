#pragma once

// Shared helpers for the test binaries: corpus access, numerals, an
// independent alpha-equivalence oracle and a random well-typed term
// generator.

#include <algorithm>
#include <filesystem>
#include <map>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "itnet/syntax.hpp"
#include "itnet/term.hpp"
#include "itnet/typecheck.hpp"

namespace testsupport {

using itnet::Term;
using itnet::TermKind;
using itnet::Type;

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CorpusEntry {
  std::string name;
  std::string source;
};

// programs/*.fun, sorted by name. programs/errors is not included.
inline std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  for (const auto& e : std::filesystem::directory_iterator(ITNET_PROGRAMS_DIR)) {
    if (e.path().extension() != ".fun") continue;
    out.push_back({e.path().stem().string(), slurp(e.path())});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

inline Term numeral(unsigned n) {
  Term t = Term::zero();
  while (n--) t = Term::suc(t);
  return t;
}

inline std::optional<unsigned> to_int(const Term& t) {
  unsigned n = 0;
  const Term* cur = &t;
  while (cur->kind() == TermKind::Suc) {
    ++n;
    cur = &cur->pred();
  }
  if (cur->kind() != TermKind::Zero) return std::nullopt;
  return n;
}

inline Term nat_list(const std::vector<unsigned>& xs) {
  Term t = Term::nil();
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) t = Term::cons(numeral(*it), t);
  return t;
}

// Nameless rendering: bound variables become the distance to their binder,
// counted in binder slots (iterlist binds two). Free variables keep their
// name. Fully annotated terms are alpha-equivalent iff their renderings are
// equal.
inline std::string nameless(const Term& t, std::vector<std::string>& scope) {
  auto var = [&](const std::string& x) -> std::string {
    for (std::size_t i = scope.size(); i-- > 0;)
      if (scope[i] == x) return "#" + std::to_string(scope.size() - 1 - i);
    return "$" + x;
  };
  auto under = [&](std::vector<std::string> names, const Term& body) {
    for (auto& n : names) scope.push_back(n);
    std::string s = nameless(body, scope);
    scope.resize(scope.size() - names.size());
    return s;
  };
  switch (t.kind()) {
    case TermKind::Var:
      return var(t.name());
    case TermKind::Abs:
      return "(L" + (t.annotation() ? ":" + itnet::to_string(*t.annotation()) : std::string()) +
             " " + under({t.name()}, t.body()) + ")";
    case TermKind::App:
      return "(A " + nameless(t.fun(), scope) + " " + nameless(t.arg(), scope) + ")";
    case TermKind::True:
      return "T";
    case TermKind::False:
      return "F";
    case TermKind::Zero:
      return "Z";
    case TermKind::Nil:
      return "N";
    case TermKind::Suc:
      return "(S " + nameless(t.pred(), scope) + ")";
    case TermKind::Cons:
      return "(C " + nameless(t.head(), scope) + " " + nameless(t.tail(), scope) + ")";
    case TermKind::IterBool:
      return "(IB " + nameless(t.first_param(), scope) + " " + nameless(t.second_param(), scope) +
             " " + nameless(t.scrutinee(), scope) + ")";
    case TermKind::IterNat:
      return "(IN " + under({t.name()}, t.first_param()) + " " + nameless(t.second_param(), scope) +
             " " + nameless(t.scrutinee(), scope) + ")";
    case TermKind::IterList:
      return "(IL " + under({t.name(), t.name2()}, t.first_param()) + " " +
             nameless(t.second_param(), scope) + " " + nameless(t.scrutinee(), scope) + ")";
  }
  return "?";
}

inline std::string nameless(const Term& t) {
  std::vector<std::string> scope;
  return nameless(t, scope);
}

// Renames every binder to name + "_r", keeping the term alpha-equivalent.
inline Term rename_bound(const Term& t, std::map<std::string, std::string> scope = {}) {
  if (t.kind() == TermKind::Var) {
    auto it = scope.find(t.name());
    return it == scope.end() ? t : Term::var(it->second);
  }
  std::vector<Term> kids;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    auto inner = scope;
    for (const auto& b : itnet::binders_of(t, i)) inner[b] = b + "_r";
    kids.push_back(rename_bound(t.child(i), inner));
  }
  if (t.kind() == TermKind::Abs || t.kind() == TermKind::IterNat || t.kind() == TermKind::IterList)
    return t.rebuild(std::move(kids), t.name() + "_r", t.name2().empty() ? "" : t.name2() + "_r");
  return t.arity() ? t.rebuild(std::move(kids)) : t;
}

// Random well-typed terms over an optional typing environment. Positions of
// arrow type are always abstractions or variables, so iterators only
// produce first-order results; numeral literals stay below 3.
class TermGen {
 public:
  explicit TermGen(std::uint64_t seed) : rng_(seed) {}

  using Env = std::vector<std::pair<std::string, Type>>;

  Term gen(const Type& ty, int depth, const Env& env = {}) {
    if (ty.kind() == Type::Kind::Arrow) {
      std::string x = pick_name();
      Env inner = bind(env, x, ty.dom());
      // occasionally a variable or application of arrow type
      if (depth > 0 && coin(4)) {
        if (auto v = pick_var(ty, env)) return *v;
      }
      return Term::abs(x, ty.dom(), gen(ty.cod(), depth - 1, inner));
    }
    if (depth <= 0) return leaf(ty, env);
    switch (below(8)) {
      case 0:
      case 1:
        return leaf(ty, env);
      case 2: {
        Type a = small_type();
        return Term::app(gen(Type::arrow(a, ty), depth - 1, env), gen(a, depth - 1, env));
      }
      case 3:
        return Term::iter_bool(gen(ty, depth - 1, env), gen(ty, depth - 1, env),
                               gen(Type::boolean(), depth - 1, env));
      case 4: {
        std::string x = pick_name();
        return Term::iter_nat(x, gen(ty, depth - 1, bind(env, x, ty)), gen(ty, depth - 1, env),
                              gen(Type::nat(), depth - 2, env));
      }
      case 5: {
        std::string x = pick_name();
        std::string y = pick_name();
        if (y == x) y += "'";
        Env inner = bind(bind(env, x, Type::nat()), y, ty);
        return Term::iter_list(x, y, gen(ty, depth - 1, inner), gen(ty, depth - 1, env),
                               gen(Type::list(Type::nat()), depth - 2, env));
      }
      default:
        return constructor(ty, depth, env);
    }
  }

  Type small_type() {
    switch (below(4)) {
      case 0:
        return Type::boolean();
      case 1:
        return Type::list(Type::nat());
      case 2:
        return Type::arrow(Type::nat(), Type::nat());
      default:
        return Type::nat();
    }
  }

  Type result_type() {
    switch (below(3)) {
      case 0:
        return Type::boolean();
      case 1:
        return Type::list(Type::nat());
      default:
        return Type::nat();
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  unsigned below(unsigned n) { return static_cast<unsigned>(rng_() % n); }
  bool coin(unsigned n) { return below(n) == 0; }

  std::string pick_name() {
    static const char* names[] = {"x", "y", "z", "a", "b", "x1"};
    return names[below(6)];
  }

  static Env bind(Env env, const std::string& x, const Type& t) {
    env.emplace_back(x, t);
    return env;
  }

  std::optional<Term> pick_var(const Type& ty, const Env& env) {
    std::vector<std::string> candidates;
    for (std::size_t i = 0; i < env.size(); ++i) {
      bool shadowed = false;
      for (std::size_t j = i + 1; j < env.size(); ++j) shadowed |= env[j].first == env[i].first;
      if (!shadowed && env[i].second == ty) candidates.push_back(env[i].first);
    }
    if (candidates.empty()) return std::nullopt;
    return Term::var(candidates[below(static_cast<unsigned>(candidates.size()))]);
  }

  Term leaf(const Type& ty, const Env& env) {
    if (coin(2))
      if (auto v = pick_var(ty, env)) return *v;
    switch (ty.kind()) {
      case Type::Kind::Bool:
        return coin(2) ? Term::tru() : Term::fls();
      case Type::Kind::Nat:
        return numeral(below(3));
      case Type::Kind::List:
        return coin(2) ? Term::nil() : Term::cons(leaf(ty.elem(), env), Term::nil());
      case Type::Kind::Arrow:
        break;
    }
    return gen(ty, 0, env);
  }

  Term constructor(const Type& ty, int depth, const Env& env) {
    switch (ty.kind()) {
      case Type::Kind::Nat:
        return Term::suc(gen(ty, depth - 1, env));
      case Type::Kind::List:
        return Term::cons(gen(ty.elem(), depth - 1, env), gen(ty, depth - 1, env));
      default:
        return leaf(ty, env);
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace testsupport
