#include "itnet/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace itnet {

// ---------------------------------------------------------------------------
// Type

Type Type::boolean() {
  static const Type t{std::make_shared<const Node>(Node{Kind::Bool, {}})};
  return t;
}

Type Type::nat() {
  static const Type t{std::make_shared<const Node>(Node{Kind::Nat, {}})};
  return t;
}

Type Type::list(Type elem) {
  return Type{std::make_shared<const Node>(Node{Kind::List, {std::move(elem)}})};
}

Type Type::arrow(Type dom, Type cod) {
  return Type{std::make_shared<const Node>(Node{Kind::Arrow, {std::move(dom), std::move(cod)}})};
}

const Type& Type::elem() const { return node_->args.at(0); }
const Type& Type::dom() const { return node_->args.at(0); }
const Type& Type::cod() const { return node_->args.at(1); }

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  const auto& x = a.node_->args;
  const auto& y = b.node_->args;
  return std::equal(x.begin(), x.end(), y.begin(), y.end());
}

// ---------------------------------------------------------------------------
// Term construction

Term Term::make(Node n) { return Term{std::make_shared<const Node>(std::move(n))}; }

Term Term::var(std::string name) {
  return make({TermKind::Var, std::move(name), {}, std::nullopt, std::nullopt, {}});
}

Term Term::abs(std::string binder, std::optional<Type> annotation, Term body) {
  return make({TermKind::Abs, std::move(binder), {}, std::move(annotation), std::nullopt,
               {std::move(body)}});
}

Term Term::app(Term fun, Term arg) {
  return make({TermKind::App, {}, {}, std::nullopt, std::nullopt, {std::move(fun), std::move(arg)}});
}

Term Term::tru() {
  static const Term t = make({TermKind::True, {}, {}, std::nullopt, std::nullopt, {}});
  return t;
}

Term Term::fls() {
  static const Term t = make({TermKind::False, {}, {}, std::nullopt, std::nullopt, {}});
  return t;
}

Term Term::zero() {
  static const Term t = make({TermKind::Zero, {}, {}, std::nullopt, std::nullopt, {}});
  return t;
}

Term Term::nil() {
  static const Term t = make({TermKind::Nil, {}, {}, std::nullopt, std::nullopt, {}});
  return t;
}

Term Term::iter_bool(Term on_true, Term on_false, Term scrutinee, std::optional<Site> site) {
  return make({TermKind::IterBool, {}, {}, std::nullopt, site,
               {std::move(on_true), std::move(on_false), std::move(scrutinee)}});
}

Term Term::suc(Term pred) {
  return make({TermKind::Suc, {}, {}, std::nullopt, std::nullopt, {std::move(pred)}});
}

Term Term::iter_nat(std::string binder, Term step, Term base, Term scrutinee,
                    std::optional<Site> site) {
  return make({TermKind::IterNat, std::move(binder), {}, std::nullopt, site,
               {std::move(step), std::move(base), std::move(scrutinee)}});
}

Term Term::cons(Term head, Term tail) {
  return make({TermKind::Cons, {}, {}, std::nullopt, std::nullopt, {std::move(head), std::move(tail)}});
}

Term Term::iter_list(std::string head_binder, std::string acc_binder, Term step, Term base,
                     Term scrutinee, std::optional<Site> site) {
  return make({TermKind::IterList, std::move(head_binder), std::move(acc_binder), std::nullopt,
               site, {std::move(step), std::move(base), std::move(scrutinee)}});
}

bool Term::is_iterator() const {
  switch (kind()) {
    case TermKind::IterBool:
    case TermKind::IterNat:
    case TermKind::IterList:
      return true;
    default:
      return false;
  }
}

bool Term::is_value() const {
  switch (kind()) {
    case TermKind::Abs:
    case TermKind::True:
    case TermKind::False:
    case TermKind::Zero:
    case TermKind::Suc:
    case TermKind::Nil:
    case TermKind::Cons:
      return true;
    default:
      return false;
  }
}

Term Term::with_site(std::optional<Site> site) const {
  Node n = *node_;
  n.site = site;
  return make(std::move(n));
}

Term Term::rebuild(std::vector<Term> kids) const {
  return rebuild(std::move(kids), node_->name, node_->name2);
}

Term Term::rebuild(std::vector<Term> kids, std::string name, std::string name2) const {
  if (kids.size() != node_->kids.size()) throw std::logic_error("Term::rebuild: arity mismatch");
  Node n = *node_;
  n.kids = std::move(kids);
  n.name = std::move(name);
  n.name2 = std::move(name2);
  return make(std::move(n));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.name != y.name || x.name2 != y.name2 ||
      x.annotation != y.annotation)
    return false;
  return std::equal(x.kids.begin(), x.kids.end(), y.kids.begin(), y.kids.end());
}

// ---------------------------------------------------------------------------
// Binding structure

std::vector<std::string> binders_of(const Term& t, std::size_t child) {
  if (child != 0) return {};
  switch (t.kind()) {
    case TermKind::Abs:
    case TermKind::IterNat:
      return {t.name()};
    case TermKind::IterList:
      return {t.name(), t.name2()};
    default:
      return {};
  }
}

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (t.kind() == TermKind::Var) {
    const auto& x = t.name();
    if (std::find(bound.begin(), bound.end(), x) == bound.end() &&
        std::find(out.begin(), out.end(), x) == out.end())
      out.push_back(x);
    return;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    auto bs = binders_of(t, i);
    bound.insert(bound.end(), bs.begin(), bs.end());
    collect_free(t.child(i), bound, out);
    bound.resize(bound.size() - bs.size());
  }
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

std::vector<std::string> free_vars(const Term& t) {
  std::vector<std::string> bound;
  std::vector<std::string> out;
  collect_free(t, bound, out);
  return out;
}

bool occurs_free(const Term& t, const std::string& x) {
  if (t.kind() == TermKind::Var) return t.name() == x;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (contains(binders_of(t, i), x)) continue;
    if (occurs_free(t.child(i), x)) return true;
  }
  return false;
}

std::string fresh_name(const std::string& base, const std::vector<std::string>& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (std::size_t n = 1;; ++n) {
    std::string candidate = stem + std::to_string(n);
    if (!contains(avoid, candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Substitution

Term subst(const Term& t, const std::string& x, const Term& u) {
  return subst_all(t, {{x, u}});
}

Term subst_all(const Term& t, const std::map<std::string, Term>& s) {
  if (s.empty()) return t;
  if (t.kind() == TermKind::Var) {
    auto it = s.find(t.name());
    return it == s.end() ? t : it->second;
  }
  if (t.arity() == 0) return t;

  std::string name = t.name();
  std::string name2 = t.name2();
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (std::size_t i = 0; i < t.arity(); ++i) {
    const Term& child = t.child(i);
    auto binders = binders_of(t, i);
    if (binders.empty()) {
      kids.push_back(subst_all(child, s));
      continue;
    }
    // Restrict to substitutions that reach the child and actually apply.
    std::map<std::string, Term> inner;
    std::vector<std::string> danger;
    for (const auto& [k, v] : s) {
      if (contains(binders, k) || !occurs_free(child, k)) continue;
      inner.emplace(k, v);
      for (auto& y : free_vars(v))
        if (!contains(danger, y)) danger.push_back(y);
    }
    if (inner.empty()) {
      kids.push_back(child);
      continue;
    }
    std::vector<std::string> avoid = danger;
    for (auto& y : free_vars(child)) avoid.push_back(y);
    avoid.insert(avoid.end(), binders.begin(), binders.end());
    std::vector<std::string> renamed = binders;
    for (auto& b : renamed) {
      if (!contains(danger, b)) continue;
      std::string fresh = fresh_name(b, avoid);
      avoid.push_back(fresh);
      inner.insert_or_assign(b, Term::var(fresh));
      b = fresh;
    }
    name = renamed[0];
    if (renamed.size() > 1) name2 = renamed[1];
    kids.push_back(subst_all(child, inner));
  }
  return t.rebuild(std::move(kids), std::move(name), std::move(name2));
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace {

using Scope = std::vector<std::pair<std::string, std::string>>;

bool alpha_rec(const Term& a, const Term& b, Scope& scope) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == TermKind::Var) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      bool left = it->first == a.name();
      bool right = it->second == b.name();
      if (left || right) return left && right;
    }
    return a.name() == b.name();
  }
  if (a.kind() == TermKind::Abs && a.annotation() && b.annotation() &&
      *a.annotation() != *b.annotation())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    auto ba = binders_of(a, i);
    auto bb = binders_of(b, i);
    for (std::size_t k = 0; k < ba.size(); ++k) scope.emplace_back(ba[k], bb[k]);
    bool ok = alpha_rec(a.child(i), b.child(i), scope);
    scope.resize(scope.size() - ba.size());
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  Scope scope;
  return alpha_rec(a, b, scope);
}

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < t.arity(); ++i) n += term_size(t.child(i));
  return n;
}

}  // namespace itnet
