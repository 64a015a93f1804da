#include "itnet/typecheck.hpp"

#include <memory>
#include <vector>

#include "itnet/syntax.hpp"

namespace itnet {

namespace {

// Inference-time types: the surface types plus unification variables.
struct Ty;
using TyPtr = std::shared_ptr<const Ty>;

struct Ty {
  enum class Kind { Bool, Nat, List, Arrow, Meta } kind;
  std::size_t meta = 0;
  TyPtr a;
  TyPtr b;
};

class Checker {
 public:
  TyPtr infer(const Term& t, std::vector<std::pair<std::string, TyPtr>>& env) {
    switch (t.kind()) {
      case TermKind::Var:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t.name()) return it->second;
        throw TypeError("unbound variable '" + t.name() + "'");
      case TermKind::Abs: {
        if (!t.annotation())
          throw TypeError("missing type annotation on binder '" + t.name() + "'");
        TyPtr dom = from_type(*t.annotation());
        env.emplace_back(t.name(), dom);
        TyPtr cod = infer(t.body(), env);
        env.pop_back();
        return arrow(dom, cod);
      }
      case TermKind::App: {
        TyPtr f = resolve(infer(t.fun(), env));
        TyPtr a = infer(t.arg(), env);
        if (f->kind == Ty::Kind::Meta) {
          TyPtr r = fresh();
          unify(f, arrow(a, r), t.fun(), "function type");
          return r;
        }
        if (f->kind != Ty::Kind::Arrow)
          throw TypeError("type mismatch in '" + to_string(t.fun()) +
                          "': expected a function type, found " + show(f));
        unify(f->a, a, t.arg(), "argument type");
        return f->b;
      }
      case TermKind::True:
      case TermKind::False:
        return boolean();
      case TermKind::Zero:
        return nat();
      case TermKind::Suc:
        unify(nat(), infer(t.pred(), env), t.pred(), "suc argument");
        return nat();
      case TermKind::Nil:
        return list(fresh());
      case TermKind::Cons: {
        TyPtr h = infer(t.head(), env);
        TyPtr l = list(h);
        unify(l, infer(t.tail(), env), t.tail(), "cons tail");
        return l;
      }
      case TermKind::IterBool: {
        unify(boolean(), infer(t.scrutinee(), env), t.scrutinee(), "iterbool scrutinee");
        TyPtr v = infer(t.first_param(), env);
        TyPtr f = infer(t.second_param(), env);
        if (!unifies(v, f))
          throw TypeError("type mismatch in '" + to_string(t) + "': branch types " + show(v) +
                          " vs " + show(f) + " differ");
        return v;
      }
      case TermKind::IterNat: {
        unify(nat(), infer(t.scrutinee(), env), t.scrutinee(), "iternat scrutinee");
        TyPtr res = infer(t.second_param(), env);
        env.emplace_back(t.name(), res);
        TyPtr step = infer(t.first_param(), env);
        env.pop_back();
        unify(res, step, t.first_param(), "iternat step");
        return res;
      }
      case TermKind::IterList: {
        TyPtr elem = fresh();
        unify(list(elem), infer(t.scrutinee(), env), t.scrutinee(), "iterlist scrutinee");
        TyPtr res = infer(t.second_param(), env);
        env.emplace_back(t.name(), elem);
        env.emplace_back(t.name2(), res);
        TyPtr step = infer(t.first_param(), env);
        env.resize(env.size() - 2);
        unify(res, step, t.first_param(), "iterlist step");
        return res;
      }
    }
    throw TypeError("unknown term");
  }

  TyPtr from_type(const Type& t) {
    switch (t.kind()) {
      case Type::Kind::Bool:
        return boolean();
      case Type::Kind::Nat:
        return nat();
      case Type::Kind::List:
        return list(from_type(t.elem()));
      case Type::Kind::Arrow:
        return arrow(from_type(t.dom()), from_type(t.cod()));
    }
    return nat();
  }

  Type to_type(const TyPtr& raw) {
    TyPtr t = resolve(raw);
    switch (t->kind) {
      case Ty::Kind::Bool:
        return Type::boolean();
      case Ty::Kind::Nat:
      case Ty::Kind::Meta:
        return Type::nat();
      case Ty::Kind::List:
        return Type::list(to_type(t->a));
      case Ty::Kind::Arrow:
        return Type::arrow(to_type(t->a), to_type(t->b));
    }
    return Type::nat();
  }

  bool unifies(const TyPtr& x, const TyPtr& y) {
    auto saved = bindings_;
    if (unify_raw(x, y)) return true;
    bindings_ = std::move(saved);
    return false;
  }

  void unify(const TyPtr& expected, const TyPtr& found, const Term& where, const char* what) {
    if (!unifies(expected, found))
      throw TypeError("type mismatch in '" + to_string(where) + "' (" + what + "): expected " +
                      show(expected) + ", found " + show(found));
  }

 private:
  static TyPtr boolean() {
    static const TyPtr t = std::make_shared<const Ty>(Ty{Ty::Kind::Bool, 0, nullptr, nullptr});
    return t;
  }
  static TyPtr nat() {
    static const TyPtr t = std::make_shared<const Ty>(Ty{Ty::Kind::Nat, 0, nullptr, nullptr});
    return t;
  }
  static TyPtr list(TyPtr e) {
    return std::make_shared<const Ty>(Ty{Ty::Kind::List, 0, std::move(e), nullptr});
  }
  static TyPtr arrow(TyPtr d, TyPtr c) {
    return std::make_shared<const Ty>(Ty{Ty::Kind::Arrow, 0, std::move(d), std::move(c)});
  }
  TyPtr fresh() {
    bindings_.push_back(nullptr);
    return std::make_shared<const Ty>(Ty{Ty::Kind::Meta, bindings_.size() - 1, nullptr, nullptr});
  }

  TyPtr resolve(TyPtr t) const {
    while (t->kind == Ty::Kind::Meta && bindings_[t->meta]) t = bindings_[t->meta];
    return t;
  }

  bool occurs(std::size_t meta, const TyPtr& raw) const {
    TyPtr t = resolve(raw);
    if (t->kind == Ty::Kind::Meta) return t->meta == meta;
    return (t->a && occurs(meta, t->a)) || (t->b && occurs(meta, t->b));
  }

  bool unify_raw(const TyPtr& x0, const TyPtr& y0) {
    TyPtr x = resolve(x0);
    TyPtr y = resolve(y0);
    if (x->kind == Ty::Kind::Meta && y->kind == Ty::Kind::Meta && x->meta == y->meta) return true;
    if (x->kind == Ty::Kind::Meta) {
      if (occurs(x->meta, y)) return false;
      bindings_[x->meta] = y;
      return true;
    }
    if (y->kind == Ty::Kind::Meta) return unify_raw(y, x);
    if (x->kind != y->kind) return false;
    switch (x->kind) {
      case Ty::Kind::List:
        return unify_raw(x->a, y->a);
      case Ty::Kind::Arrow:
        return unify_raw(x->a, y->a) && unify_raw(x->b, y->b);
      default:
        return true;
    }
  }

  std::string show(const TyPtr& raw) const {
    TyPtr t = resolve(raw);
    switch (t->kind) {
      case Ty::Kind::Bool:
        return "bool";
      case Ty::Kind::Nat:
        return "nat";
      case Ty::Kind::Meta:
        return "?" + std::to_string(t->meta);
      case Ty::Kind::List: {
        TyPtr e = resolve(t->a);
        bool paren = e->kind == Ty::Kind::List || e->kind == Ty::Kind::Arrow;
        return "list " + (paren ? "(" + show(e) + ")" : show(e));
      }
      case Ty::Kind::Arrow: {
        TyPtr d = resolve(t->a);
        bool paren = d->kind == Ty::Kind::Arrow || d->kind == Ty::Kind::List;
        return (paren ? "(" + show(d) + ")" : show(d)) + " -> " + show(t->b);
      }
    }
    return "?";
  }

  std::vector<TyPtr> bindings_;
};

}  // namespace

Type typecheck(const Term& t, const TypeEnv& env) {
  Checker c;
  std::vector<std::pair<std::string, TyPtr>> scope;
  for (const auto& [name, ty] : env) scope.emplace_back(name, c.from_type(ty));
  return c.to_type(c.infer(t, scope));
}

bool has_type(const Term& t, const Type& expected, const TypeEnv& env) {
  Checker c;
  std::vector<std::pair<std::string, TyPtr>> scope;
  for (const auto& [name, ty] : env) scope.emplace_back(name, c.from_type(ty));
  try {
    return c.unifies(c.from_type(expected), c.infer(t, scope));
  } catch (const TypeError&) {
    return false;
  }
}

}  // namespace itnet
