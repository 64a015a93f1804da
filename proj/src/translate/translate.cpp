#include "itnet/translate.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "itnet/syntax.hpp"

namespace itnet {

// ---------------------------------------------------------------------------
// Matching iterator instances against their registered occurrence

namespace {

using Scope = std::vector<std::pair<std::string, std::string>>;

std::optional<std::size_t> innermost(const Scope& scope, const std::string& name, bool left) {
  for (std::size_t k = scope.size(); k-- > 0;) {
    if ((left ? scope[k].first : scope[k].second) == name) return k;
  }
  return std::nullopt;
}

bool match_rec(const Term& p, const Term& t, Scope& scope, const std::vector<std::string>& holes,
               std::map<std::string, Term>& sigma) {
  if (p.kind() == TermKind::Var) {
    if (auto k = innermost(scope, p.name(), true)) {
      return t.kind() == TermKind::Var && innermost(scope, t.name(), false) == k;
    }
    if (std::find(holes.begin(), holes.end(), p.name()) != holes.end()) {
      for (const auto& y : free_vars(t))
        if (innermost(scope, y, false)) return false;
      auto [it, inserted] = sigma.emplace(p.name(), t);
      return inserted || alpha_eq(it->second, t);
    }
    return t.kind() == TermKind::Var && t.name() == p.name() &&
           !innermost(scope, t.name(), false);
  }
  if (p.kind() != t.kind()) return false;
  if (p.kind() == TermKind::Abs && p.annotation() && t.annotation() &&
      *p.annotation() != *t.annotation())
    return false;
  for (std::size_t i = 0; i < p.arity(); ++i) {
    auto bp = binders_of(p, i);
    auto bt = binders_of(t, i);
    for (std::size_t k = 0; k < bp.size(); ++k) scope.emplace_back(bp[k], bt[k]);
    bool ok = match_rec(p.child(i), t.child(i), scope, holes, sigma);
    scope.resize(scope.size() - bp.size());
    if (!ok) return false;
  }
  return true;
}

TermKind kind_of(IteratorKind k) {
  switch (k) {
    case IteratorKind::Bool:
      return TermKind::IterBool;
    case IteratorKind::Nat:
      return TermKind::IterNat;
    case IteratorKind::List:
      return TermKind::IterList;
  }
  return TermKind::IterBool;
}

}  // namespace

std::optional<std::map<std::string, Term>> match_iterator(const IteratorDescriptor& d,
                                                          const Term& t) {
  if (t.kind() != kind_of(d.kind)) return std::nullopt;
  std::map<std::string, Term> sigma;
  Scope scope;
  if (d.kind == IteratorKind::Nat) scope.emplace_back(d.binder, t.name());
  if (d.kind == IteratorKind::List) {
    scope.emplace_back(d.binder, t.name());
    scope.emplace_back(d.binder2, t.name2());
  }
  if (!match_rec(d.params[0], t.first_param(), scope, d.free_vars, sigma)) return std::nullopt;
  scope.clear();
  if (!match_rec(d.params[1], t.second_param(), scope, d.free_vars, sigma)) return std::nullopt;
  for (const auto& v : d.free_vars)
    if (!sigma.count(v)) return std::nullopt;
  return sigma;
}

// ---------------------------------------------------------------------------
// Emission

void TermEmitter::emit(const Term& t, Port root, Uses& uses) {
  auto leaf = [&](SymbolId s) {
    AgentId a = net_.add_agent(s, 0);
    net_.link(Port::agent(a, 0), root);
  };
  switch (t.kind()) {
    case TermKind::Var:
      uses[t.name()].push_back(root);
      return;
    case TermKind::True:
      return leaf(sym::tru);
    case TermKind::False:
      return leaf(sym::fls);
    case TermKind::Zero:
      return leaf(sym::zero);
    case TermKind::Nil:
      return leaf(sym::nil);
    case TermKind::Abs: {
      AgentId a = net_.add_agent(sym::lam, 2);
      net_.link(Port::agent(a, 0), root);
      auto outer = uses.extract(t.name());
      emit(t.body(), Port::agent(a, 2), uses);
      std::vector<Port> mine;
      if (auto node = uses.extract(t.name())) mine = std::move(node.mapped());
      if (outer) uses.insert(std::move(outer));
      bind(Port::agent(a, 1), mine);
      return;
    }
    case TermKind::App: {
      AgentId a = net_.add_agent(sym::app, 2);
      net_.link(Port::agent(a, 0), root);
      emit(t.fun(), Port::agent(a, 1), uses);
      emit(t.arg(), Port::agent(a, 2), uses);
      return;
    }
    case TermKind::Suc: {
      AgentId a = net_.add_agent(sym::suc, 1);
      net_.link(Port::agent(a, 0), root);
      emit(t.pred(), Port::agent(a, 1), uses);
      return;
    }
    case TermKind::Cons: {
      AgentId a = net_.add_agent(sym::cons, 2);
      net_.link(Port::agent(a, 0), root);
      emit(t.head(), Port::agent(a, 1), uses);
      emit(t.tail(), Port::agent(a, 2), uses);
      return;
    }
    case TermKind::IterBool:
    case TermKind::IterNat:
    case TermKind::IterList: {
      const IteratorDescriptor* d = t.site() ? symtab_.by_site(*t.site()) : nullptr;
      if (!d) throw TranslationError("unregistered iterator occurrence: " + to_string(t));
      auto sigma = match_iterator(*d, t);
      if (!sigma)
        throw TranslationError("iterator term does not match its registered occurrence: " +
                               to_string(t));
      const auto k = static_cast<std::uint32_t>(d->free_vars.size());
      AgentId a = net_.add_agent(d->syntactic, 1 + k);
      net_.link(Port::agent(a, 0), root);
      // Parameters precede the scrutinee in occurrence order.
      for (std::uint32_t i = 0; i < k; ++i)
        emit(sigma->at(d->free_vars[i]), Port::agent(a, 2 + i), uses);
      emit(t.scrutinee(), Port::agent(a, 1), uses);
      return;
    }
  }
}

std::optional<Port> TermEmitter::gather(const std::vector<Port>& uses) {
  if (uses.empty()) return std::nullopt;
  if (uses.size() == 1) return uses[0];
  AgentId top = net_.add_agent(sym::copy, 2);
  AgentId c = top;
  for (std::size_t i = 0; i + 2 < uses.size(); ++i) {
    net_.link(Port::agent(c, 1), uses[i]);
    AgentId next = net_.add_agent(sym::copy, 2);
    net_.link(Port::agent(c, 2), Port::agent(next, 0));
    c = next;
  }
  net_.link(Port::agent(c, 1), uses[uses.size() - 2]);
  net_.link(Port::agent(c, 2), uses.back());
  return Port::agent(top, 0);
}

void TermEmitter::bind(Port source, const std::vector<Port>& uses) {
  if (auto g = gather(uses)) {
    net_.link(source, *g);
  } else {
    AgentId e = net_.add_agent(sym::eraser, 0);
    net_.link(source, Port::agent(e, 0));
  }
}

TranslationResult translate(const Term& t, const SymbolTable& symtab) {
  TranslationResult r;
  r.root_slot = r.net.add_slot("root");
  TermEmitter emitter(r.net, symtab);
  TermEmitter::Uses uses;
  emitter.emit(t, Port::slot(r.root_slot), uses);
  for (const auto& v : free_vars(t)) {
    std::uint32_t s = r.net.add_slot(v);
    emitter.bind(Port::slot(s), uses.at(v));
    r.var_slots.emplace(v, s);
  }
  return r;
}

Net attach_token(TranslationResult r) {
  if (!r.var_slots.empty())
    throw TranslationError("cannot attach the token to an open term (free variable '" +
                           r.var_slots.begin()->first + "')");
  Net net = std::move(r.net);
  AgentId tok = net.add_agent(sym::token, 1);
  Port top = net.peer(Port::slot(r.root_slot));
  net.link(Port::agent(tok, 0), top);
  net.link(Port::slot(r.root_slot), Port::agent(tok, 1));
  return net;
}

Net token_net(const Term& t, const SymbolTable& symtab) {
  return attach_token(translate(t, symtab));
}

// ---------------------------------------------------------------------------
// Readback

namespace {

class Reader {
 public:
  Reader(const Net& net, const InteractionSystem& system, const SymbolTable& symtab)
      : net_(net), system_(system), symtab_(symtab) {
    for (std::uint32_t s = 0; s < net.slot_count(); ++s) taken_.push_back(net.slot_name(s));
  }

  Term run() {
    std::vector<std::string> computation;
    for (AgentId a : net_.agents()) {
      const auto& decl = system_.symbol(net_.symbol(a));
      if (is_evaluation_kind(decl.kind) &&
          std::find(computation.begin(), computation.end(), decl.name) == computation.end())
        computation.push_back(decl.name);
    }
    if (!computation.empty()) {
      std::string names;
      for (const auto& n : computation) names += (names.empty() ? "" : ", ") + n;
      throw ReadbackError(ReadbackError::Reason::NotSyntactic,
                          "net not in syntactic form (computation agents: " + names + ")",
                          computation);
    }
    if (net_.slot_count() == 0)
      throw ReadbackError(ReadbackError::Reason::Malformed, "net has no interface");
    Term t = read(Port::slot(0));
    std::vector<AgentId> garbage;
    for (AgentId a : net_.agents())
      if (!visited_.count(a)) garbage.push_back(a);
    if (!garbage.empty()) {
      std::string ids;
      for (AgentId a : garbage) ids += (ids.empty() ? "" : " ") + std::to_string(a);
      throw ReadbackError(ReadbackError::Reason::Garbage,
                          "garbage component unreachable from the root (agents " + ids + ")", {},
                          garbage);
    }
    return t;
  }

 private:
  [[noreturn]] void malformed(const std::string& what, AgentId a) const {
    throw ReadbackError(ReadbackError::Reason::Malformed, what + " at agent " + std::to_string(a),
                        {}, {a});
  }

  // The term whose root is wired to `position`.
  Term read(Port position) { return source(net_.peer(position)); }

  Term source(Port q) {
    while (true) {
      if (q.is_none())
        throw ReadbackError(ReadbackError::Reason::Malformed, "unwired port");
      if (q.free) return Term::var(net_.slot_name(q.node));
      visited_.insert(q.node);
      if (q.index == 0) return node(q.node);
      switch (system_.symbol(net_.symbol(q.node)).kind) {
        case SymbolKind::Lambda: {
          auto it = binder_.find(q.node);
          if (q.index != 1 || it == binder_.end()) malformed("variable outside its binder", q.node);
          return Term::var(it->second);
        }
        case SymbolKind::Copy:
        case SymbolKind::Duplicator:
          // An occurrence hanging off a fan: the variable is whatever feeds it.
          q = net_.peer(Port::agent(q.node, 0));
          continue;
        default:
          malformed("term position wired to an auxiliary port", q.node);
      }
    }
  }

  Term node(AgentId a) {
    SymbolId s = net_.symbol(a);
    switch (s) {
      case sym::tru:
        return Term::tru();
      case sym::fls:
        return Term::fls();
      case sym::zero:
        return Term::zero();
      case sym::nil:
        return Term::nil();
      case sym::suc:
        return Term::suc(read(Port::agent(a, 1)));
      case sym::cons: {
        Term h = read(Port::agent(a, 1));
        return Term::cons(h, read(Port::agent(a, 2)));
      }
      case sym::app: {
        Term f = read(Port::agent(a, 1));
        return Term::app(f, read(Port::agent(a, 2)));
      }
      case sym::lam: {
        std::string name = fresh_name("x", taken_);
        taken_.push_back(name);
        binder_.emplace(a, name);
        Port b = net_.peer(Port::agent(a, 1));
        if (b.is_principal() && net_.symbol(b.node) == sym::eraser) visited_.insert(b.node);
        return Term::abs(name, std::nullopt, read(Port::agent(a, 2)));
      }
      default:
        break;
    }
    const IteratorDescriptor* d = symtab_.by_symbol(s);
    if (!d || d->syntactic != s) malformed("unexpected " + system_.symbol(s).name, a);
    Term scrutinee = read(Port::agent(a, 1));
    std::map<std::string, Term> sigma;
    for (std::size_t i = 0; i < d->free_vars.size(); ++i)
      sigma.insert_or_assign(d->free_vars[i], read(Port::agent(a, static_cast<std::uint32_t>(2 + i))));
    // Substitute into the whole iterator so its own binders are renamed when
    // they would capture; the placeholder scrutinee is replaced afterwards.
    Term shell = subst_all(d->with_scrutinee(Term::zero()), sigma);
    return shell.rebuild({shell.first_param(), shell.second_param(), scrutinee});
  }

  const Net& net_;
  const InteractionSystem& system_;
  const SymbolTable& symtab_;
  std::unordered_map<AgentId, std::string> binder_;
  std::unordered_set<AgentId> visited_;
  std::vector<std::string> taken_;
};

}  // namespace

Term readback(const Net& net, const InteractionSystem& system, const SymbolTable& symtab) {
  return Reader(net, system, symtab).run();
}

}  // namespace itnet
