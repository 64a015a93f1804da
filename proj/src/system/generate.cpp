#include "itnet/generate.hpp"

#include <stdexcept>

#include "itnet/translate.hpp"

namespace itnet {

namespace {

class TemplateBuilder {
 public:
  TemplateBuilder(SymbolId first, SymbolId second, std::uint32_t holes, std::string label) {
    rule_.first = first;
    rule_.second = second;
    rule_.label = std::move(label);
    for (std::uint32_t i = 0; i < holes; ++i) rule_.replacement.add_slot("h" + std::to_string(i + 1));
  }

  Net& net() { return rule_.replacement; }
  static Port hole(std::uint32_t i) { return Port::slot(i); }

  AgentId agent(SymbolId s, std::uint32_t arity) { return rule_.replacement.add_agent(s, arity); }
  void link(Port a, Port b) { rule_.replacement.link(a, b); }
  void erase(Port p) { link(p, Port::agent(agent(sym::eraser, 0), 0)); }

  RuleTemplate finish() { return std::move(rule_); }

 private:
  RuleTemplate rule_;
};

Port P(AgentId a, std::uint32_t i) { return Port::agent(a, i); }

// An eraser meeting an agent leaves one eraser on each auxiliary wire.
RuleTemplate erase_rule(SymbolId target, std::uint32_t n, const char* label) {
  TemplateBuilder b(sym::eraser, target, n, label);
  for (std::uint32_t i = 0; i < n; ++i) b.erase(TemplateBuilder::hole(i));
  return b.finish();
}

// A copier (c or delta) meeting an agent yields two copies of the agent,
// one per copier output, and a duplicator on each auxiliary wire.
RuleTemplate copy_rule(SymbolId copier, SymbolId target, std::uint32_t n, const char* label) {
  TemplateBuilder b(copier, target, 2 + n, label);
  AgentId left = b.agent(target, n);
  AgentId right = b.agent(target, n);
  b.link(P(left, 0), TemplateBuilder::hole(0));
  b.link(P(right, 0), TemplateBuilder::hole(1));
  for (std::uint32_t i = 1; i <= n; ++i) {
    AgentId d = b.agent(sym::dup, 2);
    b.link(P(d, 0), TemplateBuilder::hole(1 + i));
    b.link(P(d, 1), P(left, i));
    b.link(P(d, 2), P(right, i));
  }
  return b.finish();
}

InteractionSystem make_base_system() {
  InteractionSystem s;
  s.add_symbol("tok", 1, SymbolKind::Token);
  s.add_symbol("app", 2, SymbolKind::SyntacticApp);
  s.add_symbol("capp", 2, SymbolKind::ComputationApp);
  s.add_symbol("lam", 2, SymbolKind::Lambda);
  s.add_symbol("true", 0, SymbolKind::Constructor);
  s.add_symbol("false", 0, SymbolKind::Constructor);
  s.add_symbol("zero", 0, SymbolKind::Constructor);
  s.add_symbol("nil", 0, SymbolKind::Constructor);
  s.add_symbol("suc", 1, SymbolKind::Constructor);
  s.add_symbol("cons", 2, SymbolKind::Constructor);
  s.add_symbol("c", 2, SymbolKind::Copy);
  s.add_symbol("delta", 2, SymbolKind::Duplicator);
  s.add_symbol("eps", 0, SymbolKind::Eraser);
  if (s.symbols().size() != sym::base_count) throw std::logic_error("base symbol table drift");

  using H = TemplateBuilder;

  // R1: the token turns a syntactic application into a computation one and
  // descends into the function.
  {
    H b(sym::token, sym::app, 3, "R1");
    AgentId c = b.agent(sym::capp, 2);
    AgentId t = b.agent(sym::token, 1);
    b.link(P(c, 1), H::hole(0));
    b.link(P(c, 2), H::hole(2));
    b.link(P(t, 1), P(c, 0));
    b.link(P(t, 0), H::hole(1));
    s.add_rule(b.finish());
  }
  // R2: an abstraction is a value; the token disappears and the abstraction
  // now faces whatever observed the token.
  {
    H b(sym::token, sym::lam, 3, "R2");
    AgentId l = b.agent(sym::lam, 2);
    b.link(P(l, 0), H::hole(0));
    b.link(P(l, 1), H::hole(1));
    b.link(P(l, 2), H::hole(2));
    s.add_rule(b.finish());
  }
  // R3: constructors stop evaluation.
  for (SymbolId k : {sym::tru, sym::fls, sym::zero, sym::nil, sym::suc, sym::cons}) {
    const std::uint32_t n = s.symbol(k).arity;
    H b(sym::token, k, 1 + n, "R3");
    AgentId x = b.agent(k, n);
    b.link(P(x, 0), H::hole(0));
    for (std::uint32_t i = 1; i <= n; ++i) b.link(P(x, i), H::hole(i));
    s.add_rule(b.finish());
  }
  // R4: beta. The argument is wired to the binder and a token restarts
  // evaluation on the body.
  {
    H b(sym::capp, sym::lam, 4, "R4");
    b.link(H::hole(1), H::hole(2));
    AgentId t = b.agent(sym::token, 1);
    b.link(P(t, 0), H::hole(3));
    b.link(P(t, 1), H::hole(0));
    s.add_rule(b.finish());
  }
  // R9: erasing.
  for (SymbolId a = 0; a < sym::base_count; ++a) s.add_rule(erase_rule(a, s.symbol(a).arity, "R9"));
  // R10, R11: copying syntax.
  for (SymbolId a : {sym::lam, sym::app, sym::tru, sym::fls, sym::zero, sym::nil, sym::suc,
                     sym::cons}) {
    s.add_rule(copy_rule(sym::copy, a, s.symbol(a).arity, "R10"));
    s.add_rule(copy_rule(sym::dup, a, s.symbol(a).arity, "R11"));
  }
  // R12: a duplicator crossing a fan-out copies it.
  s.add_rule(copy_rule(sym::dup, sym::copy, 2, "R12"));
  // R13: duplicators from the same copy meet and annihilate.
  {
    H b(sym::dup, sym::dup, 4, "R13");
    b.link(H::hole(0), H::hole(2));
    b.link(H::hole(1), H::hole(3));
    s.add_rule(b.finish());
  }
  return s;
}

// ---------------------------------------------------------------------------
// Per-program generation

class Labeler {
 public:
  Term label(const Term& t) {
    if (t.arity() == 0) return t;
    if (!t.is_iterator()) {
      std::vector<Term> kids;
      for (std::size_t i = 0; i < t.arity(); ++i) kids.push_back(label(t.child(i)));
      return t.rebuild(std::move(kids));
    }
    Site site = static_cast<Site>(descriptors.size() + 1);
    descriptors.emplace_back();
    std::vector<Term> kids;
    for (std::size_t i = 0; i < t.arity(); ++i) kids.push_back(label(t.child(i)));
    Term labelled = t.rebuild(std::move(kids)).with_site(site);

    IteratorDescriptor d;
    d.kind = t.kind() == TermKind::IterBool  ? IteratorKind::Bool
             : t.kind() == TermKind::IterNat ? IteratorKind::Nat
                                             : IteratorKind::List;
    d.site = site;
    d.binder = t.kind() == TermKind::IterBool ? "" : t.name();
    d.binder2 = t.kind() == TermKind::IterList ? t.name2() : "";
    d.params = {labelled.first_param(), labelled.second_param()};
    // The scrutinee's variables are wired in the main net, not through the
    // iterator agent.
    d.free_vars = free_vars(d.with_scrutinee(Term::zero()));
    descriptors[site - 1] = std::move(d);
    return labelled;
  }

  std::vector<IteratorDescriptor> descriptors;
};

std::vector<Port> take(TermEmitter::Uses& uses, const std::string& name) {
  auto node = uses.extract(name);
  return node ? std::move(node.mapped()) : std::vector<Port>{};
}

// Case rule (R6): the computation iterator meets constructor `ctor`.
// `body` is the parameter to run; `head` names the variable bound to the
// constructor's first argument, `rec` the variable bound to the recursive
// call on its last argument (empty strings when absent).
RuleTemplate case_rule(const IteratorDescriptor& d, const SymbolTable& symtab,
                       const InteractionSystem& base, SymbolId ctor, const Term& body,
                       const std::string& head, const std::string& rec) {
  const auto k = static_cast<std::uint32_t>(d.free_vars.size());
  const std::uint32_t n = base.symbol(ctor).arity;
  TemplateBuilder b(d.computation, ctor, 1 + k + n, "R6");
  auto fv_hole = [&](std::uint32_t i) { return TemplateBuilder::hole(1 + i); };
  auto ctor_hole = [&](std::uint32_t i) { return TemplateBuilder::hole(1 + k + i); };

  TermEmitter em(b.net(), symtab);
  TermEmitter::Uses uses;
  AgentId tok = b.agent(sym::token, 1);
  b.link(P(tok, 1), TemplateBuilder::hole(0));
  em.emit(body, P(tok, 0), uses);

  // Binder uses are taken first: a binder may shadow a free variable of the
  // other parameter.
  std::vector<Port> head_uses;
  std::vector<Port> rec_uses;
  if (!rec.empty()) rec_uses = take(uses, rec);
  if (!head.empty()) head_uses = take(uses, head);

  if (!head.empty()) em.bind(ctor_hole(0), head_uses);

  std::optional<AgentId> again;
  if (!rec.empty()) {
    again = b.agent(d.syntactic, 1 + k);
    b.link(P(*again, 1), ctor_hole(n - 1));
    em.bind(P(*again, 0), rec_uses);
  }

  for (std::uint32_t i = 0; i < k; ++i) {
    std::optional<Port> in_body = em.gather(take(uses, d.free_vars[i]));
    std::optional<Port> in_again;
    if (again) in_again = P(*again, 2 + i);
    if (in_body && in_again) {
      AgentId c = b.agent(sym::copy, 2);
      b.link(P(c, 0), fv_hole(i));
      b.link(P(c, 1), *in_body);
      b.link(P(c, 2), *in_again);
    } else if (in_body) {
      b.link(fv_hole(i), *in_body);
    } else if (in_again) {
      b.link(fv_hole(i), *in_again);
    } else {
      b.erase(fv_hole(i));
    }
  }
  if (!uses.empty())
    throw std::logic_error("iterator parameter has a free variable outside its descriptor: " +
                           uses.begin()->first);
  return b.finish();
}

}  // namespace

const InteractionSystem& base_system() {
  static const InteractionSystem s = make_base_system();
  return s;
}

std::vector<RuleTemplate> iterator_rules(const IteratorDescriptor& d, const SymbolTable& symtab) {
  const InteractionSystem& base = base_system();
  const auto k = static_cast<std::uint32_t>(d.free_vars.size());
  std::vector<RuleTemplate> rules;

  // R5: the token turns the syntactic iterator into its computation twin
  // and goes on to evaluate the scrutinee.
  {
    TemplateBuilder b(sym::token, d.syntactic, 2 + k, "R5");
    AgentId it = b.agent(d.computation, 1 + k);
    AgentId tok = b.agent(sym::token, 1);
    b.link(P(it, 1), TemplateBuilder::hole(0));
    for (std::uint32_t i = 0; i < k; ++i) b.link(P(it, 2 + i), TemplateBuilder::hole(2 + i));
    b.link(P(tok, 1), P(it, 0));
    b.link(P(tok, 0), TemplateBuilder::hole(1));
    rules.push_back(b.finish());
  }

  switch (d.kind) {
    case IteratorKind::Bool:
      rules.push_back(case_rule(d, symtab, base, sym::tru, d.params[0], "", ""));
      rules.push_back(case_rule(d, symtab, base, sym::fls, d.params[1], "", ""));
      break;
    case IteratorKind::Nat:
      rules.push_back(case_rule(d, symtab, base, sym::zero, d.params[1], "", ""));
      rules.push_back(case_rule(d, symtab, base, sym::suc, d.params[0], "", d.binder));
      break;
    case IteratorKind::List:
      rules.push_back(case_rule(d, symtab, base, sym::nil, d.params[1], "", ""));
      rules.push_back(case_rule(d, symtab, base, sym::cons, d.params[0], d.binder, d.binder2));
      break;
  }

  // R7, R8: management. Copiers never meet the computation twin.
  rules.push_back(erase_rule(d.syntactic, 1 + k, "R7"));
  rules.push_back(erase_rule(d.computation, 1 + k, "R7"));
  rules.push_back(copy_rule(sym::copy, d.syntactic, 1 + k, "R8"));
  rules.push_back(copy_rule(sym::dup, d.syntactic, 1 + k, "R8"));
  return rules;
}

GeneratedSystem gen_system(const Term& t) {
  Labeler labeler;
  GeneratedSystem out{labeler.label(t), base_system(), {}};
  for (auto& d : labeler.descriptors) {
    const auto arity = static_cast<std::uint32_t>(1 + d.free_vars.size());
    const std::string n = std::to_string(d.site);
    d.syntactic =
        out.system.add_symbol("It_" + std::string(to_string(d.kind)) + "_" + n, arity,
                              SymbolKind::IteratorSyntactic);
    d.computation =
        out.system.add_symbol("ItC_" + std::string(to_string(d.kind)) + "_" + n, arity,
                              SymbolKind::IteratorComputation);
    out.symbols.add(d);
  }
  for (const auto& d : out.symbols.descriptors())
    for (auto& rule : iterator_rules(d, out.symbols)) out.system.add_rule(std::move(rule));
  return out;
}

}  // namespace itnet
