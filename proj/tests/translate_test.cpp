#include <gtest/gtest.h>

#include "itnet/generate.hpp"
#include "itnet/io.hpp"
#include "itnet/syntax.hpp"
#include "itnet/translate.hpp"
#include "support.hpp"

using namespace itnet;

namespace {

std::map<std::string, int> census(const Net& n, const InteractionSystem& s) {
  std::map<std::string, int> out;
  for (AgentId a : n.agents()) ++out[s.symbol(n.symbol(a)).name];
  return out;
}

// Translates and reads back through the system generated for `t`.
Term round_trip(const Term& t) {
  GeneratedSystem g = gen_system(t);
  TranslationResult r = translate(g.term, g.symbols);
  return readback(r.net, g.system, g.symbols);
}

}  // namespace

TEST(Translate, ZeroIsOneAgent) {
  GeneratedSystem g = gen_system(Term::zero());
  TranslationResult r = translate(g.term, g.symbols);
  ASSERT_EQ(r.net.agent_count(), 1u);
  Port top = r.net.peer(Port::slot(r.root_slot));
  EXPECT_TRUE(top.is_principal());
  EXPECT_EQ(r.net.symbol(top.node), sym::zero);
  EXPECT_TRUE(r.var_slots.empty());
}

TEST(Translate, IdentityWiresBinderToBody) {
  GeneratedSystem g = gen_system(parse("\\x:nat. x"));
  Net n = translate(g.term, g.symbols).net;
  ASSERT_EQ(n.agent_count(), 1u);
  AgentId l = n.agents()[0];
  EXPECT_EQ(n.symbol(l), sym::lam);
  EXPECT_EQ(n.peer(Port::agent(l, 1)), Port::agent(l, 2));
}

TEST(Translate, UnusedBinderGetsAnEraser) {
  GeneratedSystem g = gen_system(parse("\\x:nat. 0"));
  Net n = translate(g.term, g.symbols).net;
  EXPECT_EQ(census(n, g.system), (std::map<std::string, int>{{"eps", 1}, {"lam", 1}, {"zero", 1}}));
}

TEST(Translate, SharedVariableIsCopied) {
  GeneratedSystem g = gen_system(parse("\\x:nat. cons x (cons x (cons x nil))"));
  Net n = translate(g.term, g.symbols).net;
  EXPECT_EQ(census(n, g.system)["c"], 2);
  EXPECT_TRUE(validate(n, &g.system).empty());
}

TEST(Translate, IterListHangsOffTheScrutinee) {
  GeneratedSystem g = gen_system(parse("iterlist <\\x y. cons x y> <nil> (cons 0 nil)"));
  Net n = translate(g.term, g.symbols).net;
  auto c = census(n, g.system);
  // only the scrutinee is built; the parameters live in the rules
  EXPECT_EQ(c, (std::map<std::string, int>{{"It_list_1", 1}, {"cons", 1}, {"nil", 1}, {"zero", 1}}));
  Port top = n.peer(Port::slot(0));
  ASSERT_TRUE(top.is_principal());
  EXPECT_EQ(g.system.symbol(n.symbol(top.node)).name, "It_list_1");
  Port s = n.peer(Port::agent(top.node, 1));
  EXPECT_TRUE(s.is_principal());
  EXPECT_EQ(n.symbol(s.node), sym::cons);
}

TEST(Translate, CapturedVariablesFeedFreeVariablePorts) {
  GeneratedSystem g = gen_system(parse("\\k:nat. iternat <\\x. suc x> <k> (suc 0)"));
  Net n = translate(g.term, g.symbols).net;
  const IteratorDescriptor& d = g.symbols.descriptors().at(0);
  ASSERT_EQ(d.free_vars, std::vector<std::string>{"k"});
  for (AgentId a : n.agents()) {
    if (n.symbol(a) != d.syntactic) continue;
    ASSERT_EQ(n.arity(a), 2u);
    Port fv = n.peer(Port::agent(a, 2));
    ASSERT_FALSE(fv.free);
    EXPECT_EQ(n.symbol(fv.node), sym::lam);
    EXPECT_EQ(fv.index, 1u);
  }
}

TEST(Translate, OpenTermsGetVariableSlots) {
  GeneratedSystem g = gen_system(parse("cons a (cons b (cons a nil))"));
  TranslationResult r = translate(g.term, g.symbols);
  EXPECT_EQ(r.net.slot_count(), 3u);
  EXPECT_EQ(r.var_slots.size(), 2u);
  EXPECT_EQ(r.net.slot_name(r.var_slots.at("a")), "a");
  EXPECT_TRUE(validate(r.net, &g.system).empty());
}

TEST(Translate, UnregisteredIteratorThrows) {
  GeneratedSystem g = gen_system(Term::zero());
  Term t = parse("iterbool <0> <0> true");
  EXPECT_THROW(translate(t, g.symbols), TranslationError);
  GeneratedSystem h = gen_system(t);
  // the label is registered but the parameters do not match
  EXPECT_THROW(translate(parse("iterbool <0> <suc 0> true").with_site(h.term.site()), h.symbols),
               TranslationError);
}

TEST(AttachToken, Examples) {
  GeneratedSystem g = gen_system(Term::tru());
  Net n = token_net(g.term, g.symbols);
  auto pairs = active_pairs(n);
  ASSERT_EQ(pairs.size(), 1u);
  Port under = n.peer(Port::slot(0));
  ASSERT_FALSE(under.free);
  EXPECT_EQ(n.symbol(under.node), sym::token);
  EXPECT_EQ(under.index, 1u);

  GeneratedSystem open = gen_system(parse("suc y"));
  try {
    token_net(open.term, open.symbols);
    FAIL();
  } catch (const TranslationError& e) {
    EXPECT_NE(std::string(e.what()).find("'y'"), std::string::npos);
  }
}

TEST(MatchIterator, Examples) {
  GeneratedSystem g = gen_system(parse("\\a:nat. \\b:nat. iternat <\\x. suc a> <b> 0"));
  const IteratorDescriptor& d = g.symbols.descriptors().at(0);
  auto sigma = match_iterator(d, parse("iternat <\\z. suc (suc 0)> <nil> (suc 0)"));
  ASSERT_TRUE(sigma.has_value());
  EXPECT_EQ(sigma->at("a"), parse("suc 0"));
  EXPECT_EQ(sigma->at("b"), Term::nil());
  // the step may not mention the bound variable through the substitution
  EXPECT_FALSE(match_iterator(d, parse("iternat <\\z. suc z> <0> 0")).has_value());
  EXPECT_FALSE(match_iterator(d, parse("iterbool <0> <0> true")).has_value());
  EXPECT_FALSE(match_iterator(d, parse("iternat <\\z. z> <0> 0")).has_value());
}

TEST(MatchIterator, RepeatedVariableMustAgree) {
  GeneratedSystem g = gen_system(parse("\\a:nat. iterbool <a> <a> true"));
  const IteratorDescriptor& d = g.symbols.descriptors().at(0);
  EXPECT_TRUE(match_iterator(d, parse("iterbool <suc 0> <suc 0> false")).has_value());
  EXPECT_FALSE(match_iterator(d, parse("iterbool <suc 0> <0> false")).has_value());
}

TEST(Readback, Examples) {
  EXPECT_EQ(round_trip(Term::zero()), Term::zero());
  EXPECT_TRUE(alpha_eq(round_trip(parse("\\x:nat. \\y:nat. x")), parse("\\a:nat. \\b:nat. a")));
  EXPECT_FALSE(alpha_eq(round_trip(parse("\\x:nat. \\y:nat. x")), parse("\\a:nat. \\b:nat. b")));
  Term it = parse("\\k:nat. iterlist <\\x y. cons k (cons x y)> <nil> (cons k nil)");
  EXPECT_TRUE(alpha_eq(round_trip(it), it));
}

TEST(Readback, FreeVariablesKeepTheirNames) {
  Term t = parse("cons a (cons (suc b) nil)");
  EXPECT_EQ(round_trip(t), t);
}

TEST(Readback, RejectsComputationAgents) {
  GeneratedSystem g = gen_system(parse("(\\x:nat. x) 0"));
  Net n = token_net(g.term, g.symbols);
  try {
    readback(n, g.system, g.symbols);
    FAIL();
  } catch (const ReadbackError& e) {
    EXPECT_EQ(e.reason(), ReadbackError::Reason::NotSyntactic);
    EXPECT_EQ(e.symbols(), std::vector<std::string>{"tok"});
  }
}

TEST(Readback, RejectsGarbage) {
  GeneratedSystem g = gen_system(Term::zero());
  Net n = translate(g.term, g.symbols).net;
  AgentId z = n.add_agent(sym::zero, 0);
  AgentId e = n.add_agent(sym::eraser, 0);
  n.link(Port::agent(z, 0), Port::agent(e, 0));
  try {
    readback(n, g.system, g.symbols);
    FAIL();
  } catch (const ReadbackError& err) {
    EXPECT_EQ(err.reason(), ReadbackError::Reason::Garbage);
    EXPECT_EQ(err.agents(), (std::vector<AgentId>{z, e}));
  }
}

TEST(Readback, RoundTripsCorpus) {
  for (const auto& e : testsupport::corpus()) {
    Term t = parse(e.source);
    Term back = round_trip(t);
    EXPECT_TRUE(alpha_eq(back, t)) << e.name << "\n" << to_string(back);
  }
}

// Random terms, checked against the nameless oracle rather than alpha_eq.
// Readback drops annotations, so those are dropped from the input first.
TEST(Property, RoundTripClosedAndOpen) {
  std::function<Term(const Term&)> strip = [&](const Term& t) -> Term {
    if (t.kind() == TermKind::Var) return t;
    std::vector<Term> kids;
    for (std::size_t i = 0; i < t.arity(); ++i) kids.push_back(strip(t.child(i)));
    if (t.kind() == TermKind::Abs) return Term::abs(t.name(), std::nullopt, kids[0]);
    return t.arity() ? t.rebuild(std::move(kids)) : t;
  };
  testsupport::TermGen gen(21);
  for (int i = 0; i < 400; ++i) {
    testsupport::TermGen::Env env;
    if (i % 2) env = {{"a", Type::nat()}, {"l", Type::list(Type::nat())}};
    Term t = gen.gen(gen.small_type(), 4, env);
    Term back = round_trip(t);
    EXPECT_EQ(testsupport::nameless(strip(back)), testsupport::nameless(strip(t))) << to_string(t);
  }
}

TEST(Property, SizeBoundAndNoActivePairs) {
  testsupport::TermGen gen(22);
  for (int i = 0; i < 400; ++i) {
    Term t = gen.gen(gen.small_type(), 5, {{"a", Type::nat()}});
    GeneratedSystem g = gen_system(t);
    TranslationResult r = translate(g.term, g.symbols);
    EXPECT_LE(r.net.agent_count(), 2 * term_size(t)) << to_string(t);
    EXPECT_TRUE(active_pairs(r.net).empty()) << to_string(t);
    EXPECT_TRUE(validate(r.net, &g.system).empty()) << to_string(t);
    if (free_vars(t).empty()) EXPECT_EQ(active_pairs(attach_token(std::move(r))).size(), 1u);
  }
}
