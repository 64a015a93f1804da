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

const RuleTemplate& rule(const InteractionSystem& s, const std::string& a, const std::string& b) {
  const RuleTemplate* r = s.find_rule(*s.find_symbol(a), *s.find_symbol(b));
  if (!r) throw std::runtime_error("no rule " + a + " " + b);
  return *r;
}

void check_system(const InteractionSystem& s) {
  std::set<std::pair<SymbolId, SymbolId>> seen;
  for (const auto& [key, r] : s.rules()) {
    auto k = std::minmax(r.first, r.second);
    EXPECT_TRUE(seen.insert({k.first, k.second}).second) << "two rules for one pair";
    EXPECT_EQ(r.replacement.slot_count(), s.symbol(r.first).arity + s.symbol(r.second).arity);
    auto defects = validate(r.replacement, &s);
    EXPECT_TRUE(defects.empty()) << s.symbol(r.first).name << " >< " << s.symbol(r.second).name
                                 << ": " << (defects.empty() ? "" : defects[0].message);
    // every hole is used exactly once: its peer points back at it
    for (std::uint32_t h = 0; h < r.replacement.slot_count(); ++h) {
      Port p = r.replacement.peer(Port::slot(h));
      ASSERT_FALSE(p.is_none());
      EXPECT_EQ(r.replacement.peer(p), Port::slot(h));
    }
  }
  // only iterator symbols extend the base signature
  for (const auto& sym : s.symbols())
    if (sym.kind != SymbolKind::IteratorSyntactic && sym.kind != SymbolKind::IteratorComputation)
      EXPECT_LT(sym.id, sym::base_count) << sym.name;
}

}  // namespace

TEST(BaseSystem, Symbols) {
  const auto& s = base_system();
  ASSERT_EQ(s.symbols().size(), sym::base_count);
  EXPECT_EQ(s.symbol(sym::token).arity, 1u);
  EXPECT_EQ(s.symbol(sym::eraser).arity, 0u);
  EXPECT_EQ(s.symbol(sym::copy).arity, 2u);
  EXPECT_EQ(s.symbol(sym::dup).arity, 2u);
  EXPECT_EQ(s.symbol(sym::cons).arity, 2u);
  EXPECT_EQ(s.symbol(sym::suc).arity, 1u);
}

TEST(BaseSystem, RulesAreWellFormed) { check_system(base_system()); }

TEST(BaseSystem, TokenOnApplication) {
  const auto& s = base_system();
  const RuleTemplate& r = rule(s, "tok", "app");
  EXPECT_EQ(r.label, "R1");
  EXPECT_EQ(r.replacement.slot_count(), 3u);  // observer, function, argument
  EXPECT_EQ(census(r.replacement, s), (std::map<std::string, int>{{"capp", 1}, {"tok", 1}}));
}

TEST(BaseSystem, TokenOnLambdaReemitsIt) {
  const auto& s = base_system();
  const RuleTemplate& r = rule(s, "tok", "lam");
  ASSERT_EQ(r.replacement.agent_count(), 1u);
  AgentId l = r.replacement.agents()[0];
  EXPECT_EQ(r.replacement.symbol(l), sym::lam);
  EXPECT_EQ(r.replacement.peer(Port::agent(l, 0)), Port::slot(0));
  EXPECT_EQ(r.replacement.peer(Port::agent(l, 1)), Port::slot(1));
  EXPECT_EQ(r.replacement.peer(Port::agent(l, 2)), Port::slot(2));
}

TEST(BaseSystem, Coverage) {
  const auto& s = base_system();
  for (SymbolId a = 0; a < sym::base_count; ++a) EXPECT_NE(s.find_rule(sym::eraser, a), nullptr);
  for (SymbolId k : {sym::tru, sym::fls, sym::zero, sym::nil, sym::suc, sym::cons}) {
    EXPECT_NE(s.find_rule(sym::token, k), nullptr);
    EXPECT_NE(s.find_rule(sym::copy, k), nullptr);
    EXPECT_NE(s.find_rule(sym::dup, k), nullptr);
  }
  EXPECT_NE(s.find_rule(sym::dup, sym::copy), nullptr);
  EXPECT_NE(s.find_rule(sym::dup, sym::dup), nullptr);
  // unreachable configurations have no rule
  EXPECT_EQ(s.find_rule(sym::copy, sym::token), nullptr);
  EXPECT_EQ(s.find_rule(sym::copy, sym::copy), nullptr);
  EXPECT_EQ(s.find_rule(sym::copy, sym::capp), nullptr);
  EXPECT_EQ(s.find_rule(sym::dup, sym::token), nullptr);
  EXPECT_EQ(s.find_rule(sym::token, sym::token), nullptr);
}

TEST(BaseSystem, CopyShape) {
  const auto& s = base_system();
  const RuleTemplate& r = rule(s, "c", "cons");
  EXPECT_EQ(census(r.replacement, s), (std::map<std::string, int>{{"cons", 2}, {"delta", 2}}));
  const RuleTemplate& dd = rule(s, "delta", "delta");
  EXPECT_EQ(dd.replacement.agent_count(), 0u);
  EXPECT_EQ(dd.replacement.peer(Port::slot(0)), Port::slot(2));
  EXPECT_EQ(dd.replacement.peer(Port::slot(1)), Port::slot(3));
}

TEST(GenSystem, ClosedLambdaAddsNothing) {
  GeneratedSystem g = gen_system(parse("\\x:nat. x"));
  EXPECT_EQ(g.system.symbols().size(), base_system().symbols().size());
  EXPECT_EQ(g.system.rules().size(), base_system().rules().size());
  EXPECT_TRUE(g.symbols.descriptors().empty());
}

TEST(GenSystem, OneIterator) {
  GeneratedSystem g = gen_system(parse("iternat <\\x. suc x> <0> 0"));
  ASSERT_EQ(g.symbols.descriptors().size(), 1u);
  const auto& d = g.symbols.descriptors()[0];
  EXPECT_EQ(g.system.symbol(d.syntactic).name, "It_nat_1");
  EXPECT_EQ(g.system.symbol(d.computation).name, "ItC_nat_1");
  EXPECT_EQ(g.system.symbol(d.syntactic).arity, 1u);
  std::map<std::string, int> labels;
  for (const auto& r : iterator_rules(d, g.symbols)) ++labels[r.label];
  EXPECT_EQ(labels, (std::map<std::string, int>{{"R5", 1}, {"R6", 2}, {"R7", 2}, {"R8", 2}}));
  EXPECT_EQ(g.system.rules().size(), base_system().rules().size() + 7);
  check_system(g.system);
}

TEST(GenSystem, EachOccurrenceGetsItsOwnSymbols) {
  GeneratedSystem g = gen_system(parse(
      "(\\f:nat -> nat. f) (\\n:nat. iternat <\\x. suc x> <0> 0) (iternat <\\x. suc x> <0> 0)"));
  ASSERT_EQ(g.symbols.descriptors().size(), 2u);
  EXPECT_NE(g.symbols.descriptors()[0].syntactic, g.symbols.descriptors()[1].syntactic);
  EXPECT_TRUE(g.system.find_symbol("It_nat_2").has_value());
}

TEST(GenSystem, PreorderNumberingAndLabels) {
  GeneratedSystem g = gen_system(parse(
      "iterlist <\\x y. iterbool <y> <x> true> <iternat <\\z. z> <0> 0> (iterlist <\\a b. b> <nil> nil)"));
  std::vector<std::string> names;
  for (const auto& d : g.symbols.descriptors()) names.push_back(g.system.symbol(d.syntactic).name);
  EXPECT_EQ(names, (std::vector<std::string>{"It_list_1", "It_bool_2", "It_nat_3", "It_list_4"}));
  EXPECT_EQ(g.term.site(), 1u);
  EXPECT_EQ(g.term.first_param().site(), 2u);
  EXPECT_EQ(g.term.scrutinee().site(), 4u);
  check_system(g.system);
}

TEST(GenSystem, FreeVariableOrderAndArity) {
  GeneratedSystem g = gen_system(parse(
      "\\a:nat. \\b:nat. \\l:list nat. iterlist <\\x y. cons b (cons a y)> <cons a (cons l nil)> l"));
  ASSERT_EQ(g.symbols.descriptors().size(), 1u);
  const auto& d = g.symbols.descriptors()[0];
  EXPECT_EQ(d.free_vars, (std::vector<std::string>{"b", "a", "l"}));
  EXPECT_EQ(g.system.symbol(d.syntactic).arity, 4u);
  EXPECT_EQ(g.system.symbol(d.computation).arity, 4u);
}

TEST(GenSystem, ScrutineeVariablesStayOutside) {
  GeneratedSystem g = gen_system(parse("\\n:nat. iternat <\\x. suc x> <0> n"));
  EXPECT_TRUE(g.symbols.descriptors()[0].free_vars.empty());
}

TEST(IteratorRules, BoolClosed) {
  GeneratedSystem g = gen_system(parse("iterbool <0> <0> true"));
  const RuleTemplate& r = rule(g.system, "ItC_bool_1", "true");
  EXPECT_TRUE(net_iso(r.replacement, token_net(Term::zero(), g.symbols)));
}

TEST(IteratorRules, ListConsClosed) {
  GeneratedSystem g = gen_system(parse("iterlist <\\x y. cons x y> <nil> nil"));
  const RuleTemplate& r = rule(g.system, "ItC_list_1", "cons");
  EXPECT_EQ(census(r.replacement, g.system),
            (std::map<std::string, int>{{"It_list_1", 1}, {"cons", 1}, {"tok", 1}}));
}

TEST(IteratorRules, NatSucFansCapturedVariable) {
  GeneratedSystem g = gen_system(parse("\\a:nat. \\n:nat. iternat <\\x. suc a> <0> n"));
  const RuleTemplate& suc = rule(g.system, "ItC_nat_1", "suc");
  auto c = census(suc.replacement, g.system);
  EXPECT_EQ(c["c"], 1);
  EXPECT_EQ(c["It_nat_1"], 1);
  // x is unused in the step
  EXPECT_EQ(c["eps"], 1);
  // the zero case does not use a
  const RuleTemplate& zero = rule(g.system, "ItC_nat_1", "zero");
  EXPECT_EQ(census(zero.replacement, g.system),
            (std::map<std::string, int>{{"eps", 1}, {"tok", 1}, {"zero", 1}}));
}

TEST(IteratorRules, NestedIteratorInsideParameter) {
  GeneratedSystem g = gen_system(parse(
      "\\k:nat. \\l:list nat. iterlist <\\x y. cons (iternat <\\z. suc z> <k> x) y> <nil> l"));
  ASSERT_EQ(g.symbols.descriptors().size(), 2u);
  const RuleTemplate& r = rule(g.system, "ItC_list_1", "cons");
  auto c = census(r.replacement, g.system);
  EXPECT_EQ(c["It_nat_2"], 1);
  EXPECT_EQ(c["It_list_1"], 1);
  EXPECT_EQ(c["c"], 1);  // k goes both to the inner iterator and the recursive call
  check_system(g.system);
}

TEST(IteratorRules, WellFormedOnCorpus) {
  for (const auto& e : testsupport::corpus()) check_system(gen_system(parse(e.source)).system);
}

TEST(DumpSystem, Format) {
  GeneratedSystem g = gen_system(parse("iternat <\\x. suc x> <0> 0"));
  std::string dump = dump_system(g.system);
  EXPECT_EQ(dump.rfind("symbol tok/1/token\n", 0), 0u);
  EXPECT_NE(dump.find("symbol It_nat_1/1/iterator-syntactic\n"), std::string::npos);
  EXPECT_NE(dump.find("symbol ItC_nat_1/1/iterator-computation\n"), std::string::npos);
  EXPECT_NE(dump.find("rule tok >< app -> 2 agents, 3 holes [R1]\n"), std::string::npos);
  EXPECT_NE(dump.find("rule delta >< delta -> 0 agents, 4 holes [R13]\n"), std::string::npos);
  std::string nets = dump_system(g.system, true);
  EXPECT_NE(nets.find("  {\"agents\":"), std::string::npos);
}
