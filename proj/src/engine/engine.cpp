#include "itnet/engine.hpp"

#include <deque>
#include <random>

#include "itnet/translate.hpp"

namespace itnet {

using nlohmann::json;
using nlohmann::ordered_json;

const char* to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::Fifo:
      return "fifo";
    case StrategyKind::Lifo:
      return "lifo";
    case StrategyKind::Random:
      return "random";
  }
  return "?";
}

std::optional<StrategyKind> parse_strategy(const std::string& s) {
  if (s == "fifo") return StrategyKind::Fifo;
  if (s == "lifo") return StrategyKind::Lifo;
  if (s == "random") return StrategyKind::Random;
  return std::nullopt;
}

TraceEvent make_event(std::uint64_t step, const RuleFiring& f, const InteractionSystem& system) {
  TraceEvent e;
  e.step = step;
  e.first = system.symbol(f.rule->first).name;
  e.second = system.symbol(f.rule->second).name;
  e.label = f.rule->label;
  e.consumed = f.consumed;
  e.created = f.created;
  return e;
}

ordered_json to_json(const TraceEvent& e) {
  ordered_json j;
  j["step"] = e.step;
  j["rule"] = ordered_json::array({e.first, e.second});
  j["consumed"] = ordered_json::array({e.consumed.first, e.consumed.second});
  j["created"] = e.created;
  return j;
}

TraceEvent trace_event_from_json(const json& j) {
  TraceEvent e;
  e.step = j.at("step").get<std::uint64_t>();
  e.first = j.at("rule").at(0).get<std::string>();
  e.second = j.at("rule").at(1).get<std::string>();
  e.consumed = {j.at("consumed").at(0).get<AgentId>(), j.at("consumed").at(1).get<AgentId>()};
  e.created = j.at("created").get<std::vector<AgentId>>();
  return e;
}

ordered_json to_json(const ReductionReport& r) {
  ordered_json j;
  j["steps"] = r.steps;
  j["evaluation"] = r.evaluation_steps;
  j["management"] = r.management_steps;
  j["per_rule"] = ordered_json::object();
  for (const auto& [k, v] : r.per_rule) j["per_rule"][k] = v;
  j["fuel_exhausted"] = r.fuel_exhausted;
  return j;
}

namespace {

void account(ReductionReport& r, const RuleFiring& f, const InteractionSystem& system) {
  ++r.steps;
  if (system.is_evaluation_pair(f.rule->first, f.rule->second))
    ++r.evaluation_steps;
  else
    ++r.management_steps;
  ++r.per_rule[system.symbol(f.rule->first).name + "><" + system.symbol(f.rule->second).name];
}

}  // namespace

ReductionReport reduce(Net& net, const InteractionSystem& system, const ReduceOptions& opts) {
  ReductionReport report;
  // An active pair stays active until fired: no other interaction can reach
  // either agent's principal port. So the queue never holds stale entries.
  std::deque<ActivePair> pending;
  for (const auto& p : active_pairs(net)) pending.push_back(p);
  std::mt19937_64 rng(opts.strategy.seed);

  while (!pending.empty()) {
    if (report.steps >= opts.fuel) {
      report.fuel_exhausted = true;
      break;
    }
    ActivePair pair;
    switch (opts.strategy.kind) {
      case StrategyKind::Fifo:
        pair = pending.front();
        pending.pop_front();
        break;
      case StrategyKind::Lifo:
        pair = pending.back();
        pending.pop_back();
        break;
      case StrategyKind::Random: {
        std::size_t i = rng() % pending.size();
        pair = pending[i];
        pending[i] = pending.back();
        pending.pop_back();
        break;
      }
    }
    RuleFiring f = apply_rule(net, pair, system);
    account(report, f, system);
    for (const auto& p : f.new_pairs) pending.push_back(p);
    if (opts.on_firing) opts.on_firing(f);
    if (opts.on_step) opts.on_step(make_event(report.steps, f, system), net);
  }
  return report;
}

ReductionReport replay(Net& net, const InteractionSystem& system,
                       const std::vector<TraceEvent>& trace) {
  ReductionReport report;
  for (const auto& want : trace) {
    auto [a, b] = want.consumed;
    if (!net.alive(a) || !net.alive(b) || net.peer(Port::agent(a, 0)) != Port::agent(b, 0))
      throw ReplayError("step " + std::to_string(want.step) + ": agents " + std::to_string(a) +
                        " and " + std::to_string(b) + " are not an active pair");
    RuleFiring f = apply_rule(net, {std::min(a, b), std::max(a, b)}, system);
    account(report, f, system);
    TraceEvent got = make_event(report.steps, f, system);
    got.label = want.label;
    if (got != want) {
      revert(net, f);
      throw ReplayError("step " + std::to_string(want.step) + " diverges from the recorded trace");
    }
  }
  return report;
}

Term reduce_deep(const Term& t, const InteractionSystem& system, const SymbolTable& symtab,
                 const ReduceOptions& opts) {
  std::uint64_t remaining = opts.fuel;
  std::function<Term(const Term&)> go = [&](const Term& term) -> Term {
    Net net = token_net(term, symtab);
    ReduceOptions sub = opts;
    sub.fuel = remaining;
    sub.on_firing = nullptr;
    ReductionReport r = reduce(net, system, sub);
    remaining -= r.steps;
    if (r.fuel_exhausted) throw FuelExhausted();
    Term v = readback(net, system, symtab);
    switch (v.kind()) {
      case TermKind::Suc:
        return Term::suc(go(v.pred()));
      case TermKind::Cons: {
        Term h = go(v.head());
        return Term::cons(h, go(v.tail()));
      }
      default:
        return v;
    }
  };
  return go(t);
}

}  // namespace itnet
