// funnet: typecheck, evaluate, compile and reduce programs of the iterator
// language with interaction nets.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "itnet/engine.hpp"
#include "itnet/io.hpp"
#include "itnet/oracle.hpp"
#include "itnet/program.hpp"
#include "itnet/server.hpp"
#include "itnet/syntax.hpp"
#include "itnet/translate.hpp"
#include "itnet/typecheck.hpp"

namespace {

using namespace itnet;

enum Exit { kOk = 0, kUsage = 1, kSourceError = 2, kFuel = 3, kDisagree = 4, kInternal = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::uint64_t default_fuel() {
  if (const char* env = std::getenv("FUN_FUEL")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("FUN_FUEL is not a number: ") + env);
    }
  }
  return kDefaultFuel;
}

struct Options {
  std::string file;
  bool deep = false;
  std::optional<std::uint64_t> fuel;
  std::string strategy = "fifo";
  std::uint64_t seed = 0;
  std::string trace_out;
  std::string replay_in;
  std::string net_out;
  std::string dot_out;
  std::string system_out;
  bool system_nets = false;
  bool stats = false;
  bool check = false;
  int port = 7341;
};

std::uint64_t fuel_of(const Options& o) { return o.fuel ? *o.fuel : default_fuel(); }

int cmd_check(const Options& o) {
  Program p = compile_program(read_file(o.file));
  std::cout << to_string(p.type) << "\n";
  return kOk;
}

int cmd_eval(const Options& o) {
  Program p = compile_program(read_file(o.file));
  Term v = o.deep ? deep_eval(p.gen.term, fuel_of(o)) : eval_cbn(p.gen.term, fuel_of(o));
  std::cout << to_string(v) << "\n";
  return kOk;
}

int cmd_compile(const Options& o) {
  Program p = compile_program(read_file(o.file));
  TranslationResult r = translate(p.gen.term, p.gen.symbols);
  if (!o.net_out.empty()) write_file(o.net_out, net_to_json(r.net, p.gen.system).dump() + "\n");
  if (!o.dot_out.empty()) write_file(o.dot_out, export_dot(r.net, p.gen.system));
  if (!o.system_out.empty()) write_file(o.system_out, dump_system(p.gen.system, o.system_nets));
  std::cout << "type " << to_string(p.type) << "\n"
            << "agents " << r.net.agent_count() << "\n"
            << "active pairs " << active_pairs(r.net).size() << "\n"
            << "symbols " << p.gen.system.symbols().size() << "\n"
            << "rules " << p.gen.system.rules().size() << "\n";
  return kOk;
}

std::vector<TraceEvent> read_trace(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<TraceEvent> trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      trace.push_back(trace_event_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("bad trace line in " + path + ": " + e.what());
    }
  }
  return trace;
}

int cmd_run(const Options& o) {
  Program p = compile_program(read_file(o.file));
  const InteractionSystem& sys = p.gen.system;

  auto kind = parse_strategy(o.strategy);
  if (!kind) throw UsageError("unknown strategy '" + o.strategy + "'");
  ReduceOptions opts;
  opts.strategy = {*kind, o.seed};
  opts.fuel = fuel_of(o);

  std::ofstream trace;
  if (!o.trace_out.empty()) {
    trace.open(o.trace_out, std::ios::binary);
    if (!trace) throw UsageError("cannot write " + o.trace_out);
    opts.on_step = [&](const TraceEvent& e, const Net&) { trace << to_json(e).dump() << "\n"; };
  }

  Net net = token_net(p.gen.term, p.gen.symbols);
  ReductionReport report;
  if (!o.replay_in.empty()) {
    std::vector<TraceEvent> events = read_trace(o.replay_in);
    report = replay(net, sys, events);
    if (trace)
      for (const auto& e : events) trace << to_json(e).dump() << "\n";
  } else {
    report = reduce(net, sys, opts);
  }
  trace.close();
  if (!o.net_out.empty()) write_file(o.net_out, net_to_json(net, sys).dump() + "\n");
  if (o.stats) std::cout << to_json(report).dump() << "\n";
  if (report.fuel_exhausted) {
    std::cerr << "fuel exhausted after " << report.steps << " interactions\n";
    return kFuel;
  }
  if (!active_pairs(net).empty()) {
    std::cerr << "replayed trace stops before normal form\n";
    return kInternal;
  }

  Term value = readback(net, sys, p.gen.symbols);
  if (o.deep) {
    ReduceOptions rest = opts;
    rest.on_step = nullptr;
    rest.fuel = opts.fuel - std::min(opts.fuel, report.steps);
    value = reduce_deep(value, sys, p.gen.symbols, rest);
  }
  std::cout << to_string(value) << "\n";

  if (o.check) {
    Term expected = o.deep ? deep_eval(p.gen.term, fuel_of(o)) : eval_cbn(p.gen.term, fuel_of(o));
    if (!alpha_eq(value, expected)) {
      std::cout << "DISAGREE\n"
                << "oracle: " << to_string(expected) << "\n";
      return kDisagree;
    }
    std::cout << "AGREE\n";
  }
  return kOk;
}

int cmd_serve(const Options& o) {
  std::string source = o.file.empty() ? std::string() : read_file(o.file);
  Server server(static_cast<std::uint16_t>(o.port), source);
  std::cerr << "listening on 127.0.0.1:" << server.port() << "\n";
  server.run();
  return kOk;
}

int dispatch(const std::string& cmd, const Options& o) {
  try {
    if (cmd == "check") return cmd_check(o);
    if (cmd == "eval") return cmd_eval(o);
    if (cmd == "compile") return cmd_compile(o);
    if (cmd == "run") return cmd_run(o);
    if (cmd == "serve") return cmd_serve(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << o.file << ":" << e.what() << "\n";
    return kSourceError;
  } catch (const TypeError& e) {
    std::cerr << o.file << ": type error: " << e.what() << "\n";
    return kSourceError;
  } catch (const FuelExhausted& e) {
    std::cerr << "fuel exhausted\n";
    return kFuel;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interaction-net evaluator for a typed lambda calculus with iterators"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "Typecheck a program and print its type");
  check->add_option("FILE", o.file)->required();

  auto* eval = app.add_subcommand("eval", "Evaluate with the reference interpreter");
  eval->add_option("FILE", o.file)->required();
  eval->add_flag("--deep", o.deep, "Evaluate under constructors");
  eval->add_option("--fuel", o.fuel, "Evaluation step budget");

  auto* compile = app.add_subcommand("compile", "Translate to a net and export it");
  compile->add_option("FILE", o.file)->required();
  compile->add_option("--net", o.net_out, "Write Net JSON");
  compile->add_option("--dot", o.dot_out, "Write Graphviz DOT");
  compile->add_option("--system", o.system_out, "Write the interaction system dump");
  compile->add_flag("--system-nets", o.system_nets, "Include rule replacement nets in the dump");

  auto* run = app.add_subcommand("run", "Reduce the net and read back the result");
  run->add_option("FILE", o.file)->required();
  run->add_flag("--deep", o.deep, "Also reduce under constructors");
  run->add_option("--strategy", o.strategy, "fifo, lifo or random")
      ->check(CLI::IsMember({"fifo", "lifo", "random"}));
  run->add_option("--seed", o.seed, "Seed for the random strategy");
  run->add_option("--fuel", o.fuel, "Interaction budget");
  run->add_option("--trace", o.trace_out, "Write one JSON event per interaction");
  run->add_option("--replay", o.replay_in, "Fire the interactions of a recorded trace");
  run->add_option("--net", o.net_out, "Write the final Net JSON");
  run->add_flag("--stats", o.stats, "Print interaction counts");
  run->add_flag("--check", o.check, "Compare with the reference interpreter");

  auto* serve = app.add_subcommand("serve", "Serve the step-debugging protocol");
  serve->add_option("FILE", o.file, "Program loaded into new sessions");
  serve->add_option("--port", o.port, "TCP port on 127.0.0.1 (0 picks one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  return dispatch(app.get_subcommands().front()->get_name(), o);
}
