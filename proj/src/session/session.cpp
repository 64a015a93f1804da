#include "itnet/session.hpp"

#include <cstdio>

#include "itnet/io.hpp"
#include "itnet/syntax.hpp"
#include "itnet/translate.hpp"
#include "itnet/typecheck.hpp"

namespace itnet {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct RequestError {
  std::string kind;
  std::string message;
};

ordered_json ok_response(std::uint64_t rev) {
  ordered_json r;
  r["rev"] = rev;
  r["ok"] = true;
  return r;
}

ordered_json error_response(std::uint64_t rev, const std::string& kind, const std::string& message) {
  ordered_json r;
  r["rev"] = rev;
  r["ok"] = false;
  r["error"] = {{"kind", kind}, {"message", message}};
  return r;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool is_mutation(const std::string& cmd) {
  return cmd == "step" || cmd == "run" || cmd == "undo";
}

}  // namespace

Session::Session(std::string default_source) : default_source_(std::move(default_source)) {}

std::string Session::handle_text(const std::string& text) {
  json req;
  try {
    req = json::parse(text);
  } catch (const json::parse_error& e) {
    return error_response(revision_, "malformed", e.what()).dump();
  }
  return handle(req).dump();
}

ordered_json Session::handle(const json& req) {
  if (!req.is_object() || !req.contains("cmd") || !req["cmd"].is_string())
    return error_response(revision_, "malformed", "request must be an object with a string \"cmd\"");
  const std::string cmd = req["cmd"].get<std::string>();
  try {
    if (cmd == "quit") {
      closed_ = true;
      return ok_response(revision_);
    }
    if (cmd == "load") return load(req);
    if (cmd != "snapshot" && cmd != "pairs" && cmd != "readback" && cmd != "system" &&
        !is_mutation(cmd))
      return error_response(revision_, "unknown-command", "unknown command '" + cmd + "'");
    if (!program_) return error_response(revision_, "no-program", "no program loaded");
    if (is_mutation(cmd)) {
      if (!req.contains("rev") || !req["rev"].is_number_unsigned() ||
          req["rev"].get<std::uint64_t>() != revision_)
        return error_response(revision_, "stale-revision",
                              "request revision does not match current revision " +
                                  std::to_string(revision_));
    }
    if (cmd == "snapshot") {
      ordered_json r = ok_response(revision_);
      r["snapshot"] = snapshot();
      return r;
    }
    if (cmd == "pairs") {
      ordered_json r = ok_response(revision_);
      r["pairs"] = pairs_json();
      return r;
    }
    if (cmd == "readback") return readback_response();
    if (cmd == "system") {
      ordered_json r = ok_response(revision_);
      r["dump"] = dump_system(program_->gen.system);
      return r;
    }
    if (cmd == "step") return step(req);
    if (cmd == "run") return run(req);
    return undo();
  } catch (const RequestError& e) {
    return error_response(revision_, e.kind, e.message);
  } catch (const json::exception& e) {
    return error_response(revision_, "malformed", e.what());
  } catch (const NoRuleError& e) {
    return error_response(revision_, "no-rule", e.what());
  }
}

ordered_json Session::load(const json& req) {
  std::string source = default_source_;
  if (req.contains("source")) source = req.at("source").get<std::string>();
  if (source.empty()) throw RequestError{"no-program", "no source given and no default program"};
  bool token = req.value("token", true);

  std::optional<Program> p;
  try {
    p.emplace(compile_program(source));
  } catch (const ParseError& e) {
    ordered_json r = error_response(revision_, "parse", e.what());
    r["error"]["line"] = e.line();
    r["error"]["column"] = e.column();
    return r;
  } catch (const TypeError& e) {
    return error_response(revision_, "type", e.what());
  }
  TranslationResult tr;
  try {
    tr = translate(p->gen.term, p->gen.symbols);
  } catch (const TranslationError& e) {
    throw RequestError{"translate", e.what()};
  }

  history_.clear();
  trace_.clear();
  evaluation_steps_ = management_steps_ = 0;
  program_.reset();
  program_.emplace(std::move(*p));
  initial_ = token ? attach_token(std::move(tr)) : std::move(tr.net);
  net_ = initial_;
  revision_ = 0;

  ordered_json r = ok_response(revision_);
  r["type"] = to_string(program_->type);
  r["snapshot"] = snapshot();
  return r;
}

void Session::record(const RuleFiring& f) {
  const InteractionSystem& sys = program_->gen.system;
  if (sys.is_evaluation_pair(f.rule->first, f.rule->second))
    ++evaluation_steps_;
  else
    ++management_steps_;
  trace_.push_back(make_event(history_.size() + 1, f, sys));
  history_.push_back(f);
}

ordered_json Session::step(const json& req) {
  auto pairs = active_pairs(net_);
  if (!req.contains("pair_index") || !req["pair_index"].is_number_unsigned())
    throw RequestError{"bad-pair-index", "step needs a non-negative \"pair_index\""};
  auto i = req["pair_index"].get<std::uint64_t>();
  if (i >= pairs.size())
    throw RequestError{"bad-pair-index", "pair index " + std::to_string(i) + " out of range (" +
                                             std::to_string(pairs.size()) + " active pairs)"};
  RuleFiring f = apply_rule(net_, pairs[i], program_->gen.system);
  record(f);
  ++revision_;
  ordered_json r = ok_response(revision_);
  r["event"] = to_json(trace_.back());
  r["snapshot"] = snapshot();
  return r;
}

ordered_json Session::run(const json& req) {
  std::uint64_t limit = kDefaultFuel;
  if (req.value("to_normal", false)) {
    limit = kDefaultFuel;
  } else if (req.contains("n") && req["n"].is_number_unsigned()) {
    limit = req["n"].get<std::uint64_t>();
  } else {
    throw RequestError{"malformed", "run needs \"n\" or \"to_normal\": true"};
  }
  ReduceOptions opts;
  opts.strategy = Strategy::fifo();
  opts.fuel = limit;
  opts.on_firing = [this](const RuleFiring& f) { record(f); };
  ReductionReport rep = reduce(net_, program_->gen.system, opts);
  ++revision_;
  ordered_json r = ok_response(revision_);
  r["fired"] = rep.steps;
  r["normal"] = active_pairs(net_).empty();
  r["snapshot"] = snapshot();
  return r;
}

ordered_json Session::undo() {
  if (history_.empty()) throw RequestError{"nothing-to-undo", "history is empty"};
  const RuleFiring& f = history_.back();
  revert(net_, f);
  if (program_->gen.system.is_evaluation_pair(f.rule->first, f.rule->second))
    --evaluation_steps_;
  else
    --management_steps_;
  ordered_json undone = to_json(trace_.back());
  history_.pop_back();
  trace_.pop_back();
  ++revision_;
  ordered_json r = ok_response(revision_);
  r["undone"] = std::move(undone);
  r["snapshot"] = snapshot();
  return r;
}

ordered_json Session::readback_response() const {
  ordered_json r = ok_response(revision_);
  try {
    Term t = readback(net_, program_->gen.system, program_->gen.symbols);
    r["syntactic"] = true;
    r["term"] = to_string(t);
  } catch (const ReadbackError& e) {
    r["syntactic"] = false;
    switch (e.reason()) {
      case ReadbackError::Reason::NotSyntactic:
        r["reason"] = "not-syntactic";
        break;
      case ReadbackError::Reason::Garbage:
        r["reason"] = "garbage";
        break;
      case ReadbackError::Reason::Malformed:
        r["reason"] = "malformed";
        break;
    }
    r["message"] = e.what();
    r["symbols"] = e.symbols();
  }
  return r;
}

ordered_json Session::pairs_json() const {
  ordered_json out = ordered_json::array();
  for (const auto& p : active_pairs(net_)) out.push_back(ordered_json::array({p.first, p.second}));
  return out;
}

ordered_json Session::snapshot() const {
  ordered_json s;
  s["net"] = net_to_json(net_, program_->gen.system);
  s["pairs"] = pairs_json();
  s["stats"] = {{"steps", history_.size()},
                {"evaluation", evaluation_steps_},
                {"management", management_steps_}};
  s["hash"] = hex64(net_hash(net_, program_->gen.system));
  return s;
}

}  // namespace itnet
