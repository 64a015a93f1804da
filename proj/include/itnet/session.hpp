#pragma once

// Step-debugging sessions: a loaded program, its current net and an undo
// history, driven by JSON requests. See PROTOCOL.md for the wire format.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "itnet/engine.hpp"
#include "itnet/program.hpp"

namespace itnet {

class Session {
 public:
  // `default_source` is loaded by a load request without "source".
  explicit Session(std::string default_source = "");

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  nlohmann::ordered_json handle(const nlohmann::json& request);
  // Parses `text` first; malformed JSON yields an error response.
  std::string handle_text(const std::string& text);

  std::uint64_t revision() const { return revision_; }
  bool closed() const { return closed_; }
  bool loaded() const { return program_.has_value(); }
  const Net& net() const { return net_; }
  const Program& program() const { return *program_; }
  const std::vector<TraceEvent>& trace() const { return trace_; }
  // The net the history starts from (token attached unless loaded without).
  const Net& initial_net() const { return initial_; }

 private:
  nlohmann::ordered_json load(const nlohmann::json& req);
  nlohmann::ordered_json step(const nlohmann::json& req);
  nlohmann::ordered_json run(const nlohmann::json& req);
  nlohmann::ordered_json undo();
  nlohmann::ordered_json readback_response() const;
  nlohmann::ordered_json snapshot() const;
  nlohmann::ordered_json pairs_json() const;

  void record(const RuleFiring& f);

  std::string default_source_;
  std::optional<Program> program_;
  Net initial_;
  Net net_;
  std::vector<RuleFiring> history_;
  std::vector<TraceEvent> trace_;
  std::uint64_t evaluation_steps_ = 0;
  std::uint64_t management_steps_ = 0;
  std::uint64_t revision_ = 0;
  bool closed_ = false;
};

}  // namespace itnet
