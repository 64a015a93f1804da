#pragma once

// Reference big-step call-by-name evaluator over terms, by substitution.

#include <cstdint>
#include <stdexcept>

#include "itnet/term.hpp"

namespace itnet {

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

class FuelExhausted : public std::runtime_error {
 public:
  FuelExhausted() : std::runtime_error("fuel exhausted") {}
};

class StuckTerm : public std::runtime_error {
 public:
  explicit StuckTerm(const std::string& what) : std::runtime_error(what) {}
};

// One unit of fuel per evaluation rule applied.
class Fuel {
 public:
  explicit Fuel(std::uint64_t budget = kDefaultFuel) : remaining_(budget) {}
  void consume() {
    if (remaining_ == 0) throw FuelExhausted();
    --remaining_;
  }
  std::uint64_t remaining() const { return remaining_; }

 private:
  std::uint64_t remaining_;
};

// Weak call-by-name evaluation to a canonical form (an abstraction or a
// constructor-headed term whose arguments are left unevaluated).
Term eval_cbn(const Term& t, Fuel& fuel);
Term eval_cbn(const Term& t, std::uint64_t fuel = kDefaultFuel);

// eval_cbn, then deep_eval of the arguments of suc and cons.
Term deep_eval(const Term& t, Fuel& fuel);
Term deep_eval(const Term& t, std::uint64_t fuel = kDefaultFuel);

}  // namespace itnet
