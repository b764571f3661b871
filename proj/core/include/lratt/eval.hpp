#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "lratt/store.hpp"
#include "lratt/term.hpp"

namespace lratt {

enum class FailureKind : std::uint8_t {
  NullStoreAlloc,
  NullStoreRead,
  DanglingLocation,
  NotAFunction,
  NotAPair,
  NotASum,
  NotANat,
  NotABox,
  NotAnUntilValue,
  NotAnInto,
  NotALocation,
  FreeVariable,
  FuelExhausted,
  DepthExhausted,
  // Raised by the step machines rather than the evaluator.
  ShapeError,
  InvalidInput,
};

const char* failureKindName(FailureKind k);

struct Failure {
  FailureKind kind;
  std::string message;
  /// Rule names from the root of the derivation down to the failing node.
  std::vector<std::string> path;
};

/// One node of a big-step derivation, recorded in pre-order.
struct DerivationNode {
  int depth = 0;
  std::string rule;
  std::string term;
  std::string value;  // empty if the node did not complete
};

struct EvalOptions {
  /// Budget of derivation nodes.
  std::uint64_t fuel = 10'000'000;
  /// Maximum nesting of derivation nodes before giving up.
  int maxDepth = 20'000;
  /// When set, every derivation node is appended here.
  std::vector<DerivationNode>* trace = nullptr;
  /// Mutation switch for testing: the adv rule reads the later heap instead of the now-heap.
  bool advReadsLater = false;
};

struct EvalSuccess {
  TermPtr value;
  Store store;
};

using EvalOutcome = std::variant<EvalSuccess, Failure>;

inline bool succeeded(const EvalOutcome& o) { return std::holds_alternative<EvalSuccess>(o); }

/// Big-step evaluation <t, store> => <v, store'>. `t` must be closed; locations are allowed.
EvalOutcome eval(const TermPtr& t, Store store, const EvalOptions& options = {});

std::string printDerivation(const std::vector<DerivationNode>& nodes);

}  // namespace lratt
