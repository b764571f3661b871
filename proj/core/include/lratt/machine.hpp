#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lratt/eval.hpp"
#include "lratt/store.hpp"
#include "lratt/term.hpp"
#include "lratt/types.hpp"

namespace lratt {

enum class Driver : std::uint8_t { Stream, Until, Fair };

const char* driverName(Driver d);

struct MachineOptions {
  /// Per-step evaluator settings; fuel is a per-step budget.
  EvalOptions eval{};
  /// Mutation switch for testing: when false the now-heap is merged into the next heap
  /// instead of being discarded.
  bool gc = true;
};

/// The tagged output of one step. For fair machines `mode` is the injection tag p of in_p v
/// and `value` is the untagged v; otherwise `mode` is 0.
struct StepOutput {
  TermPtr value;
  int mode = 0;
};

struct StreamState {
  TermPtr term;
  Heap heap;
  NamespaceSupply names{1};
};

struct UntilState {
  bool halted = false;
  TermPtr term;  // null once halted
  Heap heap;
  NamespaceSupply names{1};
};

struct FairState {
  TermPtr term;
  Heap heap;
  int mode = 1;
  NamespaceSupply names{1};
};

template <class State>
struct Step {
  std::optional<Failure> failure;  // set if the step did not complete
  StepOutput output;
  State next;
};

/// The store <heap ✓ fresh empty heap>; the fresh namespace comes from `names`.
Store tickStore(Heap heap, NamespaceSupply& names);

/// Initial states: <unbox t; empty> and <out (unbox t); empty; 1>.
StreamState initStream(const TermPtr& t);
UntilState initUntil(const TermPtr& t);
FairState initFair(const TermPtr& t);

Step<StreamState> stepStream(const StreamState& s, const MachineOptions& o = {});
Step<UntilState> stepUntil(const UntilState& s, const MachineOptions& o = {});
Step<FairState> stepFair(const FairState& s, const MachineOptions& o = {});

/// One line of a run transcript.
struct StepRecord {
  std::size_t step = 0;  // 1-based
  TermPtr input;         // reactive runs only
  StepOutput output;
  std::size_t heapSize = 0;  // size of the heap carried into the next step
  bool halts = false;        // the step produced HALT
};

struct RunResult {
  std::vector<StepRecord> steps;
  std::optional<Failure> failure;  // aborts the run; steps holds the partial output
  bool halted = false;
  std::size_t unconsumedInputs = 0;  // reactive runs only
  std::size_t maxHeapSize = 0;
};

RunResult runStream(const TermPtr& t, std::size_t steps, const MachineOptions& o = {});
/// Runs until HALT or `maxSteps` steps.
RunResult runUntil(const TermPtr& t, std::size_t maxSteps, const MachineOptions& o = {});
RunResult runFair(const TermPtr& t, std::size_t steps, const MachineOptions& o = {});
RunResult runClosed(Driver d, const TermPtr& t, std::size_t steps, const MachineOptions& o = {});

/// Driver for an entry of type Box (Str A), Box (A Until B) or Box (Fair A B), if any.
std::optional<Driver> closedDriverFor(const TypePtr& entryType);

/// Element types for output printing: A for streams, (A, B) for until and fair.
struct OutputTypes {
  TypePtr first;
  TypePtr second;
};
std::optional<OutputTypes> closedOutputTypes(Driver d, const TypePtr& entryType);

}  // namespace lratt
