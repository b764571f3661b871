#pragma once

#include <optional>
#include <vector>

#include "lratt/machine.hpp"

namespace lratt {

/// State of a reactive machine: the closed state plus the location the next input is written to.
struct ReactiveState {
  Driver kind = Driver::Stream;
  bool halted = false;
  TermPtr term;
  Heap heap;
  Location inputLoc{};
  int mode = 1;  // fair machines only
  NamespaceSupply names{1};
};

/// unbox t (adv l0) with l0 the first location of the empty heap; wrapped in out for fair.
ReactiveState initReactive(const TermPtr& t, Driver kind);

/// Binds the input cell l -> input :: l' in the now-heap, seeds l' -> () in the fresh later
/// heap, evaluates, and advances the input location to l'. The placeholder is overwritten by
/// the next step. Fails with InvalidInput if `input` is not a closed location-free value.
Step<ReactiveState> reactStep(const ReactiveState& s, const TermPtr& input,
                              const MachineOptions& o = {});

/// Steps once per input until the inputs run out or the machine halts.
RunResult runReactive(const TermPtr& t, Driver kind, const std::vector<TermPtr>& inputs,
                      const MachineOptions& o = {});

/// Driver and (input, output) element types for entries of type Box (Str A -> Str B),
/// Box (Str A -> B Until C) or Box (Str A -> Fair B C).
struct ReactiveSignature {
  Driver kind;
  TypePtr input;
  OutputTypes output;
};
std::optional<ReactiveSignature> reactiveSignatureFor(const TypePtr& entryType);

}  // namespace lratt
