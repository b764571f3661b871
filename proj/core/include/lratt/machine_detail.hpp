#pragma once

// Helpers shared by the closed and reactive step machines.

#include <variant>

#include "lratt/machine.hpp"

namespace lratt::detail {

template <class T>
using Outcome = std::variant<T, Failure>;

struct StreamResult {
  TermPtr head;
  TermPtr next;  // adv w
};

struct UntilResult {
  TermPtr out;
  TermPtr next;  // adv w, or null on HALT
};

struct FairResult {
  TermPtr out;
  int tag;       // p in in_p v
  TermPtr next;  // adv w or out (adv w)
  int mode;      // mode of the next state
};

/// The later heap of a ticked store; with gc off the now-heap is merged in.
Heap collect(Store s, bool gc);

Failure shapeError(const char* expected, const TermPtr& got);

Outcome<StreamResult> decodeStream(const TermPtr& v);
Outcome<UntilResult> decodeUntil(const TermPtr& v);
Outcome<FairResult> decodeFair(const TermPtr& v, int mode);

/// A for Fix a. A * a, else null.
TypePtr streamElement(const TypePtr& a);
/// (A, B) for Fair A B.
std::optional<OutputTypes> fairParts(const TypePtr& f);

}  // namespace lratt::detail
