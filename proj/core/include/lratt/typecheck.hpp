#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lratt/program.hpp"
#include "lratt/term.hpp"
#include "lratt/types.hpp"

namespace lratt {

struct CtxEntry {
  enum class Kind : std::uint8_t { Var, Lock, Tick };
  Kind kind;
  Name name;
  TypePtr type;
  Modality mod = Modality::Later;
};

using Context = std::vector<CtxEntry>;

namespace cx {
CtxEntry var(Name n, TypePtr t);
CtxEntry lock();
CtxEntry tick(Modality m);
}  // namespace cx

/// Well-formedness: distinct names, at most one lock, at most one tick and only after the lock.
bool wfContext(const Context& g);

std::string printContext(const Context& g);

enum class TypeErrorKind : std::uint8_t {
  UnboundVariable,
  VariableBlockedByToken,
  LambdaUnderTick,
  ModalityMismatch,
  MissingLock,
  MissingTick,
  DuplicateToken,
  TypeMismatch,
  CannotSynthesize,
};

const char* typeErrorKindName(TypeErrorKind k);

struct TypeError : std::runtime_error {
  TypeError(TypeErrorKind k, std::string rule, std::string msg, SourcePos p,
            TypePtr expected = nullptr, TypePtr actual = nullptr);

  TypeErrorKind kind;
  std::string rule;  // name of the typing rule that rejected the term
  SourcePos pos;
  TypePtr expected;
  TypePtr actual;
  std::string decl;  // filled in by checkProgram
};

/// Types of earlier top-level declarations. A global may be used in any context:
/// it is closed and was checked in the empty context.
using Globals = std::unordered_map<Name, TypePtr>;

class Checker {
 public:
  explicit Checker(const Globals* globals = nullptr) : globals_(globals) {}

  /// Throws TypeError.
  void check(const Context& g, const TermPtr& t, const TypePtr& a) const;
  TypePtr infer(const Context& g, const TermPtr& t) const;

 private:
  TypePtr lookup(const Context& g, const TermPtr& v) const;
  TypePtr letArgument(const Context& g, const TermPtr& lam, const TermPtr& arg) const;
  TypePtr inferAdv(const Context& g, const TermPtr& t, const TypePtr* expected) const;

  const Globals* globals_;
};

/// Convenience wrappers returning the error instead of throwing. The context must be well formed.
std::optional<TypeError> checkTerm(const Context& g, const TermPtr& t, const TypePtr& a,
                                   const Globals* globals = nullptr);

struct InferResult {
  TypePtr type;
  std::optional<TypeError> error;
};
InferResult inferTerm(const Context& g, const TermPtr& t, const Globals* globals = nullptr);

/// Checks every declaration, in order, against its signature in the empty context.
/// Returns the first error, tagged with the declaration name.
std::optional<TypeError> checkProgram(const Program& p);

/// {decl, kind, expected, actual, line, col} as a JSON object.
std::string typeErrorJson(const TypeError& e);

}  // namespace lratt
