#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lratt/term.hpp"
#include "lratt/types.hpp"

namespace lratt {

/// A top-level `def name : type = body`. Later declarations may refer to earlier ones by name.
struct Decl {
  Name name;
  TypePtr type;
  TermPtr body;
  bool entry = false;
  SourcePos pos{};
};

struct Program {
  std::vector<Decl> decls;

  const Decl* find(Name n) const;
  /// The declaration marked `entry`, else the last one.
  const Decl* defaultEntry() const;
};

/// The body of `name` with every reference to an earlier declaration replaced by that
/// declaration's (recursively inlined) body. The result is closed for well-scoped programs.
/// Returns nullptr if `name` is not declared.
TermPtr inlineDecl(const Program& p, Name name);

std::string printProgram(const Program& p);

}  // namespace lratt
