#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lratt/program.hpp"
#include "lratt/term.hpp"
#include "lratt/types.hpp"

namespace lratt {

struct SyntaxError : std::runtime_error {
  SyntaxError(SourcePos p, const std::string& msg);
  SourcePos pos;
};

struct DesugarError : std::runtime_error {
  DesugarError(SourcePos p, const std::string& msg);
  SourcePos pos;
};

struct STerm;
using STermPtr = std::shared_ptr<const STerm>;

/// Parsed term before desugaring. Field use per kind:
///
///   Var            name
///   Num            num
///   Fun            names/annots = binders (annot may be null), kids = {body}
///   Let            names = {x}, annots = {T or null}, kids = {bound, body}
///   Fix            names = {x}, kids = {body}
///   MutFix         names = {f, g}, kids = {body}
///   Case           names = {x1, x2}, kids = {scrutinee, t1, t2}
///   Nrec           names = {x, y}, kids = {n, zeroCase, sucCase}
///   Urec           names = {xNow, x, y, z}, kids = {u, nowCase, waitCase}
///   UrecAs         names = {f, xNow, x, y}, kids = {u, nowCase, waitCase}
///   Cons           kids = {head, tail}
///   Proj / Inj     index, kids = {t}
///   others         kids as for the core term of the same name
struct STerm {
  enum class Kind : std::uint8_t {
    Var, Unit, Num, Suc, Fun, App, Let, Pair, Proj, Inj, Case, Nrec,
    Delay, Adv, Box, Unbox, Now, Wait, Urec, UrecAs, Fix, MutFix, Into, Out, Cons,
  };
  Kind kind;
  Name name;
  std::vector<Name> names;
  std::vector<TypePtr> annots;
  std::vector<STermPtr> kids;
  std::uint64_t num = 0;
  int index = 0;
  SourcePos pos{};
};

struct SourceDecl {
  Name name;
  TypePtr type;
  STermPtr body;
  bool entry = false;
  SourcePos pos{};
};

struct SourceProgram {
  std::vector<SourceDecl> decls;
};

/// Throw SyntaxError.
SourceProgram parseProgram(std::string_view text);
STermPtr parseSurfaceTerm(std::string_view text);
TypePtr parseType(std::string_view text);

/// Removes all sugar. Throws DesugarError.
TermPtr desugar(const STermPtr& t);

/// Desugars every declaration; rejects duplicate declaration names with DesugarError.
Program elaborate(const SourceProgram& p);

/// parseProgram followed by elaborate.
Program loadProgram(std::string_view text);

/// parseSurfaceTerm followed by desugar.
TermPtr parseTerm(std::string_view text);

struct NotPrintable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValueParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Literal syntax for values of value type: decimal naturals, `()`, `(v, w)`, `inl v`, `inr v`.
std::string printValue(const TermPtr& v);

/// Parses a literal at value type `a`. Throws ValueParseError.
TermPtr parseValueLiteral(std::string_view s, const TypePtr& a);

}  // namespace lratt
