#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lratt/name.hpp"
#include "lratt/types.hpp"

namespace lratt {

struct Location {
  std::uint64_t ns = 0;     // namespace (generation)
  std::uint64_t index = 0;  // allocation counter within the namespace

  friend bool operator==(const Location&, const Location&) = default;
  friend auto operator<=>(const Location&, const Location&) = default;
};

std::string printLocation(const Location& l);

struct SourcePos {
  int line = 0;
  int col = 0;
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable term node. Children and binders are laid out per kind:
///
///   Var            name
///   Suc            kid0
///   RecNat         kid0 = s, kid1 = t, kid2 = n; bind0 = x, bind1 = y
///   Lam            kid0 = body; bind0 = x; annot (optional)
///   App            kid0 = fn, kid1 = arg
///   Pair           kid0, kid1
///   Proj / Inj     kid0; index in {1,2}
///   Case           kid0 = scrutinee, kid1, kid2; bind0, bind1
///   Delay .. Out   kid0 (Wait also kid1)
///   RecUntil       kid0 = s, kid1 = t, kid2 = u; bind0 = now var, bind1..3 = x, y, z
///   Fix            kid0; bind0
///   Loc            loc
struct Term {
  enum class Kind : std::uint8_t {
    Var,
    Unit,
    Zero,
    Suc,
    RecNat,
    Lam,
    App,
    Pair,
    Proj,
    Inj,
    Case,
    Delay,
    Adv,
    Box,
    Unbox,
    Now,
    Wait,
    RecUntil,
    Fix,
    Into,
    Out,
    Loc,
  };

  Kind kind;
  std::uint8_t index = 0;
  std::array<TermPtr, 3> kids{};
  std::array<Name, 4> binds{};
  Name name;
  Location loc{};
  TypePtr annot;
  SourcePos pos{};

  // Cached structural facts, computed on construction.
  bool value = false;
  bool settled = false;  // value with no delay reachable through value constructors
  bool hasLocations = false;
  std::vector<Name> freeVars;  // sorted, unique

  bool isFree(Name n) const;
};

/// Term constructors. All compute the cached facts.
namespace tm {

TermPtr var(Name n, SourcePos p = {});
TermPtr unit(SourcePos p = {});
TermPtr zero(SourcePos p = {});
TermPtr suc(TermPtr t, SourcePos p = {});
TermPtr numeral(std::uint64_t n);
TermPtr recNat(TermPtr s, Name x, Name y, TermPtr t, TermPtr n, SourcePos p = {});
TermPtr lam(Name x, TermPtr body, TypePtr annot = nullptr, SourcePos p = {});
TermPtr app(TermPtr f, TermPtr a, SourcePos p = {});
TermPtr pair(TermPtr a, TermPtr b, SourcePos p = {});
TermPtr proj(int i, TermPtr t, SourcePos p = {});
TermPtr inj(int i, TermPtr t, SourcePos p = {});
TermPtr caseOf(TermPtr t, Name x1, TermPtr t1, Name x2, TermPtr t2, SourcePos p = {});
TermPtr delay(TermPtr t, SourcePos p = {});
TermPtr adv(TermPtr t, SourcePos p = {});
TermPtr box(TermPtr t, SourcePos p = {});
TermPtr unbox(TermPtr t, SourcePos p = {});
TermPtr now(TermPtr t, SourcePos p = {});
TermPtr wait(TermPtr a, TermPtr b, SourcePos p = {});
TermPtr recUntil(Name xNow, TermPtr s, Name x, Name y, Name z, TermPtr t, TermPtr u,
                 SourcePos p = {});
TermPtr fix(Name x, TermPtr t, SourcePos p = {});
TermPtr into(TermPtr t, SourcePos p = {});
TermPtr out(TermPtr t, SourcePos p = {});
TermPtr loc(Location l);

/// `v :: w`, i.e. into (v, w).
TermPtr cons(TermPtr head, TermPtr tail, SourcePos p = {});

/// Rebuilds `t` with new children and binders, keeping kind, index, loc, annot, pos.
TermPtr rebuild(const Term& t, std::array<TermPtr, 3> kids, std::array<Name, 4> binds);

}  // namespace tm

/// Value grammar: unit, zero, suc v, lambdas, pairs and injections of values,
/// box t, delay t, fix x.t, locations, into v, now v, wait v w.
inline bool isValue(const TermPtr& t) { return t->value; }

/// A value whose evaluation allocates nothing, so `v => v` is the only applicable rule.
inline bool isSettled(const TermPtr& t) { return t->settled; }

/// Capture-avoiding substitution of `replacement` for the free occurrences of `var`.
TermPtr substitute(const TermPtr& body, Name var, const TermPtr& replacement);

/// Structural equality modulo renaming of bound term variables.
bool alphaEqual(const TermPtr& a, const TermPtr& b);

/// Natural number literal value, if `t` is suc^n zero.
bool asNumeral(const TermPtr& t, std::uint64_t& n);

/// Prints a term in concrete syntax. Locations print as `@ns.index`.
std::string printTerm(const TermPtr& t);

std::size_t termSize(const TermPtr& t);

}  // namespace lratt
