#pragma once

#include <memory>
#include <string>

#include "lratt/name.hpp"

namespace lratt {

/// The two time-step modalities, ordered Delay <= Later.
enum class Modality : std::uint8_t { Delay, Later };

/// Reflexive order generated by Delay <= Later.
constexpr bool modLeq(Modality m, Modality m2) {
  return m == m2 || (m == Modality::Delay && m2 == Modality::Later);
}

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  enum class Kind : std::uint8_t {
    Var,
    Unit,
    Nat,
    Prod,
    Sum,
    Fun,
    Box,
    Delay,
    Later,
    Fix,
    Until,
  };

  Kind kind;
  Name name;  // Var: the variable. Fix: the binder.
  TypePtr left;
  TypePtr right;
};

namespace ty {

TypePtr var(Name n);
TypePtr unit();
TypePtr nat();
TypePtr prod(TypePtr a, TypePtr b);
TypePtr sum(TypePtr a, TypePtr b);
TypePtr fun(TypePtr a, TypePtr b);
TypePtr box(TypePtr a);
TypePtr delay(TypePtr a);
TypePtr later(TypePtr a);
TypePtr modal(Modality m, TypePtr a);
TypePtr fix(Name binder, TypePtr body);
TypePtr until(TypePtr a, TypePtr b);

// Derived types.
TypePtr str(TypePtr a);                 // Fix a. A * a
TypePtr ev(TypePtr a);                  // Fix a. A + a
TypePtr dia(TypePtr a);                 // Unit Until A
TypePtr fair(TypePtr a, TypePtr b);     // Fix a. A Until (B * Later (B Until (A * a)))
TypePtr fairAlt(TypePtr b, TypePtr a);  // B Until (A * Later (Fair A B))

}  // namespace ty

/// Equality up to renaming of Fix binders.
bool typeEqual(const TypePtr& a, const TypePtr& b);

bool isClosed(const TypePtr& t);

/// Capture-avoiding substitution of `replacement` for free occurrences of `var`.
TypePtr substituteType(const TypePtr& body, Name var, const TypePtr& replacement);

/// For F = Fix a. A returns A[Later F / a]. Throws std::invalid_argument otherwise.
TypePtr unfoldFixType(const TypePtr& fix);

bool isStable(const TypePtr& t);
bool isLimit(const TypePtr& t);
bool isValueType(const TypePtr& t);

std::string printType(const TypePtr& t);

}  // namespace lratt
