#include "lratt/types.hpp"

#include <stdexcept>
#include <vector>

namespace lratt {

namespace {

TypePtr make(Type::Kind k, Name n = {}, TypePtr l = nullptr, TypePtr r = nullptr) {
  return std::make_shared<const Type>(Type{k, n, std::move(l), std::move(r)});
}

bool isBinary(Type::Kind k) {
  return k == Type::Kind::Prod || k == Type::Kind::Sum || k == Type::Kind::Fun ||
         k == Type::Kind::Until;
}

bool occursFree(const TypePtr& t, Name v) {
  switch (t->kind) {
    case Type::Kind::Var:
      return t->name == v;
    case Type::Kind::Unit:
    case Type::Kind::Nat:
      return false;
    case Type::Kind::Fix:
      return t->name != v && occursFree(t->left, v);
    default:
      if (isBinary(t->kind)) return occursFree(t->left, v) || occursFree(t->right, v);
      return occursFree(t->left, v);
  }
}

void collectFree(const TypePtr& t, std::vector<Name>& bound, std::vector<Name>& out) {
  switch (t->kind) {
    case Type::Kind::Var:
      for (auto b : bound)
        if (b == t->name) return;
      out.push_back(t->name);
      return;
    case Type::Kind::Unit:
    case Type::Kind::Nat:
      return;
    case Type::Kind::Fix:
      bound.push_back(t->name);
      collectFree(t->left, bound, out);
      bound.pop_back();
      return;
    default:
      collectFree(t->left, bound, out);
      if (isBinary(t->kind)) collectFree(t->right, bound, out);
  }
}

// De Bruijn style comparison: a bound variable matches when both sides refer
// to the binder at the same depth.
bool eqRec(const TypePtr& a, const TypePtr& b, std::vector<Name>& ea, std::vector<Name>& eb) {
  if (a == b && ea == eb) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Type::Kind::Var: {
      auto depthOf = [](const std::vector<Name>& env, Name n) -> long {
        for (long i = static_cast<long>(env.size()) - 1; i >= 0; --i)
          if (env[i] == n) return static_cast<long>(env.size()) - 1 - i;
        return -1;
      };
      long da = depthOf(ea, a->name);
      long db = depthOf(eb, b->name);
      if (da < 0 && db < 0) return a->name == b->name;
      return da == db;
    }
    case Type::Kind::Unit:
    case Type::Kind::Nat:
      return true;
    case Type::Kind::Fix: {
      ea.push_back(a->name);
      eb.push_back(b->name);
      bool r = eqRec(a->left, b->left, ea, eb);
      ea.pop_back();
      eb.pop_back();
      return r;
    }
    default:
      if (!eqRec(a->left, b->left, ea, eb)) return false;
      return !isBinary(a->kind) || eqRec(a->right, b->right, ea, eb);
  }
}

}  // namespace

namespace ty {

TypePtr var(Name n) { return make(Type::Kind::Var, n); }
TypePtr unit() {
  static const TypePtr u = make(Type::Kind::Unit);
  return u;
}
TypePtr nat() {
  static const TypePtr n = make(Type::Kind::Nat);
  return n;
}
TypePtr prod(TypePtr a, TypePtr b) { return make(Type::Kind::Prod, {}, std::move(a), std::move(b)); }
TypePtr sum(TypePtr a, TypePtr b) { return make(Type::Kind::Sum, {}, std::move(a), std::move(b)); }
TypePtr fun(TypePtr a, TypePtr b) { return make(Type::Kind::Fun, {}, std::move(a), std::move(b)); }
TypePtr box(TypePtr a) { return make(Type::Kind::Box, {}, std::move(a)); }
TypePtr delay(TypePtr a) { return make(Type::Kind::Delay, {}, std::move(a)); }
TypePtr later(TypePtr a) { return make(Type::Kind::Later, {}, std::move(a)); }
TypePtr modal(Modality m, TypePtr a) {
  return m == Modality::Delay ? delay(std::move(a)) : later(std::move(a));
}
TypePtr fix(Name binder, TypePtr body) { return make(Type::Kind::Fix, binder, std::move(body)); }
TypePtr until(TypePtr a, TypePtr b) {
  return make(Type::Kind::Until, {}, std::move(a), std::move(b));
}

TypePtr str(TypePtr a) {
  Name v("a");
  return fix(v, prod(std::move(a), var(v)));
}
TypePtr ev(TypePtr a) {
  Name v("a");
  return fix(v, sum(std::move(a), var(v)));
}
TypePtr dia(TypePtr a) { return until(unit(), std::move(a)); }
TypePtr fair(TypePtr a, TypePtr b) {
  Name v("a");
  return fix(v, until(a, prod(b, later(until(b, prod(a, var(v)))))));
}
TypePtr fairAlt(TypePtr b, TypePtr a) {
  return until(b, prod(a, later(fair(a, b))));
}

}  // namespace ty

bool typeEqual(const TypePtr& a, const TypePtr& b) {
  std::vector<Name> ea, eb;
  return eqRec(a, b, ea, eb);
}

bool isClosed(const TypePtr& t) {
  std::vector<Name> bound, out;
  collectFree(t, bound, out);
  return out.empty();
}

TypePtr substituteType(const TypePtr& body, Name var, const TypePtr& replacement) {
  switch (body->kind) {
    case Type::Kind::Var:
      return body->name == var ? replacement : body;
    case Type::Kind::Unit:
    case Type::Kind::Nat:
      return body;
    case Type::Kind::Fix: {
      if (body->name == var || !occursFree(body->left, var)) return body;
      Name binder = body->name;
      TypePtr inner = body->left;
      if (occursFree(replacement, binder)) {
        Name renamed = Name::fresh(binder);
        inner = substituteType(inner, binder, ty::var(renamed));
        binder = renamed;
      }
      return ty::fix(binder, substituteType(inner, var, replacement));
    }
    default: {
      TypePtr l = substituteType(body->left, var, replacement);
      TypePtr r = isBinary(body->kind) ? substituteType(body->right, var, replacement) : nullptr;
      if (l == body->left && r == body->right) return body;
      return make(body->kind, body->name, std::move(l), std::move(r));
    }
  }
}

TypePtr unfoldFixType(const TypePtr& fix) {
  if (!fix || fix->kind != Type::Kind::Fix)
    throw std::invalid_argument("unfoldFixType: not a Fix type");
  return substituteType(fix->left, fix->name, ty::later(fix));
}

bool isStable(const TypePtr& t) {
  switch (t->kind) {
    case Type::Kind::Unit:
    case Type::Kind::Nat:
    case Type::Kind::Box:
      return true;
    case Type::Kind::Prod:
    case Type::Kind::Sum:
      return isStable(t->left) && isStable(t->right);
    default:
      return false;
  }
}

bool isLimit(const TypePtr& t) {
  switch (t->kind) {
    case Type::Kind::Var:
    case Type::Kind::Unit:
    case Type::Kind::Nat:
    case Type::Kind::Later:
      return true;
    case Type::Kind::Delay:
    case Type::Kind::Box:
    case Type::Kind::Fix:
      return isLimit(t->left);
    case Type::Kind::Prod:
    case Type::Kind::Sum:
      return isLimit(t->left) && isLimit(t->right);
    case Type::Kind::Fun:
      return isLimit(t->right);
    case Type::Kind::Until:
      return false;
  }
  return false;
}

bool isValueType(const TypePtr& t) {
  switch (t->kind) {
    case Type::Kind::Unit:
    case Type::Kind::Nat:
      return true;
    case Type::Kind::Prod:
    case Type::Kind::Sum:
      return isValueType(t->left) && isValueType(t->right);
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Printing. Precedence: 0 arrow, 1 Until, 2 sum, 3 product, 4 prefix, 5 atom.

namespace {

bool isVarNamed(const TypePtr& t, Name n) { return t->kind == Type::Kind::Var && t->name == n; }

// Fix a. A * a  with a not free in A
const Type* matchStr(const TypePtr& t) {
  if (t->kind != Type::Kind::Fix) return nullptr;
  const auto& b = t->left;
  if (b->kind == Type::Kind::Prod && isVarNamed(b->right, t->name) && !occursFree(b->left, t->name))
    return b->left.get();
  return nullptr;
}

const Type* matchEv(const TypePtr& t) {
  if (t->kind != Type::Kind::Fix) return nullptr;
  const auto& b = t->left;
  if (b->kind == Type::Kind::Sum && isVarNamed(b->right, t->name) && !occursFree(b->left, t->name))
    return b->left.get();
  return nullptr;
}

bool matchFair(const TypePtr& t, TypePtr& a, TypePtr& b) {
  if (t->kind != Type::Kind::Fix) return false;
  const auto& u = t->left;
  if (u->kind != Type::Kind::Until) return false;
  const auto& p = u->right;
  if (p->kind != Type::Kind::Prod || p->right->kind != Type::Kind::Later) return false;
  const auto& u2 = p->right->left;
  if (u2->kind != Type::Kind::Until) return false;
  const auto& p2 = u2->right;
  if (p2->kind != Type::Kind::Prod || !isVarNamed(p2->right, t->name)) return false;
  if (occursFree(u->left, t->name) || occursFree(p->left, t->name)) return false;
  if (!typeEqual(u->left, p2->left) || !typeEqual(p->left, u2->left)) return false;
  a = u->left;
  b = p->left;
  return true;
}

// B Until (A * Later (Fair A B))
bool matchFairAlt(const TypePtr& t, TypePtr& b, TypePtr& a) {
  if (t->kind != Type::Kind::Until) return false;
  const auto& p = t->right;
  if (p->kind != Type::Kind::Prod || p->right->kind != Type::Kind::Later) return false;
  TypePtr fa, fb;
  if (!matchFair(p->right->left, fa, fb)) return false;
  if (!typeEqual(fa, p->left) || !typeEqual(fb, t->left)) return false;
  b = t->left;
  a = p->left;
  return true;
}

void print(const TypePtr& t, int ctx, std::string& out);

void wrap(int ctx, int own, std::string& out, auto body) {
  bool paren = own < ctx;
  if (paren) out += '(';
  body();
  if (paren) out += ')';
}

void print(const TypePtr& t, int ctx, std::string& out) {
  TypePtr fa, fb;
  if (auto* s = matchStr(t)) {
    wrap(ctx, 4, out, [&] {
      out += "Str ";
      print(TypePtr(t, s), 4, out);
    });
    return;
  }
  if (auto* e = matchEv(t)) {
    wrap(ctx, 4, out, [&] {
      out += "Ev ";
      print(TypePtr(t, e), 4, out);
    });
    return;
  }
  if (matchFair(t, fa, fb)) {
    wrap(ctx, 4, out, [&] {
      out += "Fair ";
      print(fa, 5, out);
      out += ' ';
      print(fb, 5, out);
    });
    return;
  }
  if (matchFairAlt(t, fb, fa)) {
    wrap(ctx, 4, out, [&] {
      out += "Fair' ";
      print(fb, 5, out);
      out += ' ';
      print(fa, 5, out);
    });
    return;
  }
  switch (t->kind) {
    case Type::Kind::Var:
      out += t->name.str();
      return;
    case Type::Kind::Unit:
      out += "Unit";
      return;
    case Type::Kind::Nat:
      out += "Nat";
      return;
    case Type::Kind::Fun:
      wrap(ctx, 0, out, [&] {
        print(t->left, 1, out);
        out += " -> ";
        print(t->right, 0, out);
      });
      return;
    case Type::Kind::Until:
      if (t->left->kind == Type::Kind::Unit) {
        wrap(ctx, 4, out, [&] {
          out += "Dia ";
          print(t->right, 4, out);
        });
        return;
      }
      wrap(ctx, 1, out, [&] {
        print(t->left, 2, out);
        out += " Until ";
        print(t->right, 1, out);
      });
      return;
    case Type::Kind::Sum:
      wrap(ctx, 2, out, [&] {
        print(t->left, 2, out);
        out += " + ";
        print(t->right, 3, out);
      });
      return;
    case Type::Kind::Prod:
      wrap(ctx, 3, out, [&] {
        print(t->left, 3, out);
        out += " * ";
        print(t->right, 4, out);
      });
      return;
    case Type::Kind::Box:
    case Type::Kind::Delay:
    case Type::Kind::Later:
      wrap(ctx, 4, out, [&] {
        out += t->kind == Type::Kind::Box ? "Box " : t->kind == Type::Kind::Delay ? "Next " : "Later ";
        print(t->left, 4, out);
      });
      return;
    case Type::Kind::Fix:
      wrap(ctx, 0, out, [&] {
        out += "Fix ";
        out += t->name.str();
        out += ". ";
        print(t->left, 0, out);
      });
      return;
  }
}

}  // namespace

std::string printType(const TypePtr& t) {
  std::string out;
  print(t, 0, out);
  return out;
}

}  // namespace lratt
