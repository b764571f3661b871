#include "lratt/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace lratt {

namespace {

using K = Term::Kind;

int kidCount(K k) {
  switch (k) {
    case K::Var:
    case K::Unit:
    case K::Zero:
    case K::Loc:
      return 0;
    case K::App:
    case K::Pair:
    case K::Wait:
      return 2;
    case K::RecNat:
    case K::Case:
    case K::RecUntil:
      return 3;
    default:
      return 1;
  }
}

void mergeInto(std::vector<Name>& acc, const std::vector<Name>& more) {
  if (more.empty()) return;
  if (acc.empty()) {
    acc = more;
    return;
  }
  std::vector<Name> merged;
  merged.reserve(acc.size() + more.size());
  std::set_union(acc.begin(), acc.end(), more.begin(), more.end(), std::back_inserter(merged));
  acc.swap(merged);
}

std::vector<Name> without(const std::vector<Name>& v, std::initializer_list<Name> drop) {
  std::vector<Name> out;
  out.reserve(v.size());
  for (auto n : v)
    if (std::find(drop.begin(), drop.end(), n) == drop.end()) out.push_back(n);
  return out;
}

void computeFacts(Term& t) {
  const auto& k = t.kids;
  int n = kidCount(t.kind);
  t.hasLocations = t.kind == K::Loc;
  for (int i = 0; i < n; ++i) t.hasLocations = t.hasLocations || k[i]->hasLocations;

  switch (t.kind) {
    case K::Var:
      t.freeVars = {t.name};
      break;
    case K::Lam:
    case K::Fix:
      t.freeVars = without(k[0]->freeVars, {t.binds[0]});
      break;
    case K::RecNat:
      t.freeVars = k[0]->freeVars;
      mergeInto(t.freeVars, without(k[1]->freeVars, {t.binds[0], t.binds[1]}));
      mergeInto(t.freeVars, k[2]->freeVars);
      break;
    case K::Case:
      t.freeVars = k[0]->freeVars;
      mergeInto(t.freeVars, without(k[1]->freeVars, {t.binds[0]}));
      mergeInto(t.freeVars, without(k[2]->freeVars, {t.binds[1]}));
      break;
    case K::RecUntil:
      t.freeVars = without(k[0]->freeVars, {t.binds[0]});
      mergeInto(t.freeVars, without(k[1]->freeVars, {t.binds[1], t.binds[2], t.binds[3]}));
      mergeInto(t.freeVars, k[2]->freeVars);
      break;
    default:
      for (int i = 0; i < n; ++i) mergeInto(t.freeVars, k[i]->freeVars);
  }

  switch (t.kind) {
    case K::Unit:
    case K::Zero:
    case K::Lam:
    case K::Box:
    case K::Delay:
    case K::Fix:
    case K::Loc:
      t.value = true;
      break;
    case K::Suc:
    case K::Inj:
    case K::Into:
    case K::Now:
      t.value = k[0]->value;
      break;
    case K::Pair:
    case K::Wait:
      t.value = k[0]->value && k[1]->value;
      break;
    default:
      t.value = false;
  }

  switch (t.kind) {
    case K::Delay:
      t.settled = false;
      break;
    case K::Suc:
    case K::Inj:
    case K::Into:
    case K::Now:
      t.settled = t.value && k[0]->settled;
      break;
    case K::Pair:
    case K::Wait:
      t.settled = t.value && k[0]->settled && k[1]->settled;
      break;
    default:
      t.settled = t.value;
  }
}

TermPtr finish(Term t) {
  computeFacts(t);
  return std::make_shared<const Term>(std::move(t));
}

Term node(K k, SourcePos p) {
  Term t{};
  t.kind = k;
  t.pos = p;
  return t;
}

}  // namespace

bool Term::isFree(Name n) const { return std::binary_search(freeVars.begin(), freeVars.end(), n); }

std::string printLocation(const Location& l) {
  return "@" + std::to_string(l.ns) + "." + std::to_string(l.index);
}

namespace tm {

TermPtr var(Name n, SourcePos p) {
  Term t = node(K::Var, p);
  t.name = n;
  return finish(std::move(t));
}
TermPtr unit(SourcePos p) {
  if (p.line == 0) {
    static const TermPtr u = finish(node(K::Unit, {}));
    return u;
  }
  return finish(node(K::Unit, p));
}
TermPtr zero(SourcePos p) {
  if (p.line == 0) {
    static const TermPtr z = finish(node(K::Zero, {}));
    return z;
  }
  return finish(node(K::Zero, p));
}
TermPtr suc(TermPtr a, SourcePos p) {
  Term t = node(K::Suc, p);
  t.kids[0] = std::move(a);
  return finish(std::move(t));
}
TermPtr numeral(std::uint64_t n) {
  TermPtr t = zero();
  for (std::uint64_t i = 0; i < n; ++i) t = suc(t);
  return t;
}
TermPtr recNat(TermPtr s, Name x, Name y, TermPtr body, TermPtr n, SourcePos p) {
  Term t = node(K::RecNat, p);
  t.kids = {std::move(s), std::move(body), std::move(n)};
  t.binds[0] = x;
  t.binds[1] = y;
  return finish(std::move(t));
}
TermPtr lam(Name x, TermPtr body, TypePtr annot, SourcePos p) {
  Term t = node(K::Lam, p);
  t.kids[0] = std::move(body);
  t.binds[0] = x;
  t.annot = std::move(annot);
  return finish(std::move(t));
}
TermPtr app(TermPtr f, TermPtr a, SourcePos p) {
  Term t = node(K::App, p);
  t.kids[0] = std::move(f);
  t.kids[1] = std::move(a);
  return finish(std::move(t));
}
TermPtr pair(TermPtr a, TermPtr b, SourcePos p) {
  Term t = node(K::Pair, p);
  t.kids[0] = std::move(a);
  t.kids[1] = std::move(b);
  return finish(std::move(t));
}
TermPtr proj(int i, TermPtr a, SourcePos p) {
  if (i != 1 && i != 2) throw std::invalid_argument("projection index must be 1 or 2");
  Term t = node(K::Proj, p);
  t.index = static_cast<std::uint8_t>(i);
  t.kids[0] = std::move(a);
  return finish(std::move(t));
}
TermPtr inj(int i, TermPtr a, SourcePos p) {
  if (i != 1 && i != 2) throw std::invalid_argument("injection index must be 1 or 2");
  Term t = node(K::Inj, p);
  t.index = static_cast<std::uint8_t>(i);
  t.kids[0] = std::move(a);
  return finish(std::move(t));
}
TermPtr caseOf(TermPtr s, Name x1, TermPtr t1, Name x2, TermPtr t2, SourcePos p) {
  Term t = node(K::Case, p);
  t.kids = {std::move(s), std::move(t1), std::move(t2)};
  t.binds[0] = x1;
  t.binds[1] = x2;
  return finish(std::move(t));
}

#define LRATT_UNARY(fn, kind)          \
  TermPtr fn(TermPtr a, SourcePos p) { \
    Term t = node(K::kind, p);         \
    t.kids[0] = std::move(a);          \
    return finish(std::move(t));       \
  }
LRATT_UNARY(delay, Delay)
LRATT_UNARY(adv, Adv)
LRATT_UNARY(box, Box)
LRATT_UNARY(unbox, Unbox)
LRATT_UNARY(now, Now)
LRATT_UNARY(into, Into)
LRATT_UNARY(out, Out)
#undef LRATT_UNARY

TermPtr wait(TermPtr a, TermPtr b, SourcePos p) {
  Term t = node(K::Wait, p);
  t.kids[0] = std::move(a);
  t.kids[1] = std::move(b);
  return finish(std::move(t));
}
TermPtr recUntil(Name xNow, TermPtr s, Name x, Name y, Name z, TermPtr body, TermPtr u,
                 SourcePos p) {
  Term t = node(K::RecUntil, p);
  t.kids = {std::move(s), std::move(body), std::move(u)};
  t.binds = {xNow, x, y, z};
  return finish(std::move(t));
}
TermPtr fix(Name x, TermPtr body, SourcePos p) {
  Term t = node(K::Fix, p);
  t.kids[0] = std::move(body);
  t.binds[0] = x;
  return finish(std::move(t));
}
TermPtr loc(Location l) {
  Term t = node(K::Loc, {});
  t.loc = l;
  return finish(std::move(t));
}
TermPtr cons(TermPtr head, TermPtr tail, SourcePos p) {
  return into(pair(std::move(head), std::move(tail), p), p);
}

TermPtr rebuild(const Term& old, std::array<TermPtr, 3> kids, std::array<Name, 4> binds) {
  Term t = node(old.kind, old.pos);
  t.index = old.index;
  t.name = old.name;
  t.loc = old.loc;
  t.annot = old.annot;
  t.kids = std::move(kids);
  t.binds = binds;
  return finish(std::move(t));
}

}  // namespace tm

// ---------------------------------------------------------------------------
// Substitution

namespace {

// Binder slots that scope over each child, per kind.
struct Scope {
  int count = 0;
  std::array<int, 3> slots{};  // indices into binds
};

std::array<Scope, 3> scopesOf(const Term& t) {
  std::array<Scope, 3> s{};
  switch (t.kind) {
    case K::Lam:
    case K::Fix:
      s[0] = {1, {0}};
      break;
    case K::RecNat:
      s[1] = {2, {0, 1}};
      break;
    case K::Case:
      s[1] = {1, {0}};
      s[2] = {1, {1}};
      break;
    case K::RecUntil:
      s[0] = {1, {0}};
      s[1] = {3, {1, 2, 3}};
      break;
    default:
      break;
  }
  return s;
}

TermPtr subst(const TermPtr& body, Name var, const TermPtr& rep) {
  if (!body->isFree(var)) return body;
  if (body->kind == K::Var) return rep;

  const Term& t = *body;
  int n = kidCount(t.kind);
  auto scopes = scopesOf(t);
  std::array<TermPtr, 3> kids = t.kids;
  std::array<Name, 4> binds = t.binds;

  for (int i = 0; i < n; ++i) {
    const Scope& sc = scopes[i];
    bool shadowed = false;
    for (int j = 0; j < sc.count; ++j)
      if (binds[sc.slots[j]] == var) shadowed = true;
    if (shadowed) continue;

    TermPtr kid = kids[i];
    // Rename binders that would capture free variables of the replacement.
    for (int j = 0; j < sc.count; ++j) {
      Name b = binds[sc.slots[j]];
      if (rep->isFree(b) && kid->isFree(var)) {
        Name fresh = Name::fresh(b);
        kid = subst(kid, b, tm::var(fresh));
        binds[sc.slots[j]] = fresh;
      }
    }
    kids[i] = subst(kid, var, rep);
  }
  return tm::rebuild(t, kids, binds);
}

bool alphaRec(const TermPtr& a, const TermPtr& b, std::vector<std::pair<Name, Name>>& env) {
  if (a->kind != b->kind || a->index != b->index) return false;
  switch (a->kind) {
    case K::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == a->name || it->second == b->name)
          return it->first == a->name && it->second == b->name;
      }
      return a->name == b->name;
    }
    case K::Loc:
      return a->loc == b->loc;
    case K::Lam:
      if ((a->annot == nullptr) != (b->annot == nullptr)) return false;
      if (a->annot && !typeEqual(a->annot, b->annot)) return false;
      break;
    default:
      break;
  }
  int n = kidCount(a->kind);
  auto scopes = scopesOf(*a);
  for (int i = 0; i < n; ++i) {
    const Scope& sc = scopes[i];
    for (int j = 0; j < sc.count; ++j) env.emplace_back(a->binds[sc.slots[j]], b->binds[sc.slots[j]]);
    bool ok = alphaRec(a->kids[i], b->kids[i], env);
    env.resize(env.size() - sc.count);
    if (!ok) return false;
  }
  return true;
}

}  // namespace

TermPtr substitute(const TermPtr& body, Name var, const TermPtr& replacement) {
  return subst(body, var, replacement);
}

bool alphaEqual(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  std::vector<std::pair<Name, Name>> env;
  return alphaRec(a, b, env);
}

bool asNumeral(const TermPtr& t, std::uint64_t& n) {
  n = 0;
  const Term* cur = t.get();
  while (cur->kind == K::Suc) {
    ++n;
    cur = cur->kids[0].get();
  }
  return cur->kind == K::Zero;
}

std::size_t termSize(const TermPtr& t) {
  std::size_t s = 1;
  int n = kidCount(t->kind);
  for (int i = 0; i < n; ++i) s += termSize(t->kids[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Printing. Levels: 0 binder forms, 1 cons, 2 application, 3 prefix forms, 4 atoms.

namespace {

void print(const TermPtr& t, int ctx, std::string& out);

template <class F>
void level(int own, int ctx, std::string& out, F body) {
  bool paren = own < ctx;
  if (paren) out += '(';
  body();
  if (paren) out += ')';
}

void prefix(const char* kw, const TermPtr& t, int ctx, std::string& out) {
  level(3, ctx, out, [&] {
    out += kw;
    out += ' ';
    print(t->kids[0], 4, out);
  });
}

void print(const TermPtr& t, int ctx, std::string& out) {
  std::uint64_t n;
  switch (t->kind) {
    case K::Var:
      out += t->name.str();
      return;
    case K::Unit:
      out += "()";
      return;
    case K::Zero:
      out += "0";
      return;
    case K::Suc:
      if (asNumeral(t, n)) {
        out += std::to_string(n);
        return;
      }
      prefix("suc", t, ctx, out);
      return;
    case K::Loc:
      out += printLocation(t->loc);
      return;
    case K::Lam:
      level(0, ctx, out, [&] {
        out += "fun ";
        if (t->annot) {
          out += "(" + t->binds[0].str() + " : " + printType(t->annot) + ")";
        } else {
          out += t->binds[0].str();
        }
        out += ". ";
        print(t->kids[0], 0, out);
      });
      return;
    case K::Fix:
      level(0, ctx, out, [&] {
        out += "fix " + t->binds[0].str() + ". ";
        print(t->kids[0], 0, out);
      });
      return;
    case K::App:
      level(2, ctx, out, [&] {
        print(t->kids[0], 2, out);
        out += ' ';
        print(t->kids[1], 4, out);
      });
      return;
    case K::Pair:
      out += '(';
      print(t->kids[0], 0, out);
      out += ", ";
      print(t->kids[1], 0, out);
      out += ')';
      return;
    case K::Proj:
      prefix(t->index == 1 ? "fst" : "snd", t, ctx, out);
      return;
    case K::Inj:
      prefix(t->index == 1 ? "inl" : "inr", t, ctx, out);
      return;
    case K::Case:
      out += "case ";
      print(t->kids[0], 0, out);
      out += " of { inl " + t->binds[0].str() + " -> ";
      print(t->kids[1], 0, out);
      out += " ; inr " + t->binds[1].str() + " -> ";
      print(t->kids[2], 0, out);
      out += " }";
      return;
    case K::RecNat:
      out += "nrec ";
      print(t->kids[2], 3, out);
      out += " { zero -> ";
      print(t->kids[0], 0, out);
      out += " ; suc " + t->binds[0].str() + " " + t->binds[1].str() + " -> ";
      print(t->kids[1], 0, out);
      out += " }";
      return;
    case K::RecUntil:
      out += "urec ";
      print(t->kids[2], 3, out);
      out += " { now " + t->binds[0].str() + " -> ";
      print(t->kids[0], 0, out);
      out += " ; wait " + t->binds[1].str() + " " + t->binds[2].str() + " rec " +
             t->binds[3].str() + " -> ";
      print(t->kids[1], 0, out);
      out += " }";
      return;
    case K::Delay:
      prefix("delay", t, ctx, out);
      return;
    case K::Adv:
      prefix("adv", t, ctx, out);
      return;
    case K::Box:
      prefix("box", t, ctx, out);
      return;
    case K::Unbox:
      prefix("unbox", t, ctx, out);
      return;
    case K::Now:
      prefix("now", t, ctx, out);
      return;
    case K::Out:
      prefix("out", t, ctx, out);
      return;
    case K::Wait:
      level(3, ctx, out, [&] {
        out += "wait ";
        print(t->kids[0], 4, out);
        out += ' ';
        print(t->kids[1], 4, out);
      });
      return;
    case K::Into:
      if (t->kids[0]->kind == K::Pair) {
        const auto& p = t->kids[0];
        level(1, ctx, out, [&] {
          print(p->kids[0], 2, out);
          out += " :: ";
          print(p->kids[1], 1, out);
        });
        return;
      }
      prefix("into", t, ctx, out);
      return;
  }
}

}  // namespace

std::string printTerm(const TermPtr& t) {
  std::string out;
  print(t, 0, out);
  return out;
}

}  // namespace lratt
