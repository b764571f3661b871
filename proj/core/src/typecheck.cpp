#include "lratt/typecheck.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace lratt {

namespace cx {
CtxEntry var(Name n, TypePtr t) { return CtxEntry{CtxEntry::Kind::Var, n, std::move(t)}; }
CtxEntry lock() { return CtxEntry{CtxEntry::Kind::Lock, {}, nullptr}; }
CtxEntry tick(Modality m) { return CtxEntry{CtxEntry::Kind::Tick, {}, nullptr, m}; }
}  // namespace cx

bool wfContext(const Context& g) {
  std::set<Name> names;
  bool lock = false, tick = false;
  for (const auto& e : g) {
    switch (e.kind) {
      case CtxEntry::Kind::Var:
        if (!names.insert(e.name).second) return false;
        break;
      case CtxEntry::Kind::Lock:
        if (lock) return false;
        lock = true;
        break;
      case CtxEntry::Kind::Tick:
        if (!lock || tick) return false;
        tick = true;
        break;
    }
  }
  return true;
}

std::string printContext(const Context& g) {
  std::string out;
  for (const auto& e : g) {
    if (!out.empty()) out += ", ";
    switch (e.kind) {
      case CtxEntry::Kind::Var:
        out += e.name.str() + " : " + printType(e.type);
        break;
      case CtxEntry::Kind::Lock:
        out += "lock";
        break;
      case CtxEntry::Kind::Tick:
        out += e.mod == Modality::Delay ? "tick(Next)" : "tick(Later)";
        break;
    }
  }
  return out.empty() ? "." : out;
}

const char* typeErrorKindName(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundVariable: return "UnboundVariable";
    case TypeErrorKind::VariableBlockedByToken: return "VariableBlockedByToken";
    case TypeErrorKind::LambdaUnderTick: return "LambdaUnderTick";
    case TypeErrorKind::ModalityMismatch: return "ModalityMismatch";
    case TypeErrorKind::MissingLock: return "MissingLock";
    case TypeErrorKind::MissingTick: return "MissingTick";
    case TypeErrorKind::DuplicateToken: return "DuplicateToken";
    case TypeErrorKind::TypeMismatch: return "TypeMismatch";
    case TypeErrorKind::CannotSynthesize: return "CannotSynthesize";
  }
  return "?";
}

TypeError::TypeError(TypeErrorKind k, std::string r, std::string msg, SourcePos p, TypePtr e,
                     TypePtr a)
    : std::runtime_error(std::move(msg)),
      kind(k),
      rule(std::move(r)),
      pos(p),
      expected(std::move(e)),
      actual(std::move(a)) {}

namespace {

using K = Term::Kind;
using TK = Type::Kind;
using EK = CtxEntry::Kind;

[[noreturn]] void raise(TypeErrorKind k, const char* rule, const TermPtr& t, std::string msg,
                        TypePtr expected = nullptr, TypePtr actual = nullptr) {
  throw TypeError(k, rule, std::move(msg), t->pos, std::move(expected), std::move(actual));
}

[[noreturn]] void mismatch(const char* rule, const TermPtr& t, const TypePtr& expected,
                           const TypePtr& actual) {
  raise(TypeErrorKind::TypeMismatch, rule, t,
        "expected " + printType(expected) + " but found " + printType(actual), expected, actual);
}

[[noreturn]] void shapeMismatch(const char* rule, const TermPtr& t, const char* what,
                                const TypePtr& actual) {
  raise(TypeErrorKind::TypeMismatch, rule, t,
        std::string("expected ") + what + " type but found " + printType(actual), nullptr, actual);
}

std::ptrdiff_t findToken(const Context& g, EK kind) {
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(g.size()) - 1; i >= 0; --i)
    if (g[static_cast<std::size_t>(i)].kind == kind) return i;
  return -1;
}

bool hasToken(const Context& g, EK kind) { return findToken(g, kind) >= 0; }

Context prefix(const Context& g, std::ptrdiff_t end) {
  return Context(g.begin(), g.begin() + end);
}

Context extend(Context g, CtxEntry e) {
  g.push_back(std::move(e));
  return g;
}

Context extend(Context g, std::initializer_list<CtxEntry> es) {
  for (const auto& e : es) g.push_back(e);
  return g;
}

void requireLockFree(const Context& g, const TermPtr& t, const char* rule) {
  if (hasToken(g, EK::Lock))
    raise(TypeErrorKind::DuplicateToken, rule, t, std::string(rule) + " under an existing lock");
}

void requireTickFreeLam(const Context& g, const TermPtr& t) {
  if (hasToken(g, EK::Tick))
    raise(TypeErrorKind::LambdaUnderTick, "lam", t, "lambda abstraction under a tick");
}

bool isLam(const TermPtr& t) { return t->kind == K::Lam; }

}  // namespace

TypePtr Checker::lookup(const Context& g, const TermPtr& v) const {
  bool crossedToken = false;
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    if (it->kind != EK::Var) {
      crossedToken = true;
      continue;
    }
    if (it->name != v->name) continue;
    if (crossedToken && !isStable(it->type))
      raise(TypeErrorKind::VariableBlockedByToken, "var", v,
            "variable " + v->name.str() + " of unstable type " + printType(it->type) +
                " is not available across a token");
    return it->type;
  }
  if (globals_) {
    auto it = globals_->find(v->name);
    if (it != globals_->end()) return it->second;
  }
  raise(TypeErrorKind::UnboundVariable, "var", v, "unbound variable " + v->name.str());
}

TypePtr Checker::letArgument(const Context& g, const TermPtr& lam, const TermPtr& arg) const {
  if (!lam->annot) return infer(g, arg);
  check(g, arg, lam->annot);
  return lam->annot;
}

TypePtr Checker::inferAdv(const Context& g, const TermPtr& t, const TypePtr* expected) const {
  std::ptrdiff_t tick = findToken(g, EK::Tick);
  if (tick < 0) raise(TypeErrorKind::MissingTick, "adv", t, "adv outside the scope of a tick");
  Modality m2 = g[static_cast<std::size_t>(tick)].mod;
  Context g0 = prefix(g, tick);

  // A literal delay checks directly at the tick's modality.
  if (expected && t->kids[0]->kind == K::Delay) {
    check(g0, t->kids[0], ty::modal(m2, *expected));
    return *expected;
  }
  TypePtr sub;
  try {
    sub = infer(g0, t->kids[0]);
  } catch (const TypeError& e) {
    if (e.kind != TypeErrorKind::CannotSynthesize || !expected) throw;
    // Fall back to checking the subject at the tick's own modality.
    check(g0, t->kids[0], ty::modal(m2, *expected));
    return *expected;
  }
  if (sub->kind != TK::Delay && sub->kind != TK::Later) shapeMismatch("adv", t, "a Next or Later", sub);
  Modality m = sub->kind == TK::Delay ? Modality::Delay : Modality::Later;
  if (!modLeq(m, m2) && !isLimit(sub->left))
    raise(TypeErrorKind::ModalityMismatch, "adv", t,
          "cannot advance " + printType(sub) + " under a Next tick: payload is not a limit type",
          nullptr, sub);
  return sub->left;
}

void Checker::check(const Context& g, const TermPtr& t, const TypePtr& a) const {
  const auto& k = t->kids;
  switch (t->kind) {
    case K::Lam: {
      if (a->kind != TK::Fun) shapeMismatch("lam", t, "a function", a);
      requireTickFreeLam(g, t);
      if (t->annot && !typeEqual(t->annot, a->left)) mismatch("lam", t, a->left, t->annot);
      check(extend(g, cx::var(t->binds[0], a->left)), k[0], a->right);
      return;
    }
    case K::App: {
      if (isLam(k[0])) {
        // (fun x. body) arg, the shape a `let` desugars to.
        requireTickFreeLam(g, k[0]);
        TypePtr argT = letArgument(g, k[0], k[1]);
        check(extend(g, cx::var(k[0]->binds[0], argT)), k[0]->kids[0], a);
        return;
      }
      break;
    }
    case K::Pair: {
      if (a->kind != TK::Prod) shapeMismatch("pair", t, "a product", a);
      check(g, k[0], a->left);
      check(g, k[1], a->right);
      return;
    }
    case K::Inj: {
      if (a->kind != TK::Sum) shapeMismatch("in", t, "a sum", a);
      check(g, k[0], t->index == 1 ? a->left : a->right);
      return;
    }
    case K::Case: {
      TypePtr s = infer(g, k[0]);
      if (s->kind != TK::Sum) shapeMismatch("case", k[0], "a sum", s);
      check(extend(g, cx::var(t->binds[0], s->left)), k[1], a);
      check(extend(g, cx::var(t->binds[1], s->right)), k[2], a);
      return;
    }
    case K::RecNat: {
      check(g, k[2], ty::nat());
      check(g, k[0], a);
      check(extend(g, {cx::var(t->binds[0], ty::nat()), cx::var(t->binds[1], a)}), k[1], a);
      return;
    }
    case K::Delay: {
      if (a->kind != TK::Delay && a->kind != TK::Later) shapeMismatch("delay", t, "a Next or Later", a);
      if (!hasToken(g, EK::Lock)) raise(TypeErrorKind::MissingLock, "delay", t, "delay requires a lock in scope");
      if (hasToken(g, EK::Tick)) raise(TypeErrorKind::DuplicateToken, "delay", t, "delay under an existing tick");
      Modality m = a->kind == TK::Delay ? Modality::Delay : Modality::Later;
      check(extend(g, cx::tick(m)), k[0], a->left);
      return;
    }
    case K::Adv: {
      TypePtr got = inferAdv(g, t, &a);
      if (!typeEqual(got, a)) mismatch("adv", t, a, got);
      return;
    }
    case K::Box: {
      if (a->kind != TK::Box) shapeMismatch("box", t, "a Box", a);
      requireLockFree(g, t, "box");
      check(extend(g, cx::lock()), k[0], a->left);
      return;
    }
    case K::Now: {
      if (a->kind != TK::Until) shapeMismatch("now", t, "an Until", a);
      check(g, k[0], a->right);
      return;
    }
    case K::Wait: {
      if (a->kind != TK::Until) shapeMismatch("wait", t, "an Until", a);
      check(g, k[0], a->left);
      check(g, k[1], ty::delay(a));
      return;
    }
    case K::RecUntil: {
      std::ptrdiff_t lock = findToken(g, EK::Lock);
      if (lock < 0) raise(TypeErrorKind::MissingLock, "urec", t, "urec requires a lock in scope");
      TypePtr u = infer(g, k[2]);
      if (u->kind != TK::Until) shapeMismatch("urec", k[2], "an Until", u);
      Context g0 = extend(prefix(g, lock), cx::lock());
      check(extend(g0, cx::var(t->binds[0], u->right)), k[0], a);
      check(extend(g0, {cx::var(t->binds[1], u->left), cx::var(t->binds[2], ty::delay(u)),
                        cx::var(t->binds[3], ty::delay(a))}),
            k[1], a);
      return;
    }
    case K::Fix: {
      if (a->kind != TK::Box) shapeMismatch("fix", t, "a Box", a);
      requireLockFree(g, t, "fix");
      check(extend(g, {cx::var(t->binds[0], ty::box(ty::later(a->left))), cx::lock()}), k[0],
            a->left);
      return;
    }
    case K::Into: {
      if (a->kind != TK::Fix) shapeMismatch("into", t, "a Fix", a);
      check(g, k[0], unfoldFixType(a));
      return;
    }
    default:
      break;
  }
  TypePtr got = infer(g, t);
  if (!typeEqual(got, a)) mismatch("sub", t, a, got);
}

TypePtr Checker::infer(const Context& g, const TermPtr& t) const {
  const auto& k = t->kids;
  switch (t->kind) {
    case K::Var:
      return lookup(g, t);
    case K::Unit:
      return ty::unit();
    case K::Zero:
      return ty::nat();
    case K::Suc: {
      // Walk suc chains iteratively; large numerals would otherwise exhaust the stack.
      TermPtr cur = k[0];
      while (cur->kind == K::Suc) cur = cur->kids[0];
      check(g, cur, ty::nat());
      return ty::nat();
    }
    case K::RecNat: {
      check(g, k[2], ty::nat());
      TypePtr a = infer(g, k[0]);
      check(extend(g, {cx::var(t->binds[0], ty::nat()), cx::var(t->binds[1], a)}), k[1], a);
      return a;
    }
    case K::Lam: {
      if (!t->annot) break;
      requireTickFreeLam(g, t);
      return ty::fun(t->annot, infer(extend(g, cx::var(t->binds[0], t->annot)), k[0]));
    }
    case K::App: {
      if (isLam(k[0])) {
        requireTickFreeLam(g, k[0]);
        TypePtr argT = letArgument(g, k[0], k[1]);
        return infer(extend(g, cx::var(k[0]->binds[0], argT)), k[0]->kids[0]);
      }
      TypePtr f = infer(g, k[0]);
      if (f->kind != TK::Fun) shapeMismatch("app", k[0], "a function", f);
      check(g, k[1], f->left);
      return f->right;
    }
    case K::Pair:
      return ty::prod(infer(g, k[0]), infer(g, k[1]));
    case K::Proj: {
      TypePtr p = infer(g, k[0]);
      if (p->kind != TK::Prod) shapeMismatch("proj", k[0], "a product", p);
      return t->index == 1 ? p->left : p->right;
    }
    case K::Case: {
      TypePtr s = infer(g, k[0]);
      if (s->kind != TK::Sum) shapeMismatch("case", k[0], "a sum", s);
      TypePtr b = infer(extend(g, cx::var(t->binds[0], s->left)), k[1]);
      check(extend(g, cx::var(t->binds[1], s->right)), k[2], b);
      return b;
    }
    case K::Delay: {
      if (!hasToken(g, EK::Lock)) raise(TypeErrorKind::MissingLock, "delay", t, "delay requires a lock in scope");
      if (hasToken(g, EK::Tick)) raise(TypeErrorKind::DuplicateToken, "delay", t, "delay under an existing tick");
      // A Later tick admits strictly more terms than a Next tick.
      return ty::later(infer(extend(g, cx::tick(Modality::Later)), k[0]));
    }
    case K::Adv:
      return inferAdv(g, t, nullptr);
    case K::Box:
      requireLockFree(g, t, "box");
      return ty::box(infer(extend(g, cx::lock()), k[0]));
    case K::Unbox: {
      std::ptrdiff_t lock = findToken(g, EK::Lock);
      if (lock < 0) raise(TypeErrorKind::MissingLock, "unbox", t, "unbox requires a lock in scope");
      TypePtr b = infer(prefix(g, lock), k[0]);
      if (b->kind != TK::Box) shapeMismatch("unbox", k[0], "a Box", b);
      return b->left;
    }
    case K::Wait: {
      TypePtr d = infer(g, k[1]);
      if (d->kind != TK::Delay || d->left->kind != TK::Until) break;
      check(g, k[0], d->left->left);
      return d->left;
    }
    case K::RecUntil: {
      std::ptrdiff_t lock = findToken(g, EK::Lock);
      if (lock < 0) raise(TypeErrorKind::MissingLock, "urec", t, "urec requires a lock in scope");
      TypePtr u = infer(g, k[2]);
      if (u->kind != TK::Until) shapeMismatch("urec", k[2], "an Until", u);
      Context g0 = extend(prefix(g, lock), cx::lock());
      TypePtr c = infer(extend(g0, cx::var(t->binds[0], u->right)), k[0]);
      check(extend(g0, {cx::var(t->binds[1], u->left), cx::var(t->binds[2], ty::delay(u)),
                        cx::var(t->binds[3], ty::delay(c))}),
            k[1], c);
      return c;
    }
    case K::Out: {
      TypePtr f = infer(g, k[0]);
      if (f->kind != TK::Fix) shapeMismatch("out", k[0], "a Fix", f);
      return unfoldFixType(f);
    }
    default:
      break;
  }
  raise(TypeErrorKind::CannotSynthesize, "infer", t,
        "cannot synthesize a type for " + printTerm(t) + "; add an annotation");
}

std::optional<TypeError> checkTerm(const Context& g, const TermPtr& t, const TypePtr& a,
                                   const Globals* globals) {
  if (!wfContext(g)) throw std::invalid_argument("ill-formed context " + printContext(g));
  try {
    Checker(globals).check(g, t, a);
  } catch (const TypeError& e) {
    return e;
  }
  return std::nullopt;
}

InferResult inferTerm(const Context& g, const TermPtr& t, const Globals* globals) {
  if (!wfContext(g)) throw std::invalid_argument("ill-formed context " + printContext(g));
  try {
    return InferResult{Checker(globals).infer(g, t), std::nullopt};
  } catch (const TypeError& e) {
    return InferResult{nullptr, e};
  }
}

std::optional<TypeError> checkProgram(const Program& p) {
  Globals globals;
  for (const auto& d : p.decls) {
    if (!isClosed(d.type)) {
      TypeError e(TypeErrorKind::TypeMismatch, "decl", "declared type " + printType(d.type) + " is not closed",
                  d.pos);
      e.decl = d.name.str();
      return e;
    }
    if (auto err = checkTerm({}, d.body, d.type, &globals)) {
      err->decl = d.name.str();
      return err;
    }
    globals[d.name] = d.type;
  }
  return std::nullopt;
}

std::string typeErrorJson(const TypeError& e) {
  nlohmann::json j;
  j["decl"] = e.decl;
  j["kind"] = typeErrorKindName(e.kind);
  j["rule"] = e.rule;
  j["message"] = e.what();
  j["expected"] = e.expected ? nlohmann::json(printType(e.expected)) : nlohmann::json(nullptr);
  j["actual"] = e.actual ? nlohmann::json(printType(e.actual)) : nlohmann::json(nullptr);
  j["line"] = e.pos.line;
  j["col"] = e.pos.col;
  return j.dump();
}

}  // namespace lratt
