#include "lratt/eval.hpp"

namespace lratt {

const char* failureKindName(FailureKind k) {
  switch (k) {
    case FailureKind::NullStoreAlloc: return "NullStoreAlloc";
    case FailureKind::NullStoreRead: return "NullStoreRead";
    case FailureKind::DanglingLocation: return "DanglingLocation";
    case FailureKind::NotAFunction: return "NotAFunction";
    case FailureKind::NotAPair: return "NotAPair";
    case FailureKind::NotASum: return "NotASum";
    case FailureKind::NotANat: return "NotANat";
    case FailureKind::NotABox: return "NotABox";
    case FailureKind::NotAnUntilValue: return "NotAnUntilValue";
    case FailureKind::NotAnInto: return "NotAnInto";
    case FailureKind::NotALocation: return "NotALocation";
    case FailureKind::FreeVariable: return "FreeVariable";
    case FailureKind::FuelExhausted: return "FuelExhausted";
    case FailureKind::DepthExhausted: return "DepthExhausted";
    case FailureKind::ShapeError: return "ShapeError";
    case FailureKind::InvalidInput: return "InvalidInput";
  }
  return "?";
}

namespace {

using K = Term::Kind;

struct Abort {
  FailureKind kind;
  std::string message;
};

class Evaluator {
 public:
  Evaluator(Store store, const EvalOptions& opts) : store_(std::move(store)), opts_(opts) {
    fuel_ = opts.fuel;
  }

  EvalOutcome run(const TermPtr& t) {
    try {
      TermPtr v = eval(t);
      return EvalSuccess{std::move(v), std::move(store_)};
    } catch (const Abort& a) {
      return Failure{a.kind, a.message, std::move(failedPath_)};
    }
  }

 private:
  // Tracks the current derivation node for traces and failure paths.
  class Frame {
   public:
    Frame(Evaluator& ev, const TermPtr& t) : ev_(ev) {
      if (ev_.fuel_ == 0) ev_.fail(FailureKind::FuelExhausted, "fuel exhausted");
      --ev_.fuel_;
      if (static_cast<int>(ev_.rules_.size()) >= ev_.opts_.maxDepth)
        ev_.fail(FailureKind::DepthExhausted, "derivation too deep");
      ev_.rules_.push_back("?");
      if (ev_.opts_.trace) {
        node_ = ev_.opts_.trace->size();
        ev_.opts_.trace->push_back(
            DerivationNode{static_cast<int>(ev_.rules_.size()) - 1, "?", printTerm(t), {}});
      }
    }
    ~Frame() { ev_.rules_.pop_back(); }

    void rule(const char* name) {
      ev_.rules_.back() = name;
      if (ev_.opts_.trace) (*ev_.opts_.trace)[node_].rule = name;
    }

    TermPtr done(TermPtr v) {
      if (ev_.opts_.trace) (*ev_.opts_.trace)[node_].value = printTerm(v);
      return v;
    }

   private:
    Evaluator& ev_;
    std::size_t node_ = 0;
  };

  [[noreturn]] void fail(FailureKind k, std::string msg) {
    failedPath_.assign(rules_.begin(), rules_.end());
    throw Abort{k, std::move(msg)};
  }

  TermPtr eval(const TermPtr& t) {
    Frame f(*this, t);

    // delay t allocates even though it is syntactically a value, and so do values that
    // contain a delay in evaluation position; those go through the structural rules.
    if (t->kind == K::Delay) {
      f.rule("delay");
      if (store_.isNull()) fail(FailureKind::NullStoreAlloc, "delay under the null store");
      Location l = store_.rightmost().alloc();
      store_.rightmost().write(l, t->kids[0]);
      return f.done(tm::loc(l));
    }
    if (t->settled) {
      f.rule("val");
      return f.done(t);
    }

    const auto& k = t->kids;
    switch (t->kind) {
      case K::Var:
        fail(FailureKind::FreeVariable, "free variable " + t->name.str());

      case K::Pair: {
        f.rule("pair");
        TermPtr a = eval(k[0]);
        TermPtr b = eval(k[1]);
        return f.done(tm::pair(std::move(a), std::move(b)));
      }
      case K::Proj: {
        f.rule("proj");
        TermPtr v = eval(k[0]);
        if (v->kind != K::Pair) fail(FailureKind::NotAPair, "projection from " + printTerm(v));
        return f.done(v->kids[t->index - 1]);
      }
      case K::Inj: {
        f.rule("inj");
        return f.done(tm::inj(t->index, eval(k[0])));
      }
      case K::Case: {
        f.rule("case");
        TermPtr v = eval(k[0]);
        if (v->kind != K::Inj) fail(FailureKind::NotASum, "case on " + printTerm(v));
        int i = v->index;
        return f.done(eval(substitute(k[i], t->binds[i - 1], v->kids[0])));
      }
      case K::App: {
        f.rule("app");
        TermPtr fn = eval(k[0]);
        if (fn->kind != K::Lam) fail(FailureKind::NotAFunction, "applying " + printTerm(fn));
        TermPtr arg = eval(k[1]);
        return f.done(eval(substitute(fn->kids[0], fn->binds[0], arg)));
      }
      case K::Suc: {
        f.rule("suc");
        return f.done(tm::suc(eval(k[0])));
      }
      case K::RecNat: {
        TermPtr n = eval(k[2]);
        if (n->kind == K::Zero) {
          f.rule("nrec-zero");
          return f.done(eval(k[0]));
        }
        if (n->kind != K::Suc) fail(FailureKind::NotANat, "nrec on " + printTerm(n));
        f.rule("nrec-suc");
        const TermPtr& pred = n->kids[0];
        TermPtr rec = eval(tm::recNat(k[0], t->binds[0], t->binds[1], k[1], pred));
        TermPtr body = substitute(substitute(k[1], t->binds[0], pred), t->binds[1], rec);
        return f.done(eval(body));
      }
      case K::Adv: {
        f.rule("adv");
        if (store_.kind() != Store::Kind::Ticked)
          fail(FailureKind::NullStoreRead, "adv requires a ticked store");
        Heap later = std::move(store_.later());
        Heap now = store_.takeNow();
        store_ = Store::single(std::move(now));
        TermPtr l = eval(k[0]);
        if (l->kind != K::Loc) fail(FailureKind::NotALocation, "adv of " + printTerm(l));
        Heap now2 = store_.takeRightmost();
        TermPtr body;
        try {
          body = opts_.advReadsLater ? later.read(l->loc) : now2.read(l->loc);
        } catch (const DanglingLocation& d) {
          fail(FailureKind::DanglingLocation, d.what());
        }
        store_ = Store::ticked(std::move(now2), std::move(later));
        return f.done(eval(body));
      }
      case K::Unbox: {
        if (store_.isNull()) {
          f.rule("unbox");
          fail(FailureKind::NullStoreRead, "unbox under the null store");
        }
        Store saved = std::move(store_);
        store_ = Store::null();
        TermPtr v = eval(k[0]);
        store_ = std::move(saved);
        if (v->kind == K::Box) {
          f.rule("unbox-box");
          return f.done(eval(v->kids[0]));
        }
        if (v->kind == K::Fix) {
          f.rule("unbox-fix");
          TermPtr self = tm::box(tm::delay(tm::unbox(v)));
          return f.done(eval(substitute(v->kids[0], v->binds[0], self)));
        }
        f.rule("unbox");
        fail(FailureKind::NotABox, "unbox of " + printTerm(v));
      }
      case K::Now: {
        f.rule("now");
        return f.done(tm::now(eval(k[0])));
      }
      case K::Wait: {
        f.rule("wait");
        TermPtr a = eval(k[0]);
        TermPtr b = eval(k[1]);
        return f.done(tm::wait(std::move(a), std::move(b)));
      }
      case K::RecUntil: {
        TermPtr v = eval(k[2]);
        if (v->kind == K::Now) {
          f.rule("urec-now");
          return f.done(eval(substitute(k[0], t->binds[0], v->kids[0])));
        }
        if (v->kind != K::Wait) fail(FailureKind::NotAnUntilValue, "urec on " + printTerm(v));
        f.rule("urec-wait");
        if (store_.isNull()) fail(FailureKind::NullStoreAlloc, "urec under the null store");
        const TermPtr& v1 = v->kids[0];
        const TermPtr& v2 = v->kids[1];
        Location l = store_.rightmost().alloc();
        store_.rightmost().write(l, tm::recUntil(t->binds[0], k[0], t->binds[1], t->binds[2],
                                                 t->binds[3], k[1], tm::adv(v2)));
        TermPtr body = substitute(k[1], t->binds[1], v1);
        body = substitute(body, t->binds[2], v2);
        body = substitute(body, t->binds[3], tm::loc(l));
        return f.done(eval(body));
      }
      case K::Into: {
        f.rule("into");
        return f.done(tm::into(eval(k[0])));
      }
      case K::Out: {
        f.rule("out");
        TermPtr v = eval(k[0]);
        if (v->kind != K::Into) fail(FailureKind::NotAnInto, "out of " + printTerm(v));
        return f.done(v->kids[0]);
      }
      default:
        break;
    }
    fail(FailureKind::ShapeError, "no evaluation rule for " + printTerm(t));
  }

  Store store_;
  const EvalOptions& opts_;
  std::uint64_t fuel_ = 0;
  std::vector<const char*> rules_;
  std::vector<std::string> failedPath_;
};

}  // namespace

EvalOutcome eval(const TermPtr& t, Store store, const EvalOptions& options) {
  Evaluator ev(std::move(store), options);
  return ev.run(t);
}

std::string printDerivation(const std::vector<DerivationNode>& nodes) {
  std::string out;
  for (const auto& n : nodes) {
    out.append(static_cast<std::size_t>(n.depth) * 2, ' ');
    out += n.rule + "  " + n.term + "  =>  " + n.value + "\n";
  }
  return out;
}

}  // namespace lratt
