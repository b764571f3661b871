#include "lratt/machine.hpp"

#include "lratt/machine_detail.hpp"

namespace lratt {

const char* driverName(Driver d) {
  switch (d) {
    case Driver::Stream: return "stream";
    case Driver::Until: return "until";
    case Driver::Fair: return "fair";
  }
  return "?";
}

Store tickStore(Heap heap, NamespaceSupply& names) {
  return Store::ticked(std::move(heap), Heap(names.fresh()));
}

namespace detail {

Heap collect(Store s, bool gc) {
  Heap later = std::move(s.later());
  if (!gc) later.absorb(s.now());
  return later;
}

Failure shapeError(const char* expected, const TermPtr& got) {
  return Failure{FailureKind::ShapeError,
                 std::string("step result is not ") + expected + ": " + printTerm(got), {}};
}

Outcome<StreamResult> decodeStream(const TermPtr& v) {
  if (v->kind != Term::Kind::Into || v->kids[0]->kind != Term::Kind::Pair)
    return shapeError("a stream cell v :: w", v);
  const TermPtr& p = v->kids[0];
  return StreamResult{p->kids[0], tm::adv(p->kids[1])};
}

Outcome<UntilResult> decodeUntil(const TermPtr& v) {
  if (v->kind == Term::Kind::Wait) return UntilResult{v->kids[0], tm::adv(v->kids[1])};
  if (v->kind == Term::Kind::Now) return UntilResult{v->kids[0], nullptr};
  return shapeError("now v or wait v w", v);
}

Outcome<FairResult> decodeFair(const TermPtr& v, int mode) {
  if (v->kind == Term::Kind::Wait) return FairResult{v->kids[0], mode, tm::adv(v->kids[1]), mode};
  if (v->kind != Term::Kind::Now) return shapeError("now v or wait v w", v);
  const TermPtr& x = v->kids[0];
  if (x->kind != Term::Kind::Pair) return shapeError("now (v, w)", v);
  if (mode == 1) return FairResult{x->kids[0], 2, tm::adv(x->kids[1]), 2};
  return FairResult{x->kids[0], 1, tm::out(tm::adv(x->kids[1])), 1};
}

}  // namespace detail

StreamState initStream(const TermPtr& t) { return StreamState{tm::unbox(t), Heap(0)}; }
UntilState initUntil(const TermPtr& t) { return UntilState{false, tm::unbox(t), Heap(0)}; }
FairState initFair(const TermPtr& t) { return FairState{tm::out(tm::unbox(t)), Heap(0), 1}; }

Step<StreamState> stepStream(const StreamState& s, const MachineOptions& o) {
  Step<StreamState> r{std::nullopt, {}, s};
  Store st = tickStore(s.heap, r.next.names);
  EvalOutcome e = eval(s.term, std::move(st), o.eval);
  if (auto* f = std::get_if<Failure>(&e)) {
    r.failure = *f;
    return r;
  }
  auto& ok = std::get<EvalSuccess>(e);
  auto d = detail::decodeStream(ok.value);
  if (auto* f = std::get_if<Failure>(&d)) {
    r.failure = *f;
    return r;
  }
  auto& res = std::get<detail::StreamResult>(d);
  r.output = StepOutput{res.head, 0};
  r.next.term = res.next;
  r.next.heap = detail::collect(std::move(ok.store), o.gc);
  return r;
}

Step<UntilState> stepUntil(const UntilState& s, const MachineOptions& o) {
  Step<UntilState> r{std::nullopt, {}, s};
  if (s.halted) {
    r.failure = Failure{FailureKind::ShapeError, "machine already halted", {}};
    return r;
  }
  Store st = tickStore(s.heap, r.next.names);
  EvalOutcome e = eval(s.term, std::move(st), o.eval);
  if (auto* f = std::get_if<Failure>(&e)) {
    r.failure = *f;
    return r;
  }
  auto& ok = std::get<EvalSuccess>(e);
  auto d = detail::decodeUntil(ok.value);
  if (auto* f = std::get_if<Failure>(&d)) {
    r.failure = *f;
    return r;
  }
  auto& res = std::get<detail::UntilResult>(d);
  r.output = StepOutput{res.out, 0};
  r.next.term = res.next;
  r.next.halted = res.next == nullptr;
  r.next.heap = detail::collect(std::move(ok.store), o.gc);
  return r;
}

Step<FairState> stepFair(const FairState& s, const MachineOptions& o) {
  Step<FairState> r{std::nullopt, {}, s};
  Store st = tickStore(s.heap, r.next.names);
  EvalOutcome e = eval(s.term, std::move(st), o.eval);
  if (auto* f = std::get_if<Failure>(&e)) {
    r.failure = *f;
    return r;
  }
  auto& ok = std::get<EvalSuccess>(e);
  auto d = detail::decodeFair(ok.value, s.mode);
  if (auto* f = std::get_if<Failure>(&d)) {
    r.failure = *f;
    return r;
  }
  auto& res = std::get<detail::FairResult>(d);
  r.output = StepOutput{res.out, res.tag};
  r.next.term = res.next;
  r.next.mode = res.mode;
  r.next.heap = detail::collect(std::move(ok.store), o.gc);
  return r;
}

namespace {

template <class State, class StepFn, class Halted>
RunResult runLoop(State s, std::size_t steps, StepFn step, Halted halted) {
  RunResult rr;
  for (std::size_t i = 1; i <= steps; ++i) {
    auto r = step(s);
    if (r.failure) {
      rr.failure = r.failure;
      return rr;
    }
    s = std::move(r.next);
    StepRecord rec;
    rec.step = i;
    rec.output = r.output;
    rec.heapSize = s.heap.size();
    rec.halts = halted(s);
    rr.maxHeapSize = std::max(rr.maxHeapSize, rec.heapSize);
    rr.steps.push_back(std::move(rec));
    if (rr.steps.back().halts) {
      rr.halted = true;
      break;
    }
  }
  return rr;
}

}  // namespace

RunResult runStream(const TermPtr& t, std::size_t steps, const MachineOptions& o) {
  return runLoop(
      initStream(t), steps, [&](const StreamState& s) { return stepStream(s, o); },
      [](const StreamState&) { return false; });
}

RunResult runUntil(const TermPtr& t, std::size_t maxSteps, const MachineOptions& o) {
  return runLoop(
      initUntil(t), maxSteps, [&](const UntilState& s) { return stepUntil(s, o); },
      [](const UntilState& s) { return s.halted; });
}

RunResult runFair(const TermPtr& t, std::size_t steps, const MachineOptions& o) {
  return runLoop(
      initFair(t), steps, [&](const FairState& s) { return stepFair(s, o); },
      [](const FairState&) { return false; });
}

RunResult runClosed(Driver d, const TermPtr& t, std::size_t steps, const MachineOptions& o) {
  switch (d) {
    case Driver::Stream: return runStream(t, steps, o);
    case Driver::Until: return runUntil(t, steps, o);
    case Driver::Fair: return runFair(t, steps, o);
  }
  return {};
}

namespace detail {

TypePtr streamElement(const TypePtr& a) {
  if (a->kind != Type::Kind::Fix || a->left->kind != Type::Kind::Prod) return nullptr;
  TypePtr elem = a->left->left;
  if (!isClosed(elem) || !typeEqual(a, ty::str(elem))) return nullptr;
  return elem;
}

std::optional<OutputTypes> fairParts(const TypePtr& f) {
  // Fix a. A Until (B * Later (B Until (A * a)))
  if (f->kind != Type::Kind::Fix || f->left->kind != Type::Kind::Until) return std::nullopt;
  const TypePtr& u = f->left;
  if (u->right->kind != Type::Kind::Prod) return std::nullopt;
  TypePtr a = u->left, b = u->right->left;
  if (!isClosed(a) || !isClosed(b) || !typeEqual(f, ty::fair(a, b))) return std::nullopt;
  return OutputTypes{a, b};
}

}  // namespace detail

std::optional<Driver> closedDriverFor(const TypePtr& t) {
  if (t->kind != Type::Kind::Box) return std::nullopt;
  const TypePtr& a = t->left;
  if (detail::streamElement(a)) return Driver::Stream;
  if (a->kind == Type::Kind::Until) return Driver::Until;
  if (detail::fairParts(a)) return Driver::Fair;
  return std::nullopt;
}

std::optional<OutputTypes> closedOutputTypes(Driver d, const TypePtr& t) {
  if (closedDriverFor(t) != d) return std::nullopt;
  const TypePtr& a = t->left;
  switch (d) {
    case Driver::Stream: return OutputTypes{detail::streamElement(a), nullptr};
    case Driver::Until: return OutputTypes{a->left, a->right};
    case Driver::Fair: return detail::fairParts(a);
  }
  return std::nullopt;
}

}  // namespace lratt
