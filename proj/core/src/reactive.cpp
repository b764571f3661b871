#include "lratt/reactive.hpp"

#include "lratt/machine_detail.hpp"

namespace lratt {

ReactiveState initReactive(const TermPtr& t, Driver kind) {
  ReactiveState s;
  s.kind = kind;
  s.heap = Heap(0);
  s.inputLoc = s.heap.alloc();
  TermPtr start = tm::app(tm::unbox(t), tm::adv(tm::loc(s.inputLoc)));
  s.term = kind == Driver::Fair ? tm::out(start) : start;
  s.mode = 1;
  return s;
}

Step<ReactiveState> reactStep(const ReactiveState& s, const TermPtr& input,
                              const MachineOptions& o) {
  Step<ReactiveState> r{std::nullopt, {}, s};
  auto fail = [&](Failure f) {
    r.failure = std::move(f);
    return r;
  };
  if (s.halted) return fail(Failure{FailureKind::ShapeError, "machine already halted", {}});
  if (!input || !input->value || !input->freeVars.empty() || input->hasLocations)
    return fail(Failure{FailureKind::InvalidInput,
                        "input must be a closed location-free value" +
                            (input ? ": " + printTerm(input) : std::string()),
                        {}});

  Heap now = s.heap;
  Heap later(r.next.names.fresh());
  Location next = later.alloc();
  later.write(next, tm::unit());
  now.write(s.inputLoc, tm::cons(input, tm::loc(next)));

  EvalOutcome e = eval(s.term, Store::ticked(std::move(now), std::move(later)), o.eval);
  if (auto* f = std::get_if<Failure>(&e)) return fail(*f);
  auto& ok = std::get<EvalSuccess>(e);

  switch (s.kind) {
    case Driver::Stream: {
      auto d = detail::decodeStream(ok.value);
      if (auto* f = std::get_if<Failure>(&d)) return fail(*f);
      auto& res = std::get<detail::StreamResult>(d);
      r.output = StepOutput{res.head, 0};
      r.next.term = res.next;
      break;
    }
    case Driver::Until: {
      auto d = detail::decodeUntil(ok.value);
      if (auto* f = std::get_if<Failure>(&d)) return fail(*f);
      auto& res = std::get<detail::UntilResult>(d);
      r.output = StepOutput{res.out, 0};
      r.next.term = res.next;
      r.next.halted = res.next == nullptr;
      break;
    }
    case Driver::Fair: {
      auto d = detail::decodeFair(ok.value, s.mode);
      if (auto* f = std::get_if<Failure>(&d)) return fail(*f);
      auto& res = std::get<detail::FairResult>(d);
      r.output = StepOutput{res.out, res.tag};
      r.next.term = res.next;
      r.next.mode = res.mode;
      break;
    }
  }
  r.next.heap = detail::collect(std::move(ok.store), o.gc);
  r.next.inputLoc = next;
  return r;
}

RunResult runReactive(const TermPtr& t, Driver kind, const std::vector<TermPtr>& inputs,
                      const MachineOptions& o) {
  RunResult rr;
  ReactiveState s = initReactive(t, kind);
  std::size_t i = 0;
  for (; i < inputs.size(); ++i) {
    auto r = reactStep(s, inputs[i], o);
    if (r.failure) {
      rr.failure = r.failure;
      rr.unconsumedInputs = inputs.size() - i;
      return rr;
    }
    s = std::move(r.next);
    StepRecord rec;
    rec.step = i + 1;
    rec.input = inputs[i];
    rec.output = r.output;
    rec.heapSize = s.heap.size();
    rec.halts = s.halted;
    rr.maxHeapSize = std::max(rr.maxHeapSize, rec.heapSize);
    rr.steps.push_back(std::move(rec));
    if (s.halted) {
      rr.halted = true;
      ++i;
      break;
    }
  }
  rr.unconsumedInputs = inputs.size() - i;
  return rr;
}

std::optional<ReactiveSignature> reactiveSignatureFor(const TypePtr& t) {
  if (t->kind != Type::Kind::Box || t->left->kind != Type::Kind::Fun) return std::nullopt;
  TypePtr in = detail::streamElement(t->left->left);
  if (!in) return std::nullopt;
  const TypePtr& res = t->left->right;
  if (TypePtr out = detail::streamElement(res))
    return ReactiveSignature{Driver::Stream, in, OutputTypes{out, nullptr}};
  if (res->kind == Type::Kind::Until)
    return ReactiveSignature{Driver::Until, in, OutputTypes{res->left, res->right}};
  if (auto parts = detail::fairParts(res)) return ReactiveSignature{Driver::Fair, in, *parts};
  return std::nullopt;
}

}  // namespace lratt
