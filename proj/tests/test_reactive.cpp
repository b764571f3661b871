#include <random>

#include "doctest.h"
#include "lratt/reactive.hpp"
#include "support.hpp"

using namespace lratt;
using namespace lratt::test;

namespace {

std::vector<TermPtr> nats(std::initializer_list<std::uint64_t> xs) {
  std::vector<TermPtr> out;
  for (auto x : xs) out.push_back(tm::numeral(x));
  return out;
}

std::vector<std::string> outputs(const RunResult& r, Driver d) {
  std::vector<std::string> out;
  for (const auto& s : r.steps) out.push_back(showOutput(s.output, d));
  return out;
}

}  // namespace

TEST_SUITE("reactive") {

TEST_CASE("initial state") {
  TermPtr id = corpusTerm("identity.lratt", "main");
  ReactiveState s = initReactive(id, Driver::Stream);
  CHECK(s.inputLoc == Location{0, 0});
  CHECK(s.heap.empty());
  CHECK(alphaEqual(s.term, tm::app(tm::unbox(id), tm::adv(tm::loc(Location{0, 0})))));
  ReactiveState f = initReactive(corpusTerm("fairreact.lratt", "main"), Driver::Fair);
  CHECK(f.term->kind == Term::Kind::Out);
  CHECK(f.mode == 1);
}

TEST_CASE("identity") {
  RunResult r = runReactive(corpusTerm("identity.lratt", "main"), Driver::Stream, nats({3, 1, 4}));
  REQUIRE_FALSE(r.failure);
  CHECK(outputs(r, Driver::Stream) == std::vector<std::string>{"3", "1", "4"});
}

TEST_CASE("map successor") {
  RunResult r = runReactive(corpusTerm("mapsuc.lratt", "main"), Driver::Stream, nats({0, 1, 2}));
  REQUIRE_FALSE(r.failure);
  CHECK(outputs(r, Driver::Stream) == std::vector<std::string>{"1", "2", "3"});
}

TEST_CASE("running sum against a direct scan") {
  std::mt19937_64 rng(3);
  std::vector<TermPtr> in;
  std::vector<std::string> expected;
  std::uint64_t acc = 0;
  for (int i = 0; i < 50; ++i) {
    std::uint64_t x = rng() % 10;
    in.push_back(tm::numeral(x));
    acc += x;
    expected.push_back(std::to_string(acc));
  }
  RunResult r = runReactive(corpusTerm("sums.lratt", "main"), Driver::Stream, in);
  REQUIRE_FALSE(r.failure);
  CHECK(outputs(r, Driver::Stream) == expected);
}

TEST_CASE("non-value input") {
  ReactiveState s = initReactive(corpusTerm("identity.lratt", "main"), Driver::Stream);
  auto r = reactStep(s, P("(fun x. x) 0"));
  REQUIRE(r.failure);
  CHECK(r.failure->kind == FailureKind::InvalidInput);
  auto r2 = reactStep(s, tm::cons(tm::zero(), tm::loc(Location{0, 0})));
  REQUIRE(r2.failure);
  CHECK(r2.failure->kind == FailureKind::InvalidInput);
}

TEST_CASE("an input-independent timer halts after its depth") {
  TermPtr t = corpusTerm("countdown.lratt", "main");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RunResult r = runReactive(t, Driver::Until, sampleInputs(ty::nat(), 10, seed));
    REQUIRE_FALSE(r.failure);
    CHECK(r.halted);
    CHECK(r.steps.size() == 4);
    CHECK(r.unconsumedInputs == 6);
  }
}

TEST_CASE("threshold watch halts at the first input above 5") {
  TermPtr t = corpusTerm("watch.lratt", "main");
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::vector<TermPtr> in = sampleInputs(ty::nat(), 30, seed);
    // oracle: scan of the input list, capped by the timer at step 21
    std::size_t expected = 21;
    std::string last;
    for (std::size_t i = 0; i < in.size(); ++i) {
      std::uint64_t n = 0;
      asNumeral(in[i], n);
      if (n > 5 || i + 1 == 21) {
        expected = i + 1;
        last = std::to_string(n);
        break;
      }
    }
    RunResult r = runReactive(t, Driver::Until, in);
    REQUIRE_FALSE(r.failure);
    CHECK(r.halted);
    CHECK(r.steps.size() == expected);
    CHECK(printValue(r.steps.back().output.value) == last);
  }
}

TEST_CASE("reactive scheduler keeps the mode pattern") {
  RunResult r = runReactive(corpusTerm("fairreact.lratt", "main"), Driver::Fair,
                            sampleInputs(ty::nat(), 19, 1));
  REQUIRE_FALSE(r.failure);
  CHECK(modes(r) == std::vector<int>{2, 1, 1, 2, 1, 1, 1, 2, 1, 1, 1, 1, 2, 1, 1, 1, 1, 1, 2});
  for (std::size_t i = 0; i < r.steps.size(); ++i)
    if (r.steps[i].output.mode == 1)
      CHECK(alphaEqual(r.steps[i].output.value, r.steps[i].input));
}

TEST_CASE("agreement with the closed machine when inputs are ignored") {
  RunResult a = runReactive(corpusTerm("constnats.lratt", "main"), Driver::Stream,
                            sampleInputs(ty::nat(), 40, 2));
  RunResult b = runStream(corpusTerm("nats.lratt", "nats"), 40);
  CHECK(outputs(a, Driver::Stream) == outputs(b, Driver::Stream));
  RunResult c = runReactive(corpusTerm("countdown.lratt", "main"), Driver::Until,
                            sampleInputs(ty::nat(), 40, 2));
  RunResult d = runUntil(corpusTerm("countdown.lratt", "timer3"), 40);
  CHECK(outputs(c, Driver::Until) == outputs(d, Driver::Until));
}

TEST_CASE("causality on a small example") {
  TermPtr t = corpusTerm("sums.lratt", "main");
  auto a = nats({1, 2, 3, 4, 5});
  auto b = nats({1, 2, 3, 9, 9});
  RunResult ra = runReactive(t, Driver::Stream, a);
  RunResult rb = runReactive(t, Driver::Stream, b);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(showOutput(ra.steps[i].output, Driver::Stream) == showOutput(rb.steps[i].output, Driver::Stream));
}

TEST_CASE("input locations never collide with allocations") {
  ReactiveState s = initReactive(corpusTerm("fairreact.lratt", "main"), Driver::Fair);
  std::vector<Location> inputs{s.inputLoc};
  for (int i = 0; i < 40; ++i) {
    auto r = reactStep(s, tm::numeral(static_cast<std::uint64_t>(i)));
    REQUIRE_FALSE(r.failure);
    s = r.next;
    // the next input cell is the first location of the fresh heap, seeded with ()
    CHECK(s.inputLoc.index == 0);
    CHECK(s.inputLoc.ns == s.heap.ns());
    REQUIRE(s.heap.contains(s.inputLoc));
    CHECK(alphaEqual(s.heap.read(s.inputLoc), tm::unit()));
    for (const auto& [l, t] : s.heap.bindings())
      if (l != s.inputLoc) CHECK(l.index > 0);
    inputs.push_back(s.inputLoc);
  }
  for (std::size_t i = 1; i < inputs.size(); ++i) CHECK(inputs[i].ns > inputs[i - 1].ns);
}

TEST_CASE("signatures") {
  auto s = reactiveSignatureFor(T("Box (Str Nat -> Str (Nat * Unit))"));
  REQUIRE(s);
  CHECK(s->kind == Driver::Stream);
  CHECK(typeEqual(s->input, ty::nat()));
  CHECK(reactiveSignatureFor(T("Box (Str Nat -> Dia Nat)"))->kind == Driver::Until);
  CHECK(reactiveSignatureFor(T("Box (Str Nat -> Fair Nat Unit)"))->kind == Driver::Fair);
  CHECK_FALSE(reactiveSignatureFor(T("Box (Nat -> Str Nat)")).has_value());
  CHECK_FALSE(reactiveSignatureFor(T("Str Nat -> Str Nat")).has_value());
}

}
