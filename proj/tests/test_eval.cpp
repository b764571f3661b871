#include "doctest.h"
#include "lratt/eval.hpp"
#include "support.hpp"

using namespace lratt;
using namespace lratt::test;
using FK = FailureKind;

namespace {

Store emptyTicked() { return Store::ticked(Heap(0), Heap(1)); }

FK failureOf(const EvalOutcome& o) {
  REQUIRE(std::holds_alternative<Failure>(o));
  return std::get<Failure>(o).kind;
}

EvalSuccess success(const EvalOutcome& o) {
  if (auto* f = std::get_if<Failure>(&o)) FAIL(failureKindName(f->kind) << ": " << f->message);
  return std::get<EvalSuccess>(o);
}

std::string derivation(const TermPtr& t, Store s, EvalOptions o = {}) {
  std::vector<DerivationNode> nodes;
  o.trace = &nodes;
  EvalOutcome r = eval(t, std::move(s), o);
  success(r);
  return printDerivation(nodes);
}

TermPtr zerosTerm() { return tm::unbox(P("fix s. 0 :: unbox s")); }

TermPtr urecWaitTerm() {
  return P("urec (wait () (delay (now 0))) { now x -> x ; wait x y rec z -> (x, z) }");
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("adv of delay reads the now-heap") {
  TermPtr t = tm::adv(tm::delay(tm::suc(tm::zero())));
  const auto& r = success(eval(t, emptyTicked()));
  CHECK(alphaEqual(r.value, tm::suc(tm::zero())));
  Heap now(0);
  now.write(Location{0, 0}, tm::suc(tm::zero()));
  CHECK(r.store == Store::ticked(now, Heap(1)));
}

TEST_CASE("delay needs a store") {
  CHECK(failureOf(eval(tm::delay(tm::zero()), Store::null())) == FK::NullStoreAlloc);
}

TEST_CASE("identity application leaves the store alone") {
  Store s = Store::single(Heap(0));
  const auto& r = success(eval(P("(fun x. x) 0"), s));
  CHECK(alphaEqual(r.value, tm::zero()));
  CHECK(r.store == s);
}

TEST_CASE("fix unfolding allocates the recursive call") {
  TermPtr t = zerosTerm();
  const auto& r = success(eval(t, emptyTicked()));
  Location l{1, 0};
  CHECK(alphaEqual(r.value, tm::cons(tm::zero(), tm::loc(l))));
  Heap later(1);
  later.write(l, t);
  CHECK(r.store == Store::ticked(Heap(0), later));
}

TEST_CASE("golden derivation: adv of delay") {
  const char* expected =
      "adv  adv (delay 1)  =>  1\n"
      "  delay  delay 1  =>  @0.0\n"
      "  val  1  =>  1\n";
  CHECK(derivation(tm::adv(tm::delay(tm::suc(tm::zero()))), emptyTicked()) == expected);
}

TEST_CASE("golden derivation: fix unfolding") {
  const char* expected =
      "unbox-fix  unbox (fix s. 0 :: unbox s)  =>  0 :: @1.0\n"
      "  val  fix s. 0 :: unbox s  =>  fix s. 0 :: unbox s\n"
      "  into  0 :: unbox (box (delay (unbox (fix s. 0 :: unbox s))))  =>  0 :: @1.0\n"
      "    pair  (0, unbox (box (delay (unbox (fix s. 0 :: unbox s)))))  =>  (0, @1.0)\n"
      "      val  0  =>  0\n"
      "      unbox-box  unbox (box (delay (unbox (fix s. 0 :: unbox s))))  =>  @1.0\n"
      "        val  box (delay (unbox (fix s. 0 :: unbox s)))  =>  box (delay (unbox (fix s. 0 :: unbox s)))\n"
      "        delay  delay (unbox (fix s. 0 :: unbox s))  =>  @1.0\n";
  CHECK(derivation(zerosTerm(), emptyTicked()) == expected);
}

TEST_CASE("golden derivation: urec wait step") {
  TermPtr t = urecWaitTerm();
  std::string expected = "urec-wait  " + printTerm(t) +
                         "  =>  ((), @1.1)\n"
                         "  wait  wait () (delay (now 0))  =>  wait () @1.0\n"
                         "    val  ()  =>  ()\n"
                         "    delay  delay (now 0)  =>  @1.0\n"
                         "  val  ((), @1.1)  =>  ((), @1.1)\n";
  CHECK(derivation(t, emptyTicked()) == expected);
}

TEST_CASE("urec wait stores the suspended recursion") {
  TermPtr t = urecWaitTerm();
  const auto& r = success(eval(t, emptyTicked()));
  const Heap& later = r.store.later();
  REQUIRE(later.size() == 2);
  CHECK(alphaEqual(later.read(Location{1, 0}), P("now 0")));
  TermPtr suspended = later.read(Location{1, 1});
  REQUIRE(suspended->kind == Term::Kind::RecUntil);
  CHECK(alphaEqual(suspended->kids[2], tm::adv(tm::loc(Location{1, 0}))));
  CHECK(alphaEqual(suspended->kids[0], t->kids[0]));
}

TEST_CASE("urec now case") {
  const auto& r = success(eval(P("urec (now 3) { now x -> suc x ; wait x y rec z -> 0 }"), Store::null()));
  CHECK(printTerm(r.value) == "4");
}

TEST_CASE("unbox and adv need a suitable store") {
  CHECK(failureOf(eval(P("unbox (box 0)"), Store::null())) == FK::NullStoreRead);
  CHECK(failureOf(eval(tm::adv(tm::loc(Location{0, 0})), Store::single(Heap(0)))) == FK::NullStoreRead);
  CHECK(failureOf(eval(tm::adv(tm::loc(Location{0, 5})), emptyTicked())) == FK::DanglingLocation);
}

TEST_CASE("unbox evaluates its subject under the null store") {
  // delay inside the subject of unbox has nowhere to allocate
  CHECK(failureOf(eval(P("unbox ((fun x. box x) (delay 0))"), emptyTicked())) == FK::NullStoreAlloc);
}

TEST_CASE("failure kinds") {
  CHECK(failureOf(eval(P("0 0"), Store::null())) == FK::NotAFunction);
  CHECK(failureOf(eval(P("fst 0"), Store::null())) == FK::NotAPair);
  CHECK(failureOf(eval(P("case 0 of { inl a -> a ; inr b -> b }"), Store::null())) == FK::NotASum);
  CHECK(failureOf(eval(P("nrec () { zero -> 0 ; suc x y -> y }"), Store::null())) == FK::NotANat);
  CHECK(failureOf(eval(P("unbox 0"), emptyTicked())) == FK::NotABox);
  CHECK(failureOf(eval(P("urec 0 { now x -> x ; wait x y rec z -> x }"), emptyTicked())) ==
        FK::NotAnUntilValue);
  CHECK(failureOf(eval(P("out 0"), Store::null())) == FK::NotAnInto);
  CHECK(failureOf(eval(P("adv 0"), emptyTicked())) == FK::NotALocation);
  CHECK(failureOf(eval(P("x"), Store::null())) == FK::FreeVariable);
  CHECK(failureOf(eval(P("urec (wait () 0) { now x -> x ; wait x y rec z -> x }"), Store::null())) ==
        FK::NullStoreAlloc);
}

TEST_CASE("fuel") {
  TermPtr omega = P("(fun x. x x) (fun x. x x)");
  EvalOptions o;
  o.fuel = 1000;
  CHECK(failureOf(eval(omega, Store::null(), o)) == FK::FuelExhausted);
  o.fuel = 1;
  CHECK(failureOf(eval(P("suc 0 0"), Store::null(), o)) == FK::FuelExhausted);
}

TEST_CASE("depth limit") {
  // nrec recursion nests one derivation level per predecessor
  TermPtr t = tm::recNat(tm::zero(), N("x"), N("y"), tm::var(N("y")), tm::numeral(50000));
  EvalOptions o;
  o.maxDepth = 1000;
  CHECK(failureOf(eval(t, Store::null(), o)) == FK::DepthExhausted);
}

TEST_CASE("more fuel never changes a success") {
  TermPtr t = zerosTerm();
  const auto& a = success(eval(t, emptyTicked()));
  for (std::uint64_t f : {std::uint64_t{9}, std::uint64_t{100}, std::uint64_t{1'000'000}}) {
    EvalOptions o;
    o.fuel = f;
    const auto& b = success(eval(t, emptyTicked(), o));
    CHECK(alphaEqual(a.value, b.value));
    CHECK(a.store == b.store);
  }
}

TEST_CASE("failures report the rule path") {
  EvalOutcome r = eval(P("(fun x. fst x) 0"), Store::null());
  REQUIRE(std::holds_alternative<Failure>(r));
  const auto& path = std::get<Failure>(r).path;
  REQUIRE(path.size() >= 2);
  CHECK(path.front() == "app");
  CHECK(path.back() == "proj");
}

TEST_CASE("settled values evaluate to themselves in one node") {
  EvalOptions o;
  o.fuel = 1;
  for (const char* v : {"()", "3", "fun x. x", "box (adv x)", "fix x. unbox x", "(0, inl ())",
                        "now (1, 2)", "0 :: box 0"}) {
    INFO(v);
    TermPtr t = P(v);
    REQUIRE(isSettled(t));
    Store s = emptyTicked();
    const auto& r = success(eval(t, s, o));
    CHECK(r.value == t);
    CHECK(r.store == s);
  }
  TermPtr l = tm::wait(tm::unit(), tm::loc(Location{0, 0}));
  const auto& r = success(eval(l, Store::null(), o));
  CHECK(r.value == l);
}

TEST_CASE("values containing delay allocate") {
  const auto& r = success(eval(P("0 :: delay 1"), emptyTicked()));
  CHECK(alphaEqual(r.value, tm::cons(tm::zero(), tm::loc(Location{1, 0}))));
  CHECK(r.store.later().size() == 1);
}

TEST_CASE("store monotonicity, namespace discipline and null-store purity") {
  for (const auto& [file, decl] : std::vector<std::pair<std::string, std::string>>{
           {"zeros.lratt", "zeros"}, {"nats.lratt", "nats"}, {"temporal.lratt", "joined"},
           {"events.lratt", "chained"}, {"scheduler.lratt", "sched"}}) {
    TermPtr t = tm::unbox(corpusTerm(file, decl));
    Heap now(4);
    now.write(Location{4, 0}, tm::zero());
    Store s = Store::ticked(now, Heap(5));
    const auto& r = success(eval(t, s));
    INFO(decl);
    CHECK(storeExtends(s, r.store));
    CHECK(r.store.now().ns() == 4);
    CHECK(r.store.later().ns() == 5);
    for (const auto& [l, _] : r.store.later().bindings()) CHECK(l.ns == 5);
  }
  const auto& pure = success(eval(P("nrec 3 { zero -> box 0 ; suc x y -> box (suc (unbox y)) }"), Store::null()));
  CHECK(pure.store.isNull());
}

TEST_CASE("determinism") {
  TermPtr t = tm::unbox(corpusTerm("scheduler.lratt", "sched"));
  std::vector<DerivationNode> a, b;
  EvalOptions oa, ob;
  oa.trace = &a;
  ob.trace = &b;
  const auto& ra = success(eval(tm::out(t), emptyTicked(), oa));
  const auto& rb = success(eval(tm::out(t), emptyTicked(), ob));
  CHECK(printTerm(ra.value) == printTerm(rb.value));
  CHECK(ra.store == rb.store);
  CHECK(printDerivation(a) == printDerivation(b));
}

}
