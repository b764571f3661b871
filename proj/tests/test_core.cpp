#include "doctest.h"
#include "lratt/store.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lratt;
using namespace lratt::test;

TEST_SUITE("core") {

TEST_CASE("substitute") {
  Name x = N("x"), f = N("f"), y = N("y");
  CHECK(alphaEqual(substitute(tm::var(x), x, tm::zero()), tm::zero()));
  TermPtr idx = tm::lam(x, tm::var(x));
  CHECK(alphaEqual(substitute(idx, x, tm::zero()), idx));
  TermPtr idy = tm::lam(y, tm::var(y));
  CHECK(alphaEqual(substitute(tm::app(tm::var(f), tm::var(x)), f, idy),
                   tm::app(idy, tm::var(x))));
}

TEST_CASE("substitute avoids capture") {
  Name x = N("x"), y = N("y");
  // (fun y. x)[y / x] must not become fun y. y
  TermPtr body = tm::lam(y, tm::var(x));
  TermPtr r = substitute(body, x, tm::var(y));
  REQUIRE(r->kind == Term::Kind::Lam);
  CHECK(r->binds[0] != y);
  CHECK(r->kids[0]->kind == Term::Kind::Var);
  CHECK(r->kids[0]->name == y);
}

TEST_CASE("substitute respects alpha-equivalence") {
  TermPtr a = P("fun a. (a, z)");
  TermPtr b = P("fun b. (b, z)");
  REQUIRE(alphaEqual(a, b));
  CHECK(alphaEqual(substitute(a, N("z"), tm::zero()), substitute(b, N("z"), tm::zero())));
}

TEST_CASE("isStable") {
  CHECK(isStable(ty::nat()));
  CHECK_FALSE(isStable(ty::fun(ty::nat(), ty::nat())));
  CHECK(isStable(ty::prod(ty::box(ty::str(ty::nat())), ty::unit())));
}

TEST_CASE("isLimit") {
  CHECK(isLimit(ty::later(ty::until(ty::unit(), ty::nat()))));
  CHECK(isLimit(ty::str(ty::nat())));
  CHECK_FALSE(isLimit(ty::until(ty::unit(), ty::nat())));
  CHECK(isLimit(ty::fun(ty::nat(), ty::nat())));
  CHECK(isLimit(ty::ev(ty::nat())));
  CHECK_FALSE(isLimit(ty::dia(ty::nat())));
  CHECK_FALSE(isLimit(ty::fair(ty::nat(), ty::unit())));
}

TEST_CASE("isValueType") {
  CHECK(isValueType(ty::sum(ty::unit(), ty::nat())));
  CHECK_FALSE(isValueType(ty::fun(ty::unit(), ty::unit())));
  CHECK(isValueType(ty::prod(ty::nat(), ty::sum(ty::unit(), ty::unit()))));
}

TEST_CASE("predicates agree with the grammar recognizers") {
  oracle::TypeGen gen(7);
  for (int i = 0; i < 300; ++i) {
    TypePtr t = gen();
    INFO(printType(t));
    CHECK(isStable(t) == oracle::isStable(t));
    CHECK(isLimit(t) == oracle::isLimit(t));
    CHECK(isValueType(t) == oracle::isValueType(t));
  }
}

TEST_CASE("isValue") {
  Location l0{0, 0};
  CHECK(isValue(tm::wait(tm::unit(), tm::loc(l0))));
  CHECK_FALSE(isValue(tm::adv(tm::loc(l0))));
  CHECK(isValue(tm::delay(tm::app(tm::lam(N("x"), tm::var(N("x"))), tm::zero()))));
  CHECK(isValue(tm::box(tm::adv(tm::var(N("x"))))));
  CHECK(isValue(tm::fix(N("x"), tm::unbox(tm::var(N("x"))))));
  CHECK_FALSE(isValue(tm::pair(tm::zero(), tm::adv(tm::loc(l0)))));
  CHECK(isValue(tm::cons(tm::zero(), tm::loc(l0))));
}

TEST_CASE("settled values exclude nested delays") {
  CHECK(isSettled(tm::cons(tm::zero(), tm::loc(Location{1, 0}))));
  CHECK_FALSE(isSettled(tm::cons(tm::zero(), tm::delay(tm::zero()))));
  CHECK(isSettled(tm::box(tm::delay(tm::zero()))));
}

TEST_CASE("unfoldFixType") {
  TypePtr s = ty::str(ty::nat());
  CHECK(typeEqual(unfoldFixType(s), ty::prod(ty::nat(), ty::later(s))));
  CHECK(typeEqual(unfoldFixType(ty::fix(N("a"), ty::nat())), ty::nat()));
  Name a = N("a");
  TypePtr f = ty::fix(a, ty::until(ty::unit(), ty::prod(ty::nat(), ty::var(a))));
  CHECK(typeEqual(unfoldFixType(f), ty::until(ty::unit(), ty::prod(ty::nat(), ty::later(f)))));
  CHECK_THROWS_AS(unfoldFixType(ty::nat()), std::invalid_argument);
}

TEST_CASE("type equality is up to binder names") {
  CHECK(typeEqual(ty::fix(N("a"), ty::prod(ty::nat(), ty::var(N("a")))),
                  ty::fix(N("b"), ty::prod(ty::nat(), ty::var(N("b"))))));
  CHECK_FALSE(typeEqual(ty::str(ty::nat()), ty::ev(ty::nat())));
}

TEST_CASE("alloc") {
  CHECK(alloc(Store::ticked(Heap(0), Heap(1))) == Location{1, 0});
  Heap h(0);
  h.write(Location{0, 0}, tm::zero());
  CHECK(alloc(Store::single(h)) == Location{0, 1});
  CHECK_THROWS_AS(alloc(Store::null()), NullStoreAccess);
}

TEST_CASE("alloc is deterministic and fresh") {
  Heap h(3);
  h.write(Location{3, 0}, tm::zero());
  h.write(Location{3, 2}, tm::zero());
  Heap h2 = h;
  CHECK(alloc(Store::single(h)) == alloc(Store::ticked(Heap(9), h2)));
  CHECK_FALSE(h.contains(alloc(Store::single(h))));
}

TEST_CASE("gcStore") {
  Heap now(0), later(1);
  now.write(Location{0, 0}, tm::zero());
  later.write(Location{1, 0}, tm::unit());
  CHECK(gcStore(Store::null()) == Store::null());
  CHECK(gcStore(Store::ticked(now, later)) == Store::single(later));
  for (const Store& s : {Store::null(), Store::single(later), Store::ticked(now, later)})
    CHECK(gcStore(gcStore(s)) == gcStore(s));
}

TEST_CASE("storeWrite and storeRead") {
  Location l{1, 0};
  Heap expected(1);
  expected.write(l, tm::zero());
  CHECK(storeWrite(Store::ticked(Heap(0), Heap(1)), l, tm::zero()) ==
        Store::ticked(Heap(0), expected));
  Heap h(1);
  h.write(l, tm::suc(tm::zero()));
  CHECK(alphaEqual(storeRead(h, l), tm::suc(tm::zero())));
  CHECK_THROWS_AS(storeRead(Heap(1), l), DanglingLocation);
  CHECK_THROWS_AS(storeWrite(Store::null(), l, tm::zero()), NullStoreAccess);
}

TEST_CASE("storeExtends") {
  Heap now(0), later(1);
  now.write(Location{0, 0}, tm::zero());
  Store s = Store::single(later);
  CHECK(storeExtends(s, s));
  CHECK(storeExtends(Store::single(later), Store::ticked(now, later)));
  CHECK_FALSE(storeExtends(Store::null(), Store::single(Heap(0))));
  CHECK(storeExtends(Store::null(), Store::null()));
  Heap bigger = later;
  bigger.write(Location{1, 0}, tm::unit());
  CHECK(storeExtends(Store::single(later), Store::single(bigger)));
  CHECK_FALSE(storeExtends(Store::single(bigger), Store::single(later)));
}

TEST_CASE("heap writes stay in the heap's namespace") {
  Heap h(2);
  CHECK_THROWS_AS(h.write(Location{1, 0}, tm::zero()), std::invalid_argument);
}

}
