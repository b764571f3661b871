#include "doctest.h"
#include "lratt/program.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lratt;
using namespace lratt::test;
using K = Term::Kind;

TEST_SUITE("surface") {

TEST_CASE("parseProgram") {
  SourceProgram p = parseProgram("def zeros : Box (Str Nat) = fix s. 0 :: unbox s");
  REQUIRE(p.decls.size() == 1);
  CHECK(p.decls[0].name == N("zeros"));
  CHECK(typeEqual(p.decls[0].type, ty::box(ty::str(ty::nat()))));
  CHECK(parseProgram("").decls.empty());
  CHECK_THROWS_AS(parseProgram("def x : = 3"), SyntaxError);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parseProgram("def a : Nat = 0\ndef b : Nat = (1, \n");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.pos.line >= 2);
  }
}

TEST_CASE("types and abbreviations") {
  CHECK(typeEqual(T("Str Nat"), ty::str(ty::nat())));
  CHECK(typeEqual(T("Dia Nat"), ty::until(ty::unit(), ty::nat())));
  CHECK(typeEqual(T("Ev Nat"), ty::ev(ty::nat())));
  CHECK(typeEqual(T("Fair Nat Unit"), ty::fair(ty::nat(), ty::unit())));
  CHECK(typeEqual(T("Fair' Unit Nat"), ty::fairAlt(ty::unit(), ty::nat())));
  CHECK(typeEqual(T("Nat -> Nat -> Nat"), ty::fun(ty::nat(), ty::fun(ty::nat(), ty::nat()))));
  CHECK(typeEqual(T("Nat * Nat + Unit"), ty::sum(ty::prod(ty::nat(), ty::nat()), ty::unit())));
  CHECK(typeEqual(T("Unit Until Nat * Nat"), ty::until(ty::unit(), ty::prod(ty::nat(), ty::nat()))));
  CHECK(typeEqual(T("Next Later Nat"), ty::delay(ty::later(ty::nat()))));
  CHECK(typeEqual(T("Fix a. Nat * a"), ty::str(ty::nat())));
}

TEST_CASE("fair types unfold as documented") {
  TypePtr f = ty::fair(ty::nat(), ty::unit());
  CHECK(typeEqual(unfoldFixType(f),
                  ty::until(ty::nat(), ty::prod(ty::unit(), ty::later(ty::fairAlt(ty::unit(), ty::nat()))))));
}

TEST_CASE("desugar cons") {
  TermPtr t = P("v :: w");
  REQUIRE(t->kind == K::Into);
  REQUIRE(t->kids[0]->kind == K::Pair);
  CHECK(t->kids[0]->kids[0]->name == N("v"));
  CHECK(t->kids[0]->kids[1]->name == N("w"));
}

TEST_CASE("desugar is the identity on core formers") {
  Name x = N("x"), f = N("f");
  TermPtr core = tm::lam(f, tm::lam(x, tm::delay(tm::app(tm::adv(tm::var(f)), tm::adv(tm::var(x))))));
  CHECK(alphaEqual(P("fun f. fun x. delay ((adv f) (adv x))"), core));
  CHECK(alphaEqual(P("fun f x. delay (adv f (adv x))"), core));
}

TEST_CASE("desugar let") {
  CHECK(alphaEqual(P("let x = 0 in suc x"), tm::app(tm::lam(N("x"), tm::suc(tm::var(N("x")))), tm::zero())));
}

TEST_CASE("mutual fix becomes one fixed point over a product") {
  TermPtr t = P("fix (ev, od). (0 :: unbox od, 1 :: unbox ev)");
  REQUIRE(t->kind == K::Fix);
  TermPtr body = t->kids[0];
  REQUIRE(body->kind == K::Pair);
  // each unbox of a component goes through a Later-lifted projection of the shared fixed point
  auto mentions = [&](const TermPtr& u) { return u->isFree(t->binds[0]); };
  CHECK(mentions(body->kids[0]));
  CHECK(mentions(body->kids[1]));
  CHECK(body->freeVars.size() == 1);
}

TEST_CASE("mutual fix typechecks against a product") {
  Program p = loadProgram(
      "def alt : Box (Str Nat * Str Nat) = fix (ev, od). (0 :: unbox od, 1 :: unbox ev)\n");
  CHECK_FALSE(checkProgram(p).has_value());
}

TEST_CASE("clause-style urec") {
  TermPtr t = P("urec d as go { now a -> a ; wait u w -> wait () (go w) }");
  REQUIRE(t->kind == K::RecUntil);
  // the recursive call is replaced by the z variable
  TermPtr step = t->kids[1];
  REQUIRE(step->kind == K::Wait);
  CHECK(step->kids[1]->kind == K::Var);
  CHECK(step->kids[1]->name == t->binds[3]);
  CHECK(step->kids[1]->name != t->binds[2]);
}

TEST_CASE("recursive calls must match the urec shape") {
  CHECK_THROWS_AS(P("urec d as go { now a -> go a ; wait u w -> wait () (go w) }"), DesugarError);
  CHECK_THROWS_AS(P("urec d as go { now a -> a ; wait u w -> wait () (go u) }"), DesugarError);
  CHECK_THROWS_AS(P("urec d as go { now a -> a ; wait u w -> go }"), DesugarError);
  CHECK_THROWS_AS(P("urec d as go { now a -> a ; wait u w -> fun w. go w }"), DesugarError);
}

TEST_CASE("mutual fix components must be unboxed") {
  CHECK_THROWS_AS(P("fix (f, g). (f, g)"), DesugarError);
}

TEST_CASE("duplicate declarations are rejected") {
  CHECK_THROWS_AS(loadProgram("def a : Nat = 0\ndef a : Nat = 1"), DesugarError);
}

TEST_CASE("printValue and parseValueLiteral") {
  CHECK(printValue(tm::numeral(2)) == "2");
  CHECK(alphaEqual(parseValueLiteral("2", ty::nat()), tm::suc(tm::suc(tm::zero()))));
  CHECK(printValue(tm::unit()) == "()");
  CHECK(alphaEqual(parseValueLiteral("()", ty::unit()), tm::unit()));
  TermPtr v = tm::inj(2, tm::pair(tm::zero(), tm::unit()));
  TypePtr a = ty::sum(ty::nat(), ty::prod(ty::nat(), ty::unit()));
  CHECK(printValue(v) == "inr (0, ())");
  CHECK(alphaEqual(parseValueLiteral("inr (0, ())", a), v));
}

TEST_CASE("value literals are checked against the type") {
  CHECK_THROWS_AS(parseValueLiteral("()", ty::nat()), ValueParseError);
  CHECK_THROWS_AS(parseValueLiteral("inl 0", ty::nat()), ValueParseError);
  CHECK_THROWS_AS(parseValueLiteral("(1, 2", ty::prod(ty::nat(), ty::nat())), ValueParseError);
  CHECK_THROWS_AS(parseValueLiteral("1 2", ty::nat()), ValueParseError);
  CHECK_THROWS_AS(parseValueLiteral("inl0", ty::sum(ty::nat(), ty::nat())), ValueParseError);
  CHECK_THROWS_AS(parseValueLiteral("0", ty::fun(ty::nat(), ty::nat())), ValueParseError);
}

TEST_CASE("printValue rejects non-printable values") {
  CHECK_THROWS_AS(printValue(tm::lam(N("x"), tm::var(N("x")))), NotPrintable);
  CHECK_THROWS_AS(printValue(tm::loc(Location{0, 0})), NotPrintable);
}

TEST_CASE("value literal round trip over random value types") {
  oracle::TypeGen gen(11);
  int tried = 0;
  for (int i = 0; i < 2000 && tried < 200; ++i) {
    TypePtr a = gen(4);
    if (!isValueType(a)) continue;
    ++tried;
    for (const TermPtr& v : sampleInputs(a, 5, static_cast<std::uint64_t>(i))) {
      std::string s = printValue(v);
      INFO(s << " : " << printType(a));
      CHECK(alphaEqual(parseValueLiteral(s, a), v));
    }
  }
  CHECK(tried == 200);
}

TEST_CASE("printed programs parse back to the same program") {
  for (const auto& entry : std::filesystem::directory_iterator(corpusDir())) {
    if (entry.path().extension() != ".lratt") continue;
    INFO(entry.path().filename().string());
    Program p = loadProgram(readFile(entry.path()));
    std::string printed = printProgram(p);
    Program q = loadProgram(printed);
    REQUIRE(q.decls.size() == p.decls.size());
    for (std::size_t i = 0; i < p.decls.size(); ++i) {
      CHECK(q.decls[i].name == p.decls[i].name);
      CHECK(q.decls[i].entry == p.decls[i].entry);
      CHECK(typeEqual(q.decls[i].type, p.decls[i].type));
      CHECK(alphaEqual(q.decls[i].body, p.decls[i].body));
    }
    CHECK(printProgram(q) == printed);
  }
}

}
