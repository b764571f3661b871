#include "lratt/surface.hpp"

#include <cctype>
#include <map>
#include <set>

namespace lratt {

namespace {

std::string at(SourcePos p) { return std::to_string(p.line) + ":" + std::to_string(p.col); }

}  // namespace

SyntaxError::SyntaxError(SourcePos p, const std::string& msg)
    : std::runtime_error(at(p) + ": " + msg), pos(p) {}

DesugarError::DesugarError(SourcePos p, const std::string& msg)
    : std::runtime_error(at(p) + ": " + msg), pos(p) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Kind : std::uint8_t { Ident, Number, Sym, End };
  Kind kind;
  std::string text;
  SourcePos pos;
  std::uint64_t num = 0;
};

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '#';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '-') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    SourcePos p{line, col};
    if (identStart(c)) {
      std::size_t j = i;
      while (j < s.size() && identChar(s[j])) ++j;
      out.push_back(Token{Token::Kind::Ident, std::string(s.substr(i, j - i)), p});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::uint64_t v = 0;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
        std::uint64_t d = static_cast<std::uint64_t>(s[j] - '0');
        if (v > (UINT64_MAX - d) / 10) throw SyntaxError(p, "numeral too large");
        v = v * 10 + d;
        ++j;
      }
      Token t{Token::Kind::Number, std::string(s.substr(i, j - i)), p};
      t.num = v;
      out.push_back(std::move(t));
      advance(j - i);
      continue;
    }
    static const char* two[] = {"->", "::"};
    bool matched = false;
    for (const char* sym : two) {
      if (s.substr(i, 2) == sym) {
        out.push_back(Token{Token::Kind::Sym, sym, p});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("(),:=.*+{};").find(c) != std::string_view::npos) {
      out.push_back(Token{Token::Kind::Sym, std::string(1, c), p});
      advance(1);
      continue;
    }
    throw SyntaxError(p, std::string("unexpected character '") + c + "'");
  }
  out.push_back(Token{Token::Kind::End, "", SourcePos{line, col}});
  return out;
}

const std::set<std::string, std::less<>> kTermKeywords = {
    "def",  "entry", "fun",  "let",   "in",  "fix",  "case", "of",   "inl",
    "inr",  "nrec",  "urec", "now",   "wait", "rec", "as",   "delay", "adv",
    "box",  "unbox", "into", "out",   "fst", "snd",  "suc",  "zero",
};

const std::set<std::string, std::less<>> kTypeKeywords = {
    "Unit", "Nat", "Box", "Next", "Later", "Fix", "Until", "Str", "Ev", "Dia", "Fair", "Fair'",
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  SourceProgram program() {
    SourceProgram p;
    while (!atEnd()) {
      SourceDecl d;
      d.pos = peek().pos;
      if (isKw("entry")) {
        next();
        d.entry = true;
      }
      expectKw("def");
      d.name = Name(ident("declaration name"));
      expectSym(":");
      d.type = type();
      expectSym("=");
      d.body = term();
      p.decls.push_back(std::move(d));
    }
    return p;
  }

  STermPtr wholeTerm() {
    STermPtr t = term();
    if (!atEnd()) fail("unexpected '" + peek().text + "' after term");
    return t;
  }

  TypePtr wholeType() {
    TypePtr t = type();
    if (!atEnd()) fail("unexpected '" + peek().text + "' after type");
    return t;
  }

 private:
  // Token helpers.
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool atEnd() const { return peek().kind == Token::Kind::End; }
  bool isSym(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Sym && peek(k).text == s;
  }
  bool isKw(std::string_view s) const {
    return peek().kind == Token::Kind::Ident && peek().text == s;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(peek().pos, msg); }
  std::string describe() const { return atEnd() ? "end of input" : "'" + peek().text + "'"; }
  void expectSym(std::string_view s) {
    if (!isSym(s)) fail("expected '" + std::string(s) + "' but found " + describe());
    next();
  }
  void expectKw(std::string_view s) {
    if (!isKw(s)) fail("expected '" + std::string(s) + "' but found " + describe());
    next();
  }
  bool isPlainIdent() const {
    return peek().kind == Token::Kind::Ident && !kTermKeywords.count(peek().text) &&
           !kTypeKeywords.count(peek().text);
  }
  std::string ident(const char* what) {
    if (!isPlainIdent()) fail(std::string("expected ") + what + " but found " + describe());
    return next().text;
  }

  static STermPtr mk(STerm s) { return std::make_shared<const STerm>(std::move(s)); }
  static STerm node(STerm::Kind k, SourcePos p, std::vector<STermPtr> kids = {}) {
    STerm s{};
    s.kind = k;
    s.pos = p;
    s.kids = std::move(kids);
    return s;
  }

  // Types.
  TypePtr type() {
    if (isKw("Fix")) {
      next();
      Name a(ident("type variable"));
      expectSym(".");
      return ty::fix(a, type());
    }
    TypePtr u = untilType();
    if (isSym("->")) {
      next();
      return ty::fun(u, type());
    }
    return u;
  }
  TypePtr untilType() {
    TypePtr s = sumType();
    if (isKw("Until")) {
      next();
      return ty::until(s, untilType());
    }
    return s;
  }
  TypePtr sumType() {
    TypePtr p = prodType();
    while (isSym("+")) {
      next();
      p = ty::sum(p, prodType());
    }
    return p;
  }
  TypePtr prodType() {
    TypePtr a = prefixType();
    while (isSym("*")) {
      next();
      a = ty::prod(a, prefixType());
    }
    return a;
  }
  TypePtr prefixType() {
    if (peek().kind == Token::Kind::Ident) {
      const std::string& k = peek().text;
      if (k == "Box") return next(), ty::box(prefixType());
      if (k == "Next") return next(), ty::delay(prefixType());
      if (k == "Later") return next(), ty::later(prefixType());
      if (k == "Str") return next(), ty::str(prefixType());
      if (k == "Ev") return next(), ty::ev(prefixType());
      if (k == "Dia") return next(), ty::dia(prefixType());
      if (k == "Fair" || k == "Fair'") {
        bool alt = k == "Fair'";
        next();
        TypePtr x = atomType();
        TypePtr y = atomType();
        return alt ? ty::fairAlt(x, y) : ty::fair(x, y);
      }
    }
    return atomType();
  }
  TypePtr atomType() {
    if (isKw("Unit")) return next(), ty::unit();
    if (isKw("Nat")) return next(), ty::nat();
    if (isSym("(")) {
      next();
      TypePtr t = type();
      expectSym(")");
      return t;
    }
    if (isPlainIdent()) return ty::var(Name(next().text));
    fail("expected a type but found " + describe());
  }

  // Terms.
  STermPtr term() {
    SourcePos p = peek().pos;
    if (isKw("fun")) {
      next();
      STerm s = node(STerm::Kind::Fun, p);
      while (isPlainIdent() || isSym("(")) {
        if (isSym("(")) {
          next();
          s.names.emplace_back(ident("parameter name"));
          expectSym(":");
          s.annots.push_back(type());
          expectSym(")");
        } else {
          s.names.emplace_back(next().text);
          s.annots.push_back(nullptr);
        }
      }
      if (s.names.empty()) fail("expected a parameter after 'fun'");
      expectSym(".");
      s.kids.push_back(term());
      return mk(std::move(s));
    }
    if (isKw("let")) {
      next();
      STerm s = node(STerm::Kind::Let, p);
      s.names.emplace_back(ident("variable name"));
      TypePtr annot;
      if (isSym(":")) {
        next();
        annot = type();
      }
      s.annots.push_back(annot);
      expectSym("=");
      s.kids.push_back(term());
      expectKw("in");
      s.kids.push_back(term());
      return mk(std::move(s));
    }
    if (isKw("fix")) {
      next();
      if (isSym("(")) {
        next();
        STerm s = node(STerm::Kind::MutFix, p);
        s.names.emplace_back(ident("recursion variable"));
        expectSym(",");
        s.names.emplace_back(ident("recursion variable"));
        expectSym(")");
        expectSym(".");
        s.kids.push_back(term());
        return mk(std::move(s));
      }
      STerm s = node(STerm::Kind::Fix, p);
      s.names.emplace_back(ident("recursion variable"));
      expectSym(".");
      s.kids.push_back(term());
      return mk(std::move(s));
    }
    STermPtr head = app();
    if (isSym("::")) {
      SourcePos cp = peek().pos;
      next();
      return mk(node(STerm::Kind::Cons, cp, {head, term()}));
    }
    return head;
  }

  bool startsAtom() const {
    if (isPlainIdent()) return true;
    if (peek().kind == Token::Kind::Number) return true;
    if (isSym("(")) return true;
    return isKw("zero") || isKw("case") || isKw("nrec") || isKw("urec");
  }

  STermPtr app() {
    STermPtr f = prefix();
    while (startsAtom()) {
      SourcePos p = peek().pos;
      f = mk(node(STerm::Kind::App, p, {f, atom()}));
    }
    return f;
  }

  STermPtr prefix() {
    SourcePos p = peek().pos;
    if (peek().kind == Token::Kind::Ident) {
      static const std::map<std::string, std::pair<STerm::Kind, int>, std::less<>> unary = {
          {"delay", {STerm::Kind::Delay, 0}}, {"adv", {STerm::Kind::Adv, 0}},
          {"box", {STerm::Kind::Box, 0}},     {"unbox", {STerm::Kind::Unbox, 0}},
          {"now", {STerm::Kind::Now, 0}},     {"into", {STerm::Kind::Into, 0}},
          {"out", {STerm::Kind::Out, 0}},     {"suc", {STerm::Kind::Suc, 0}},
          {"inl", {STerm::Kind::Inj, 1}},     {"inr", {STerm::Kind::Inj, 2}},
          {"fst", {STerm::Kind::Proj, 1}},    {"snd", {STerm::Kind::Proj, 2}},
      };
      auto it = unary.find(peek().text);
      if (it != unary.end()) {
        next();
        STerm s = node(it->second.first, p, {prefix()});
        s.index = it->second.second;
        return mk(std::move(s));
      }
      if (isKw("wait")) {
        next();
        STermPtr a = prefix();
        STermPtr b = prefix();
        return mk(node(STerm::Kind::Wait, p, {a, b}));
      }
    }
    return atom();
  }

  STermPtr atom() {
    SourcePos p = peek().pos;
    if (peek().kind == Token::Kind::Number) {
      STerm s = node(STerm::Kind::Num, p);
      s.num = next().num;
      return mk(std::move(s));
    }
    if (isKw("zero")) {
      next();
      return mk(node(STerm::Kind::Num, p));
    }
    if (isPlainIdent()) {
      STerm s = node(STerm::Kind::Var, p);
      s.name = Name(next().text);
      return mk(std::move(s));
    }
    if (isSym("(")) {
      next();
      if (isSym(")")) {
        next();
        return mk(node(STerm::Kind::Unit, p));
      }
      STermPtr a = term();
      if (isSym(",")) {
        next();
        STermPtr b = term();
        expectSym(")");
        return mk(node(STerm::Kind::Pair, p, {a, b}));
      }
      expectSym(")");
      return a;
    }
    if (isKw("case")) {
      next();
      STerm s = node(STerm::Kind::Case, p, {term()});
      expectKw("of");
      expectSym("{");
      expectKw("inl");
      s.names.emplace_back(ident("variable"));
      expectSym("->");
      s.kids.push_back(term());
      expectSym(";");
      expectKw("inr");
      s.names.emplace_back(ident("variable"));
      expectSym("->");
      s.kids.push_back(term());
      expectSym("}");
      return mk(std::move(s));
    }
    if (isKw("nrec")) {
      next();
      STerm s = node(STerm::Kind::Nrec, p, {prefix()});
      expectSym("{");
      expectKw("zero");
      expectSym("->");
      s.kids.push_back(term());
      expectSym(";");
      expectKw("suc");
      s.names.emplace_back(ident("variable"));
      s.names.emplace_back(ident("variable"));
      expectSym("->");
      s.kids.push_back(term());
      expectSym("}");
      return mk(std::move(s));
    }
    if (isKw("urec")) {
      next();
      STerm s = node(STerm::Kind::Urec, p, {prefix()});
      bool clauses = false;
      if (isKw("as")) {
        next();
        clauses = true;
        s.kind = STerm::Kind::UrecAs;
        s.names.emplace_back(ident("recursive function name"));
      }
      expectSym("{");
      expectKw("now");
      s.names.emplace_back(ident("variable"));
      expectSym("->");
      s.kids.push_back(term());
      expectSym(";");
      expectKw("wait");
      s.names.emplace_back(ident("variable"));
      s.names.emplace_back(ident("variable"));
      if (!clauses) {
        expectKw("rec");
        s.names.emplace_back(ident("variable"));
      }
      expectSym("->");
      s.kids.push_back(term());
      expectSym("}");
      return mk(std::move(s));
    }
    fail("expected a term but found " + describe());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Desugaring

struct Special {
  enum class Kind : std::uint8_t { Mutual, UrecCall };
  Kind kind;
  int index = 0;  // Mutual: component
  Name target;    // Mutual: tupled recursion variable. UrecCall: the z variable.
  Name arg;       // UrecCall: the only admissible argument; empty in the now case
};

using Env = std::map<Name, Special>;

Env bind(Env env, Name x) {
  env.erase(x);
  for (auto& [n, sp] : env)
    if (sp.kind == Special::Kind::UrecCall && sp.arg == x) sp.arg = Name();
  return env;
}

void distinct(const STerm& t, std::initializer_list<Name> names) {
  std::set<Name> seen;
  for (Name n : names)
    if (!seen.insert(n).second)
      throw DesugarError(t.pos, "variable " + n.str() + " bound twice in one pattern");
}

TermPtr ds(const STermPtr& sp, const Env& env) {
  const STerm& t = *sp;
  const auto& k = t.kids;
  const SourcePos p = t.pos;
  using SK = STerm::Kind;
  switch (t.kind) {
    case SK::Var: {
      auto it = env.find(t.name);
      if (it != env.end()) {
        if (it->second.kind == Special::Kind::Mutual)
          throw DesugarError(p, "mutually recursive " + t.name.str() + " may only be used as 'unbox " +
                                    t.name.str() + "'");
        throw DesugarError(p, "recursive call " + t.name.str() +
                                  " must be applied to the variable bound by the wait clause");
      }
      return tm::var(t.name, p);
    }
    case SK::Unit:
      return tm::unit(p);
    case SK::Num: {
      TermPtr r = tm::zero(p);
      for (std::uint64_t i = 0; i < t.num; ++i) r = tm::suc(r, p);
      return r;
    }
    case SK::Suc:
      return tm::suc(ds(k[0], env), p);
    case SK::Fun: {
      Env inner = env;
      for (Name n : t.names) inner = bind(inner, n);
      TermPtr body = ds(k[0], inner);
      for (std::size_t i = t.names.size(); i-- > 0;) body = tm::lam(t.names[i], body, t.annots[i], p);
      return body;
    }
    case SK::App: {
      if (k[0]->kind == SK::Var) {
        auto it = env.find(k[0]->name);
        if (it != env.end() && it->second.kind == Special::Kind::UrecCall) {
          const Special& s = it->second;
          if (s.arg.empty() || k[1]->kind != SK::Var || k[1]->name != s.arg)
            throw DesugarError(p, "recursive call " + k[0]->name.str() +
                                      " must be applied to the variable bound by the wait clause");
          return tm::var(s.target, p);
        }
      }
      return tm::app(ds(k[0], env), ds(k[1], env), p);
    }
    case SK::Let: {
      TermPtr bound = ds(k[0], env);
      TermPtr body = ds(k[1], bind(env, t.names[0]));
      return tm::app(tm::lam(t.names[0], body, t.annots[0], p), bound, p);
    }
    case SK::Pair:
      return tm::pair(ds(k[0], env), ds(k[1], env), p);
    case SK::Proj:
      return tm::proj(t.index, ds(k[0], env), p);
    case SK::Inj:
      return tm::inj(t.index, ds(k[0], env), p);
    case SK::Case:
      return tm::caseOf(ds(k[0], env), t.names[0], ds(k[1], bind(env, t.names[0])), t.names[1],
                        ds(k[2], bind(env, t.names[1])), p);
    case SK::Nrec: {
      distinct(t, {t.names[0], t.names[1]});
      Env inner = bind(bind(env, t.names[0]), t.names[1]);
      return tm::recNat(ds(k[1], env), t.names[0], t.names[1], ds(k[2], inner), ds(k[0], env), p);
    }
    case SK::Delay:
      return tm::delay(ds(k[0], env), p);
    case SK::Adv: {
      // adv (unbox f) for a mutually recursive f projects after advancing.
      const STerm& sub = *k[0];
      if (sub.kind == SK::Unbox && sub.kids[0]->kind == SK::Var) {
        auto it = env.find(sub.kids[0]->name);
        if (it != env.end() && it->second.kind == Special::Kind::Mutual)
          return tm::proj(it->second.index,
                          tm::adv(tm::unbox(tm::var(it->second.target, p), p), p), p);
      }
      return tm::adv(ds(k[0], env), p);
    }
    case SK::Box:
      return tm::box(ds(k[0], env), p);
    case SK::Unbox: {
      if (k[0]->kind == SK::Var) {
        auto it = env.find(k[0]->name);
        if (it != env.end() && it->second.kind == Special::Kind::Mutual) {
          // (fun x. delay (proj_i (adv x))) (unbox r)
          Name x = Name::fresh(Name("x"));
          TermPtr lifted =
              tm::lam(x, tm::delay(tm::proj(it->second.index, tm::adv(tm::var(x, p), p), p), p),
                      nullptr, p);
          return tm::app(lifted, tm::unbox(tm::var(it->second.target, p), p), p);
        }
      }
      return tm::unbox(ds(k[0], env), p);
    }
    case SK::Now:
      return tm::now(ds(k[0], env), p);
    case SK::Wait:
      return tm::wait(ds(k[0], env), ds(k[1], env), p);
    case SK::Urec: {
      const auto& n = t.names;
      distinct(t, {n[1], n[2], n[3]});
      Env inner = bind(bind(bind(env, n[1]), n[2]), n[3]);
      return tm::recUntil(n[0], ds(k[1], bind(env, n[0])), n[1], n[2], n[3], ds(k[2], inner),
                          ds(k[0], env), p);
    }
    case SK::UrecAs: {
      const auto& n = t.names;  // f, xNow, x, y
      distinct(t, {n[0], n[2], n[3]});
      if (n[0] == n[1]) throw DesugarError(p, "variable " + n[0].str() + " bound twice in one pattern");
      Name z = Name::fresh(Name("z"));
      Env nowEnv = bind(bind(env, n[0]), n[1]);
      nowEnv[n[0]] = Special{Special::Kind::UrecCall, 0, z, Name()};
      Env waitEnv = bind(bind(bind(env, n[0]), n[2]), n[3]);
      waitEnv[n[0]] = Special{Special::Kind::UrecCall, 0, z, n[3]};
      return tm::recUntil(n[1], ds(k[1], nowEnv), n[2], n[3], z, ds(k[2], waitEnv), ds(k[0], env), p);
    }
    case SK::Fix:
      return tm::fix(t.names[0], ds(k[0], bind(env, t.names[0])), p);
    case SK::MutFix: {
      if (t.names[0] == t.names[1])
        throw DesugarError(p, "mutual fix binds " + t.names[0].str() + " twice");
      Name r = Name::fresh(Name("r"));
      Env inner = bind(bind(env, t.names[0]), t.names[1]);
      inner[t.names[0]] = Special{Special::Kind::Mutual, 1, r, Name()};
      inner[t.names[1]] = Special{Special::Kind::Mutual, 2, r, Name()};
      return tm::fix(r, ds(k[0], inner), p);
    }
    case SK::Into:
      return tm::into(ds(k[0], env), p);
    case SK::Out:
      return tm::out(ds(k[0], env), p);
    case SK::Cons:
      return tm::cons(ds(k[0], env), ds(k[1], env), p);
  }
  throw DesugarError(p, "unknown surface form");
}

// ---------------------------------------------------------------------------
// Value literals

class ValueReader {
 public:
  explicit ValueReader(std::string_view s) : s_(s) {}

  TermPtr read(const TypePtr& a) {
    TermPtr v = value(a);
    skip();
    if (i_ != s_.size()) fail("trailing characters");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ValueParseError("bad literal '" + std::string(s_) + "' at offset " + std::to_string(i_) +
                          ": " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(std::string_view w) {
    skip();
    if (s_.substr(i_, w.size()) == w) {
      i_ += w.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view w) {
    if (!eat(w)) fail("expected '" + std::string(w) + "'");
  }

  TermPtr value(const TypePtr& a) {
    switch (a->kind) {
      case Type::Kind::Unit:
        expect("(");
        expect(")");
        return tm::unit();
      case Type::Kind::Nat: {
        skip();
        std::size_t j = i_;
        std::uint64_t n = 0;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
          std::uint64_t d = static_cast<std::uint64_t>(s_[j] - '0');
          if (n > (UINT64_MAX - d) / 10) fail("numeral too large");
          n = n * 10 + d;
          ++j;
        }
        if (j == i_) fail("expected a natural number");
        i_ = j;
        return tm::numeral(n);
      }
      case Type::Kind::Prod: {
        expect("(");
        TermPtr x = value(a->left);
        expect(",");
        TermPtr y = value(a->right);
        expect(")");
        return tm::pair(x, y);
      }
      case Type::Kind::Sum: {
        int idx = eat("inl") ? 1 : eat("inr") ? 2 : 0;
        if (idx == 0) fail("expected 'inl' or 'inr'");
        if (i_ >= s_.size() || !std::isspace(static_cast<unsigned char>(s_[i_])))
          fail("expected a space after the injection");
        return tm::inj(idx, value(idx == 1 ? a->left : a->right));
      }
      default:
        throw ValueParseError("type " + printType(a) + " is not a value type");
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

void printValueRec(const TermPtr& v, std::string& out) {
  std::uint64_t n;
  switch (v->kind) {
    case Term::Kind::Unit:
      out += "()";
      return;
    case Term::Kind::Zero:
    case Term::Kind::Suc:
      if (!asNumeral(v, n)) break;
      out += std::to_string(n);
      return;
    case Term::Kind::Pair:
      out += '(';
      printValueRec(v->kids[0], out);
      out += ", ";
      printValueRec(v->kids[1], out);
      out += ')';
      return;
    case Term::Kind::Inj:
      out += v->index == 1 ? "inl " : "inr ";
      printValueRec(v->kids[0], out);
      return;
    default:
      break;
  }
  throw NotPrintable("not a first-order value: " + printTerm(v));
}

}  // namespace

SourceProgram parseProgram(std::string_view text) { return Parser(text).program(); }
STermPtr parseSurfaceTerm(std::string_view text) { return Parser(text).wholeTerm(); }
TypePtr parseType(std::string_view text) { return Parser(text).wholeType(); }

TermPtr desugar(const STermPtr& t) { return ds(t, {}); }

Program elaborate(const SourceProgram& p) {
  Program out;
  std::set<Name> seen;
  for (const auto& d : p.decls) {
    if (!seen.insert(d.name).second)
      throw DesugarError(d.pos, "duplicate declaration " + d.name.str());
    out.decls.push_back(Decl{d.name, d.type, desugar(d.body), d.entry, d.pos});
  }
  int entries = 0;
  for (const auto& d : out.decls) entries += d.entry ? 1 : 0;
  if (entries > 1) throw DesugarError(out.decls.back().pos, "more than one entry declaration");
  return out;
}

Program loadProgram(std::string_view text) { return elaborate(parseProgram(text)); }

TermPtr parseTerm(std::string_view text) { return desugar(parseSurfaceTerm(text)); }

std::string printValue(const TermPtr& v) {
  if (!v->value || !v->freeVars.empty() || v->hasLocations)
    throw NotPrintable("not a closed location-free value: " + printTerm(v));
  std::string out;
  printValueRec(v, out);
  return out;
}

TermPtr parseValueLiteral(std::string_view s, const TypePtr& a) {
  if (!isValueType(a)) throw ValueParseError("type " + printType(a) + " is not a value type");
  return ValueReader(s).read(a);
}

}  // namespace lratt
