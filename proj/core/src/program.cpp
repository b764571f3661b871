#include "lratt/program.hpp"

#include <unordered_map>

namespace lratt {

const Decl* Program::find(Name n) const {
  for (auto it = decls.rbegin(); it != decls.rend(); ++it)
    if (it->name == n) return &*it;
  return nullptr;
}

const Decl* Program::defaultEntry() const {
  for (const auto& d : decls)
    if (d.entry) return &d;
  return decls.empty() ? nullptr : &decls.back();
}

TermPtr inlineDecl(const Program& p, Name name) {
  std::unordered_map<Name, TermPtr> done;
  const Decl* target = nullptr;
  for (const auto& d : p.decls) {
    TermPtr body = d.body;
    for (Name v : std::vector<Name>(body->freeVars)) {
      auto it = done.find(v);
      if (it != done.end()) body = substitute(body, v, it->second);
    }
    done[d.name] = body;
    if (d.name == name) target = &d;
  }
  if (!target) return nullptr;
  return done[name];
}

std::string printProgram(const Program& p) {
  std::string out;
  for (const auto& d : p.decls) {
    if (d.entry) out += "entry ";
    out += "def " + d.name.str() + " : " + printType(d.type) + " =\n  " + printTerm(d.body) + "\n\n";
  }
  return out;
}

}  // namespace lratt
