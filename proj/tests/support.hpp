#pragma once

#include <filesystem>
#include <string>

#include "lratt/corpus.hpp"
#include "lratt/surface.hpp"
#include "lratt/typecheck.hpp"

namespace lratt::test {

inline std::filesystem::path corpusDir() { return LRATT_CORPUS_DIR; }

inline TypePtr T(std::string_view s) { return parseType(s); }
inline TermPtr P(std::string_view s) { return parseTerm(s); }
inline Name N(std::string_view s) { return Name(s); }

/// Closed term of a corpus declaration, with earlier declarations inlined.
inline TermPtr corpusTerm(const std::string& file, const std::string& decl) {
  LoadedProgram lp = loadCorpusProgram(corpusDir() / file);
  if (lp.error) throw std::runtime_error(file + ": " + lp.error->what());
  TermPtr t = inlineDecl(lp.program, Name(decl));
  if (!t) throw std::runtime_error(file + ": no declaration " + decl);
  return t;
}

inline TypePtr corpusType(const std::string& file, const std::string& decl) {
  LoadedProgram lp = loadCorpusProgram(corpusDir() / file);
  return lp.program.find(Name(decl))->type;
}

inline std::vector<std::uint64_t> numerals(const RunResult& r) {
  std::vector<std::uint64_t> out;
  for (const auto& s : r.steps) {
    std::uint64_t n = 0;
    if (!asNumeral(s.output.value, n)) throw std::runtime_error("not a numeral");
    out.push_back(n);
  }
  return out;
}

inline std::vector<int> modes(const RunResult& r) {
  std::vector<int> out;
  for (const auto& s : r.steps) out.push_back(s.output.mode);
  return out;
}

}  // namespace lratt::test
