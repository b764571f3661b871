#include "lratt/corpus.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "lratt/reactive.hpp"
#include "lratt/surface.hpp"

namespace lratt {

namespace {

using nlohmann::json;

std::optional<TypeErrorKind> errorKindFromName(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(TypeErrorKind::CannotSynthesize); ++i) {
    auto k = static_cast<TypeErrorKind>(i);
    if (s == typeErrorKindName(k)) return k;
  }
  return std::nullopt;
}

std::optional<Driver> driverFromName(const std::string& s) {
  for (Driver d : {Driver::Stream, Driver::Until, Driver::Fair})
    if (s == driverName(d)) return d;
  return std::nullopt;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

TermPtr sampleValue(const TypePtr& t, std::mt19937_64& rng, int depth) {
  using TK = Type::Kind;
  switch (t->kind) {
    case TK::Unit: return tm::unit();
    case TK::Nat: return tm::numeral(rng() % 10);
    case TK::Prod:
      return tm::pair(sampleValue(t->left, rng, depth + 1), sampleValue(t->right, rng, depth + 1));
    case TK::Sum: {
      int i = static_cast<int>(rng() % 2) + 1;
      return tm::inj(i, sampleValue(i == 1 ? t->left : t->right, rng, depth + 1));
    }
    default:
      throw std::invalid_argument("cannot sample values of type " + printType(t));
  }
}

class EntryRunner {
 public:
  EntryRunner(const std::filesystem::path& dir, const CorpusEntry& e, const CorpusRunOptions& o)
      : dir_(dir), e_(e), o_(o) {
    report_.name = e.name;
  }

  EntryReport run() {
    try {
      body();
    } catch (const std::exception& ex) {
      problem(std::string("exception: ") + ex.what());
    }
    return std::move(report_);
  }

 private:
  void problem(std::string s) { report_.problems.push_back(std::move(s)); }

  void body() {
    LoadedProgram lp;
    try {
      lp = loadCorpusProgram(dir_ / e_.file);
    } catch (const SyntaxError& ex) {
      return problem(std::string("syntax error: ") + ex.what());
    } catch (const DesugarError& ex) {
      return problem(std::string("syntax error: ") + ex.what());
    }
    if (!e_.wellTyped) {
      if (!lp.error) return problem("expected a type error, but the program typechecks");
      if (e_.errorKind && lp.error->kind != *e_.errorKind)
        problem(std::string("expected ") + typeErrorKindName(*e_.errorKind) + ", got " +
                typeErrorKindName(lp.error->kind) + ": " + lp.error->what());
      if (!e_.errorDecl.empty() && lp.error->decl != e_.errorDecl)
        problem("error reported in " + lp.error->decl + ", expected " + e_.errorDecl);
      return;
    }
    if (lp.error)
      return problem(std::string("type error in ") + lp.error->decl + " [" +
                     typeErrorKindName(lp.error->kind) + "]: " + lp.error->what());

    const Decl* d = e_.entry.empty() ? lp.program.defaultEntry() : lp.program.find(Name(e_.entry));
    if (!d) return problem("no declaration " + e_.entry);
    term_ = inlineDecl(lp.program, d->name);
    if (e_.reactive) {
      auto sig = reactiveSignatureFor(d->type);
      if (!sig) return problem("entry type " + printType(d->type) + " is not reactive");
      if (sig->kind != e_.driver) return problem("entry type selects another driver");
      inputType_ = sig->input;
    } else if (closedDriverFor(d->type) != e_.driver) {
      return problem("entry type " + printType(d->type) + " does not match the driver");
    }
    if (!e_.golden.empty()) golden();
    if (o_.properties) properties();
  }

  RunResult execute(std::size_t steps, const std::vector<TermPtr>* inputs) {
    if (e_.reactive) return runReactive(term_, *e_.driver, *inputs, o_.machine);
    return runClosed(*e_.driver, term_, steps, o_.machine);
  }

  void golden() {
    std::vector<std::string> expected = lines(readFile(dir_ / e_.golden));
    std::vector<TermPtr> inputs;
    if (e_.reactive) {
      for (const auto& l : lines(readFile(dir_ / e_.inputs)))
        inputs.push_back(parseValueLiteral(l, inputType_));
    }
    RunResult r = execute(expected.size(), &inputs);
    if (r.failure)
      problem("golden run failed at step " + std::to_string(r.steps.size() + 1) + ": " +
              failureKindName(r.failure->kind) + ": " + r.failure->message);
    std::vector<std::string> got = lines(transcript(r, *e_.driver, e_.reactive));
    for (std::size_t i = 0; i < std::max(got.size(), expected.size()); ++i) {
      std::string g = i < got.size() ? got[i] : "<missing>";
      std::string x = i < expected.size() ? expected[i] : "<missing>";
      if (g != x) {
        problem("golden line " + std::to_string(i + 1) + ": expected '" + x + "', got '" + g + "'");
        break;
      }
    }
  }

  void properties() {
    std::vector<TermPtr> inputs;
    std::size_t budget = *e_.driver == Driver::Until ? e_.haltBound : e_.steps;
    if (e_.reactive) inputs = sampleInputs(inputType_, budget, 0x5eed);
    RunResult r = execute(budget, &inputs);
    report_.maxHeapSize = r.maxHeapSize;
    if (r.failure)
      problem("property run failed at step " + std::to_string(r.steps.size() + 1) + ": " +
              failureKindName(r.failure->kind) + ": " + r.failure->message);
    for (const auto& rec : r.steps) {
      if (rec.heapSize > e_.heapBound) {
        problem("heap size " + std::to_string(rec.heapSize) + " after step " +
                std::to_string(rec.step) + " exceeds the bound " + std::to_string(e_.heapBound));
        break;
      }
    }
    if (*e_.driver == Driver::Until) {
      if (!r.halted) {
        problem("did not halt within " + std::to_string(e_.haltBound) + " steps");
      } else if (e_.haltStep && r.steps.size() != *e_.haltStep) {
        problem("halted at step " + std::to_string(r.steps.size()) + ", expected " +
                std::to_string(*e_.haltStep));
      }
    } else if (r.steps.size() != budget && !r.failure) {
      problem("produced " + std::to_string(r.steps.size()) + " of " + std::to_string(budget) +
              " steps");
    }
    if (*e_.driver == Driver::Fair && e_.window > 0) windows(r);
  }

  void windows(const RunResult& r) {
    const auto& s = r.steps;
    if (s.size() < e_.window) return problem("run shorter than the mode window");
    // Sliding counts of each mode.
    std::size_t c1 = 0, c2 = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      (s[i].output.mode == 1 ? c1 : c2)++;
      if (i >= e_.window) (s[i - e_.window].output.mode == 1 ? c1 : c2)--;
      if (i + 1 >= e_.window && (c1 == 0 || c2 == 0)) {
        problem("window ending at step " + std::to_string(i + 1) + " of width " +
                std::to_string(e_.window) + " has only mode " + (c1 == 0 ? "2" : "1"));
        return;
      }
    }
  }

  const std::filesystem::path& dir_;
  const CorpusEntry& e_;
  const CorpusRunOptions& o_;
  EntryReport report_;
  TermPtr term_;
  TypePtr inputType_;
};

}  // namespace

std::string readFile(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + p.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<CorpusEntry> buildCorpus(const std::filesystem::path& dir) {
  json m = json::parse(readFile(dir / "manifest.json"));
  std::vector<CorpusEntry> out;
  for (const auto& j : m.at("entries")) {
    CorpusEntry e;
    e.name = j.at("name").get<std::string>();
    e.file = j.at("file").get<std::string>();
    e.entry = j.value("entry", "");
    e.wellTyped = j.at("expect").get<std::string>() == "WellTyped";
    if (!e.wellTyped) {
      std::string k = j.at("errorKind").get<std::string>();
      e.errorKind = errorKindFromName(k);
      if (!e.errorKind) throw std::runtime_error(e.name + ": unknown error kind " + k);
      e.errorDecl = j.value("decl", "");
    } else {
      std::string d = j.at("driver").get<std::string>();
      e.driver = driverFromName(d);
      if (!e.driver) throw std::runtime_error(e.name + ": unknown driver " + d);
    }
    e.reactive = j.value("reactive", false);
    e.golden = j.value("golden", "");
    e.inputs = j.value("inputs", "");
    e.steps = j.value("steps", std::size_t{0});
    if (j.contains("haltStep")) e.haltStep = j.at("haltStep").get<std::size_t>();
    e.haltBound = j.value("haltBound", std::size_t{0});
    e.window = j.value("window", std::size_t{0});
    e.heapBound = j.value("heapBound", std::size_t{0});
    e.oracle = j.value("oracle", "");
    if (e.wellTyped && e.golden.empty() && e.steps == 0 && e.haltBound == 0)
      throw std::runtime_error(e.name + ": well-typed entry without a runnable assertion");
    out.push_back(std::move(e));
  }
  return out;
}

LoadedProgram loadCorpusProgram(const std::filesystem::path& file) {
  LoadedProgram lp;
  lp.program = loadProgram(readFile(file));
  lp.error = checkProgram(lp.program);
  return lp;
}

std::string showOutput(const StepOutput& o, Driver d) {
  TermPtr v = d == Driver::Fair ? tm::inj(o.mode, o.value) : o.value;
  try {
    return printValue(v);
  } catch (const NotPrintable&) {
    return printTerm(v);
  }
}

std::string transcript(const RunResult& r, Driver d, bool reactive) {
  std::string out;
  for (const auto& rec : r.steps) {
    if (reactive) out += "i:" + printValue(rec.input) + " o:";
    out += showOutput(rec.output, d) + "\n";
  }
  return out;
}

bool CorpusReport::allPassed() const { return failures() == 0; }

std::size_t CorpusReport::failures() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.passed() ? 0 : 1;
  return n;
}

std::vector<TermPtr> sampleInputs(const TypePtr& element, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TermPtr> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sampleValue(element, rng, 0));
  return out;
}

CorpusReport runCorpus(const std::filesystem::path& dir, const std::vector<CorpusEntry>& entries,
                       const CorpusRunOptions& o) {
  CorpusReport rep;
  for (const auto& e : entries) {
    if (!o.filter.empty() && e.name.find(o.filter) == std::string::npos) continue;
    rep.entries.push_back(EntryRunner(dir, e, o).run());
  }
  return rep;
}

}  // namespace lratt
