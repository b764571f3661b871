#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lratt/corpus.hpp"
#include "lratt/machine.hpp"
#include "lratt/reactive.hpp"
#include "lratt/surface.hpp"
#include "lratt/typecheck.hpp"

namespace lratt::cli {

namespace {

struct Config {
  std::string file;
  std::string entry;
  std::string driver = "auto";
  std::size_t steps = 10;
  bool stepsGiven = false;
  bool untilHalt = false;
  std::size_t maxSteps = 10000;
  std::uint64_t fuel = 10'000'000;
  std::string format = "plain";
  std::string input;
  bool json = false;
  bool noGc = false;
};

/// Thrown to leave a command with a specific exit code after printing a diagnostic.
struct Exit {
  int code;
};

class Session {
 public:
  Session(const Config& c, std::istream& in, std::ostream& out, std::ostream& err)
      : c_(c), in_(in), out_(out), err_(err) {}

  int check() {
    load();
    out_ << "ok: " << program_.decls.size() << " declaration"
         << (program_.decls.size() == 1 ? "" : "s") << "\n";
    return kOk;
  }

  int run() {
    load();
    const Decl& d = entry();
    Driver drv = closedDriver(d);
    auto types = closedOutputTypes(drv, d.type);
    std::size_t budget = c_.untilHalt ? c_.maxSteps : c_.steps;
    if (c_.untilHalt && drv != Driver::Until) usage("--until-halt requires an until entry");
    RunResult rr = runClosed(drv, inlineDecl(program_, d.name), budget, options());
    for (const auto& rec : rr.steps) emit(rec, drv, *types, nullptr);
    if (rr.failure) return runtimeFailure(*rr.failure, rr.steps.size() + 1);
    if (c_.untilHalt && !rr.halted) {
      err_ << c_.file << ": did not halt within " << budget << " steps\n";
      return kRuntimeFailure;
    }
    return kOk;
  }

  int react() {
    load();
    const Decl& d = entry();
    auto sig = reactiveSignatureFor(d.type);
    if (!sig) usage("entry " + d.name.str() + " of type " + printType(d.type) + " is not reactive");
    if (c_.driver != "auto" && c_.driver != driverName(sig->kind))
      usage("entry type selects the " + std::string(driverName(sig->kind)) + " driver");

    std::vector<TermPtr> inputs;
    std::ifstream file;
    std::istream* src = &in_;
    if (!c_.input.empty() && c_.input != "-") {
      file.open(c_.input);
      if (!file) usage("cannot open input file " + c_.input);
      src = &file;
    }
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(*src, line)) {
      ++lineNo;
      if (c_.stepsGiven && inputs.size() >= c_.steps) break;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        inputs.push_back(parseValueLiteral(line, sig->input));
      } catch (const ValueParseError& e) {
        err_ << "input line " << lineNo << ": InvalidInput: " << e.what() << "\n";
        return kRuntimeFailure;
      }
    }

    RunResult rr = runReactive(inlineDecl(program_, d.name), sig->kind, inputs, options());
    for (const auto& rec : rr.steps) emit(rec, sig->kind, sig->output, sig->input);
    if (rr.failure) return runtimeFailure(*rr.failure, rr.steps.size() + 1);
    if (rr.halted && rr.unconsumedInputs > 0)
      err_ << "halted after " << rr.steps.size() << " steps; " << rr.unconsumedInputs
           << " unconsumed input" << (rr.unconsumedInputs == 1 ? "" : "s") << "\n";
    return kOk;
  }

  int trace() {
    load();
    const Decl& d = entry();
    Driver drv = closedDriver(d);
    TermPtr t = inlineDecl(program_, d.name);
    std::size_t n = c_.stepsGiven ? c_.steps : 1;
    MachineOptions o = options();
    std::vector<DerivationNode> nodes;
    o.eval.trace = &nodes;

    StreamState ss = initStream(t);
    UntilState us = initUntil(t);
    FairState fs = initFair(t);
    for (std::size_t i = 1; i <= n; ++i) {
      nodes.clear();
      std::optional<Failure> failure;
      bool halted = false;
      switch (drv) {
        case Driver::Stream: {
          auto r = stepStream(ss, o);
          failure = r.failure;
          ss = std::move(r.next);
          break;
        }
        case Driver::Until: {
          auto r = stepUntil(us, o);
          failure = r.failure;
          us = std::move(r.next);
          halted = us.halted;
          break;
        }
        case Driver::Fair: {
          auto r = stepFair(fs, o);
          failure = r.failure;
          fs = std::move(r.next);
          break;
        }
      }
      out_ << "-- step " << i << "\n";
      if (c_.format == "jsonl") {
        for (const auto& nd : nodes) {
          nlohmann::json j{{"depth", nd.depth}, {"rule", nd.rule}, {"term", nd.term}, {"value", nd.value}};
          out_ << j.dump() << "\n";
        }
      } else {
        out_ << printDerivation(nodes);
      }
      if (failure) return runtimeFailure(*failure, i);
      if (halted) break;
    }
    return kOk;
  }

 private:
  [[noreturn]] void usage(const std::string& msg) {
    err_ << "usage error: " << msg << "\n";
    throw Exit{kUsageError};
  }

  void load() {
    std::ifstream f(c_.file, std::ios::binary);
    if (!f) usage("cannot open " + c_.file);
    std::stringstream ss;
    ss << f.rdbuf();
    try {
      program_ = loadProgram(ss.str());
    } catch (const SyntaxError& e) {
      err_ << c_.file << ":" << e.what() << ": syntax error\n";
      throw Exit{kSyntaxError};
    } catch (const DesugarError& e) {
      err_ << c_.file << ":" << e.what() << ": syntax error\n";
      throw Exit{kSyntaxError};
    }
    if (auto e = checkProgram(program_)) {
      if (c_.json) out_ << typeErrorJson(*e) << "\n";
      err_ << c_.file << ":" << e->pos.line << ":" << e->pos.col << ": type error in " << e->decl
           << " [" << typeErrorKindName(e->kind) << ", rule " << e->rule << "]: " << e->what()
           << "\n";
      throw Exit{kTypeError};
    }
  }

  const Decl& entry() {
    const Decl* d = c_.entry.empty() ? program_.defaultEntry() : program_.find(Name(c_.entry));
    if (!d) usage(c_.entry.empty() ? "program has no declarations" : "no declaration named " + c_.entry);
    return *d;
  }

  Driver closedDriver(const Decl& d) {
    auto drv = closedDriverFor(d.type);
    if (!drv)
      usage("entry " + d.name.str() + " of type " + printType(d.type) +
            " is not Box (Str A), Box (A Until B) or Box (Fair A B)");
    if (c_.driver != "auto" && c_.driver != driverName(*drv))
      usage("entry type selects the " + std::string(driverName(*drv)) + " driver, not " + c_.driver);
    return *drv;
  }

  MachineOptions options() const {
    MachineOptions o;
    o.eval.fuel = c_.fuel;
    o.gc = !c_.noGc;
    return o;
  }

  static std::string show(const TermPtr& v) { return showOutput(StepOutput{v, 0}, Driver::Stream); }

  void emit(const StepRecord& rec, Driver drv, const OutputTypes&, const TypePtr& inputType) {
    std::string output = showOutput(rec.output, drv);
    if (c_.format == "jsonl") {
      nlohmann::json j;
      j["step"] = rec.step;
      if (drv == Driver::Fair) j["mode"] = rec.output.mode;
      if (inputType) j["input"] = show(rec.input);
      j["output"] = output;
      if (drv == Driver::Until) j["halt"] = rec.halts;
      j["heapSize"] = rec.heapSize;
      out_ << j.dump() << "\n";
    } else if (inputType) {
      out_ << "i:" << show(rec.input) << " o:" << output << "\n";
    } else {
      out_ << output << "\n";
    }
  }

  int runtimeFailure(const Failure& f, std::size_t step) {
    err_ << c_.file << ": runtime failure at step " << step << ": " << failureKindName(f.kind)
         << ": " << f.message << "\n";
    return kRuntimeFailure;
  }

  const Config& c_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  Program program_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Config c;
  if (const char* env = std::getenv("LRATT_FUEL")) {
    try {
      c.fuel = std::stoull(env);
    } catch (const std::exception&) {
      err << "usage error: LRATT_FUEL must be a positive integer\n";
      return kUsageError;
    }
  }

  CLI::App app{"Typechecker and step machines for a modal FRP calculus", "lratt"};
  app.require_subcommand(1);
  auto* check = app.add_subcommand("check", "Typecheck every declaration of a file");
  auto* runCmd = app.add_subcommand("run", "Run a closed stream, until or fair entry");
  auto* react = app.add_subcommand("react", "Run a reactive entry, one input literal per line");
  auto* trace = app.add_subcommand("trace", "Print the evaluation derivation of each step");

  for (auto* sub : {check, runCmd, react, trace}) {
    sub->add_option("file", c.file, "Source file (.lratt)")->required();
    sub->add_flag("--json", c.json, "Print type errors as JSON on standard output");
  }
  for (auto* sub : {runCmd, react, trace}) {
    sub->add_option("--entry", c.entry, "Declaration to run (default: the entry declaration)");
    sub->add_option("--driver", c.driver, "Machine kind")
        ->check(CLI::IsMember({"auto", "stream", "until", "fair"}));
    sub->add_option("--fuel", c.fuel, "Evaluation budget per step (derivation nodes)")
        ->check(CLI::Range(std::uint64_t{1}, UINT64_MAX));
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"plain", "jsonl"}));
    sub->add_flag("--no-gc", c.noGc, "Keep the now-heap between steps (leak experiments)");
  }
  runCmd->add_flag("--until-halt", c.untilHalt, "Run an until entry until it halts");
  runCmd->add_option("--max-steps", c.maxSteps, "Step bound for --until-halt");
  for (auto* sub : {runCmd, react, trace}) {
    sub->add_option("--steps", c.steps, "Number of steps (react: inputs consumed)");
  }
  react->add_option("--input", c.input, "Input file (default: standard input)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }
  for (auto* sub : {runCmd, react, trace})
    if (sub->parsed() && sub->count("--steps") > 0) c.stepsGiven = true;

  Session s(c, in, out, err);
  try {
    if (check->parsed()) return s.check();
    if (runCmd->parsed()) return s.run();
    if (react->parsed()) return s.react();
    if (trace->parsed()) return s.trace();
  } catch (const Exit& e) {
    return e.code;
  }
  return kUsageError;
}

}  // namespace lratt::cli
