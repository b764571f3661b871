#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lratt/machine.hpp"
#include "lratt/program.hpp"
#include "lratt/typecheck.hpp"

namespace lratt {

/// One manifest row of the example corpus.
struct CorpusEntry {
  std::string name;
  std::string file;   // relative to the corpus directory
  std::string entry;  // declaration to run; the file's entry declaration if empty

  bool wellTyped = true;
  std::optional<TypeErrorKind> errorKind;  // ill-typed entries
  std::string errorDecl;                   // ill-typed entries: the rejected declaration

  std::optional<Driver> driver;  // none for ill-typed entries
  bool reactive = false;

  std::string golden;  // expected transcript, relative to the corpus directory
  std::string inputs;  // reactive: input literals, one per line

  std::size_t steps = 0;                // property budget (streams, fair, reactive)
  std::optional<std::size_t> haltStep;  // until: exact halting step
  std::size_t haltBound = 0;            // until: must halt within this many steps
  std::size_t window = 0;               // fair: both modes occur in every window this wide
  std::size_t heapBound = 0;            // heap size after every step is at most this

  std::string oracle;  // how the expectations were obtained
};

/// Reads corpus/manifest.json.
std::vector<CorpusEntry> buildCorpus(const std::filesystem::path& dir);

std::string readFile(const std::filesystem::path& p);

/// Reads a program and typechecks every declaration.
struct LoadedProgram {
  Program program;
  std::optional<TypeError> error;
};
LoadedProgram loadCorpusProgram(const std::filesystem::path& file);

/// Value, or raw term if the value is not printable. Fair outputs are printed as inl v / inr v.
std::string showOutput(const StepOutput& o, Driver d);

/// Plain transcript: one output per line, or `i:<in> o:<out>` for reactive runs.
std::string transcript(const RunResult& r, Driver d, bool reactive);

struct EntryReport {
  std::string name;
  std::vector<std::string> problems;  // empty iff the entry passed
  std::size_t maxHeapSize = 0;
  bool passed() const { return problems.empty(); }
};

struct CorpusReport {
  std::vector<EntryReport> entries;
  bool allPassed() const;
  std::size_t failures() const;
};

struct CorpusRunOptions {
  std::string filter;  // substring of the entry name; empty runs everything
  MachineOptions machine{};
  bool properties = true;  // heap, halting and window checks besides the golden transcripts
};

/// Deterministic pseudo-random inputs of the reactive entry's input type, for the property
/// runs. The generator only produces Nat, Unit, pairs and sums.
std::vector<TermPtr> sampleInputs(const TypePtr& element, std::size_t n, std::uint64_t seed);

CorpusReport runCorpus(const std::filesystem::path& dir, const std::vector<CorpusEntry>& entries,
                       const CorpusRunOptions& o = {});

}  // namespace lratt
