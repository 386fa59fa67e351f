#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "arrow/axioms.hpp"
#include "arrow/parser.hpp"
#include "arrow/semantics.hpp"

namespace arrow::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;   // unreadable file, parse or type error
inline constexpr int kZeroMass = 2;     // validity 0: no posterior
inline constexpr int kNotEquivalent = 3;
inline constexpr int kCorpusMismatch = 4;
inline constexpr int kNotApplicable = 5;  // rewrite step does not match

enum class Mode { Run, Trace };
enum class Format { Text, Structured };

struct RunConfig {
  std::string path;
  Mode mode = Mode::Run;
  bool normalize_each_line = false;
  bool expected_value = false;
  Format format = Format::Text;
};

/// Evaluates a loaded program line by line.
Trace evaluate(const Program& p, bool normalize_each_line);

/// One `(<n>) <statement> | <state>` line per listing line, then
/// `Validity: p/q` and `Posterior: <ket>` or `Failure`. Byte-exact golden
/// format.
std::string trace_text(const Trace& t);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
/// Same as cmd_run with the mode forced to Trace.
int cmd_trace(RunConfig config, std::ostream& out, std::ostream& err);
/// Exact comparison under the declared interpretations, then under `trials`
/// random kernels over the declared carriers.
int cmd_eq(const std::string& a, const std::string& b, std::size_t trials, std::uint64_t seed, std::ostream& out,
           std::ostream& err);
/// Runs every `X.arrow` in `dir` against `X.golden`, and against
/// `X.normalized.golden` when present.
int cmd_corpus(const std::string& dir, std::ostream& out, std::ostream& err);
/// Applies one axiom step at a 1-based core statement index and prints the
/// resulting source. With no step, lists the applicable ones.
int cmd_rewrite(const std::string& path, const std::optional<AxiomStep>& step, std::ostream& out, std::ostream& err);
int cmd_encode(const std::string& path, std::ostream& out, std::ostream& err);
/// Canonical source of a program file.
int cmd_format(const std::string& path, std::ostream& out, std::ostream& err);

}  // namespace arrow::cli
