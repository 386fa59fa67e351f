#include "arrow/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "arrow/combinator.hpp"
#include "arrow/error.hpp"
#include "arrow/proptest.hpp"

namespace arrow::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::DomainError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Loads a program, reporting failures as `path:line:col: message`.
std::optional<Program> load_file(const std::string& path, std::ostream& err) {
  try {
    return load(read_file(path));
  } catch (const SourceError& e) {
    err << path << ":" << e.line() << ":" << e.column() << ": " << to_string(e.code()) << ": " << e.what() << "\n";
  } catch (const Error& e) {
    err << path << ": " << to_string(e.code()) << ": " << e.what() << "\n";
  }
  return std::nullopt;
}

nlohmann::json number(const std::string& digits) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(digits, &used);
    if (used == digits.size()) return v;
  } catch (const std::out_of_range&) {
  }
  return digits;
}

nlohmann::json rational_json(const Rational& r) { return {{"num", number(r.numerator())}, {"den", number(r.denominator())}}; }

nlohmann::json ket_json(const Subdistribution& d) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [x, w] : d) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& part : x.is_tuple() ? x.items() : std::vector<Outcome>{x}) values.push_back(part.str());
    out.push_back({{"outcome", x.str()}, {"values", values}, {"weight", rational_json(w)}});
  }
  return out;
}

std::string final_text(const Trace& t) { return t.lines.empty() ? "0" : t.lines.back().state.ket(); }

}  // namespace

Trace evaluate(const Program& p, bool normalize_each_line) {
  return normalize_each_line ? trace_normalized(p.signature, p.term, p.interpretation, p.listing)
                             : trace(p.signature, p.term, p.interpretation, p.listing);
}

std::string trace_text(const Trace& t) {
  std::string out;
  for (const auto& line : t.lines) {
    out += "(" + std::to_string(line.number) + ") " + line.statement + " | " + line.state.ket() + "\n";
  }
  out += "Validity: " + t.result.validity.str() + "\n";
  out += t.result.posterior ? "Posterior: " + t.result.posterior->ket() + "\n" : "Failure\n";
  return out;
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto p = load_file(config.path, err);
  if (!p) return kInputError;
  Trace t;
  std::optional<Rational> ev;
  try {
    t = evaluate(*p, config.normalize_each_line);
    if (config.expected_value && t.result.posterior) ev = expected_value(*t.result.posterior);
  } catch (const Error& e) {
    err << config.path << ": " << to_string(e.code()) << ": " << e.what() << "\n";
    return kInputError;
  }
  const bool failed = !t.result.posterior;

  if (config.format == Format::Structured) {
    nlohmann::json doc;
    doc["program"] = config.path;
    doc["mode"] = config.mode == Mode::Trace ? "trace" : "run";
    doc["normalize_each_line"] = config.normalize_each_line;
    doc["lines"] = nlohmann::json::array();
    if (config.mode == Mode::Trace) {
      for (const auto& line : t.lines) {
        doc["lines"].push_back({{"number", line.number},
                                {"statement", line.statement},
                                {"state", ket_json(line.state)},
                                {"mass", rational_json(line.mass)}});
      }
    }
    doc["final"] = t.lines.empty() ? nlohmann::json::array() : ket_json(t.lines.back().state);
    doc["validity"] = rational_json(t.result.validity);
    doc["posterior"] = failed ? nlohmann::json::array() : ket_json(*t.result.posterior);
    doc["failure"] = failed;
    if (t.zero_mass_line) doc["zero_mass_line"] = *t.zero_mass_line;
    if (ev) doc["expected_value"] = rational_json(*ev);
    out << doc.dump(2) << "\n";
  } else {
    if (config.mode == Mode::Trace) {
      out << trace_text(t);
    } else {
      out << "Final: " << final_text(t) << "\n";
      out << "Validity: " << t.result.validity << "\n";
      out << (failed ? std::string("Failure") : "Posterior: " + t.result.posterior->ket()) << "\n";
    }
    if (ev) out << "Expected value: " << *ev << "\n";
  }
  if (failed) {
    err << config.path << ": ZeroMassState: ";
    if (t.zero_mass_line) {
      err << "no mass left after line " << *t.zero_mass_line << "\n";
    } else {
      err << "validity is 0\n";
    }
    return kZeroMass;
  }
  return kOk;
}

int cmd_trace(RunConfig config, std::ostream& out, std::ostream& err) {
  config.mode = Mode::Trace;
  return cmd_run(config, out, err);
}

namespace {

// The union of two signatures, or an explanation of why they clash.
std::optional<std::string> merge(const Program& a, const Program& b, Signature& sig,
                                 std::map<TypeName, std::vector<Outcome>>& carriers) {
  for (const Program* p : {&a, &b}) {
    for (const auto& type : p->signature.types()) {
      const auto& c = p->interpretation.carriers.at(type);
      auto [it, fresh] = carriers.emplace(type, c);
      if (fresh) {
        sig.add_type(type);
      } else if (it->second != c) {
        return "type " + type + " has different values in the two programs";
      }
    }
  }
  for (const Program* p : {&a, &b}) {
    for (const auto& [name, g] : p->signature.generators()) {
      if (const Generator* known = sig.find(name)) {
        if (!(*known == g)) return "generator " + name + " has different types in the two programs";
      } else {
        sig.add_generator(g);
      }
    }
  }
  if (a.term.outputs != b.term.outputs) return "the programs return different types";
  return std::nullopt;
}

void show_interpretation(const Signature& sig, const Interpretation& interp, std::ostream& out) {
  for (const auto& [name, g] : sig.generators()) {
    for (const auto& [x, d] : interp.kernels.at(name).table()) {
      out << "  " << name << "(" << (g.inputs.empty() ? "" : x.str()) << ") = " << d.ket() << "\n";
    }
  }
}

}  // namespace

int cmd_eq(const std::string& path_a, const std::string& path_b, std::size_t trials, std::uint64_t seed,
           std::ostream& out, std::ostream& err) {
  const auto a = load_file(path_a, err);
  const auto b = load_file(path_b, err);
  if (!a || !b) return kInputError;
  Signature sig;
  std::map<TypeName, std::vector<Outcome>> carriers;
  if (auto clash = merge(*a, *b, sig, carriers)) {
    err << "incompatible programs: " << *clash << "\n";
    return kInputError;
  }

  const Subdistribution da = interpret(a->signature, a->term, a->interpretation, Outcome::unit());
  const Subdistribution db = interpret(b->signature, b->term, b->interpretation, Outcome::unit());
  if (da != db) {
    out << "not equivalent under the declared interpretation\n";
    out << "  " << path_a << ": " << da.ket() << "\n";
    out << "  " << path_b << ": " << db.ket() << "\n";
    auto show = [](const Subdistribution& d) {
      auto r = rescale(d);
      return r ? r->posterior.ket() : std::string("Failure");
    };
    out << "  posteriors: " << show(da) << " vs " << show(db) << "\n";
    return kNotEquivalent;
  }

  proptest::GenBudget budget;
  budget.seed = seed;
  proptest::Gen gen(budget);
  for (std::size_t trial = 1; trial <= trials; ++trial) {
    const Interpretation interp = gen.kernels(sig, carriers);
    const Subdistribution ra = interpret(sig, a->term, interp, Outcome::unit());
    const Subdistribution rb = interpret(sig, b->term, interp, Outcome::unit());
    if (ra != rb) {
      out << "not equivalent under random interpretation " << trial << " (seed " << seed << ")\n";
      show_interpretation(sig, interp, out);
      out << "  " << path_a << ": " << ra.ket() << "\n";
      out << "  " << path_b << ": " << rb.ket() << "\n";
      return kNotEquivalent;
    }
  }
  out << "equivalent under the declared interpretation and " << trials << " random interpretations\n";
  return kOk;
}

int cmd_corpus(const std::string& dir, std::ostream& out, std::ostream& err) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    err << dir << ": not a directory\n";
    return kInputError;
  }
  std::vector<fs::path> programs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".arrow") programs.push_back(entry.path());
  }
  std::sort(programs.begin(), programs.end());
  if (programs.empty()) {
    err << "warning: no .arrow files in " << dir << "\n";
    return kOk;
  }

  std::size_t failures = 0;
  std::string first_diff;
  for (const auto& program : programs) {
    for (const bool normalize : {false, true}) {
      fs::path golden = program;
      golden.replace_extension(normalize ? ".normalized.golden" : ".golden");
      if (normalize && !fs::exists(golden)) continue;
      const std::string label = program.stem().string() + (normalize ? " (normalized)" : "");

      std::string diff;
      if (!fs::exists(golden)) {
        diff = golden.string() + ": missing golden file";
      } else {
        std::ostringstream got;
        std::ostringstream errors;
        RunConfig config{program.string(), Mode::Trace, normalize, false, Format::Text};
        const int code = cmd_run(config, got, errors);
        if (code == kInputError) {
          diff = errors.str();
          if (!diff.empty() && diff.back() == '\n') diff.pop_back();
        } else {
          const std::string expected = read_file(golden.string());
          std::istringstream want_lines(expected);
          std::istringstream got_lines(got.str());
          std::string want_line;
          std::string got_line;
          for (std::size_t n = 1;; ++n) {
            const bool has_want = static_cast<bool>(std::getline(want_lines, want_line));
            const bool has_got = static_cast<bool>(std::getline(got_lines, got_line));
            if (!has_want && !has_got) break;
            if (!has_want || !has_got || want_line != got_line) {
              diff = golden.string() + ":" + std::to_string(n) + ":\n  expected: " +
                     (has_want ? want_line : "<end of file>") + "\n  actual:   " + (has_got ? got_line : "<end of output>");
              break;
            }
          }
          if (diff.empty() && expected != got.str()) diff = golden.string() + ": trailing bytes differ";
        }
      }
      out << (diff.empty() ? "PASS " : "FAIL ") << label << "\n";
      if (!diff.empty()) {
        ++failures;
        if (first_diff.empty()) first_diff = diff;
      }
    }
  }
  if (failures) {
    out << failures << " mismatch" << (failures == 1 ? "" : "es") << "; first difference:\n" << first_diff << "\n";
    return kCorpusMismatch;
  }
  out << "all " << programs.size() << " programs match\n";
  return kOk;
}

int cmd_rewrite(const std::string& path, const std::optional<AxiomStep>& step, std::ostream& out, std::ostream& err) {
  const auto p = load_file(path, err);
  if (!p) return kInputError;
  const Term& t = p->term.term;
  if (!step) {
    for (std::size_t k = 0; k < t.body.size(); ++k) out << "[" << k + 1 << "] " << render(t.body[k]) << "\n";
    for (const auto& s : applicable_steps(p->term.context, t)) {
      out << to_string(s) << "\n";
    }
    return kOk;
  }
  const auto rewritten = axiom_step(p->term.context, t, *step);
  if (!rewritten) {
    err << path << ": " << to_string(*step) << " does not apply\n";
    return kNotApplicable;
  }
  out << pretty(to_source(*p, *rewritten));
  return kOk;
}

int cmd_encode(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto p = load_file(path, err);
  if (!p) return kInputError;
  try {
    out << render(encode(p->signature, p->term.context, p->term.term)) << "\n";
  } catch (const Error& e) {
    err << path << ": " << to_string(e.code()) << ": " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

int cmd_format(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    out << pretty(parse(read_file(path)));
  } catch (const SourceError& e) {
    err << path << ":" << e.line() << ":" << e.column() << ": " << to_string(e.code()) << ": " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << path << ": " << to_string(e.code()) << ": " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

}  // namespace arrow::cli
