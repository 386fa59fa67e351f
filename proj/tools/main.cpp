#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "arrow/cli.hpp"

int main(int argc, char** argv) {
  using namespace arrow;
  CLI::App app{"Exact evaluation and rewriting of arrow-notation programs"};
  app.require_subcommand(1);

  cli::RunConfig config;
  std::string format = "text";
  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("file", config.path, "Program file")->required();
    cmd->add_flag("--normalize-each-line", config.normalize_each_line, "Rescale the state to mass 1 after every line");
    cmd->add_flag("--expected-value", config.expected_value, "Print the expected value of the posterior");
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  };
  bool trace_flag = false;
  CLI::App* run = app.add_subcommand("run", "Evaluate a program and print validity and posterior");
  add_run_flags(run);
  run->add_flag("--trace", trace_flag, "Print the line-by-line trace");
  CLI::App* trace = app.add_subcommand("trace", "Print the line-by-line trace of a program");
  add_run_flags(trace);

  std::string a, b;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  CLI::App* eq = app.add_subcommand("eq", "Compare the denotations of two programs");
  eq->add_option("first", a, "Program file")->required();
  eq->add_option("second", b, "Program file")->required();
  eq->add_option("--trials", trials, "Random interpretations to try")->capture_default_str();
  eq->add_option("--seed", seed, "Seed for the random interpretations")->capture_default_str();

  std::string dir;
  CLI::App* corpus = app.add_subcommand("corpus", "Check every program in a directory against its golden trace");
  corpus->add_option("dir", dir, "Corpus directory")->required();

  std::string axiom;
  std::size_t at = 0;
  bool backward = false;
  std::string var;
  CLI::App* rewrite = app.add_subcommand("rewrite", "Apply one axiom step, or list the applicable ones");
  rewrite->add_option("file", config.path, "Program file")->required();
  rewrite->add_option("--axiom", axiom, "Axiom: 1a, 1b, 1c, 2, 3 or 4");
  rewrite->add_option("--at", at, "1-based index of the core statement")->check(CLI::PositiveNumber);
  rewrite->add_flag("--backward", backward, "Apply the axiom right to left");
  rewrite->add_option("--var", var, "Variable for inserting OBSERVE(x = x)");

  CLI::App* encode = app.add_subcommand("encode", "Print the combinator form of a program");
  encode->add_option("file", config.path, "Program file")->required();
  CLI::App* fmt = app.add_subcommand("format", "Print a program in canonical layout");
  fmt->add_option("file", config.path, "Program file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kInputError;
  }
  config.format = format == "structured" ? cli::Format::Structured : cli::Format::Text;

  if (run->parsed()) {
    config.mode = trace_flag ? cli::Mode::Trace : cli::Mode::Run;
    return cli::cmd_run(config, std::cout, std::cerr);
  }
  if (trace->parsed()) return cli::cmd_trace(config, std::cout, std::cerr);
  if (eq->parsed()) return cli::cmd_eq(a, b, trials, seed, std::cout, std::cerr);
  if (corpus->parsed()) return cli::cmd_corpus(dir, std::cout, std::cerr);
  if (encode->parsed()) return cli::cmd_encode(config.path, std::cout, std::cerr);
  if (fmt->parsed()) return cli::cmd_format(config.path, std::cout, std::cerr);

  std::optional<AxiomStep> step;
  if (!axiom.empty()) {
    const auto id = parse_axiom(axiom);
    if (!id) {
      std::cerr << "unknown axiom " << axiom << "; expected 1a, 1b, 1c, 2, 3 or 4\n";
      return cli::kInputError;
    }
    if (at == 0) {
      std::cerr << "--axiom needs --at\n";
      return cli::kInputError;
    }
    step = AxiomStep{*id, at - 1, backward ? Direction::Backward : Direction::Forward,
                     var.empty() ? std::nullopt : std::optional<Var>(var)};
  }
  return cli::cmd_rewrite(config.path, step, std::cout, std::cerr);
}
