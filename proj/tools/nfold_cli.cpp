#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nfold/commands.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graver bases, n-fold integer programs and multicommodity flows"};
  app.require_subcommand(1);

  std::string input_path = "-";
  std::size_t n = 0, l = 1;
  std::string encoding = "generalized";
  double budget_seconds = 0;
  std::size_t budget_elements = 0;
  std::string box;

  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget-time", budget_seconds, "Wall-time cap in seconds")->check(CLI::PositiveNumber);
    sub->add_option("--budget-elements", budget_elements, "Cap on Graver basis size")->check(CLI::PositiveNumber);
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", input_path, "Instance file (JSON); '-' or omitted reads standard input");
  };

  CLI::App* graver = app.add_subcommand("graver", "Graver basis of a matrix or of an n-fold product");
  add_input(graver);
  graver->add_option("--n", n, "Number of blocks for a bimatrix input")->check(CLI::PositiveNumber);
  add_budget(graver);

  CLI::App* complexity = app.add_subcommand("complexity", "Graver complexity of a bimatrix or digraph");
  add_input(complexity);
  add_budget(complexity);

  CLI::App* solve = app.add_subcommand("solve", "Solve a program or flow instance by Graver augmentation");
  add_input(solve);
  solve->add_option("--encoding", encoding, "Transshipment encoding")
      ->check(CLI::IsMember({"slack", "generalized"}));
  add_budget(solve);

  CLI::App* oracle = app.add_subcommand("oracle", "Solve by exhaustive enumeration");
  add_input(oracle);
  oracle->add_option("--box", box, "Search box |x_i| <= BOX for raw programs");
  add_budget(oracle);

  CLI::App* universal = app.add_subcommand("universal", "Print the matrix 1_3^[n][l]");
  universal->add_option("--n", n, "Inner product size")->required()->check(CLI::PositiveNumber);
  universal->add_option("--l", l, "Outer product size")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every usage error is an input error.
    return app.exit(e) == 0 ? nfold::cli::kOk : nfold::cli::kInputError;
  }

  nfold::cli::CommandOptions options;
  if (n > 0) options.n = n;
  if (encoding == "slack") options.encoding = nfold::TransshipmentEncoding::Slack;
  if (budget_seconds > 0) {
    options.budget.max_time = std::chrono::milliseconds(static_cast<long long>(budget_seconds * 1000));
  }
  if (budget_elements > 0) options.budget.max_elements = budget_elements;

  nfold::cli::CommandResult result;
  if (universal->parsed()) {
    result = nfold::cli::cmd_universal(n, l);
  } else {
    if (!box.empty()) {
      try {
        options.box = nfold::Integer::from_string(box);
      } catch (const std::invalid_argument&) {
        std::cerr << "error: --box must be an integer\n";
        return nfold::cli::kInputError;
      }
    }
    std::string text;
    try {
      text = read_input(input_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return nfold::cli::kInputError;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    result = nfold::cli::run_command(command, text, options);
  }

  std::cout << result.output.dump(2) << "\n";
  if (result.output.contains("message")) std::cerr << "error: " << result.output["message"].get<std::string>() << "\n";
  return result.exit_code;
}
