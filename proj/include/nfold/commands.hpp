#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "nfold/budget.hpp"
#include "nfold/flows.hpp"
#include "nfold/io.hpp"

namespace nfold::cli {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kInfeasible = 2,
  kUnbounded = 3,
  kBudgetExceeded = 4,
};

struct CommandOptions {
  std::optional<std::size_t> n;
  TransshipmentEncoding encoding = TransshipmentEncoding::Generalized;
  Budget budget;
  /// Search box |x_i| <= box for the oracle on raw programs.
  std::optional<Integer> box;
  /// Include wall time in the statistics block.
  bool timing = true;
};

struct CommandResult {
  io::json output;
  int exit_code = kOk;
};

/// Graver basis of a matrix, or of the n-fold product of a bimatrix (n
/// defaults to 1).
CommandResult cmd_graver(const io::InstanceFile& input, const CommandOptions& options);
/// Graver complexity of a bimatrix, or of the bimatrix (I_t ; D) of a digraph.
CommandResult cmd_complexity(const io::InstanceFile& input, const CommandOptions& options);
CommandResult cmd_solve(const io::InstanceFile& input, const CommandOptions& options);
/// Same output schema as cmd_solve, computed by exhaustive enumeration.
CommandResult cmd_oracle(const io::InstanceFile& input, const CommandOptions& options);
CommandResult cmd_universal(std::size_t n, std::size_t l);

/// Parses `input_text` and runs the named command ("graver", "complexity",
/// "solve" or "oracle"). Input errors become exit code 1 with an error
/// document naming the offending field.
CommandResult run_command(std::string_view command, std::string_view input_text, const CommandOptions& options);

}  // namespace nfold::cli
