#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "gitrees/engine.hpp"
#include "gitrees/io_lang.hpp"

namespace gitrees::cli {

enum class Language { Io, Aff, Comb };
enum class Mode { Denote, Operational, Compare };

struct RunConfig {
  Language language = Language::Io;
  Mode mode = Mode::Denote;
  std::size_t fuel = kDefaultFuel;
  std::vector<Natural> input_tape;
  std::set<ErrorKind> allowed_errors;
  bool trace = false;
  /// Fault injection for the operational semantics.
  io::OpOptions op_options;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitTypeError = 1,
  kExitViolation = 2,
  kExitOutOfFuel = 3,
  kExitMismatch = 4,
};

/// Parses "3,1,4" (empty string is the empty tape). Throws std::invalid_argument.
std::vector<Natural> parse_tape(std::string_view text);

/// "[3,1,4]"
std::string render_tape(const std::vector<Natural>& tape);

/// Runs a program text under `config`, writing the summary (and trace) to
/// `out` and diagnostics to `err`. Returns the exit status.
int run_program(std::string_view source, const RunConfig& config,
                std::ostream& out, std::ostream& err);

/// Entry point; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace gitrees::cli
