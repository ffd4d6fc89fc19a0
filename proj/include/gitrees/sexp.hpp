#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gitrees/tree.hpp"

namespace gitrees::sexp {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Sexp {
  std::string atom;  // empty for lists
  std::vector<Sexp> items;
  bool is_list = false;
  std::size_t line = 1;

  bool is_atom() const { return !is_list; }
  bool is_atom(std::string_view s) const { return !is_list && atom == s; }
  /// Natural-number literal, if the atom is all digits.
  std::optional<Natural> as_natural() const;
};

/// Reads every top-level datum. `;` starts a comment to end of line.
std::vector<Sexp> read_all(std::string_view text);

/// Reads exactly one datum.
Sexp read_one(std::string_view text);

std::string to_string(const Sexp& s);

}  // namespace gitrees::sexp
