#pragma once

#include <stdexcept>
#include <string>

#include "loopfinder/term.hpp"

namespace lf {

// Parse failure with a 1-based source position. Line 0 means the input has
// no useful position (for example a malformed configuration file).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int col)
      : std::runtime_error(line > 0
                               ? message + " at line " + std::to_string(line) +
                                     ", column " + std::to_string(col)
                               : message),
        message_(std::move(message)),
        line_(line),
        col_(col) {}

  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  std::string message_;
  int line_;
  int col_;
};

// Reads a logic program: facts `h.` and rules `h :- b1, ..., bn.` with `%`
// line comments. Variables start with an uppercase letter or `_`; each bare
// `_` is a fresh variable. Lists use bracket sugar over './2' and '[]'.
// `true` is the empty goal: allowed in bodies (and dropped), rejected as a
// head. A relation symbol must keep one arity across the program; function
// symbols are unconstrained.
Program parse_program(const std::string& text);

// A query is a single atom, optionally terminated by a period. Multi-atom
// input and the reserved atom `true` are rejected.
Atom parse_query(const std::string& text);

// One term / one atom, mainly for tests and tools. Variable names map to ids
// consistently within a single call only.
TermPtr parse_term_text(const std::string& text);
Atom parse_atom_text(const std::string& text);

}  // namespace lf
