#pragma once

#include <stdexcept>
#include <string>

#include "stab/surface.hpp"

namespace stab {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg), line(line), col(col) {}
};

// Parses the surface language:
//   spec := {"let" NAME "(" params? ")" ":=" form "in"} form
// Whitespace-insensitive; // comments run to end of line.
// Throws ParseError with a source position on malformed input.
SourceSpec parse(const std::string& text);

}  // namespace stab
