#ifndef READOP_MATRIX_IO_HPP
#define READOP_MATRIX_IO_HPP

#include <iosfwd>
#include <string>

#include "readop/window.hpp"

namespace readop {

/// Writes the header "N <size> basis <f|e>" followed by one
/// "row col scalar-text" line per nonzero entry, in row-major order.
void write_matrix(std::ostream& out, const Window& w);
std::string matrix_to_string(const Window& w);

/// Reads the format produced by write_matrix. Blank lines and lines starting
/// with '#' are skipped. Throws ConfigError with the offending line number.
Window read_matrix(std::istream& in);
Window matrix_from_string(const std::string& text);

}  // namespace readop

#endif  // READOP_MATRIX_IO_HPP
