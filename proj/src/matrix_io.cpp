#include "readop/matrix_io.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "readop/errors.hpp"

namespace readop {

void write_matrix(std::ostream& out, const Window& w) {
  out << "N " << w.size() << " basis " << to_string(w.basis()) << '\n';
  for (const auto& [pos, value] : w.entries_row_major()) {
    out << pos.row << ' ' << pos.col << ' ' << value.to_string() << '\n';
  }
}

std::string matrix_to_string(const Window& w) {
  std::ostringstream out;
  write_matrix(out, w);
  return out.str();
}

Window read_matrix(std::istream& in) {
  std::optional<Window> w;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw ConfigError("matrix file line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#' || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream fields(line);
    if (!w) {
      std::string n_tag;
      std::string basis_tag;
      std::string basis;
      long long n = -1;
      if (!(fields >> n_tag >> n >> basis_tag >> basis) || n_tag != "N" || basis_tag != "basis" || n < 0) {
        fail("expected header 'N <size> basis <f|e>'");
      }
      try {
        w.emplace(static_cast<std::size_t>(n), parse_basis(basis));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      continue;
    }
    long long row = -1;
    long long col = -1;
    if (!(fields >> row >> col) || row < 0 || col < 0) fail("expected 'row col scalar-text'");
    std::string rest;
    std::getline(fields, rest);
    try {
      const auto value = ExactScalar::parse(rest);
      if (w->at(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) != ExactScalar()) {
        fail("duplicate entry");
      }
      w->set(static_cast<std::size_t>(row), static_cast<std::size_t>(col), value);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (!w) throw ConfigError("matrix file is empty (missing header)");
  return std::move(*w);
}

Window matrix_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

}  // namespace readop
