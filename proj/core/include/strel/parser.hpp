#pragma once

#include "strel/formula.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace strel {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
             std::string found, std::string detail = {});

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
  std::string found_;
};

/// Parses the textual formula syntax. Binding, loosest first: `U` (right
/// associative, optional `[a,b]`), `->` (right associative), `|`, `&`, then the
/// prefix operators `!`, `F[a,b]`, `G[a,b]`, `somewhere[<=d]`,
/// `everywhere[<=d]`, `escape[>=d]`. Atoms are `name < c` / `name > c`, with
/// names resolved through `vars`.
Formula parse_formula(std::string_view text, const VariableTable& vars);

} // namespace strel
