#pragma once

// Concrete parenthesized syntax for formulas:
//   atoms        (<= x y)  (label k x)  (in x X)
//   connectives  (not f)  (and f g ...)  (or f g ...)  (implies f g)
//   quantifiers  (exists x f)  (forall x f)  (existsS X f)  (forallS X f)  (U X f)
// Whitespace-insensitive.  Position variables start lowercase, set variables
// uppercase.  parse o render is the identity; render o parse canonicalizes.

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "msou/formula.hpp"

namespace msou {

struct ParseOptions {
  // Variables allowed to occur free.
  std::set<std::string> free_position_vars;
  std::set<std::string> free_set_vars;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

FormulaPtr parse_formula(std::string_view text, const Alphabet& alphabet,
                         const ParseOptions& opts = {});

std::string render_formula(const Formula& f);
inline std::string render_formula(const FormulaPtr& f) { return render_formula(*f); }

}  // namespace msou
