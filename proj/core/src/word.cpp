#include "msou/word.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace msou {

void validate_word(const WordPrefix& w) {
  if (w.alphabet.size < 1) throw std::invalid_argument("alphabet size must be >= 1");
  for (int c : w.letters)
    if (c < 1 || c > w.alphabet.size)
      throw std::invalid_argument("letter " + std::to_string(c) + " outside alphabet 1.." +
                                  std::to_string(w.alphabet.size));
}

WordPrefix parse_word(std::string_view text, std::optional<int> alphabet_size) {
  WordPrefix w;
  std::istringstream is{std::string(text)};
  int c;
  while (is >> c) w.letters.push_back(c);
  if (!is.eof()) {
    is.clear();
    std::string junk;
    is >> junk;
    throw std::invalid_argument("word: expected an integer, got '" + junk + "'");
  }
  int max_letter = 1;
  for (int x : w.letters) max_letter = std::max(max_letter, x);
  w.alphabet.size = alphabet_size.value_or(max_letter);
  validate_word(w);
  return w;
}

std::string render_word(const WordPrefix& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) os << ' ';
    os << w.letters[i];
  }
  return os.str();
}

}  // namespace msou
