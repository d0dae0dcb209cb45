#pragma once

// Finite prefixes of words over the alphabet {1..n}, serialized as
// space-separated digits.  Positions are 0-based.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msou/formula.hpp"

namespace msou {

struct WordPrefix {
  Alphabet alphabet;
  std::vector<int> letters;  // each in 1..alphabet.size

  bool operator==(const WordPrefix& o) const {
    return alphabet.size == o.alphabet.size && letters == o.letters;
  }
};

// Every letter must lie in 1..alphabet.size.
void validate_word(const WordPrefix& w);

// Parses space-separated digits.  When alphabet_size is absent the alphabet
// is the maximum letter occurring in the text.
WordPrefix parse_word(std::string_view text, std::optional<int> alphabet_size = {});

std::string render_word(const WordPrefix& w);

}  // namespace msou
