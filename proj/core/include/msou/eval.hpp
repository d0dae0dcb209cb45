#pragma once

// Brute-force model checking of formulas on finite word prefixes.  Position
// quantifiers enumerate positions; set quantifiers enumerate all subsets of
// positions; U is interpreted under the bounded surrogate
//   (U X f)  :=  exists X with |X| >= u_threshold such that f,
// which is a testing device, not the real infinite-word semantics.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "msou/formula.hpp"
#include "msou/vecseq.hpp"  // BudgetExceeded
#include "msou/word.hpp"

namespace msou {

struct Assignment {
  std::map<std::string, std::size_t> positions;
  std::map<std::string, std::vector<std::size_t>> sets;
};

struct EvalBudget {
  std::size_t u_threshold = 1;
  std::size_t max_word_length = 16;  // hard cap 63 (sets are bitmasks)
  std::size_t max_set_depth = 8;     // nesting cap for set-sort quantifiers
};

bool evaluate(const Formula& f, const WordPrefix& w, const Assignment& a, const EvalBudget& b);

// Re-usable compiled form: variable lookups become slot indices, sets become
// bitmasks.  Compile once, evaluate against many words.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const EvalBudget& b);
  ~CompiledFormula();
  CompiledFormula(CompiledFormula&&) noexcept;
  CompiledFormula& operator=(CompiledFormula&&) noexcept;

  bool evaluate(const WordPrefix& w, const Assignment& a) const;

  const std::vector<std::string>& free_position_vars() const;
  const std::vector<std::string>& free_set_vars() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct Disagreement {
  WordPrefix word;
  Assignment assignment;
  bool expected = false;  // the direct predicate
  bool got = false;       // the formula
};

using DirectPredicate = std::function<bool(const WordPrefix&, const Assignment&)>;

struct CheckOptions {
  // Only words that start with 1 and contain the top letter.
  bool decodable_words_only = false;
  // Enumerate set-variable values over subsets of positions labeled n only
  // (the block predicates speak about leaves).
  bool sets_over_leaves_only = false;
  // Restrict position-variable values to leaf positions.
  bool positions_over_leaves_only = false;
};

// Enumerates all words over 1..alphabet_size of length 1..max_len (order:
// length, then lexicographic) and, per word, all assignments to the free
// variables of f; returns every input where the formula disagrees with the
// direct predicate.
std::vector<Disagreement> exhaustive_check(const Formula& f, const DirectPredicate& oracle,
                                           int alphabet_size, std::size_t max_len,
                                           const EvalBudget& b, const CheckOptions& opts = {});

}  // namespace msou
