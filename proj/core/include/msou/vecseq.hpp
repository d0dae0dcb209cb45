#pragma once

// Windowed versions of the vector-sequence notions: selections through a
// vector window, asymptotic equivalence via a transfer-bound pair (B, B'),
// asymptotic-mix checking by exhaustive selection search, dimension
// comparison, the pointwise-min domination construction, and the identity
// grid witness.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace msou {

using NumberWindow = std::vector<std::uint64_t>;

struct VectorWindow {
  std::vector<std::vector<std::uint64_t>> vectors;

  std::size_t length() const { return vectors.size(); }
  // Product of per-position dimensions, saturating at max uint64.
  std::uint64_t selection_count() const;
};

// Transfer-bound pair: f ~ g on a window iff pointwise f<=B => g<=B' and
// g<=B => f<=B'.
struct EquivParams {
  std::uint64_t bounded = 0;    // B
  std::uint64_t transfer = 0;   // B', requires B <= B'
};

// One coordinate index per position.
using Selection = std::vector<std::size_t>;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

NumberWindow select(const VectorWindow& f, const Selection& s);

bool window_equiv(const NumberWindow& f, const NumberWindow& g, EquivParams p);

struct MixResult {
  bool is_mix = false;
  // On failure, the lexicographically least selection of f with no
  // equivalent selection in g.
  std::optional<Selection> counterexample;
};

constexpr std::uint64_t kDefaultSelectionBudget = 1u << 22;

// Refuses (BudgetExceeded) when either window has more selections than the
// budget; never truncates silently.
MixResult is_window_mix(const VectorWindow& f, const VectorWindow& g, EquivParams p,
                        std::uint64_t selection_budget = kDefaultSelectionBudget);

NumberWindow min_dominate(const NumberWindow& h, const NumberWindow& f);

// thresholds: (n, cutoff): every vector at position >= cutoff must have all
// coordinates >= n.
bool tends_to_infinity_window(const VectorWindow& f,
                              const std::vector<std::pair<std::uint64_t, std::size_t>>& thresholds);

// Positions where f1 has a strictly higher-dimensional vector than f2.
std::vector<std::size_t> dimension_compare(const VectorWindow& f1, const VectorWindow& f2);

// All points of {0..side-1}^dim, ordered by coordinate sum then
// lexicographically, one vector per point.  Window length is side^dim.
VectorWindow identity_grid_window(std::size_t dim, std::uint64_t side);

// JSON: a list of lists of naturals.
VectorWindow vector_window_from_json(const std::string& text);
std::string vector_window_to_json(const VectorWindow& f);
NumberWindow number_window_from_json(const std::string& text);
std::string number_window_to_json(const NumberWindow& f);

}  // namespace msou
