#include "msou/vecseq.hpp"

#include <algorithm>
#include <limits>

#include <nlohmann/json.hpp>

namespace msou {

namespace {

using json = nlohmann::json;

constexpr std::uint64_t kMaxU64 = std::numeric_limits<std::uint64_t>::max();

void check_params(EquivParams p) {
  if (p.bounded > p.transfer)
    throw std::invalid_argument("EquivParams: requires B <= B'");
}

// Advances s as an odometer over the dimensions of f, last position fastest,
// which enumerates selections in lexicographic order.  Returns false after
// the last selection.
bool next_selection(const VectorWindow& f, Selection& s) {
  for (std::size_t i = s.size(); i-- > 0;) {
    if (s[i] + 1 < f.vectors[i].size()) {
      ++s[i];
      std::fill(s.begin() + static_cast<std::ptrdiff_t>(i) + 1, s.end(), 0);
      return true;
    }
  }
  return false;
}

}  // namespace

std::uint64_t VectorWindow::selection_count() const {
  std::uint64_t count = 1;
  for (const auto& v : vectors) {
    std::uint64_t d = v.size();
    if (d == 0) return 0;
    if (count > kMaxU64 / d) return kMaxU64;
    count *= d;
  }
  return count;
}

NumberWindow select(const VectorWindow& f, const Selection& s) {
  if (s.size() != f.length())
    throw std::invalid_argument("select: selection length mismatch");
  NumberWindow out(f.length());
  for (std::size_t i = 0; i < f.length(); ++i) {
    if (s[i] >= f.vectors[i].size())
      throw std::invalid_argument("select: coordinate index out of range at position " +
                                  std::to_string(i));
    out[i] = f.vectors[i][s[i]];
  }
  return out;
}

bool window_equiv(const NumberWindow& f, const NumberWindow& g, EquivParams p) {
  check_params(p);
  if (f.size() != g.size())
    throw std::invalid_argument("window_equiv: window length mismatch");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] <= p.bounded && g[i] > p.transfer) return false;
    if (g[i] <= p.bounded && f[i] > p.transfer) return false;
  }
  return true;
}

MixResult is_window_mix(const VectorWindow& f, const VectorWindow& g, EquivParams p,
                        std::uint64_t selection_budget) {
  check_params(p);
  if (f.length() != g.length())
    throw std::invalid_argument("is_window_mix: window length mismatch");
  if (f.selection_count() > selection_budget || g.selection_count() > selection_budget)
    throw BudgetExceeded("is_window_mix: selection count exceeds budget of " +
                         std::to_string(selection_budget));
  if (f.length() == 0) return {true, std::nullopt};
  for (const auto& v : f.vectors)
    if (v.empty())
      throw std::invalid_argument("is_window_mix: empty vector in the left window");
  for (const auto& v : g.vectors)
    if (v.empty())
      throw std::invalid_argument("is_window_mix: empty vector in the right window");

  Selection s(f.length(), 0);
  do {
    NumberWindow fs = select(f, s);
    bool matched = false;
    Selection t(g.length(), 0);
    do {
      if (window_equiv(fs, select(g, t), p)) {
        matched = true;
        break;
      }
    } while (next_selection(g, t));
    if (!matched) return {false, s};
  } while (next_selection(f, s));
  return {true, std::nullopt};
}

NumberWindow min_dominate(const NumberWindow& h, const NumberWindow& f) {
  if (h.size() != f.size())
    throw std::invalid_argument("min_dominate: window length mismatch");
  NumberWindow g(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) g[i] = std::min(h[i], f[i]);
  return g;
}

bool tends_to_infinity_window(
    const VectorWindow& f,
    const std::vector<std::pair<std::uint64_t, std::size_t>>& thresholds) {
  for (const auto& [n, cutoff] : thresholds) {
    if (cutoff > f.length())
      throw std::invalid_argument("tends_to_infinity_window: cutoff beyond window");
    for (std::size_t i = cutoff; i < f.length(); ++i)
      for (std::uint64_t x : f.vectors[i])
        if (x < n) return false;
  }
  return true;
}

std::vector<std::size_t> dimension_compare(const VectorWindow& f1, const VectorWindow& f2) {
  if (f1.length() != f2.length())
    throw std::invalid_argument("dimension_compare: window length mismatch");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f1.length(); ++i)
    if (f1.vectors[i].size() > f2.vectors[i].size()) out.push_back(i);
  return out;
}

VectorWindow identity_grid_window(std::size_t dim, std::uint64_t side) {
  if (dim < 1 || side < 1)
    throw std::invalid_argument("identity_grid_window: dim and side must be >= 1");
  VectorWindow out;
  std::vector<std::uint64_t> point(dim, 0);
  while (true) {
    out.vectors.push_back(point);
    std::size_t i = dim;
    while (i-- > 0) {
      if (point[i] + 1 < side) {
        ++point[i];
        std::fill(point.begin() + static_cast<std::ptrdiff_t>(i) + 1, point.end(), 0);
        break;
      }
      if (i == 0) {
        std::stable_sort(out.vectors.begin(), out.vectors.end(),
                         [](const auto& a, const auto& b) {
                           std::uint64_t sa = 0, sb = 0;
                           for (auto x : a) sa += x;
                           for (auto x : b) sb += x;
                           if (sa != sb) return sa < sb;
                           return a < b;
                         });
        return out;
      }
    }
  }
}

VectorWindow vector_window_from_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("vector window JSON: expected an array");
  VectorWindow out;
  for (const auto& row : j) {
    if (!row.is_array())
      throw std::invalid_argument("vector window JSON: expected an array of arrays");
    std::vector<std::uint64_t> v;
    for (const auto& x : row) {
      if (!x.is_number_unsigned())
        throw std::invalid_argument("vector window JSON: entries must be naturals");
      v.push_back(x.get<std::uint64_t>());
    }
    out.vectors.push_back(std::move(v));
  }
  return out;
}

std::string vector_window_to_json(const VectorWindow& f) {
  json j = json::array();
  for (const auto& v : f.vectors) j.push_back(v);
  return j.dump();
}

NumberWindow number_window_from_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("number window JSON: expected an array");
  NumberWindow out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned())
      throw std::invalid_argument("number window JSON: entries must be naturals");
    out.push_back(x.get<std::uint64_t>());
  }
  return out;
}

std::string number_window_to_json(const NumberWindow& f) {
  return json(f).dump();
}

}  // namespace msou
