#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "msou/vecseq.hpp"

using namespace msou;

namespace {

VectorWindow vw(std::vector<std::vector<std::uint64_t>> v) { return VectorWindow{std::move(v)}; }

}  // namespace

TEST_CASE("select projects coordinates") {
  VectorWindow f = vw({{0, 9}, {9, 0}});
  CHECK(select(f, {0, 0}) == NumberWindow{0, 9});
  CHECK(select(f, {1, 1}) == NumberWindow{9, 0});
  CHECK_THROWS_AS(select(f, {2, 0}), std::invalid_argument);

  // All selections enumerate to the full cross product.
  std::set<NumberWindow> all;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) all.insert(select(f, {a, b}));
  CHECK(all == std::set<NumberWindow>{{0, 9}, {0, 0}, {9, 9}, {9, 0}});

  VectorWindow one = vw({{5}, {6}});
  CHECK(one.selection_count() == 1);
  CHECK(select(one, {0, 0}) == NumberWindow{5, 6});
}

TEST_CASE("window_equiv examples") {
  CHECK(window_equiv({0, 5, 0, 7}, {0, 5, 0, 7}, {3, 9}));
  CHECK(window_equiv({0, 5, 0, 7}, {1, 9, 2, 8}, {3, 9}));
  CHECK(!window_equiv({0, 0}, {0, 99}, {3, 9}));
  CHECK_THROWS_AS(window_equiv({0}, {0, 0}, {3, 9}), std::invalid_argument);
  CHECK_THROWS_AS(window_equiv({0}, {0}, {9, 3}), std::invalid_argument);  // needs B <= B'
}

TEST_CASE("window_equiv properties on random windows") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::uint64_t> val(0, 12);
  for (int i = 0; i < 500; ++i) {
    NumberWindow f(6), g(6);
    for (auto& x : f) x = val(rng);
    for (auto& x : g) x = val(rng);
    CHECK(window_equiv(f, f, {3, 8}));                              // reflexive
    CHECK(window_equiv(f, g, {3, 8}) == window_equiv(g, f, {3, 8}));  // symmetric
    if (window_equiv(f, g, {3, 8})) {
      CHECK(window_equiv(f, g, {3, 9}));  // monotone in B'
      CHECK(window_equiv(f, g, {2, 8}));  // antitone in B
    }
  }
}

TEST_CASE("is_window_mix: identity and the documented failure") {
  VectorWindow f = vw({{0, 9}, {9, 0}, {0, 9}});
  CHECK(is_window_mix(f, f, {3, 8}).is_mix);

  VectorWindow g = vw({{0}, {9}, {0}});
  MixResult r = is_window_mix(f, g, {3, 8});
  REQUIRE(!r.is_mix);
  // Lexicographically least violating selection: (0,0,1) selects (0,9,9),
  // while g's only sequence (0,9,0) is small at position 2.
  CHECK(*r.counterexample == Selection{0, 0, 1});
  CHECK(!window_equiv(select(f, *r.counterexample), select(g, {0, 0, 0}), {3, 8}));
}

TEST_CASE("is_window_mix exact-match case") {
  VectorWindow f = vw({{1, 7}, {2, 8}});
  VectorWindow g = vw({{7}, {8}});
  CHECK(is_window_mix(f, g, {0, 0}).is_mix);  // selection (1,1) matches exactly
}

TEST_CASE("is_window_mix refuses over budget") {
  VectorWindow f = vw(std::vector<std::vector<std::uint64_t>>(30, {0, 1}));
  CHECK_THROWS_AS(is_window_mix(f, f, {0, 1}, 1000), BudgetExceeded);
}

TEST_CASE("min_dominate examples and properties") {
  CHECK(min_dominate({5, 2, 9}, {7, 3, 3}) == NumberWindow{5, 2, 3});
  CHECK(min_dominate({5, 2, 9}, {100, 100, 100}) == NumberWindow{5, 2, 9});
  NumberWindow g = min_dominate({0, 100}, {50, 50});
  CHECK(g == NumberWindow{0, 50});
  CHECK(window_equiv(g, {0, 100}, {3, 50}));

  std::mt19937 rng(7);
  std::uniform_int_distribution<std::uint64_t> val(0, 200);
  for (int i = 0; i < 200; ++i) {
    NumberWindow h(5), f(5);
    for (auto& x : h) x = val(rng);
    for (auto& x : f) x = val(rng);
    NumberWindow m = min_dominate(h, f);
    for (std::size_t k = 0; k < 5; ++k) {
      CHECK(m[k] <= h[k]);
      CHECK(m[k] <= f[k]);
    }
    CHECK(min_dominate(m, f) == m);  // idempotent against f
  }
}

TEST_CASE("tends_to_infinity_window") {
  VectorWindow f;
  for (std::uint64_t i = 0; i < 10; ++i) f.vectors.push_back({i, i});
  CHECK(tends_to_infinity_window(f, {{3, 3}, {5, 5}}));
  CHECK(!tends_to_infinity_window(f, {{5, 3}}));

  VectorWindow c = vw(std::vector<std::vector<std::uint64_t>>(10, {7}));
  CHECK(tends_to_infinity_window(c, {{7, 0}}));
  CHECK(!tends_to_infinity_window(c, {{8, 0}}));
}

TEST_CASE("dimension_compare") {
  VectorWindow f1 = vw({{1, 1, 1}, {1, 1}, {1, 1, 1}, {1, 1}});
  VectorWindow f2 = vw({{1, 1}, {1, 1}, {1, 1}, {1, 1}});
  CHECK(dimension_compare(f1, f2) == std::vector<std::size_t>{0, 2});
  CHECK(dimension_compare(f1, f1).empty());
}

TEST_CASE("identity_grid_window order and size") {
  VectorWindow d1 = identity_grid_window(1, 3);
  CHECK(d1.vectors == std::vector<std::vector<std::uint64_t>>{{0}, {1}, {2}});

  VectorWindow d2 = identity_grid_window(2, 2);
  CHECK(d2.vectors ==
        std::vector<std::vector<std::uint64_t>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(identity_grid_window(3, 4).length() == 64);
}

TEST_CASE("JSON round trips") {
  VectorWindow f = vw({{0, 9}, {9, 0}});
  VectorWindow back = vector_window_from_json(vector_window_to_json(f));
  CHECK(back.vectors == f.vectors);
  NumberWindow n{1, 2, 3};
  CHECK(number_window_from_json(number_window_to_json(n)) == n);
  CHECK_THROWS(vector_window_from_json("{\"not\": \"a list\"}"));
}
