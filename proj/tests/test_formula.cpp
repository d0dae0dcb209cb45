#include <doctest.h>

#include <random>

#include "msou/formula.hpp"
#include "msou/sexpr.hpp"

using namespace msou;

TEST_CASE("builders and analysis") {
  FormulaPtr f = exists_pos("x", label(1, "x"));
  Analysis a = analyze(*f);
  CHECK(a.free_position_vars.empty());
  CHECK(a.free_set_vars.empty());
  CHECK(a.quantifier_depth == 1);
  CHECK(a.size == 2);

  FormulaPtr g = mk_and({leq("x", "y"), in("x", "X")});
  Analysis ag = analyze(*g);
  CHECK(ag.free_position_vars == std::set<std::string>{"x", "y"});
  CHECK(ag.free_set_vars == std::set<std::string>{"X"});
  CHECK(ag.quantifier_depth == 0);
  CHECK(ag.size == 3);

  CHECK(is_u_free(*g));
  CHECK(is_first_order(*g));
  CHECK(!is_u_free(*unbounded("X", in("x", "X"))));
  CHECK(!is_first_order(*exists_set("X", in("x", "X"))));
  CHECK(is_u_free(*exists_set("X", in("x", "X"))));
  CHECK(letters_used(*mk_or({label(1, "x"), label(3, "x")})) == std::set<int>{1, 3});
}

TEST_CASE("size is additive over subterms") {
  FormulaPtr f = leq("x", "y");
  FormulaPtr g = label(2, "x");
  FormulaPtr both = mk_and({f, g});
  CHECK(analyze(*both).size == analyze(*f).size + analyze(*g).size + 1);
}

TEST_CASE("conj and disj pass single formulas through") {
  FormulaPtr f = label(1, "x");
  CHECK(equal(conj({f}), f));
  CHECK(equal(disj({f}), f));
  CHECK(conj({f, f})->kind == Kind::And);
}

TEST_CASE("parse examples") {
  Alphabet a3{3};
  FormulaPtr f = parse_formula("(exists x (label 3 x))", a3);
  CHECK(f->kind == Kind::ExistsPos);
  CHECK(render_formula(f) == "(exists x (label 3 x))");

  FormulaPtr u = parse_formula("(U X (forall x (implies (in x X) (label 3 x))))", a3);
  CHECK(u->kind == Kind::Unbounded);
  CHECK(!is_u_free(*u));

  FormulaPtr r = parse_formula("(forall x (<= x x))", a3);
  CHECK(render_formula(r) == "(forall x (<= x x))");
}

TEST_CASE("parse validates") {
  Alphabet a3{3};
  CHECK_THROWS_AS(parse_formula("(label 4 x)", a3,
                                ParseOptions{.free_position_vars = {"x"}}),
                  ParseError);
  CHECK_THROWS_AS(parse_formula("(label 3 x)", a3), ParseError);  // unbound x
  CHECK_THROWS_AS(parse_formula("(and (label 1 x))", a3,
                                ParseOptions{.free_position_vars = {"x"}}),
                  ParseError);  // and needs >= 2 arguments
  CHECK_THROWS_AS(parse_formula("(exists x (<= x x)) junk", a3), ParseError);
  CHECK_THROWS_AS(parse_formula("(in x x)", a3, ParseOptions{.free_position_vars = {"x"}}),
                  ParseError);  // set argument must be uppercase-initial
  CHECK_NOTHROW(parse_formula("(in x X)", a3,
                              ParseOptions{.free_position_vars = {"x"},
                                           .free_set_vars = {"X"}}));
}

TEST_CASE("render is whitespace-canonical") {
  Alphabet a3{3};
  FormulaPtr f = parse_formula("( exists   x\n (and (label 1 x) (<= x x) ) )", a3);
  std::string text = render_formula(f);
  CHECK(text == "(exists x (and (label 1 x) (<= x x)))");
  CHECK(render_formula(parse_formula(text, a3)) == text);
}

namespace {

// Random closed formulas: every variable is used only under its binder.
FormulaPtr random_formula(std::mt19937& rng, int depth, std::vector<std::string>& pos_vars,
                          std::vector<std::string>& set_vars, int& counter) {
  auto pick = [&](const std::vector<std::string>& vars) {
    return vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)];
  };
  bool atom = depth <= 0;
  if (atom && pos_vars.empty()) atom = false;  // must bind something first
  if (atom) {
    switch (std::uniform_int_distribution<int>(0, set_vars.empty() ? 1 : 2)(rng)) {
      case 0: return leq(pick(pos_vars), pick(pos_vars));
      case 1: return label(std::uniform_int_distribution<int>(1, 3)(rng), pick(pos_vars));
      default: return in(pick(pos_vars), pick(set_vars));
    }
  }
  int choice = std::uniform_int_distribution<int>(0, 8)(rng);
  if (pos_vars.empty() && choice < 4) choice = 4 + choice % 5;
  switch (choice) {
    case 0: return neg(random_formula(rng, depth - 1, pos_vars, set_vars, counter));
    case 1:
      return mk_and({random_formula(rng, depth - 1, pos_vars, set_vars, counter),
                     random_formula(rng, depth - 1, pos_vars, set_vars, counter)});
    case 2:
      return mk_or({random_formula(rng, depth - 1, pos_vars, set_vars, counter),
                    random_formula(rng, depth - 1, pos_vars, set_vars, counter)});
    case 3:
      return implies(random_formula(rng, depth - 1, pos_vars, set_vars, counter),
                     random_formula(rng, depth - 1, pos_vars, set_vars, counter));
    case 4:
    case 5: {
      std::string v = "p" + std::to_string(counter++);
      pos_vars.push_back(v);
      FormulaPtr body = random_formula(rng, depth - 1, pos_vars, set_vars, counter);
      pos_vars.pop_back();
      return choice == 4 ? exists_pos(v, body) : forall_pos(v, body);
    }
    default: {
      std::string v = "S" + std::to_string(counter++);
      set_vars.push_back(v);
      FormulaPtr body = random_formula(rng, depth - 1, pos_vars, set_vars, counter);
      set_vars.pop_back();
      if (choice == 6) return exists_set(v, body);
      if (choice == 7) return forall_set(v, body);
      return unbounded(v, body);
    }
  }
}

}  // namespace

TEST_CASE("random round trips: parse of render is identity") {
  Alphabet a3{3};
  std::mt19937 rng(20240817);
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::string> pos_vars, set_vars;
    int counter = 0;
    FormulaPtr f = random_formula(rng, 8, pos_vars, set_vars, counter);
    std::string text = render_formula(f);
    FormulaPtr back = parse_formula(text, a3);
    REQUIRE(equal(f, back));
    REQUIRE(render_formula(back) == text);
  }
}

TEST_CASE("structural equality is literal, not alpha") {
  FormulaPtr f = exists_pos("x", leq("x", "x"));
  FormulaPtr g = exists_pos("y", leq("y", "y"));
  CHECK(equal(f, f));
  CHECK(!equal(f, g));
}
