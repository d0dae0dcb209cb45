#include "msou/sexpr.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace msou {

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  const Alphabet& alphabet;
  const ParseOptions& opts;
  std::vector<std::string> bound_pos;
  std::vector<std::string> bound_set;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos); }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }

  static bool token_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')';
  }

  std::string token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && token_char(text[pos])) ++pos;
    if (pos == start) fail("expected a token");
    return std::string(text.substr(start, pos - start));
  }

  std::string position_var() {
    auto t = token();
    if (!is_position_var(t)) fail("expected a position variable (lowercase-initial): " + t);
    return t;
  }

  std::string set_var() {
    auto t = token();
    if (!is_set_var(t)) fail("expected a set variable (uppercase-initial): " + t);
    return t;
  }

  void check_pos_bound(const std::string& v) {
    for (auto it = bound_pos.rbegin(); it != bound_pos.rend(); ++it)
      if (*it == v) return;
    if (!opts.free_position_vars.count(v)) fail("unbound position variable: " + v);
  }

  void check_set_bound(const std::string& v) {
    for (auto it = bound_set.rbegin(); it != bound_set.rend(); ++it)
      if (*it == v) return;
    if (!opts.free_set_vars.count(v)) fail("unbound set variable: " + v);
  }

  FormulaPtr formula() {
    expect('(');
    auto head = token();
    FormulaPtr out;
    if (head == "<=") {
      auto x = position_var();
      auto y = position_var();
      check_pos_bound(x);
      check_pos_bound(y);
      out = leq(x, y);
    } else if (head == "label") {
      auto k = token();
      int letter = 0;
      try {
        std::size_t used = 0;
        letter = std::stoi(k, &used);
        if (used != k.size()) throw std::invalid_argument(k);
      } catch (const std::exception&) {
        fail("expected a letter (positive integer): " + k);
      }
      if (letter < 1 || letter > alphabet.size)
        fail("unknown letter " + k + " for alphabet of size " + std::to_string(alphabet.size));
      auto x = position_var();
      check_pos_bound(x);
      out = label(letter, x);
    } else if (head == "in") {
      auto x = position_var();
      auto X = set_var();
      check_pos_bound(x);
      check_set_bound(X);
      out = in(x, X);
    } else if (head == "not") {
      out = neg(formula());
    } else if (head == "and" || head == "or") {
      std::vector<FormulaPtr> kids;
      while (true) {
        skip_ws();
        if (pos < text.size() && text[pos] == ')') break;
        kids.push_back(formula());
      }
      if (kids.size() < 2) fail(head + " needs at least two arguments");
      out = head == "and" ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    } else if (head == "implies") {
      auto f = formula();
      auto g = formula();
      out = implies(std::move(f), std::move(g));
    } else if (head == "exists" || head == "forall") {
      auto x = position_var();
      bound_pos.push_back(x);
      auto body = formula();
      bound_pos.pop_back();
      out = head == "exists" ? exists_pos(x, std::move(body)) : forall_pos(x, std::move(body));
    } else if (head == "existsS" || head == "forallS" || head == "U") {
      auto X = set_var();
      bound_set.push_back(X);
      auto body = formula();
      bound_set.pop_back();
      if (head == "existsS")
        out = exists_set(X, std::move(body));
      else if (head == "forallS")
        out = forall_set(X, std::move(body));
      else
        out = unbounded(X, std::move(body));
    } else {
      fail("unknown operator: " + head);
    }
    expect(')');
    return out;
  }
};

void render_rec(const Formula& f, std::ostream& os) {
  switch (f.kind) {
    case Kind::LessEq:
      os << "(<= " << f.a << ' ' << f.b << ')';
      return;
    case Kind::Label:
      os << "(label " << f.letter << ' ' << f.a << ')';
      return;
    case Kind::In:
      os << "(in " << f.a << ' ' << f.b << ')';
      return;
    case Kind::Not:
      os << "(not ";
      render_rec(*f.kids[0], os);
      os << ')';
      return;
    case Kind::And:
    case Kind::Or:
      os << (f.kind == Kind::And ? "(and" : "(or");
      for (const auto& k : f.kids) {
        os << ' ';
        render_rec(*k, os);
      }
      os << ')';
      return;
    case Kind::Implies:
      os << "(implies ";
      render_rec(*f.kids[0], os);
      os << ' ';
      render_rec(*f.kids[1], os);
      os << ')';
      return;
    case Kind::ExistsPos:
    case Kind::ForallPos:
    case Kind::ExistsSet:
    case Kind::ForallSet:
    case Kind::Unbounded: {
      const char* head = f.kind == Kind::ExistsPos   ? "exists"
                         : f.kind == Kind::ForallPos ? "forall"
                         : f.kind == Kind::ExistsSet ? "existsS"
                         : f.kind == Kind::ForallSet ? "forallS"
                                                     : "U";
      os << '(' << head << ' ' << f.a << ' ';
      render_rec(*f.kids[0], os);
      os << ')';
      return;
    }
  }
}

}  // namespace

FormulaPtr parse_formula(std::string_view text, const Alphabet& alphabet,
                         const ParseOptions& opts) {
  Parser p{text, 0, alphabet, opts};
  auto f = p.formula();
  if (!p.at_end()) p.fail("trailing input after formula");
  return f;
}

std::string render_formula(const Formula& f) {
  std::ostringstream os;
  render_rec(f, os);
  return os.str();
}

}  // namespace msou
