#include "msou/formula.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace msou {

bool is_position_var(const std::string& name) {
  return !name.empty() && name[0] >= 'a' && name[0] <= 'z';
}

bool is_set_var(const std::string& name) {
  return !name.empty() && name[0] >= 'A' && name[0] <= 'Z';
}

namespace {

FormulaPtr node(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

FormulaPtr leq(std::string x, std::string y) {
  require(is_position_var(x) && is_position_var(y), "leq: position variables expected");
  return node({Kind::LessEq, 0, std::move(x), std::move(y), {}});
}

FormulaPtr label(int letter, std::string x) {
  require(letter >= 1, "label: letter must be positive");
  require(is_position_var(x), "label: position variable expected");
  return node({Kind::Label, letter, std::move(x), {}, {}});
}

FormulaPtr in(std::string x, std::string set_var) {
  require(is_position_var(x), "in: position variable expected");
  require(is_set_var(set_var), "in: set variable expected");
  return node({Kind::In, 0, std::move(x), std::move(set_var), {}});
}

FormulaPtr neg(FormulaPtr f) {
  require(f != nullptr, "neg: null formula");
  return node({Kind::Not, 0, {}, {}, {std::move(f)}});
}

FormulaPtr mk_and(std::vector<FormulaPtr> fs) {
  require(fs.size() >= 2, "and: at least two conjuncts");
  return node({Kind::And, 0, {}, {}, std::move(fs)});
}

FormulaPtr mk_or(std::vector<FormulaPtr> fs) {
  require(fs.size() >= 2, "or: at least two disjuncts");
  return node({Kind::Or, 0, {}, {}, std::move(fs)});
}

FormulaPtr implies(FormulaPtr f, FormulaPtr g) {
  require(f && g, "implies: null formula");
  return node({Kind::Implies, 0, {}, {}, {std::move(f), std::move(g)}});
}

namespace {

FormulaPtr quantifier(Kind k, std::string v, FormulaPtr body, bool set_sort) {
  require(body != nullptr, "quantifier: null body");
  if (set_sort)
    require(is_set_var(v), "quantifier: set variable expected");
  else
    require(is_position_var(v), "quantifier: position variable expected");
  return node({k, 0, std::move(v), {}, {std::move(body)}});
}

}  // namespace

FormulaPtr exists_pos(std::string x, FormulaPtr body) {
  return quantifier(Kind::ExistsPos, std::move(x), std::move(body), false);
}
FormulaPtr forall_pos(std::string x, FormulaPtr body) {
  return quantifier(Kind::ForallPos, std::move(x), std::move(body), false);
}
FormulaPtr exists_set(std::string X, FormulaPtr body) {
  return quantifier(Kind::ExistsSet, std::move(X), std::move(body), true);
}
FormulaPtr forall_set(std::string X, FormulaPtr body) {
  return quantifier(Kind::ForallSet, std::move(X), std::move(body), true);
}
FormulaPtr unbounded(std::string X, FormulaPtr body) {
  return quantifier(Kind::Unbounded, std::move(X), std::move(body), true);
}

FormulaPtr conj(std::vector<FormulaPtr> fs) {
  require(!fs.empty(), "conj: at least one conjunct");
  if (fs.size() == 1) return fs[0];
  return mk_and(std::move(fs));
}

FormulaPtr disj(std::vector<FormulaPtr> fs) {
  require(!fs.empty(), "disj: at least one disjunct");
  if (fs.size() == 1) return fs[0];
  return mk_or(std::move(fs));
}

FormulaPtr iff(FormulaPtr f, FormulaPtr g) {
  return mk_and({implies(f, g), implies(g, f)});
}

bool equal(const Formula& f, const Formula& g) {
  if (f.kind != g.kind || f.letter != g.letter || f.a != g.a || f.b != g.b ||
      f.kids.size() != g.kids.size())
    return false;
  for (std::size_t i = 0; i < f.kids.size(); ++i)
    if (!equal(*f.kids[i], *g.kids[i])) return false;
  return true;
}

bool equal(const FormulaPtr& f, const FormulaPtr& g) {
  if (f == g) return true;
  if (!f || !g) return false;
  return equal(*f, *g);
}

namespace {

void analyze_rec(const Formula& f, Analysis& out, std::size_t qdepth,
                 std::vector<std::string>& bound_pos, std::vector<std::string>& bound_set) {
  out.size += 1;
  out.quantifier_depth = std::max(out.quantifier_depth, qdepth);
  auto pos_free = [&](const std::string& v) {
    if (std::find(bound_pos.begin(), bound_pos.end(), v) == bound_pos.end())
      out.free_position_vars.insert(v);
  };
  auto set_free = [&](const std::string& v) {
    if (std::find(bound_set.begin(), bound_set.end(), v) == bound_set.end())
      out.free_set_vars.insert(v);
  };
  switch (f.kind) {
    case Kind::LessEq:
      pos_free(f.a);
      pos_free(f.b);
      break;
    case Kind::Label:
      pos_free(f.a);
      break;
    case Kind::In:
      pos_free(f.a);
      set_free(f.b);
      break;
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      for (const auto& k : f.kids) analyze_rec(*k, out, qdepth, bound_pos, bound_set);
      break;
    case Kind::ExistsPos:
    case Kind::ForallPos:
      bound_pos.push_back(f.a);
      analyze_rec(*f.kids[0], out, qdepth + 1, bound_pos, bound_set);
      bound_pos.pop_back();
      break;
    case Kind::ExistsSet:
    case Kind::ForallSet:
    case Kind::Unbounded:
      bound_set.push_back(f.a);
      analyze_rec(*f.kids[0], out, qdepth + 1, bound_pos, bound_set);
      bound_set.pop_back();
      break;
  }
}

}  // namespace

Analysis analyze(const Formula& f) {
  Analysis out;
  std::vector<std::string> bp, bs;
  analyze_rec(f, out, 0, bp, bs);
  return out;
}

bool is_u_free(const Formula& f) {
  if (f.kind == Kind::Unbounded) return false;
  for (const auto& k : f.kids)
    if (!is_u_free(*k)) return false;
  return true;
}

bool is_first_order(const Formula& f) {
  switch (f.kind) {
    case Kind::ExistsSet:
    case Kind::ForallSet:
    case Kind::Unbounded:
      return false;
    default:
      break;
  }
  for (const auto& k : f.kids)
    if (!is_first_order(*k)) return false;
  return true;
}

std::set<int> letters_used(const Formula& f) {
  std::set<int> out;
  if (f.kind == Kind::Label) out.insert(f.letter);
  for (const auto& k : f.kids) {
    auto sub = letters_used(*k);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

}  // namespace msou
