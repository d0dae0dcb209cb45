#pragma once

// Abstract syntax of MSO+U over the word signature: position order (<=),
// unary letter predicates, and set membership.  Two variable sorts:
// position variables start with a lowercase letter, set variables with an
// uppercase letter.  Nodes are immutable and shared; structural equality
// is literal (alpha-equivalence is not identified).

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace msou {

// Letters are 1..size.
struct Alphabet {
  int size = 1;
};

enum class Kind {
  LessEq,     // (<= x y)
  Label,      // (label k x)
  In,         // (in x X)
  Not,
  And,        // n-ary, >= 2
  Or,         // n-ary, >= 2
  Implies,
  ExistsPos,
  ForallPos,
  ExistsSet,
  ForallSet,
  Unbounded,  // (U X f): f holds for arbitrarily large finite sets X
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Kind kind;
  int letter = 0;   // Label only
  std::string a;    // LessEq/Label/In: position var; quantifiers: bound var
  std::string b;    // LessEq: second position var; In: the set var
  std::vector<FormulaPtr> kids;
};

bool is_position_var(const std::string& name);
bool is_set_var(const std::string& name);

FormulaPtr leq(std::string x, std::string y);
FormulaPtr label(int letter, std::string x);
FormulaPtr in(std::string x, std::string set_var);
FormulaPtr neg(FormulaPtr f);
FormulaPtr mk_and(std::vector<FormulaPtr> fs);   // requires >= 2
FormulaPtr mk_or(std::vector<FormulaPtr> fs);    // requires >= 2
FormulaPtr implies(FormulaPtr f, FormulaPtr g);
FormulaPtr exists_pos(std::string x, FormulaPtr body);
FormulaPtr forall_pos(std::string x, FormulaPtr body);
FormulaPtr exists_set(std::string X, FormulaPtr body);
FormulaPtr forall_set(std::string X, FormulaPtr body);
FormulaPtr unbounded(std::string X, FormulaPtr body);

// conj/disj accept any count >= 1 and pass a single element through unchanged.
FormulaPtr conj(std::vector<FormulaPtr> fs);
FormulaPtr disj(std::vector<FormulaPtr> fs);
FormulaPtr iff(FormulaPtr f, FormulaPtr g);

bool equal(const Formula& f, const Formula& g);
bool equal(const FormulaPtr& f, const FormulaPtr& g);

struct Analysis {
  std::set<std::string> free_position_vars;
  std::set<std::string> free_set_vars;
  std::size_t size = 0;              // node count
  std::size_t quantifier_depth = 0;  // max nesting of quantifiers (incl. U)
};

Analysis analyze(const Formula& f);

// True iff no Unbounded node occurs in f.
bool is_u_free(const Formula& f);
// True iff no set quantifier (ExistsSet/ForallSet/Unbounded) occurs in f.
bool is_first_order(const Formula& f);
// Letters of all Label atoms in f.
std::set<int> letters_used(const Formula& f);

}  // namespace msou
