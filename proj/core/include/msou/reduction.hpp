#pragma once

// Formula builders for the word-as-tree-sequence encoding, the
// machine-to-formula compiler, witness generation, and direct semantic
// checkers for the four witness conditions.
//
// Node encoding convention: a depth-i tree node is represented by the block
// of word positions of its leaves; statements about degrees become
// statements about counts of sub-blocks, with unboundedness expressed via U
// over sets containing at most one leaf per sub-block.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "msou/eval.hpp"
#include "msou/formula.hpp"
#include "msou/minsky.hpp"
#include "msou/sexpr.hpp"
#include "msou/tree.hpp"

namespace msou {

// Reusable subformulas over the word signature.  All are U-free; most are
// first-order.  Leaves are the positions labeled n.
namespace blocks {

FormulaPtr lt(const std::string& x, const std::string& y);
FormulaPtr eq_pos(const std::string& x, const std::string& y);
FormulaPtr is_leaf(int n, const std::string& x);
// No position strictly between x and y has a label in {1..i}; for leaves
// this is "same depth-i node".
FormulaPtr same_block(int n, int i, const std::string& x, const std::string& y);
// x is the first leaf of its depth-i block.
FormulaPtr block_leader(int n, int i, const std::string& x);
// x is the leader of the first / last depth-2 child of its tree.
FormulaPtr first_child(int n, const std::string& x);
FormulaPtr last_child(int n, const std::string& x);
// x, y lead adjacent sibling depth-2 blocks.
FormulaPtr next_sibling(int n, const std::string& x, const std::string& y);
FormulaPtr infinite_set(const std::string& X);
// All members of X lie in one depth-i block.
FormulaPtr within_one_block(int n, int i, const std::string& X);
// Every tree contains exactly one member of X, a depth-2 leader.
FormulaPtr exactly_one_leader_per_tree(int n, const std::string& X);
// The depth-2 block led by x has exactly one depth-3 sub-block.
FormulaPtr depth2_degree_one(int n, const std::string& x);

}  // namespace blocks

// A U-free building block paired with its TreeSeq-based checker, for the
// exhaustive cross-check harness.
struct CheckedBlock {
  std::string name;
  int alphabet_size = 3;
  FormulaPtr formula;
  ParseOptions frees;
  DirectPredicate oracle;
  CheckOptions options;
};

std::vector<CheckedBlock> checked_blocks(int alphabet_size);

// Closed formula over {1,2,3} whose intended models are the words with
// infinitely many 1's whose trees have depth-2 degrees tending to infinity
// and almost-constant depth-1 degree.
FormulaPtr ruler_formula();

// Free variable X; X is a depth-2 selector (exactly one child per tree,
// almost always at a fixed offset).  Alphabet {1,2,3,4}.
FormulaPtr selector_formula(const std::string& X);

// First-order; selector X represents counter value zero (a.e. degree one).
FormulaPtr zero_formula(const std::string& X);

// Selector Y increments selector X (a.e. degree of Y = degree of X + 1).
FormulaPtr increment_formula(const std::string& X, const std::string& Y);

// A.e. equal degrees of selectors X and Y.
FormulaPtr same_degree_formula(const std::string& X, const std::string& Y);

// Closed formula over {1,2,3,4}: conjunction of the four witness conditions
// for the given machine.  Deterministic; size affine in the transition list
// for a fixed state count.
FormulaPtr machine_to_formula(const MinskyMachine& m);

struct WitnessParams {
  RunDescription description;                       // even length 2k, k >= 1
  std::size_t tree_count = 1;                       // T >= 1
  // Depth-3 degree of every node in the t-th tree (1-based); must be
  // strictly increasing.  Default: t + 1.
  std::function<std::uint64_t(std::size_t)> growth;
};

// T depth-4 trees: every root has degree |description|, the i-th child has
// degree description[i] + 1, every depth-3 node of tree t has degree g(t).
TreeSeq witness_tree_sequence(const WitnessParams& p);

struct TreeDegreeStats {
  int root_degree = 0;
  std::vector<int> child_degrees;  // depth-2 degrees, child order
  int depth3_min = 0;
  int depth3_max = 0;
};

struct ConditionReport {
  bool degrees_grow = false;      // (a) depth-3 growth across trees
  bool roots_uniform = false;     // (b) equal root degrees
  bool children_uniform = false;  // (c) equal per-offset depth-2 degrees
  bool run_valid = false;         // (d) recovered description accepted
  std::vector<TreeDegreeStats> per_tree;
  RunDescription recovered;

  bool all() const { return degrees_grow && roots_uniform && children_uniform && run_valid; }
};

// Trees before ignore_prefix are exempt ("all but finitely many" at window
// scale).  Requires a depth-4 sequence and ignore_prefix < tree count.
ConditionReport check_conditions(const TreeSeq& t, const MinskyMachine& m,
                                 std::size_t ignore_prefix);

std::string report_to_json(const ConditionReport& r);

}  // namespace msou
