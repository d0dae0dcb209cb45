#pragma once

// Words over {1..n} viewed as sequences of depth-n trees.  Leaves are the
// positions labeled n; two leaves share an ancestor at depth i iff no
// position strictly between them carries a label in {1..i}; a label 1
// between them puts them in different trees.  Roots are depth-1 nodes and
// all leaves sit at depth n.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msou/word.hpp"

namespace msou {

struct TreeNode {
  std::vector<TreeNode> children;   // empty => leaf
  std::optional<int> word_pos;      // for decoded leaves, the source position
};

struct TreeSeq {
  int depth = 1;                    // leaf depth n; roots are at depth 1
  std::vector<TreeNode> trees;
  // A decoded prefix may have been cut mid-tree; metadata only, never
  // compared by same_shape.
  bool last_tree_incomplete = false;
};

// Structural equality, ignoring word_pos and the incomplete flag.
bool same_shape(const TreeSeq& a, const TreeSeq& b);

// Internal nodes have degree >= 1 and all leaves sit at depth n.
void validate_tree_seq(const TreeSeq& t);

std::size_t leaf_count(const TreeSeq& t);

// Requires: first letter 1, at least one letter n.
TreeSeq decode_tree_sequence(const WordPrefix& w);

// Canonical right inverse of decode: one letter 1 per tree, one separator
// i+1 between consecutive children of a depth-i node (none at leaf level),
// letter n per leaf.  decode(encode(t)) has the same shape as t.
WordPrefix encode_tree_sequence(const TreeSeq& t);

// Degrees of all depth-k nodes, leaf order; requires 1 <= k < depth.
std::vector<int> degree_sequence(const TreeSeq& t, int depth_k);

// Deepest common ancestor depth of the leaves with 0-based leaf-order
// indices x != y, or nullopt when they lie in different trees.
std::optional<int> lca_depth(const TreeSeq& t, std::size_t leaf_x, std::size_t leaf_y);

// Indented text form; parse_tree_text is its inverse.
std::string render_tree_text(const TreeSeq& t);
TreeSeq parse_tree_text(std::string_view text);

// One digraph for the whole sequence; node attributes carry tree index and depth.
std::string render_tree_dot(const TreeSeq& t);

}  // namespace msou
