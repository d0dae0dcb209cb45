#include "msou/tree.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace msou {

namespace {

void check_node(const TreeNode& node, int depth, int n) {
  if (node.children.empty()) {
    if (depth != n)
      throw std::invalid_argument("leaf at depth " + std::to_string(depth) +
                                  ", expected all leaves at depth " + std::to_string(n));
  } else {
    if (depth >= n)
      throw std::invalid_argument("internal node at depth " + std::to_string(depth) +
                                  " in a depth-" + std::to_string(n) + " tree");
    for (const auto& c : node.children) check_node(c, depth + 1, n);
  }
}

bool same_node(const TreeNode& a, const TreeNode& b) {
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!same_node(a.children[i], b.children[i])) return false;
  return true;
}

void count_leaves(const TreeNode& node, std::size_t& n) {
  if (node.children.empty()) {
    ++n;
    return;
  }
  for (const auto& c : node.children) count_leaves(c, n);
}

}  // namespace

void validate_tree_seq(const TreeSeq& t) {
  if (t.depth < 1) throw std::invalid_argument("tree depth must be >= 1");
  for (const auto& root : t.trees) check_node(root, 1, t.depth);
}

bool same_shape(const TreeSeq& a, const TreeSeq& b) {
  if (a.depth != b.depth || a.trees.size() != b.trees.size()) return false;
  for (std::size_t i = 0; i < a.trees.size(); ++i)
    if (!same_node(a.trees[i], b.trees[i])) return false;
  return true;
}

std::size_t leaf_count(const TreeSeq& t) {
  std::size_t n = 0;
  for (const auto& root : t.trees) count_leaves(root, n);
  return n;
}

TreeSeq decode_tree_sequence(const WordPrefix& w) {
  validate_word(w);
  const int n = w.alphabet.size;
  if (w.letters.empty()) throw std::invalid_argument("decode: empty word");
  if (w.letters.front() != 1) throw std::invalid_argument("decode: word must start with letter 1");

  std::vector<int> leaves;
  for (std::size_t i = 0; i < w.letters.size(); ++i)
    if (w.letters[i] == n) leaves.push_back(static_cast<int>(i));
  if (leaves.empty())
    throw std::invalid_argument("decode: no position labeled " + std::to_string(n));

  struct BNode {
    std::vector<std::unique_ptr<BNode>> kids;
    std::optional<int> pos;
  };
  std::vector<std::unique_ptr<BNode>> roots;
  std::vector<BNode*> path;  // path[k] is the depth-(k+1) node, up to depth n-1

  auto new_tree = [&](int leaf_pos) {
    path.clear();
    roots.push_back(std::make_unique<BNode>());
    BNode* cur = roots.back().get();
    path.push_back(cur);
    for (int d = 2; d <= n - 1; ++d) {
      cur->kids.push_back(std::make_unique<BNode>());
      cur = cur->kids.back().get();
      path.push_back(cur);
    }
    if (n == 1) {
      path.back()->pos = leaf_pos;  // the root itself is the leaf
    } else {
      auto leaf = std::make_unique<BNode>();
      leaf->pos = leaf_pos;
      path.back()->kids.push_back(std::move(leaf));
    }
  };

  auto join = [&](int depth_j, int leaf_pos) {
    // Deepest common ancestor with the previous leaf is at depth_j >= 1.
    path.resize(depth_j);
    BNode* cur = path.back();
    for (int d = depth_j + 1; d <= n - 1; ++d) {
      cur->kids.push_back(std::make_unique<BNode>());
      cur = cur->kids.back().get();
      path.push_back(cur);
    }
    auto leaf = std::make_unique<BNode>();
    leaf->pos = leaf_pos;
    path.back()->kids.push_back(std::move(leaf));
  };

  new_tree(leaves[0]);
  for (std::size_t k = 1; k < leaves.size(); ++k) {
    int min_between = n + 1;
    for (int p = leaves[k - 1] + 1; p < leaves[k]; ++p)
      min_between = std::min(min_between, w.letters[p]);
    // Common ancestor at depth i iff min_between > i; clamp at depth n-1.
    int j = std::min(min_between - 1, n - 1);
    if (j == 0)
      new_tree(leaves[k]);
    else
      join(j, leaves[k]);
  }

  std::function<TreeNode(const BNode&)> convert = [&](const BNode& b) {
    TreeNode out;
    out.word_pos = b.pos;
    out.children.reserve(b.kids.size());
    for (const auto& k : b.kids) out.children.push_back(convert(*k));
    return out;
  };

  TreeSeq t;
  t.depth = n;
  for (const auto& r : roots) t.trees.push_back(convert(*r));
  t.last_tree_incomplete = true;
  validate_tree_seq(t);
  return t;
}

namespace {

void emit_node(const TreeNode& node, int depth, int n, std::vector<int>& out) {
  if (node.children.empty()) {
    out.push_back(n);
    return;
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (i > 0 && depth < n - 1) out.push_back(depth + 1);
    emit_node(node.children[i], depth + 1, n, out);
  }
}

}  // namespace

WordPrefix encode_tree_sequence(const TreeSeq& t) {
  validate_tree_seq(t);
  WordPrefix w;
  w.alphabet.size = t.depth;
  for (const auto& root : t.trees) {
    if (t.depth == 1) {
      w.letters.push_back(1);  // single-letter alphabet: the tree is one leaf
      continue;
    }
    w.letters.push_back(1);
    emit_node(root, 1, t.depth, w.letters);
  }
  return w;
}

namespace {

void collect_degrees(const TreeNode& node, int depth, int k, std::vector<int>& out) {
  if (depth == k) {
    out.push_back(static_cast<int>(node.children.size()));
    return;
  }
  for (const auto& c : node.children) collect_degrees(c, depth + 1, k, out);
}

void collect_paths(const TreeNode& node, std::size_t tree_idx, std::vector<int>& prefix,
                   std::vector<std::pair<std::size_t, std::vector<int>>>& out) {
  if (node.children.empty()) {
    out.emplace_back(tree_idx, prefix);
    return;
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    prefix.push_back(static_cast<int>(i));
    collect_paths(node.children[i], tree_idx, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<int> degree_sequence(const TreeSeq& t, int depth_k) {
  if (depth_k < 1 || depth_k >= t.depth)
    throw std::invalid_argument("degree_sequence: depth " + std::to_string(depth_k) +
                                " out of range 1.." + std::to_string(t.depth - 1));
  std::vector<int> out;
  for (const auto& root : t.trees) collect_degrees(root, 1, depth_k, out);
  return out;
}

std::optional<int> lca_depth(const TreeSeq& t, std::size_t leaf_x, std::size_t leaf_y) {
  std::vector<std::pair<std::size_t, std::vector<int>>> paths;
  std::vector<int> prefix;
  for (std::size_t i = 0; i < t.trees.size(); ++i) collect_paths(t.trees[i], i, prefix, paths);
  if (leaf_x >= paths.size() || leaf_y >= paths.size())
    throw std::invalid_argument("lca_depth: unknown leaf index");
  if (leaf_x == leaf_y) throw std::invalid_argument("lca_depth: leaves must be distinct");
  const auto& [tx, px] = paths[leaf_x];
  const auto& [ty, py] = paths[leaf_y];
  if (tx != ty) return std::nullopt;
  std::size_t c = 0;
  while (c < px.size() && c < py.size() && px[c] == py[c]) ++c;
  return static_cast<int>(c) + 1;
}

namespace {

void render_node_text(const TreeNode& node, int indent, std::ostringstream& os) {
  for (int i = 0; i < indent; ++i) os << "  ";
  os << (node.children.empty() ? "leaf" : "node") << '\n';
  for (const auto& c : node.children) render_node_text(c, indent + 1, os);
}

}  // namespace

std::string render_tree_text(const TreeSeq& t) {
  std::ostringstream os;
  os << "treeseq depth=" << t.depth << '\n';
  for (const auto& root : t.trees) {
    os << "tree\n";
    for (const auto& c : root.children) render_node_text(c, 1, os);
  }
  return os.str();
}

TreeSeq parse_tree_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("tree text: empty input");
  int depth = 0;
  if (sscanf(line.c_str(), "treeseq depth=%d", &depth) != 1 || depth < 1)
    throw std::invalid_argument("tree text: expected header 'treeseq depth=<n>'");

  TreeSeq t;
  t.depth = depth;
  std::vector<TreeNode*> stack;  // stack[k] = open node at indent k (root at 0)

  while (std::getline(is, line)) {
    std::size_t spaces = 0;
    while (spaces < line.size() && line[spaces] == ' ') ++spaces;
    std::string word = line.substr(spaces);
    if (word.empty()) continue;
    if (spaces % 2 != 0) throw std::invalid_argument("tree text: odd indentation");
    std::size_t level = spaces / 2;
    if (word == "tree") {
      if (level != 0) throw std::invalid_argument("tree text: 'tree' must not be indented");
      t.trees.emplace_back();
      stack.assign(1, &t.trees.back());
    } else if (word == "node" || word == "leaf") {
      if (level == 0 || stack.size() < level)
        throw std::invalid_argument("tree text: bad indentation before '" + word + "'");
      stack.resize(level);
      stack.back()->children.emplace_back();
      stack.push_back(&stack.back()->children.back());
    } else {
      throw std::invalid_argument("tree text: unknown line '" + word + "'");
    }
  }
  validate_tree_seq(t);
  return t;
}

namespace {

void render_node_dot(const TreeNode& node, int depth, std::size_t tree_idx, int parent_id,
                     int& next_id, std::ostringstream& os) {
  int id = next_id++;
  os << "  n" << id << " [label=\"";
  if (node.children.empty() && node.word_pos)
    os << "p" << *node.word_pos;
  else
    os << "d" << depth;
  os << "\", tree=" << tree_idx << ", depth=" << depth;
  if (node.children.empty()) os << ", shape=box";
  os << "];\n";
  if (parent_id >= 0) os << "  n" << parent_id << " -> n" << id << ";\n";
  for (const auto& c : node.children) render_node_dot(c, depth + 1, tree_idx, id, next_id, os);
}

}  // namespace

std::string render_tree_dot(const TreeSeq& t) {
  std::ostringstream os;
  os << "digraph treeseq {\n";
  os << "  node [shape=circle];\n";
  int next_id = 0;
  for (std::size_t i = 0; i < t.trees.size(); ++i)
    render_node_dot(t.trees[i], 1, i, -1, next_id, os);
  os << "}\n";
  return os.str();
}

}  // namespace msou
