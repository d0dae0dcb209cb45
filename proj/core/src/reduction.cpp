#include "msou/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace msou {

namespace blocks {

namespace {

// Helper variable distinct from the caller's variables.  The generators in
// this module never use z-prefixed names, so shadowing cannot capture.
std::string pick_var(std::initializer_list<std::string> used) {
  static const char* candidates[] = {"za", "zb", "zc", "zd", "ze", "zf"};
  for (const char* c : candidates) {
    bool clash = false;
    for (const auto& u : used)
      if (u == c) clash = true;
    if (!clash) return c;
  }
  throw std::logic_error("pick_var: helper variables exhausted");
}

FormulaPtr label_at_most(int i, const std::string& z) {
  std::vector<FormulaPtr> alts;
  for (int k = 1; k <= i; ++k) alts.push_back(label(k, z));
  return disj(std::move(alts));
}

void check_depth(int n, int i) {
  if (i < 1 || i >= n)
    throw std::invalid_argument("block depth " + std::to_string(i) +
                                " out of range 1.." + std::to_string(n - 1));
}

}  // namespace

FormulaPtr lt(const std::string& x, const std::string& y) {
  return mk_and({leq(x, y), neg(leq(y, x))});
}

FormulaPtr eq_pos(const std::string& x, const std::string& y) {
  return mk_and({leq(x, y), leq(y, x)});
}

FormulaPtr is_leaf(int n, const std::string& x) { return label(n, x); }

FormulaPtr same_block(int n, int i, const std::string& x, const std::string& y) {
  check_depth(n, i);
  std::string z = pick_var({x, y});
  return forall_pos(
      z, implies(mk_or({mk_and({lt(x, z), lt(z, y)}), mk_and({lt(y, z), lt(z, x)})}),
                 neg(label_at_most(i, z))));
}

FormulaPtr block_leader(int n, int i, const std::string& x) {
  check_depth(n, i);
  std::string y = pick_var({x});
  return mk_and({is_leaf(n, x),
                 neg(exists_pos(y, mk_and({lt(y, x), is_leaf(n, y), same_block(n, i, y, x)})))});
}

FormulaPtr first_child(int n, const std::string& x) {
  std::string y = pick_var({x});
  return mk_and({block_leader(n, 2, x),
                 neg(exists_pos(y, mk_and({block_leader(n, 2, y), same_block(n, 1, y, x),
                                           lt(y, x)})))});
}

FormulaPtr next_sibling(int n, const std::string& x, const std::string& y) {
  std::string z = pick_var({x, y});
  return mk_and({block_leader(n, 2, x), block_leader(n, 2, y), same_block(n, 1, x, y),
                 lt(x, y), neg(same_block(n, 2, x, y)),
                 neg(exists_pos(z, mk_and({block_leader(n, 2, z), same_block(n, 1, x, z),
                                           lt(x, z), lt(z, y)})))});
}

FormulaPtr last_child(int n, const std::string& x) {
  std::string y = pick_var({x});
  return mk_and({block_leader(n, 2, x), neg(exists_pos(y, next_sibling(n, x, y)))});
}

FormulaPtr infinite_set(const std::string& X) {
  std::string x = "za", y = "zb";
  return forall_pos(x, exists_pos(y, mk_and({lt(x, y), in(y, X)})));
}

FormulaPtr within_one_block(int n, int i, const std::string& X) {
  std::string x = "za", y = "zb";
  return forall_pos(
      x, forall_pos(y, implies(mk_and({in(x, X), in(y, X)}), same_block(n, i, x, y))));
}

FormulaPtr exactly_one_leader_per_tree(int n, const std::string& X) {
  std::string x = "za", y = "zb", z = "zc";
  return forall_pos(
      x, implies(block_leader(n, 1, x),
                 exists_pos(y, mk_and({in(y, X), same_block(n, 1, x, y), block_leader(n, 2, y),
                                       forall_pos(z, implies(mk_and({in(z, X),
                                                                     same_block(n, 1, x, z)}),
                                                             eq_pos(z, y)))}))));
}

FormulaPtr depth2_degree_one(int n, const std::string& x) {
  std::string y = pick_var({x});
  std::string y2 = pick_var({x, y});
  return forall_pos(
      y, forall_pos(y2, implies(mk_and({is_leaf(n, y), is_leaf(n, y2), same_block(n, 2, x, y),
                                        same_block(n, 2, x, y2)}),
                                same_block(n, 3, y, y2))));
}

}  // namespace blocks

// ---------------------------------------------------------------------------
// Builder machinery for the U-level constructions.

namespace {

using UnaryPred = std::function<FormulaPtr(const std::string&)>;

// Fresh-variable source.  Numbering is sequential per top-level build, which
// makes compiler output deterministic.
class FB {
 public:
  explicit FB(int n) : n_(n) {}
  int n() const { return n_; }
  std::string pos() { return "u" + std::to_string(pc_++); }
  std::string set() { return "V" + std::to_string(sc_++); }

 private:
  int n_;
  int pc_ = 0;
  int sc_ = 0;
};

void check_external_name(const std::string& name) {
  if (name.size() >= 2 && (name[0] == 'V' || name[0] == 'u') &&
      name.find_first_not_of("0123456789", 1) == std::string::npos)
    throw std::invalid_argument("variable name '" + name +
                                "' collides with generated variables");
}

FormulaPtr falsum(FB& fb) {
  std::string x = fb.pos();
  return exists_pos(x, neg(leq(x, x)));
}

FormulaPtr infinitely_many_ones(FB& fb) {
  std::string x = fb.pos(), y = fb.pos();
  return forall_pos(x, exists_pos(y, mk_and({blocks::lt(x, y), label(1, y)})));
}

FormulaPtr subset_pred(FB& fb, const std::string& X, const UnaryPred& pred) {
  std::string x = fb.pos();
  return forall_pos(x, implies(in(x, X), pred(x)));
}

// All but finitely many members of X satisfy pred.
FormulaPtr ae_pred(FB& fb, const std::string& X, const UnaryPred& pred) {
  std::string x0 = fb.pos(), x = fb.pos();
  return exists_pos(x0, forall_pos(x, implies(mk_and({in(x, X), leq(x0, x)}), pred(x))));
}

FormulaPtr ae_in(FB& fb, const std::string& X, const std::string& S) {
  return ae_pred(fb, X, [&](const std::string& x) { return in(x, S); });
}

FormulaPtr ae_not_in(FB& fb, const std::string& X, const std::string& S) {
  return ae_pred(fb, X, [&](const std::string& x) { return neg(in(x, S)); });
}

// Two leaves lie in distinct depth-cb sub-blocks.
FormulaPtr distinct_sub(FB& fb, int cb, const std::string& z, const std::string& z2) {
  if (cb == fb.n()) return neg(blocks::eq_pos(z, z2));
  return neg(blocks::same_block(fb.n(), cb, z, z2));
}

// z lies in a sub-block that was not removed (no member of R leads it).
FormulaPtr kept_child(FB& fb, int cb, const std::string& exclude, const std::string& z) {
  std::string r = fb.pos();
  return neg(exists_pos(
      r, mk_and({in(r, exclude), blocks::same_block(fb.n(), cb, r, z)})));
}

// "For every infinite set of depth-t nodes, their degrees are unbounded":
// the U-rendering of the degree of depth-t nodes tending to infinity.
FormulaPtr tends_to_infinity(FB& fb, int t, const UnaryPred* restrict_node = nullptr) {
  const int n = fb.n();
  std::string X = fb.set(), Y = fb.set();
  std::string x = fb.pos(), y = fb.pos();
  UnaryPred member = [&](const std::string& v) {
    std::vector<FormulaPtr> parts{blocks::block_leader(n, t, v)};
    if (restrict_node) parts.push_back((*restrict_node)(v));
    return conj(std::move(parts));
  };
  FormulaPtr big_in_one_node = exists_pos(
      x, mk_and({in(x, X),
                 forall_pos(y, implies(in(y, Y),
                                       mk_and({blocks::is_leaf(n, y),
                                               blocks::same_block(n, t, x, y)})))}));
  return forall_set(
      X, implies(mk_and({subset_pred(fb, X, member), blocks::infinite_set(X)}),
                 unbounded(Y, big_in_one_node)));
}

// Degrees of the kept depth-rb nodes are bounded: one cannot find
// arbitrarily large leaf sets inside one kept node meeting pairwise
// distinct depth-cb sub-blocks.
FormulaPtr bounded_degree(FB& fb, const UnaryPred& keep, int rb, int cb,
                          const std::string& exclude) {
  const int n = fb.n();
  std::string Z = fb.set();
  std::string x = fb.pos(), z = fb.pos(), z2 = fb.pos();
  FormulaPtr membership = forall_pos(
      z, implies(in(z, Z),
                 conj([&] {
                   std::vector<FormulaPtr> parts{blocks::is_leaf(n, z),
                                                 blocks::same_block(n, rb, x, z)};
                   if (!exclude.empty()) parts.push_back(kept_child(fb, cb, exclude, z));
                   return parts;
                 }())));
  FormulaPtr pairwise = forall_pos(
      z, forall_pos(z2, implies(mk_and({in(z, Z), in(z2, Z), neg(blocks::eq_pos(z, z2))}),
                                distinct_sub(fb, cb, z, z2))));
  return neg(unbounded(Z, exists_pos(x, mk_and({keep(x), membership, pairwise}))));
}

// G encodes a pointwise-dominated value choice: a set of leaves inside the
// blocks of roots from A (kept sub-blocks only).
FormulaPtr g_encoding(FB& fb, const std::string& G, const std::string& A, int rb, int cb,
                      const std::string& exclude) {
  const int n = fb.n();
  std::string z = fb.pos(), a = fb.pos();
  return forall_pos(
      z, implies(in(z, G),
                 conj([&] {
                   std::vector<FormulaPtr> parts{
                       blocks::is_leaf(n, z),
                       exists_pos(a, mk_and({in(a, A), blocks::same_block(n, rb, a, z)}))};
                   if (!exclude.empty()) parts.push_back(kept_child(fb, cb, exclude, z));
                   return parts;
                 }())));
}

// SEL picks exactly one kept depth-cb sub-block per root from A, by leader.
FormulaPtr sel_encoding(FB& fb, const std::string& sel, const std::string& A, int rb, int cb,
                        const std::string& exclude) {
  const int n = fb.n();
  std::string s = fb.pos(), s2 = fb.pos(), a = fb.pos(), a2 = fb.pos();
  FormulaPtr members_ok = forall_pos(
      s, implies(in(s, sel),
                 conj([&] {
                   std::vector<FormulaPtr> parts{
                       blocks::block_leader(n, cb, s),
                       exists_pos(a, mk_and({in(a, A), blocks::same_block(n, rb, a, s)}))};
                   if (!exclude.empty()) parts.push_back(neg(in(s, exclude)));
                   return parts;
                 }())));
  FormulaPtr coverage = forall_pos(
      a2, implies(in(a2, A),
                  exists_pos(s, mk_and({in(s, sel), blocks::same_block(n, rb, a2, s)}))));
  FormulaPtr at_most_one = forall_pos(
      a2, forall_pos(
              s, forall_pos(
                     s2, implies(mk_and({in(a2, A), in(s, sel), in(s2, sel),
                                         blocks::same_block(n, rb, a2, s),
                                         blocks::same_block(n, rb, a2, s2)}),
                                 cb == n ? blocks::eq_pos(s, s2)
                                         : blocks::same_block(n, cb, s, s2)))));
  return mk_and({members_ok, coverage, at_most_one});
}

// The number sequence (|G ∩ selected sub-block|) is bounded over the roots
// indexed by S.
FormulaPtr bounded_on(FB& fb, const std::string& G, const std::string& sel,
                      const std::string& S, int rb, int cb) {
  const int n = fb.n();
  std::string Z = fb.set();
  std::string a = fb.pos(), s = fb.pos(), z = fb.pos();
  return neg(unbounded(
      Z, exists_pos(
             a, exists_pos(
                    s, mk_and({in(a, S), in(s, sel), blocks::same_block(n, rb, a, s),
                               forall_pos(z, implies(in(z, Z),
                                                     mk_and({in(z, G),
                                                             blocks::same_block(n, cb, s,
                                                                                z)})))})))));
}

// Same, over the B-root that immediately follows an S-root (alternation
// pairs the i-th roots of the two sides).
FormulaPtr bounded_on_next(FB& fb, const std::string& B, const std::string& G,
                           const std::string& sel, const std::string& S, int rb, int cb) {
  const int n = fb.n();
  std::string Z = fb.set();
  std::string a = fb.pos(), b = fb.pos(), b2 = fb.pos(), s = fb.pos(), z = fb.pos();
  FormulaPtr b_is_next =
      mk_and({in(b, B), blocks::lt(a, b),
              neg(exists_pos(b2, mk_and({in(b2, B), blocks::lt(a, b2), blocks::lt(b2, b)})))});
  return neg(unbounded(
      Z,
      exists_pos(
          a, exists_pos(
                 b, exists_pos(
                        s, mk_and({in(a, S), b_is_next, in(s, sel),
                                   blocks::same_block(n, rb, b, s),
                                   forall_pos(z, implies(in(z, Z),
                                                         mk_and({in(z, G),
                                                                 blocks::same_block(
                                                                     n, cb, s, z)})))}))))));
}

// Dimension comparison between the child-degree vectors over
// alternating root sets A and B: some dominated value choice over A, with a
// coordinate selection, is asymptotically inequivalent to every choice and
// selection over B.
FormulaPtr dim_gap(FB& fb, const std::string& A, const std::string& B, int rb, int cb,
                   const std::string& exclude) {
  std::string G1 = fb.set(), sel1 = fb.set();
  std::string G2 = fb.set(), sel2 = fb.set();
  std::string S = fb.set();
  FormulaPtr equiv = forall_set(
      S, implies(mk_and({subset_pred(fb, S, [&](const std::string& x) { return in(x, A); }),
                         blocks::infinite_set(S)}),
                 iff(bounded_on(fb, G1, sel1, S, rb, cb),
                     bounded_on_next(fb, B, G2, sel2, S, rb, cb))));
  return exists_set(
      G1, exists_set(
              sel1, mk_and({g_encoding(fb, G1, A, rb, cb, exclude),
                            sel_encoding(fb, sel1, A, rb, cb, exclude),
                            forall_set(
                                G2, forall_set(
                                        sel2,
                                        implies(mk_and({g_encoding(fb, G2, B, rb, cb, exclude),
                                                        sel_encoding(fb, sel2, B, rb, cb,
                                                                     exclude)}),
                                                neg(equiv))))})));
}

// Every two members of X are separated by a member of Y.
FormulaPtr separated(FB& fb, const std::string& X, const std::string& Y) {
  std::string x = fb.pos(), x2 = fb.pos(), y = fb.pos();
  return forall_pos(
      x, forall_pos(
             x2, implies(mk_and({in(x, X), in(x2, X), blocks::lt(x, x2)}),
                         exists_pos(y, mk_and({in(y, Y), blocks::lt(x, y),
                                               blocks::lt(y, x2)})))));
}

FormulaPtr alternating(FB& fb, const UnaryPred& keep, const std::string& A,
                       const std::string& B) {
  return mk_and({subset_pred(fb, A, keep), subset_pred(fb, B, keep),
                 blocks::infinite_set(A), blocks::infinite_set(B), separated(fb, A, B),
                 separated(fb, B, A)});
}

// "All but finitely many kept depth-rb nodes have the same degree", counted
// in depth-cb sub-blocks: bounded degrees plus nonexistence of alternating
// sets exhibiting a dimension gap.
FormulaPtr almost_const(FB& fb, const UnaryPred& keep, int rb, int cb,
                        const std::string& exclude = {}) {
  std::string A = fb.set(), B = fb.set();
  return mk_and(
      {bounded_degree(fb, keep, rb, cb, exclude),
       neg(exists_set(A, exists_set(B, mk_and({alternating(fb, keep, A, B),
                                               dim_gap(fb, A, B, rb, cb, exclude)}))))});
}

// The selector property: X holds exactly one depth-2 leader per tree, and
// the restriction to nodes with an X-sibling to the right is a well-formed
// sequence of almost constant degree.
FormulaPtr selector_core(FB& fb, const std::string& X) {
  const int n = fb.n();
  UnaryPred x_left = [&fb, &X, n](const std::string& z) {
    std::string u = fb.pos();
    return mk_and({blocks::block_leader(n, 2, z),
                   exists_pos(u, mk_and({in(u, X), blocks::lt(z, u),
                                         blocks::same_block(n, 1, z, u),
                                         neg(blocks::same_block(n, 2, z, u))}))});
  };
  UnaryPred under_x_left = [&fb, &x_left, n](const std::string& z) {
    std::string k = fb.pos();
    return exists_pos(k, mk_and({x_left(k), blocks::same_block(n, 2, k, z)}));
  };
  return mk_and({subset_pred(fb, X,
                             [n](const std::string& x) {
                               return blocks::block_leader(n, 2, x);
                             }),
                 blocks::exactly_one_leader_per_tree(n, X),
                 tends_to_infinity(fb, 3, &under_x_left),
                 almost_const(fb, x_left, 2, 3)});
}

FormulaPtr zero_core(FB& fb, const std::string& X) {
  const int n = fb.n();
  std::string x0 = fb.pos(), x = fb.pos();
  return exists_pos(
      x0, forall_pos(x, implies(mk_and({in(x, X), leq(x0, x), blocks::block_leader(n, 2, x)}),
                                blocks::depth2_degree_one(n, x))));
}

// Y increments X: remove one depth-3 subtree of every Y node; the combined
// restriction then has almost constant degree.
FormulaPtr increment_core(FB& fb, const std::string& X, const std::string& Y) {
  const int n = fb.n();
  std::string R = fb.set();
  std::string r = fb.pos(), r2 = fb.pos(), y = fb.pos();
  UnaryPred keep_xy = [&X, &Y, n](const std::string& v) {
    return mk_and({blocks::block_leader(n, 2, v), mk_or({in(v, X), in(v, Y)})});
  };
  FormulaPtr r_members = forall_pos(
      r, implies(in(r, R),
                 mk_and({blocks::block_leader(n, 3, r),
                         exists_pos(y, mk_and({in(y, Y), blocks::same_block(n, 2, y, r)}))})));
  FormulaPtr one_per_y = forall_pos(
      y, implies(mk_and({in(y, Y), blocks::block_leader(n, 2, y)}),
                 exists_pos(
                     r, mk_and({in(r, R), blocks::same_block(n, 2, y, r),
                                forall_pos(r2, implies(mk_and({in(r2, R),
                                                               blocks::same_block(n, 2, y, r2)}),
                                                       blocks::same_block(n, 3, r, r2)))}))));
  return exists_set(
      R, mk_and({r_members, one_per_y, almost_const(fb, keep_xy, 2, 3, R)}));
}

FormulaPtr same_core(FB& fb, const std::string& X, const std::string& Y) {
  const int n = fb.n();
  UnaryPred keep_xy = [&X, &Y, n](const std::string& v) {
    return mk_and({blocks::block_leader(n, 2, v), mk_or({in(v, X), in(v, Y)})});
  };
  return almost_const(fb, keep_xy, 2, 3);
}

}  // namespace

// ---------------------------------------------------------------------------
// Tree-side oracles for the U-free building blocks.  Each checker decodes
// the word and answers from the tree structure; disagreement with the
// formula under the brute-force evaluator flags a bug on one of the sides.

namespace {

struct LeafView {
  TreeSeq seq;
  // Leaf-order index per leaf, with its tree index and root-to-leaf child
  // path; word position -> leaf index.
  std::vector<std::pair<std::size_t, std::vector<int>>> paths;
  std::map<std::size_t, std::size_t> leaf_of_pos;
};

void collect_leaf_paths(const TreeNode& node, std::size_t tree_idx, std::vector<int>& prefix,
                        LeafView& v) {
  if (node.children.empty()) {
    if (node.word_pos)
      v.leaf_of_pos[static_cast<std::size_t>(*node.word_pos)] = v.paths.size();
    v.paths.emplace_back(tree_idx, prefix);
    return;
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    prefix.push_back(static_cast<int>(i));
    collect_leaf_paths(node.children[i], tree_idx, prefix, v);
    prefix.pop_back();
  }
}

LeafView make_view(const WordPrefix& w) {
  LeafView v;
  v.seq = decode_tree_sequence(w);
  std::vector<int> prefix;
  for (std::size_t i = 0; i < v.seq.trees.size(); ++i)
    collect_leaf_paths(v.seq.trees[i], i, prefix, v);
  return v;
}

std::size_t leaf_at(const LeafView& v, const Assignment& a, const std::string& var) {
  return v.leaf_of_pos.at(a.positions.at(var));
}

bool view_same_block(const LeafView& v, int i, std::size_t la, std::size_t lb) {
  if (la == lb) return true;
  const auto& [ta, pa] = v.paths[la];
  const auto& [tb, pb] = v.paths[lb];
  if (ta != tb) return false;
  std::size_t c = 0;
  while (c < pa.size() && c < pb.size() && pa[c] == pb[c]) ++c;
  return static_cast<int>(c) + 1 >= i;
}

// Blocks are contiguous in leaf order, so leadership is a property of the
// immediate predecessor.
bool view_leader(const LeafView& v, int i, std::size_t l) {
  if (l == 0) return true;
  return !view_same_block(v, i, l - 1, l);
}

std::vector<std::size_t> leaf_members(const LeafView& v, const Assignment& a,
                                      const std::string& var) {
  std::vector<std::size_t> out;
  for (std::size_t p : a.sets.at(var)) out.push_back(v.leaf_of_pos.at(p));
  return out;
}

ParseOptions pos_frees(std::initializer_list<std::string> names) {
  ParseOptions o;
  o.free_position_vars = names;
  return o;
}

ParseOptions set_frees(std::initializer_list<std::string> names) {
  ParseOptions o;
  o.free_set_vars = names;
  return o;
}

}  // namespace

std::vector<CheckedBlock> checked_blocks(int alphabet_size) {
  const int n = alphabet_size;
  if (n < 3) throw std::invalid_argument("checked_blocks: alphabet size must be >= 3");

  CheckOptions leaf_pair;
  leaf_pair.decodable_words_only = true;
  leaf_pair.positions_over_leaves_only = true;
  CheckOptions leaf_set;
  leaf_set.decodable_words_only = true;
  leaf_set.sets_over_leaves_only = true;
  CheckOptions any_pos;
  any_pos.decodable_words_only = true;

  std::vector<CheckedBlock> out;

  out.push_back({"is_leaf", n, blocks::is_leaf(n, "x"), pos_frees({"x"}),
                 [n](const WordPrefix& w, const Assignment& a) {
                   return w.letters[a.positions.at("x")] == n;
                 },
                 any_pos});

  for (int i = 1; i < n; ++i) {
    out.push_back({"same_block_" + std::to_string(i), n, blocks::same_block(n, i, "x", "y"),
                   pos_frees({"x", "y"}),
                   [i](const WordPrefix& w, const Assignment& a) {
                     LeafView v = make_view(w);
                     return view_same_block(v, i, leaf_at(v, a, "x"), leaf_at(v, a, "y"));
                   },
                   leaf_pair});
    out.push_back({"block_leader_" + std::to_string(i), n, blocks::block_leader(n, i, "x"),
                   pos_frees({"x"}),
                   [i](const WordPrefix& w, const Assignment& a) {
                     LeafView v = make_view(w);
                     return view_leader(v, i, leaf_at(v, a, "x"));
                   },
                   leaf_pair});
  }

  out.push_back({"first_child", n, blocks::first_child(n, "x"), pos_frees({"x"}),
                 [](const WordPrefix& w, const Assignment& a) {
                   LeafView v = make_view(w);
                   std::size_t l = leaf_at(v, a, "x");
                   return view_leader(v, 2, l) && v.paths[l].second[0] == 0;
                 },
                 leaf_pair});

  out.push_back({"last_child", n, blocks::last_child(n, "x"), pos_frees({"x"}),
                 [](const WordPrefix& w, const Assignment& a) {
                   LeafView v = make_view(w);
                   std::size_t l = leaf_at(v, a, "x");
                   const auto& [tree, path] = v.paths[l];
                   int degree = static_cast<int>(v.seq.trees[tree].children.size());
                   return view_leader(v, 2, l) && path[0] == degree - 1;
                 },
                 leaf_pair});

  out.push_back({"next_sibling", n, blocks::next_sibling(n, "x", "y"), pos_frees({"x", "y"}),
                 [](const WordPrefix& w, const Assignment& a) {
                   LeafView v = make_view(w);
                   std::size_t lx = leaf_at(v, a, "x"), ly = leaf_at(v, a, "y");
                   const auto& [tx, px] = v.paths[lx];
                   const auto& [ty, py] = v.paths[ly];
                   return view_leader(v, 2, lx) && view_leader(v, 2, ly) && tx == ty &&
                          py[0] == px[0] + 1;
                 },
                 leaf_pair});

  for (int i = 1; i < n; ++i) {
    out.push_back({"within_one_block_" + std::to_string(i), n,
                   blocks::within_one_block(n, i, "X"), set_frees({"X"}),
                   [i](const WordPrefix& w, const Assignment& a) {
                     LeafView v = make_view(w);
                     auto members = leaf_members(v, a, "X");
                     for (std::size_t p = 0; p < members.size(); ++p)
                       for (std::size_t q = p + 1; q < members.size(); ++q)
                         if (!view_same_block(v, i, members[p], members[q])) return false;
                     return true;
                   },
                   leaf_set});
  }

  out.push_back({"exactly_one_leader_per_tree", n, blocks::exactly_one_leader_per_tree(n, "X"),
                 set_frees({"X"}),
                 [](const WordPrefix& w, const Assignment& a) {
                   LeafView v = make_view(w);
                   auto members = leaf_members(v, a, "X");
                   std::vector<std::size_t> per_tree(v.seq.trees.size(), 0);
                   bool leaders_ok = true;
                   for (std::size_t l : members) {
                     ++per_tree[v.paths[l].first];
                     if (!view_leader(v, 2, l)) leaders_ok = false;
                   }
                   for (std::size_t c : per_tree)
                     if (c != 1) return false;
                   return leaders_ok;
                 },
                 leaf_set});

  if (n >= 4) {
    out.push_back({"depth2_degree_one", n, blocks::depth2_degree_one(n, "x"),
                   pos_frees({"x"}),
                   [](const WordPrefix& w, const Assignment& a) {
                     LeafView v = make_view(w);
                     std::size_t l = leaf_at(v, a, "x");
                     const auto& [tree, path] = v.paths[l];
                     return v.seq.trees[tree].children[path[0]].children.size() == 1;
                   },
                   leaf_pair});
  }

  return out;
}

// ---------------------------------------------------------------------------
// Public builders.

FormulaPtr ruler_formula() {
  FB fb(3);
  UnaryPred roots = [](const std::string& x) { return blocks::block_leader(3, 1, x); };
  return mk_and({infinitely_many_ones(fb), tends_to_infinity(fb, 2),
                 almost_const(fb, roots, 1, 2)});
}

FormulaPtr selector_formula(const std::string& X) {
  check_external_name(X);
  FB fb(4);
  return selector_core(fb, X);
}

FormulaPtr zero_formula(const std::string& X) {
  check_external_name(X);
  FB fb(4);
  return zero_core(fb, X);
}

FormulaPtr increment_formula(const std::string& X, const std::string& Y) {
  check_external_name(X);
  check_external_name(Y);
  FB fb(4);
  return increment_core(fb, X, Y);
}

FormulaPtr same_degree_formula(const std::string& X, const std::string& Y) {
  check_external_name(X);
  check_external_name(Y);
  FB fb(4);
  return same_core(fb, X, Y);
}

namespace {

void validate_machine(const MinskyMachine& m) {
  if (m.states.empty()) throw std::invalid_argument("machine: no states");
  std::set<std::string> seen;
  for (const auto& s : m.states)
    if (!seen.insert(s).second)
      throw std::invalid_argument("machine: duplicate state '" + s + "'");
  if (!seen.count(m.initial) || !seen.count(m.final))
    throw std::invalid_argument("machine: initial/final state not declared");
  for (const auto& t : m.transitions)
    if (!seen.count(t.from) || !seen.count(t.to))
      throw std::invalid_argument("machine: transition endpoint not declared");
}

}  // namespace

FormulaPtr machine_to_formula(const MinskyMachine& m) {
  validate_machine(m);
  FB fb(4);
  const int n = 4;

  auto sel = [&fb](const std::string& X) { return selector_core(fb, X); };
  // Y follows X: in a.e. tree, the Y-choice is the next sibling of the
  // X-choice.
  auto consecutive = [&fb, n](const std::string& X, const std::string& Y) {
    std::string x0 = fb.pos(), x = fb.pos(), y = fb.pos();
    return exists_pos(
        x0, forall_pos(
                x, forall_pos(y, implies(mk_and({leq(x0, x), in(x, X), in(y, Y),
                                                 blocks::same_block(n, 1, x, y)}),
                                         blocks::next_sibling(n, x, y)))));
  };

  // Guessed structure: parity of child offsets and one set per state, made
  // disjoint through prefix unions.
  std::string parity = fb.set();
  std::vector<std::string> state_set, prefix_set;
  std::map<std::string, std::size_t> state_idx;
  for (std::size_t i = 0; i < m.states.size(); ++i) {
    state_idx[m.states[i]] = i;
    state_set.push_back(fb.set());
  }
  for (std::size_t i = 0; i < m.states.size(); ++i) prefix_set.push_back(fb.set());

  std::vector<FormulaPtr> parts;

  {
    std::string x = fb.pos();
    parts.push_back(forall_pos(x, implies(blocks::first_child(n, x), in(x, parity))));
  }
  {
    std::string x = fb.pos(), y = fb.pos();
    FormulaPtr alternate =
        mk_or({mk_and({in(x, parity), neg(in(y, parity))}),
               mk_and({neg(in(x, parity)), in(y, parity)})});
    parts.push_back(
        forall_pos(x, forall_pos(y, implies(blocks::next_sibling(n, x, y), alternate))));
  }
  {
    std::string x = fb.pos();
    parts.push_back(forall_pos(x, iff(in(x, prefix_set[0]), in(x, state_set[0]))));
    for (std::size_t j = 1; j < m.states.size(); ++j) {
      std::string xj = fb.pos();
      parts.push_back(forall_pos(
          xj, iff(in(xj, prefix_set[j]),
                  mk_or({in(xj, prefix_set[j - 1]), in(xj, state_set[j])}))));
      std::string xk = fb.pos();
      parts.push_back(
          forall_pos(xk, implies(in(xk, state_set[j]), neg(in(xk, prefix_set[j - 1])))));
    }
  }
  {
    // State labels sit on depth-2 leaders, and a.e. every odd-offset child
    // carries one.
    std::string x = fb.pos();
    parts.push_back(forall_pos(
        x, implies(in(x, prefix_set.back()), blocks::block_leader(n, 2, x))));
    std::string x0 = fb.pos(), x1 = fb.pos();
    parts.push_back(exists_pos(
        x0, forall_pos(x1, implies(mk_and({leq(x0, x1), in(x1, parity),
                                           blocks::block_leader(n, 2, x1)}),
                                   in(x1, prefix_set.back())))));
  }

  const std::string& init_set = state_set[state_idx[m.initial]];
  const std::string& final_set = state_set[state_idx[m.final]];

  {
    // Initial configuration: both counters at zero, state label initial.
    std::string X1 = fb.set(), X2 = fb.set();
    UnaryPred first = [n](const std::string& v) { return blocks::first_child(n, v); };
    parts.push_back(forall_set(
        X1, implies(mk_and({sel(X1), ae_pred(fb, X1, first)}),
                    mk_and({zero_core(fb, X1), ae_in(fb, X1, init_set),
                            forall_set(X2, implies(mk_and({sel(X2), consecutive(X1, X2)}),
                                                   zero_core(fb, X2)))}))));
  }
  {
    // Final configuration: the last child closes an even-offset pair whose
    // state label is final.
    std::string Y1 = fb.set(), Y2 = fb.set();
    UnaryPred last = [n](const std::string& v) { return blocks::last_child(n, v); };
    parts.push_back(forall_set(
        Y1, forall_set(
                Y2, implies(mk_and({sel(Y1), sel(Y2), consecutive(Y1, Y2),
                                    ae_pred(fb, Y2, last)}),
                            mk_and({ae_in(fb, Y1, parity), ae_in(fb, Y1, final_set),
                                    ae_not_in(fb, Y2, parity)})))));
  }
  {
    // Step rule: any four consecutive selectors starting at an odd offset
    // must realize one of the machine's transitions.
    std::string X1 = fb.set(), X2 = fb.set(), Y1 = fb.set(), Y2 = fb.set();
    std::vector<FormulaPtr> options;
    for (const auto& t : m.transitions) {
      const std::string& from_set = state_set[state_idx[t.from]];
      const std::string& to_set = state_set[state_idx[t.to]];
      FormulaPtr counters;
      switch (t.op) {
        case CounterOp::Inc1:
          counters = mk_and({increment_core(fb, X1, Y1), same_core(fb, X2, Y2)});
          break;
        case CounterOp::Inc2:
          counters = mk_and({same_core(fb, X1, Y1), increment_core(fb, X2, Y2)});
          break;
        case CounterOp::Dec1:
          counters = mk_and({increment_core(fb, Y1, X1), same_core(fb, X2, Y2)});
          break;
        case CounterOp::Dec2:
          counters = mk_and({same_core(fb, X1, Y1), increment_core(fb, Y2, X2)});
          break;
        case CounterOp::Zero1:
          counters = mk_and({zero_core(fb, X1), zero_core(fb, Y1), same_core(fb, X2, Y2)});
          break;
        case CounterOp::Zero2:
          counters = mk_and({zero_core(fb, X2), zero_core(fb, Y2), same_core(fb, X1, Y1)});
          break;
      }
      options.push_back(
          mk_and({ae_in(fb, X1, from_set), ae_in(fb, Y1, to_set), counters}));
    }
    FormulaPtr body = options.empty() ? falsum(fb) : disj(std::move(options));
    parts.push_back(forall_set(
        X1,
        forall_set(
            X2,
            forall_set(
                Y1, forall_set(
                        Y2, implies(mk_and({sel(X1), sel(X2), sel(Y1), sel(Y2),
                                            consecutive(X1, X2), consecutive(X2, Y1),
                                            consecutive(Y1, Y2), ae_in(fb, X1, parity)}),
                                    body))))));
  }

  FormulaPtr guessed = conj(std::move(parts));
  for (std::size_t j = prefix_set.size(); j-- > 0;) guessed = exists_set(prefix_set[j], guessed);
  for (std::size_t j = state_set.size(); j-- > 0;) guessed = exists_set(state_set[j], guessed);
  guessed = exists_set(parity, guessed);

  UnaryPred roots = [](const std::string& x) { return blocks::block_leader(4, 1, x); };

  std::string C = fb.set();
  FormulaPtr condition_c = forall_set(
      C, implies(selector_core(fb, C),
                 almost_const(fb,
                              [&C](const std::string& v) {
                                return mk_and({blocks::block_leader(4, 2, v), in(v, C)});
                              },
                              2, 3)));

  return mk_and({infinitely_many_ones(fb),
                 tends_to_infinity(fb, 3),
                 // flattening: depth-1 degrees counted through depth-2
                 // sub-blocks with leaf-count values
                 almost_const(fb, roots, 1, 2),
                 condition_c,
                 guessed});
}

// ---------------------------------------------------------------------------
// Witness generation and condition checking.

TreeSeq witness_tree_sequence(const WitnessParams& p) {
  if (p.description.size() < 2 || p.description.size() % 2 != 0)
    throw std::invalid_argument("witness: description must have even length >= 2");
  if (p.tree_count < 1) throw std::invalid_argument("witness: tree count must be >= 1");
  auto growth = p.growth ? p.growth
                         : [](std::size_t t) { return static_cast<std::uint64_t>(t) + 1; };
  std::uint64_t prev = 0;
  for (std::size_t t = 1; t <= p.tree_count; ++t) {
    std::uint64_t g = growth(t);
    if (g < 1 || (t > 1 && g <= prev))
      throw std::invalid_argument("witness: growth function must be strictly increasing");
    prev = g;
  }

  TreeSeq out;
  out.depth = 4;
  for (std::size_t t = 1; t <= p.tree_count; ++t) {
    TreeNode root;
    for (std::uint64_t entry : p.description) {
      TreeNode child;
      for (std::uint64_t i = 0; i < entry + 1; ++i) {
        TreeNode mid;
        mid.children.resize(static_cast<std::size_t>(growth(t)));
        child.children.push_back(std::move(mid));
      }
      root.children.push_back(std::move(child));
    }
    out.trees.push_back(std::move(root));
  }
  validate_tree_seq(out);
  return out;
}

namespace {

int majority(const std::vector<int>& values) {
  std::map<int, int> counts;
  for (int v : values) ++counts[v];
  int best = values.front(), best_count = 0;
  for (const auto& [v, c] : counts)
    if (c > best_count) {  // map order: ties resolve to the smallest value
      best = v;
      best_count = c;
    }
  return best;
}

}  // namespace

ConditionReport check_conditions(const TreeSeq& t, const MinskyMachine& m,
                                 std::size_t ignore_prefix) {
  if (t.depth != 4)
    throw std::invalid_argument("check_conditions: depth-4 tree sequence required");
  if (t.trees.empty() || ignore_prefix >= t.trees.size())
    throw std::invalid_argument("check_conditions: ignore_prefix must leave at least one tree");
  validate_tree_seq(t);

  ConditionReport rep;
  for (const auto& root : t.trees) {
    TreeDegreeStats s;
    s.root_degree = static_cast<int>(root.children.size());
    s.depth3_min = -1;
    for (const auto& child : root.children) {
      s.child_degrees.push_back(static_cast<int>(child.children.size()));
      for (const auto& mid : child.children) {
        int d = static_cast<int>(mid.children.size());
        if (s.depth3_min < 0 || d < s.depth3_min) s.depth3_min = d;
        if (d > s.depth3_max) s.depth3_max = d;
      }
    }
    rep.per_tree.push_back(std::move(s));
  }

  const std::size_t first = ignore_prefix, count = t.trees.size();

  // (a) growth proxy: degrees nondecreasing from tree to tree, and the last
  // minimum strictly above the first.
  rep.degrees_grow = true;
  for (std::size_t i = first; i + 1 < count; ++i)
    if (rep.per_tree[i].depth3_max > rep.per_tree[i + 1].depth3_min) rep.degrees_grow = false;
  if (rep.per_tree[count - 1].depth3_min < rep.per_tree[first].depth3_min + 1)
    rep.degrees_grow = false;

  // (b) equal root degrees.
  rep.roots_uniform = true;
  for (std::size_t i = first; i < count; ++i)
    if (rep.per_tree[i].root_degree != rep.per_tree[first].root_degree)
      rep.roots_uniform = false;

  // (c) equal per-offset depth-2 degrees.
  rep.children_uniform = true;
  for (std::size_t i = first; i < count; ++i)
    if (rep.per_tree[i].child_degrees != rep.per_tree[first].child_degrees)
      rep.children_uniform = false;

  // (d) recover the description by per-offset majority and validate it.
  std::vector<int> root_degrees;
  for (std::size_t i = first; i < count; ++i) root_degrees.push_back(rep.per_tree[i].root_degree);
  int d = majority(root_degrees);
  for (int offset = 0; offset < d; ++offset) {
    std::vector<int> degs;
    for (std::size_t i = first; i < count; ++i)
      if (offset < rep.per_tree[i].root_degree)
        degs.push_back(rep.per_tree[i].child_degrees[offset]);
    rep.recovered.push_back(static_cast<std::uint64_t>(majority(degs) - 1));
  }
  rep.run_valid = rep.recovered.size() >= 2 && rep.recovered.size() % 2 == 0 &&
                  validate_description(m, rep.recovered);
  return rep;
}

std::string report_to_json(const ConditionReport& r) {
  nlohmann::json j;
  j["a"] = r.degrees_grow;
  j["b"] = r.roots_uniform;
  j["c"] = r.children_uniform;
  j["d"] = r.run_valid;
  j["all"] = r.all();
  j["per_tree"] = nlohmann::json::array();
  for (const auto& s : r.per_tree)
    j["per_tree"].push_back({{"root_degree", s.root_degree},
                             {"child_degrees", s.child_degrees},
                             {"depth3_min", s.depth3_min},
                             {"depth3_max", s.depth3_max}});
  j["recovered_description"] = r.recovered;
  return j.dump();
}

}  // namespace msou
