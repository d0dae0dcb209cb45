// Acceptance gate: one line per criterion, PASS or FAIL, nonzero exit on any
// failure.  Each criterion is self-contained and reports its runtime.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <future>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "msou/eval.hpp"
#include "msou/minsky.hpp"
#include "msou/reduction.hpp"
#include "msou/sexpr.hpp"
#include "msou/tree.hpp"
#include "msou/vecseq.hpp"
#include "msou/word.hpp"

using namespace msou;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

// ---------------------------------------------------------------------------
// 1. Codec exactness.

std::optional<int> word_rule_lca(const WordPrefix& w, std::size_t px, std::size_t py) {
  int min_between = w.alphabet.size + 1;
  for (std::size_t p = px + 1; p < py; ++p) min_between = std::min(min_between, w.letters[p]);
  if (min_between == 1) return std::nullopt;
  return std::min(min_between - 1, w.alphabet.size - 1);
}

template <typename Fn>
void for_all_words(int n, std::size_t max_len, Fn&& fn) {
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<int> letters(len, 1);
    while (true) {
      fn(letters);
      std::size_t k = len;
      bool done = true;
      while (k-- > 0) {
        if (letters[k] < n) {
          ++letters[k];
          std::fill(letters.begin() + static_cast<std::ptrdiff_t>(k) + 1, letters.end(), 1);
          done = false;
          break;
        }
        if (k == 0) break;
      }
      if (done) break;
    }
  }
}

TreeNode random_tree_node(std::mt19937& rng, int depth, int n, std::size_t& leaves_left) {
  TreeNode node;
  if (depth == n) {
    if (leaves_left > 0) --leaves_left;
    return node;
  }
  std::size_t degree = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  for (std::size_t i = 0; i < degree && (i == 0 || leaves_left > 0); ++i)
    node.children.push_back(random_tree_node(rng, depth + 1, n, leaves_left));
  return node;
}

Outcome criterion_codec() {
  std::size_t rule_checks = 0;
  bool ok = true;
  for_all_words(3, 8, [&](const std::vector<int>& letters) {
    if (!ok) return;
    if (letters.front() != 1) return;
    if (std::find(letters.begin(), letters.end(), 3) == letters.end()) return;
    WordPrefix w{{3}, letters};
    TreeSeq t = decode_tree_sequence(w);
    std::vector<std::size_t> leaves;
    for (std::size_t p = 0; p < letters.size(); ++p)
      if (letters[p] == 3) leaves.push_back(p);
    for (std::size_t i = 0; i < leaves.size() && ok; ++i)
      for (std::size_t j = i + 1; j < leaves.size() && ok; ++j) {
        if (lca_depth(t, i, j) != word_rule_lca(w, leaves[i], leaves[j])) ok = false;
        ++rule_checks;
      }
  });
  if (!ok) return {false, "leaf-pair ancestor rule violated"};

  std::mt19937 rng(20240824);
  for (int i = 0; i < 1000; ++i) {
    TreeSeq t;
    t.depth = 2 + static_cast<int>(rng() % 3);
    std::size_t leaves_left = 25;
    std::size_t trees = 1 + rng() % 4;
    for (std::size_t k = 0; k < trees && (k == 0 || leaves_left > 0); ++k)
      t.trees.push_back(random_tree_node(rng, 1, t.depth, leaves_left));
    if (!same_shape(t, decode_tree_sequence(encode_tree_sequence(t))))
      return {false, "decode(encode(t)) changed shape"};
  }
  std::ostringstream os;
  os << rule_checks << " leaf pairs + 1000 random round trips";
  return {true, os.str()};
}

// ---------------------------------------------------------------------------
// 2. Building-block equivalence (exhaustive at length <= 8).

Outcome criterion_blocks() {
  std::vector<CheckedBlock> all;
  for (int n : {3, 4})
    for (CheckedBlock& cb : checked_blocks(n)) all.push_back(std::move(cb));

  std::vector<std::future<std::size_t>> jobs;
  for (const CheckedBlock& cb : all)
    jobs.push_back(std::async(std::launch::async, [&cb]() {
      EvalBudget b;
      return exhaustive_check(*cb.formula, cb.oracle, cb.alphabet_size, 8, b, cb.options)
          .size();
    }));

  std::ostringstream bad;
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::size_t disagreements = jobs[i].get();
    if (disagreements > 0)
      bad << ' ' << all[i].name << "(n=" << all[i].alphabet_size << "):" << disagreements;
  }
  if (!bad.str().empty()) return {false, "disagreements:" + bad.str()};
  std::ostringstream os;
  os << all.size() << " blocks, 0 disagreements";
  return {true, os.str()};
}

// ---------------------------------------------------------------------------
// 3. End-to-end witness soundness + mutation localization.

const char* kSampleMachines[] = {
    // inc-inc-zerotest sample
    "states: q0 q1 q2 qf\ninit: q0\nfinal: qf\n"
    "trans: q0 inc1 q1\ntrans: q1 inc1 q2\ntrans: q2 zero2 qf\n",
    "states: q0 q1 q2 qf\ninit: q0\nfinal: qf\n"
    "trans: q0 inc2 q1\ntrans: q1 dec2 q2\ntrans: q2 zero1 qf\n",
    "states: q0 q1 q2 q3 qf\ninit: q0\nfinal: qf\n"
    "trans: q0 inc1 q1\ntrans: q1 inc2 q2\ntrans: q2 dec1 q3\ntrans: q3 zero1 qf\n",
    "states: q0 q1 qf\ninit: q0\nfinal: qf\n"
    "trans: q0 inc1 q1\ntrans: q1 zero2 qf\n",
    "states: q0 q1 q2 q3 q4 qf\ninit: q0\nfinal: qf\n"
    "trans: q0 inc1 q1\ntrans: q1 inc1 q2\ntrans: q2 dec1 q3\n"
    "trans: q3 dec1 q4\ntrans: q4 zero1 qf\n",
};

Outcome criterion_witness() {
  for (const char* text : kSampleMachines) {
    MinskyMachine m = parse_machine(text);
    auto run = find_accepting_run(m, 16, 16);
    if (!run) return {false, "sample machine lost its accepting run"};
    for (std::size_t trees : {5u, 10u, 20u}) {
      WitnessParams p;
      p.description = describe_run(*run);
      p.tree_count = trees;
      TreeSeq direct = witness_tree_sequence(p);
      // Through the word: generate, encode, decode, check.
      TreeSeq t = decode_tree_sequence(encode_tree_sequence(direct));
      if (!check_conditions(t, m, 0).all())
        return {false, "clean witness rejected (T=" + std::to_string(trees) + ")"};

      // Mutation: drop one depth-3 node from the highest-degree child of
      // the last tree; only condition (c) may flip.
      TreeSeq mutated = t;
      auto& children = mutated.trees.back().children;
      auto widest = std::max_element(
          children.begin(), children.end(),
          [](const TreeNode& a, const TreeNode& b) {
            return a.children.size() < b.children.size();
          });
      if (widest->children.size() < 2) return {false, "degenerate sample description"};
      widest->children.pop_back();
      ConditionReport rep = check_conditions(mutated, m, 0);
      if (rep.children_uniform || !rep.degrees_grow || !rep.roots_uniform || !rep.run_valid)
        return {false, "mutation did not flip exactly condition (c)"};
    }
  }
  return {true, "5 machines x T in {5,10,20}, clean + mutated"};
}

// ---------------------------------------------------------------------------
// 4. Refutation at bound.

// Sound exhaustive search: a description validates true iff its pair chain is
// forward-feasible from (0,0) and ends with the final state reachable.  The
// DFS enumerates exactly the forward-feasible chains (empty reachable sets
// cannot revive), so finding none with the final state refutes all
// descriptions within the bounds.
bool exists_valid_description(const MinskyMachine& m, std::uint64_t max_entry,
                              std::size_t max_pairs, std::vector<std::uint64_t>& desc,
                              const std::set<std::string>& reachable) {
  if (desc.size() >= 2 && reachable.count(m.final) &&
      validate_description(m, desc))  // cross-check the DFS against the real validator
    return true;
  if (desc.size() / 2 >= max_pairs) return false;
  std::uint64_t a = desc[desc.size() - 2], b = desc[desc.size() - 1];
  // Candidate next pairs grouped by successor counters.
  std::set<std::pair<std::uint64_t, std::uint64_t>> nexts;
  for (const auto& t : m.transitions) {
    if (!reachable.count(t.from)) continue;
    Configuration c{t.from, a, b};
    for (const auto& succ : step(m, c))
      if (succ.c1 <= max_entry && succ.c2 <= max_entry) nexts.insert({succ.c1, succ.c2});
  }
  for (const auto& [a2, b2] : nexts) {
    std::set<std::string> next_states;
    for (const auto& t : m.transitions) {
      if (!reachable.count(t.from)) continue;
      std::uint64_t c1 = a, c2 = b;
      Configuration c{t.from, c1, c2};
      for (const auto& succ : step(m, c))
        if (succ.c1 == a2 && succ.c2 == b2) next_states.insert(succ.state);
    }
    if (next_states.empty()) continue;
    desc.push_back(a2);
    desc.push_back(b2);
    if (exists_valid_description(m, max_entry, max_pairs, desc, next_states)) return true;
    desc.pop_back();
    desc.pop_back();
  }
  return false;
}

Outcome criterion_refutation() {
  const char* machines[] = {
      "states: q0 qf\ninit: q0\nfinal: qf\ntrans: q0 inc1 q0\n",
      "states: q0 q1 qf\ninit: q0\nfinal: qf\ntrans: q0 inc1 q1\ntrans: q1 zero1 qf\n",
      "states: q0 qf\ninit: q0\nfinal: qf\ntrans: q0 dec1 qf\n",
  };
  for (const char* text : machines) {
    MinskyMachine m = parse_machine(text);
    if (find_accepting_run(m, 6, 4)) return {false, "machine unexpectedly has a run"};
    std::vector<std::uint64_t> desc{0, 0};
    if (validate_description(m, desc) ||
        exists_valid_description(m, 4, 6, desc, {m.initial}))
      return {false, "a description validated despite no run"};
    // Cross-check the pruned search against naive enumeration at tiny bounds.
    std::vector<std::uint64_t> naive(6, 0);
    while (true) {
      if (naive[0] == 0 && naive[1] == 0 && validate_description(m, naive))
        return {false, "naive enumeration found a valid description"};
      std::size_t i = naive.size();
      bool done = true;
      while (i-- > 0) {
        if (naive[i] < 2) {
          ++naive[i];
          std::fill(naive.begin() + static_cast<std::ptrdiff_t>(i) + 1, naive.end(), 0);
          done = false;
          break;
        }
        if (i == 0) break;
      }
      if (done) break;
    }
  }
  return {true, "3 machines, entries <= 4, length <= 12: all descriptions false"};
}

// ---------------------------------------------------------------------------
// 5. Dimension-gap falsification at d=2.

Outcome criterion_dim_gap() {
  for (std::uint64_t s : {3u, 4u}) {
    VectorWindow f = identity_grid_window(2, s);
    for (auto& v : f.vectors)
      for (auto& x : v) x *= s;  // nonzero entries now exceed B' = s-1
    EquivParams p{0, s - 1};
    std::size_t positions = f.length();
    // Every 1-dimensional coordinate-projection candidate.
    for (std::uint64_t mask = 0; mask < (1ull << positions); ++mask) {
      VectorWindow g;
      for (std::size_t i = 0; i < positions; ++i)
        g.vectors.push_back({f.vectors[i][(mask >> i) & 1]});
      MixResult r = is_window_mix(f, g, p, 1ull << 26);
      if (r.is_mix)
        return {false, "a 1-dimensional projection claimed to be a mix (s=" +
                           std::to_string(s) + ")"};
      if (!r.counterexample) return {false, "missing counterexample selection"};
    }
  }
  return {true, "s=3: 512 candidates, s=4: 65536 candidates, all refuted"};
}

// ---------------------------------------------------------------------------
// 6. Pointwise-min domination.

Outcome criterion_min_dominate() {
  const EquivParams p{3, 50};
  std::mt19937 rng(6071);
  std::uniform_int_distribution<std::uint64_t> hv(0, 200), fv(50, 200);
  for (int i = 0; i < 1000; ++i) {
    std::size_t len = 1 + rng() % 12;
    NumberWindow h(len), f(len);
    for (auto& x : h) x = hv(rng);
    for (auto& x : f) x = fv(rng);  // f >= B' everywhere
    NumberWindow g = min_dominate(h, f);
    for (std::size_t k = 0; k < len; ++k)
      if (g[k] > f[k]) return {false, "min_dominate not pointwise <= f"};
    if (!window_equiv(g, h, p)) return {false, "min_dominate lost equivalence with h"};
  }
  return {true, "1000 random windows, 0 failures"};
}

// ---------------------------------------------------------------------------
// 7. Minsky round trip on random machines.

Outcome criterion_minsky_roundtrip() {
  std::mt19937 rng(777);
  int with_runs = 0, attempts = 0;
  while (with_runs < 100 && attempts < 20000) {
    ++attempts;
    MinskyMachine m;
    std::size_t ns = 2 + rng() % 4;  // <= 5 states
    for (std::size_t i = 0; i < ns; ++i) m.states.push_back("s" + std::to_string(i));
    m.initial = m.states[0];
    m.final = m.states[ns - 1];
    std::size_t nt = 1 + rng() % 8;  // <= 8 transitions
    for (std::size_t i = 0; i < nt; ++i)
      m.transitions.push_back({m.states[rng() % ns], static_cast<CounterOp>(rng() % 6),
                               m.states[rng() % ns]});
    auto run = find_accepting_run(m, 10, 6);
    if (!run) continue;
    ++with_runs;
    if (!validate_description(m, describe_run(*run)))
      return {false, "describe_run output failed validation"};
  }
  if (with_runs < 100) return {false, "could not find 100 machines with runs"};
  return {true, "100 machines with runs, all descriptions validate"};
}

// ---------------------------------------------------------------------------
// 8. Compiler determinism and affine scaling.

Outcome criterion_compiler() {
  const char* text =
      "states: q0 q1 q2 qf\ninit: q0\nfinal: qf\n"
      "trans: q0 inc1 q1\ntrans: q1 inc1 q2\ntrans: q2 zero2 qf\n";
  MinskyMachine m3 = parse_machine(text);
  if (render_formula(machine_to_formula(m3)) !=
      render_formula(machine_to_formula(parse_machine(text))))
    return {false, "recompilation is not byte-identical"};

  // Fixed state set; transition multiset scaled x2 and x4.
  MinskyMachine m6 = m3, m12 = m3;
  for (const auto& t : m3.transitions) m6.transitions.push_back(t);
  for (int rep = 0; rep < 3; ++rep)
    for (const auto& t : m3.transitions) m12.transitions.push_back(t);

  auto size_of = [](const MinskyMachine& m) { return analyze(*machine_to_formula(m)).size; };
  std::size_t s3 = size_of(m3), s6 = size_of(m6), s12 = size_of(m12);
  // Affine fit through (3,s3) and (6,s6) must hit (12,s12) with residual 0.
  if (s6 <= s3 || s12 - s6 != 2 * (s6 - s3))
    return {false, "sizes not affine in transition count"};
  std::ostringstream os;
  os << "sizes " << s3 << "/" << s6 << "/" << s12 << ", affine residual 0";
  return {true, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {"codec exactness", criterion_codec},
      {"building-block equivalence", criterion_blocks},
      {"witness soundness", criterion_witness},
      {"refutation at bound", criterion_refutation},
      {"dimension-gap falsification", criterion_dim_gap},
      {"min-domination equivalence", criterion_min_dominate},
      {"minsky description round-trip", criterion_minsky_roundtrip},
      {"compiler determinism and scaling", criterion_compiler},
  };

  bool all_ok = true;
  int idx = 0;
  for (const auto& c : criteria) {
    ++idx;
    auto start = std::chrono::steady_clock::now();
    Outcome o = c.fn();
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %d %s: %s (%.1fs)\n", o.ok ? "PASS" : "FAIL", idx, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.ok) all_ok = false;
  }
  return all_ok ? 0 : 1;
}
