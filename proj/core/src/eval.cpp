#include "msou/eval.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace msou {

namespace {

// Compiled node.  Position variables index pos_env, set variables set_env.
struct CNode {
  Kind kind;
  int letter = 0;
  int slot_a = -1;  // LessEq/Label/In: position slot; quantifiers: bound slot
  int slot_b = -1;  // LessEq: second position slot; In: set slot
  std::vector<CNode> kids;
};

struct CompileCtx {
  std::vector<std::string> pos_names;  // slot -> name (free first, then bound)
  std::vector<std::string> set_names;
  std::vector<std::string> free_pos;
  std::vector<std::string> free_set;
  std::size_t max_set_depth;

  int pos_slot(const std::string& name, const std::vector<int>& scope) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (pos_names[*it] == name) return *it;
    // free occurrence
    for (std::size_t i = 0; i < pos_names.size(); ++i)
      if (pos_names[i] == name) return static_cast<int>(i);
    pos_names.push_back(name);
    free_pos.push_back(name);
    return static_cast<int>(pos_names.size()) - 1;
  }

  int set_slot(const std::string& name, const std::vector<int>& scope) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (set_names[*it] == name) return *it;
    for (std::size_t i = 0; i < set_names.size(); ++i)
      if (set_names[i] == name) return static_cast<int>(i);
    set_names.push_back(name);
    free_set.push_back(name);
    return static_cast<int>(set_names.size()) - 1;
  }
};

CNode compile(const Formula& f, CompileCtx& ctx, std::vector<int>& pos_scope,
              std::vector<int>& set_scope, std::size_t set_depth) {
  CNode out;
  out.kind = f.kind;
  out.letter = f.letter;
  switch (f.kind) {
    case Kind::LessEq:
      out.slot_a = ctx.pos_slot(f.a, pos_scope);
      out.slot_b = ctx.pos_slot(f.b, pos_scope);
      break;
    case Kind::Label:
      out.slot_a = ctx.pos_slot(f.a, pos_scope);
      break;
    case Kind::In:
      out.slot_a = ctx.pos_slot(f.a, pos_scope);
      out.slot_b = ctx.set_slot(f.b, set_scope);
      break;
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      for (const auto& k : f.kids)
        out.kids.push_back(compile(*k, ctx, pos_scope, set_scope, set_depth));
      break;
    case Kind::ExistsPos:
    case Kind::ForallPos: {
      ctx.pos_names.push_back(f.a);
      int slot = static_cast<int>(ctx.pos_names.size()) - 1;
      out.slot_a = slot;
      pos_scope.push_back(slot);
      out.kids.push_back(compile(*f.kids[0], ctx, pos_scope, set_scope, set_depth));
      pos_scope.pop_back();
      break;
    }
    case Kind::ExistsSet:
    case Kind::ForallSet:
    case Kind::Unbounded: {
      if (set_depth + 1 > ctx.max_set_depth)
        throw BudgetExceeded("evaluate: set-quantifier nesting exceeds budget");
      ctx.set_names.push_back(f.a);
      int slot = static_cast<int>(ctx.set_names.size()) - 1;
      out.slot_a = slot;
      set_scope.push_back(slot);
      out.kids.push_back(compile(*f.kids[0], ctx, pos_scope, set_scope, set_depth + 1));
      set_scope.pop_back();
      break;
    }
  }
  return out;
}

struct EvalState {
  const std::vector<int>* letters;
  std::size_t len;
  std::uint64_t full_mask;
  std::size_t u_threshold;
  std::vector<std::size_t> pos_env;
  std::vector<std::uint64_t> set_env;
};

bool eval_node(const CNode& f, EvalState& st) {
  switch (f.kind) {
    case Kind::LessEq:
      return st.pos_env[f.slot_a] <= st.pos_env[f.slot_b];
    case Kind::Label:
      return (*st.letters)[st.pos_env[f.slot_a]] == f.letter;
    case Kind::In:
      return (st.set_env[f.slot_b] >> st.pos_env[f.slot_a]) & 1u;
    case Kind::Not:
      return !eval_node(f.kids[0], st);
    case Kind::And:
      for (const auto& k : f.kids)
        if (!eval_node(k, st)) return false;
      return true;
    case Kind::Or:
      for (const auto& k : f.kids)
        if (eval_node(k, st)) return true;
      return false;
    case Kind::Implies:
      return !eval_node(f.kids[0], st) || eval_node(f.kids[1], st);
    case Kind::ExistsPos:
    case Kind::ForallPos: {
      bool want = f.kind == Kind::ExistsPos;
      for (std::size_t p = 0; p < st.len; ++p) {
        st.pos_env[f.slot_a] = p;
        if (eval_node(f.kids[0], st) == want) return want;
      }
      return !want;
    }
    case Kind::ExistsSet:
    case Kind::ForallSet: {
      bool want = f.kind == Kind::ExistsSet;
      for (std::uint64_t m = 0;; ++m) {
        st.set_env[f.slot_a] = m;
        if (eval_node(f.kids[0], st) == want) return want;
        if (m == st.full_mask) break;
      }
      return !want;
    }
    case Kind::Unbounded: {
      for (std::uint64_t m = 0;; ++m) {
        if (static_cast<std::size_t>(std::popcount(m)) >= st.u_threshold) {
          st.set_env[f.slot_a] = m;
          if (eval_node(f.kids[0], st)) return true;
        }
        if (m == st.full_mask) break;
      }
      return false;
    }
  }
  return false;
}

}  // namespace

struct CompiledFormula::Impl {
  CNode root;
  CompileCtx ctx;
  EvalBudget budget;
};

CompiledFormula::CompiledFormula(const Formula& f, const EvalBudget& b)
    : impl_(std::make_unique<Impl>()) {
  if (b.max_word_length > 63)
    throw std::invalid_argument("EvalBudget: max word length capped at 63");
  impl_->budget = b;
  impl_->ctx.max_set_depth = b.max_set_depth;
  std::vector<int> ps, ss;
  impl_->root = compile(f, impl_->ctx, ps, ss, 0);
}

CompiledFormula::~CompiledFormula() = default;
CompiledFormula::CompiledFormula(CompiledFormula&&) noexcept = default;
CompiledFormula& CompiledFormula::operator=(CompiledFormula&&) noexcept = default;

const std::vector<std::string>& CompiledFormula::free_position_vars() const {
  return impl_->ctx.free_pos;
}
const std::vector<std::string>& CompiledFormula::free_set_vars() const {
  return impl_->ctx.free_set;
}

bool CompiledFormula::evaluate(const WordPrefix& w, const Assignment& a) const {
  const auto& b = impl_->budget;
  if (w.letters.empty()) throw std::invalid_argument("evaluate: empty word");
  if (w.letters.size() > b.max_word_length)
    throw BudgetExceeded("evaluate: word length exceeds budget");
  EvalState st;
  st.letters = &w.letters;
  st.len = w.letters.size();
  st.full_mask = st.len >= 64 ? ~0ull : ((1ull << st.len) - 1);
  st.u_threshold = b.u_threshold;
  st.pos_env.assign(impl_->ctx.pos_names.size(), 0);
  st.set_env.assign(impl_->ctx.set_names.size(), 0);
  for (const auto& name : impl_->ctx.free_pos) {
    auto it = a.positions.find(name);
    if (it == a.positions.end())
      throw std::invalid_argument("evaluate: free position variable '" + name + "' unassigned");
    if (it->second >= st.len)
      throw std::invalid_argument("evaluate: position for '" + name + "' beyond word length");
    for (std::size_t i = 0; i < impl_->ctx.pos_names.size(); ++i)
      if (impl_->ctx.pos_names[i] == name) st.pos_env[i] = it->second;
  }
  for (const auto& name : impl_->ctx.free_set) {
    auto it = a.sets.find(name);
    if (it == a.sets.end())
      throw std::invalid_argument("evaluate: free set variable '" + name + "' unassigned");
    std::uint64_t mask = 0;
    for (std::size_t p : it->second) {
      if (p >= st.len)
        throw std::invalid_argument("evaluate: set member for '" + name + "' beyond word length");
      mask |= 1ull << p;
    }
    for (std::size_t i = 0; i < impl_->ctx.set_names.size(); ++i)
      if (impl_->ctx.set_names[i] == name) st.set_env[i] = mask;
  }
  return eval_node(impl_->root, st);
}

bool evaluate(const Formula& f, const WordPrefix& w, const Assignment& a, const EvalBudget& b) {
  return CompiledFormula(f, b).evaluate(w, a);
}

std::vector<Disagreement> exhaustive_check(const Formula& f, const DirectPredicate& oracle,
                                           int alphabet_size, std::size_t max_len,
                                           const EvalBudget& b, const CheckOptions& opts) {
  if (alphabet_size < 1) throw std::invalid_argument("exhaustive_check: alphabet size >= 1");
  if (max_len > b.max_word_length)
    throw BudgetExceeded("exhaustive_check: max_len exceeds evaluation budget");
  CompiledFormula cf(f, b);
  std::vector<Disagreement> out;

  WordPrefix w;
  w.alphabet.size = alphabet_size;

  auto positions_domain = [&](std::vector<std::size_t>& dom) {
    dom.clear();
    for (std::size_t p = 0; p < w.letters.size(); ++p)
      if (!opts.positions_over_leaves_only || w.letters[p] == alphabet_size) dom.push_back(p);
  };

  auto check_word = [&]() {
    if (opts.decodable_words_only) {
      if (w.letters.front() != 1) return;
      if (std::find(w.letters.begin(), w.letters.end(), alphabet_size) == w.letters.end())
        return;
    }
    std::vector<std::size_t> pos_dom;
    positions_domain(pos_dom);
    std::vector<std::size_t> set_dom;
    for (std::size_t p = 0; p < w.letters.size(); ++p)
      if (!opts.sets_over_leaves_only || w.letters[p] == alphabet_size) set_dom.push_back(p);

    const auto& fp = cf.free_position_vars();
    const auto& fs = cf.free_set_vars();
    if (!fp.empty() && pos_dom.empty()) return;

    // Odometer over free position variables and free set subsets.
    std::vector<std::size_t> pos_idx(fp.size(), 0);
    std::vector<std::uint64_t> set_sel(fs.size(), 0);
    std::uint64_t set_limit = 1ull << set_dom.size();

    while (true) {
      Assignment a;
      for (std::size_t i = 0; i < fp.size(); ++i) a.positions[fp[i]] = pos_dom[pos_idx[i]];
      for (std::size_t i = 0; i < fs.size(); ++i) {
        std::vector<std::size_t> members;
        for (std::size_t k = 0; k < set_dom.size(); ++k)
          if ((set_sel[i] >> k) & 1u) members.push_back(set_dom[k]);
        a.sets[fs[i]] = std::move(members);
      }
      bool got = cf.evaluate(w, a);
      bool expected = oracle(w, a);
      if (got != expected) out.push_back({w, a, expected, got});

      // advance
      std::size_t i = 0;
      for (; i < fp.size(); ++i) {
        if (++pos_idx[i] < pos_dom.size()) break;
        pos_idx[i] = 0;
      }
      if (i < fp.size()) continue;
      std::size_t j = 0;
      for (; j < fs.size(); ++j) {
        if (++set_sel[j] < set_limit) break;
        set_sel[j] = 0;
      }
      if (j == fs.size()) break;
    }
  };

  // Words by length, then lexicographically.
  for (std::size_t len = 1; len <= max_len; ++len) {
    w.letters.assign(len, 1);
    while (true) {
      check_word();
      std::size_t i = len;
      while (i-- > 0) {
        if (w.letters[i] < alphabet_size) {
          ++w.letters[i];
          std::fill(w.letters.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.letters.end(), 1);
          break;
        }
        if (i == 0) goto next_len;
      }
    }
  next_len:;
  }
  return out;
}

}  // namespace msou
