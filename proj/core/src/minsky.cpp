#include "msou/minsky.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace msou {

namespace {
using json = nlohmann::json;
}

const char* to_string(CounterOp op) {
  switch (op) {
    case CounterOp::Inc1: return "inc1";
    case CounterOp::Inc2: return "inc2";
    case CounterOp::Dec1: return "dec1";
    case CounterOp::Dec2: return "dec2";
    case CounterOp::Zero1: return "zero1";
    case CounterOp::Zero2: return "zero2";
  }
  return "?";
}

std::optional<CounterOp> counter_op_from_string(std::string_view s) {
  if (s == "inc1") return CounterOp::Inc1;
  if (s == "inc2") return CounterOp::Inc2;
  if (s == "dec1") return CounterOp::Dec1;
  if (s == "dec2") return CounterOp::Dec2;
  if (s == "zero1") return CounterOp::Zero1;
  if (s == "zero2") return CounterOp::Zero2;
  return std::nullopt;
}

MinskyMachine parse_machine(std::string_view text) {
  MinskyMachine m;
  bool have_states = false, have_init = false, have_final = false;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("machine line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls{line};
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "states:") {
      std::string s;
      while (ls >> s) m.states.push_back(s);
      if (m.states.empty()) fail("empty state list");
      have_states = true;
    } else if (key == "init:") {
      if (!(ls >> m.initial)) fail("missing initial state");
      have_init = true;
    } else if (key == "final:") {
      if (!(ls >> m.final)) fail("missing final state");
      have_final = true;
    } else if (key == "trans:") {
      std::string from, op, to;
      if (!(ls >> from >> op >> to)) fail("expected 'trans: <from> <op> <to>'");
      auto parsed = counter_op_from_string(op);
      if (!parsed) fail("unknown op '" + op + "'");
      m.transitions.push_back({from, *parsed, to});
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (!have_states) throw std::invalid_argument("machine: missing 'states:' line");
  if (!have_init) throw std::invalid_argument("machine: missing 'init:' line");
  if (!have_final) throw std::invalid_argument("machine: missing 'final:' line");
  std::set<std::string> seen;
  for (const auto& s : m.states)
    if (!seen.insert(s).second)
      throw std::invalid_argument("machine: duplicate state '" + s + "'");
  auto known = [&](const std::string& s) { return seen.count(s) > 0; };
  if (!known(m.initial))
    throw std::invalid_argument("machine: initial state '" + m.initial + "' not declared");
  if (!known(m.final))
    throw std::invalid_argument("machine: final state '" + m.final + "' not declared");
  for (const auto& t : m.transitions) {
    if (!known(t.from))
      throw std::invalid_argument("machine: transition from undeclared state '" + t.from + "'");
    if (!known(t.to))
      throw std::invalid_argument("machine: transition to undeclared state '" + t.to + "'");
  }
  return m;
}

std::string render_machine(const MinskyMachine& m) {
  std::ostringstream os;
  os << "states:";
  for (const auto& s : m.states) os << ' ' << s;
  os << "\ninit: " << m.initial << "\nfinal: " << m.final << '\n';
  for (const auto& t : m.transitions)
    os << "trans: " << t.from << ' ' << to_string(t.op) << ' ' << t.to << '\n';
  return os.str();
}

namespace {

// Applies op to (c1, c2); returns false when the guard blocks.
bool apply_op(CounterOp op, std::uint64_t& c1, std::uint64_t& c2) {
  switch (op) {
    case CounterOp::Inc1: ++c1; return true;
    case CounterOp::Inc2: ++c2; return true;
    case CounterOp::Dec1:
      if (c1 == 0) return false;
      --c1;
      return true;
    case CounterOp::Dec2:
      if (c2 == 0) return false;
      --c2;
      return true;
    case CounterOp::Zero1: return c1 == 0;
    case CounterOp::Zero2: return c2 == 0;
  }
  return false;
}

}  // namespace

std::vector<Configuration> step(const MinskyMachine& m, const Configuration& c) {
  std::vector<Configuration> out;
  for (const auto& t : m.transitions) {
    if (t.from != c.state) continue;
    std::uint64_t c1 = c.c1, c2 = c.c2;
    if (!apply_op(t.op, c1, c2)) continue;
    out.push_back({t.to, c1, c2});
  }
  return out;
}

std::optional<Run> find_accepting_run(const MinskyMachine& m, std::size_t max_len,
                                      std::uint64_t max_counter) {
  if (max_len < 1 || max_counter < 1)
    throw std::invalid_argument("find_accepting_run: bounds must be >= 1");
  struct Node {
    Configuration cfg;
    std::size_t parent;      // index into nodes, or npos
    std::size_t via;         // transition index
    std::size_t length;      // configurations so far
  };
  constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Configuration start{m.initial, 0, 0};
  std::vector<Node> nodes{{start, npos, 0, 1}};
  std::map<std::tuple<std::string, std::uint64_t, std::uint64_t>, std::size_t> seen;
  seen[{start.state, 0, 0}] = 0;
  std::deque<std::size_t> queue{0};

  auto reconstruct = [&](std::size_t idx) {
    Run r;
    std::vector<std::size_t> chain;
    for (std::size_t i = idx; i != npos; i = nodes[i].parent) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
    for (std::size_t k = 0; k < chain.size(); ++k) {
      r.configs.push_back(nodes[chain[k]].cfg);
      if (k > 0) r.transition_idxs.push_back(nodes[chain[k]].via);
    }
    return r;
  };

  while (!queue.empty()) {
    std::size_t idx = queue.front();
    queue.pop_front();
    const Node node = nodes[idx];
    if (node.cfg.state == m.final) return reconstruct(idx);
    if (node.length >= max_len) continue;
    for (std::size_t ti = 0; ti < m.transitions.size(); ++ti) {
      const auto& t = m.transitions[ti];
      if (t.from != node.cfg.state) continue;
      std::uint64_t c1 = node.cfg.c1, c2 = node.cfg.c2;
      if (!apply_op(t.op, c1, c2)) continue;
      if (c1 > max_counter || c2 > max_counter) continue;
      auto key = std::make_tuple(t.to, c1, c2);
      if (seen.count(key)) continue;
      seen[key] = nodes.size();
      nodes.push_back({{t.to, c1, c2}, idx, ti, node.length + 1});
      queue.push_back(nodes.size() - 1);
    }
  }
  return std::nullopt;
}

RunDescription describe_run(const Run& r) {
  if (r.configs.empty()) throw std::invalid_argument("describe_run: empty run");
  RunDescription v;
  v.reserve(2 * r.configs.size());
  for (const auto& c : r.configs) {
    v.push_back(c.c1);
    v.push_back(c.c2);
  }
  return v;
}

bool validate_description(const MinskyMachine& m, const RunDescription& v) {
  if (v.size() < 2 || v.size() % 2 != 0) return false;
  if (v[0] != 0 || v[1] != 0) return false;
  std::set<std::string> reachable{m.initial};
  for (std::size_t i = 2; i + 1 < v.size(); i += 2) {
    std::uint64_t a = v[i - 2], b = v[i - 1];
    std::uint64_t a2 = v[i], b2 = v[i + 1];
    std::set<std::string> next;
    for (const auto& t : m.transitions) {
      if (!reachable.count(t.from)) continue;
      std::uint64_t c1 = a, c2 = b;
      if (!apply_op(t.op, c1, c2)) continue;
      if (c1 != a2 || c2 != b2) continue;
      next.insert(t.to);
    }
    reachable = std::move(next);
    if (reachable.empty()) return false;
  }
  return reachable.count(m.final) > 0;
}

std::string run_to_json(const Run& r) {
  json j;
  j["configurations"] = json::array();
  for (const auto& c : r.configs)
    j["configurations"].push_back({{"state", c.state}, {"c1", c.c1}, {"c2", c.c2}});
  j["transitions"] = r.transition_idxs;
  return j.dump();
}

std::string description_to_json(const RunDescription& v) { return json(v).dump(); }

RunDescription description_from_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("description JSON: expected an array");
  RunDescription v;
  for (const auto& x : j) {
    if (!x.is_number_unsigned())
      throw std::invalid_argument("description JSON: entries must be naturals");
    v.push_back(x.get<std::uint64_t>());
  }
  return v;
}

}  // namespace msou
