#pragma once

// Nondeterministic two-counter Minsky machines: parsing, single-step
// successors, bounded breadth-first search for accepting runs, and the
// run-description vectors (counter pairs along a run, states omitted).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace msou {

enum class CounterOp { Inc1, Inc2, Dec1, Dec2, Zero1, Zero2 };

const char* to_string(CounterOp op);
std::optional<CounterOp> counter_op_from_string(std::string_view s);

struct Transition {
  std::string from;
  CounterOp op;
  std::string to;
};

struct MinskyMachine {
  std::vector<std::string> states;
  std::string initial;
  std::string final;
  std::vector<Transition> transitions;
};

struct Configuration {
  std::string state;
  std::uint64_t c1 = 0;
  std::uint64_t c2 = 0;

  bool operator==(const Configuration& o) const {
    return state == o.state && c1 == o.c1 && c2 == o.c2;
  }
};

struct Run {
  std::vector<Configuration> configs;        // nonempty
  std::vector<std::size_t> transition_idxs;  // size configs.size()-1
};

// Even length 2d for a run of d configurations; entries 2i, 2i+1 (0-based)
// are the counter pair of configuration i.
using RunDescription = std::vector<std::uint64_t>;

// Line-oriented format:
//   states: q0 q1 qf
//   init: q0
//   final: qf
//   trans: q0 inc1 q1
// Blank lines and lines starting with '#' are ignored.
MinskyMachine parse_machine(std::string_view text);
std::string render_machine(const MinskyMachine& m);

// All successor configurations, in transition-list order.
std::vector<Configuration> step(const MinskyMachine& m, const Configuration& c);

// Shortest accepting run with at most max_len configurations and counters
// bounded by max_counter, or nullopt.  Absence within bounds does not
// certify emptiness.
std::optional<Run> find_accepting_run(const MinskyMachine& m, std::size_t max_len,
                                      std::uint64_t max_counter);

RunDescription describe_run(const Run& r);

// True iff some state assignment turns v into an accepting run of m.
bool validate_description(const MinskyMachine& m, const RunDescription& v);

std::string run_to_json(const Run& r);
std::string description_to_json(const RunDescription& v);
RunDescription description_from_json(const std::string& text);

}  // namespace msou
