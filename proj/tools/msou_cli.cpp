// Batch front end.  Exit codes: 0 success, 1 checked property failed,
// 2 usage or parse error, 3 budget exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "msou/eval.hpp"
#include "msou/minsky.hpp"
#include "msou/reduction.hpp"
#include "msou/sexpr.hpp"
#include "msou/tree.hpp"
#include "msou/vecseq.hpp"
#include "msou/word.hpp"

namespace {

using json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kPropertyFailed = 1;
constexpr int kUsageError = 2;
constexpr int kBudgetExceeded = 3;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json tree_node_to_json(const msou::TreeNode& node) {
  if (node.children.empty()) {
    if (node.word_pos) return json(*node.word_pos);
    return json(nullptr);
  }
  json j = json::array();
  for (const auto& c : node.children) j.push_back(tree_node_to_json(c));
  return j;
}

json tree_seq_to_json(const msou::TreeSeq& t) {
  json trees = json::array();
  for (const auto& root : t.trees) trees.push_back(tree_node_to_json(root));
  return json{{"depth", t.depth},
              {"trees", trees},
              {"last_tree_incomplete", t.last_tree_incomplete}};
}

struct Options {
  bool json_mode = false;
  std::uint64_t budget = msou::kDefaultSelectionBudget;
};

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.json_mode)
    std::cout << j.dump() << '\n';
  else
    std::cout << text;
}

int cmd_decode(const Options& o, const std::string& wordfile, bool dot) {
  msou::WordPrefix w = msou::parse_word(slurp(wordfile));
  msou::TreeSeq t = msou::decode_tree_sequence(w);
  if (dot) {
    std::cout << msou::render_tree_dot(t);
    return kOk;
  }
  emit(o, tree_seq_to_json(t), msou::render_tree_text(t));
  return kOk;
}

int cmd_encode(const Options& o, const std::string& treefile) {
  msou::TreeSeq t = msou::parse_tree_text(slurp(treefile));
  msou::WordPrefix w = msou::encode_tree_sequence(t);
  emit(o, json{{"alphabet", w.alphabet.size}, {"word", w.letters}},
       msou::render_word(w) + "\n");
  return kOk;
}

int cmd_compile(const Options& o, const std::string& machinefile) {
  msou::MinskyMachine m = msou::parse_machine(slurp(machinefile));
  msou::FormulaPtr f = msou::machine_to_formula(m);
  std::string text = msou::render_formula(f);
  msou::Analysis a = msou::analyze(*f);
  emit(o,
       json{{"formula", text},
            {"size", a.size},
            {"quantifier_depth", a.quantifier_depth}},
       text + "\n");
  return kOk;
}

int cmd_simulate(const Options& o, const std::string& machinefile, std::size_t max_len,
                 std::uint64_t max_counter) {
  msou::MinskyMachine m = msou::parse_machine(slurp(machinefile));
  auto run = msou::find_accepting_run(m, max_len, max_counter);
  if (!run) {
    emit(o, json{{"found", false}}, "no accepting run within bounds\n");
    return kPropertyFailed;
  }
  std::ostringstream os;
  for (const auto& c : run->configs) os << c.state << ' ' << c.c1 << ' ' << c.c2 << '\n';
  emit(o, json{{"found", true}, {"run", json::parse(msou::run_to_json(*run))}}, os.str());
  return kOk;
}

int cmd_witness(const Options& o, const std::string& machinefile, std::size_t trees,
                std::size_t max_len, std::uint64_t max_counter) {
  msou::MinskyMachine m = msou::parse_machine(slurp(machinefile));
  auto run = msou::find_accepting_run(m, max_len, max_counter);
  if (!run) {
    emit(o, json{{"found", false}}, "no accepting run within bounds\n");
    return kPropertyFailed;
  }
  msou::WitnessParams p;
  p.description = msou::describe_run(*run);
  p.tree_count = trees;
  msou::WordPrefix w = msou::encode_tree_sequence(msou::witness_tree_sequence(p));
  emit(o, json{{"found", true}, {"description", p.description}, {"word", w.letters}},
       msou::render_word(w) + "\n");
  return kOk;
}

int cmd_check_witness(const Options& o, const std::string& machinefile,
                      const std::string& wordfile, std::size_t ignore_prefix) {
  msou::MinskyMachine m = msou::parse_machine(slurp(machinefile));
  msou::WordPrefix w = msou::parse_word(slurp(wordfile), 4);
  msou::TreeSeq t = msou::decode_tree_sequence(w);
  msou::ConditionReport rep = msou::check_conditions(t, m, ignore_prefix);
  std::ostringstream os;
  os << "degrees_grow: " << (rep.degrees_grow ? "true" : "false") << '\n'
     << "roots_uniform: " << (rep.roots_uniform ? "true" : "false") << '\n'
     << "children_uniform: " << (rep.children_uniform ? "true" : "false") << '\n'
     << "run_valid: " << (rep.run_valid ? "true" : "false") << '\n';
  emit(o, json::parse(msou::report_to_json(rep)), os.str());
  return rep.all() ? kOk : kPropertyFailed;
}

int cmd_eval(const Options& o, const std::string& formulafile, const std::string& wordfile,
             std::size_t u_threshold) {
  msou::WordPrefix w = msou::parse_word(slurp(wordfile));
  msou::FormulaPtr f = msou::parse_formula(slurp(formulafile), w.alphabet);
  msou::EvalBudget b;
  b.u_threshold = u_threshold;
  b.max_word_length = std::min<std::uint64_t>(o.budget, 63);
  bool value = msou::evaluate(*f, w, {}, b);
  emit(o, json{{"value", value}}, std::string(value ? "true" : "false") + "\n");
  return value ? kOk : kPropertyFailed;
}

int cmd_vecseq_equiv(const Options& o, const std::string& ffile, const std::string& gfile,
                     std::uint64_t bounded, std::uint64_t transfer) {
  msou::NumberWindow f = msou::number_window_from_json(slurp(ffile));
  msou::NumberWindow g = msou::number_window_from_json(slurp(gfile));
  bool eq = msou::window_equiv(f, g, {bounded, transfer});
  emit(o, json{{"equivalent", eq}}, std::string(eq ? "equivalent" : "inequivalent") + "\n");
  return eq ? kOk : kPropertyFailed;
}

int cmd_vecseq_mix(const Options& o, const std::string& ffile, const std::string& gfile,
                   std::uint64_t bounded, std::uint64_t transfer) {
  msou::VectorWindow f = msou::vector_window_from_json(slurp(ffile));
  msou::VectorWindow g = msou::vector_window_from_json(slurp(gfile));
  msou::MixResult r = msou::is_window_mix(f, g, {bounded, transfer}, o.budget);
  json j{{"is_mix", r.is_mix}};
  std::ostringstream os;
  if (r.is_mix) {
    os << "mix\n";
  } else {
    j["counterexample"] = *r.counterexample;
    os << "not a mix; counterexample selection:";
    for (std::size_t s : *r.counterexample) os << ' ' << s;
    os << '\n';
  }
  emit(o, j, os.str());
  return r.is_mix ? kOk : kPropertyFailed;
}

int cmd_vecseq_identity(const Options& o, std::size_t dim, std::uint64_t side) {
  msou::VectorWindow f = msou::identity_grid_window(dim, side);
  std::string text = msou::vector_window_to_json(f);
  emit(o, json::parse(text), text + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for the word/tree codec, counter machines, and the "
               "machine-to-formula compiler"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json_mode, "emit one JSON document on stdout");
  app.add_option("--budget", opt.budget, "work budget (selection count / word length cap)");

  std::string wordfile, treefile, machinefile, formulafile, ffile, gfile;
  bool dot = false;
  std::size_t max_len = 64, trees = 5, ignore_prefix = 0, u_threshold = 1, dim = 2;
  std::uint64_t max_counter = 32, bounded = 0, transfer = 0, side = 3;

  auto* decode = app.add_subcommand("decode", "word -> tree sequence");
  decode->add_option("wordfile", wordfile)->required();
  decode->add_flag("--dot", dot, "emit a DOT digraph");

  auto* encode = app.add_subcommand("encode", "tree sequence -> canonical word");
  encode->add_option("treefile", treefile)->required();

  auto* compile = app.add_subcommand("compile", "machine -> closed formula");
  compile->add_option("machinefile", machinefile)->required();

  auto* simulate = app.add_subcommand("simulate", "bounded search for an accepting run");
  simulate->add_option("machinefile", machinefile)->required();
  simulate->add_option("--max-len", max_len, "max configurations");
  simulate->add_option("--max-counter", max_counter, "max counter value");

  auto* witness = app.add_subcommand("witness", "run search + witness word generation");
  witness->add_option("machinefile", machinefile)->required();
  witness->add_option("--trees", trees, "number of trees in the witness");
  witness->add_option("--max-len", max_len, "max configurations");
  witness->add_option("--max-counter", max_counter, "max counter value");

  auto* check = app.add_subcommand("check-witness", "decode a word and check the four "
                                                    "witness conditions");
  check->add_option("machinefile", machinefile)->required();
  check->add_option("wordfile", wordfile)->required();
  check->add_option("--ignore-prefix", ignore_prefix, "trees exempt from the checks");

  auto* eval = app.add_subcommand("eval", "evaluate a closed formula on a word prefix");
  eval->add_option("formulafile", formulafile)->required();
  eval->add_option("wordfile", wordfile)->required();
  eval->add_option("--u-threshold", u_threshold, "minimum set size witnessing U");

  auto* vecseq = app.add_subcommand("vecseq", "vector-window operations");
  vecseq->require_subcommand(1);
  auto* equiv = vecseq->add_subcommand("equiv", "transfer-bound equivalence of two "
                                                "number windows");
  equiv->add_option("f", ffile)->required();
  equiv->add_option("g", gfile)->required();
  equiv->add_option("--bounded", bounded, "B")->required();
  equiv->add_option("--transfer", transfer, "B'")->required();
  auto* mix = vecseq->add_subcommand("mix", "exhaustive mix check of two vector windows");
  mix->add_option("f", ffile)->required();
  mix->add_option("g", gfile)->required();
  mix->add_option("--bounded", bounded, "B")->required();
  mix->add_option("--transfer", transfer, "B'")->required();
  auto* identity = vecseq->add_subcommand("identity", "identity grid window");
  identity->add_option("--dim", dim, "dimension");
  identity->add_option("--side", side, "grid side");

  // Allow the global flags to appear after a subcommand name.
  for (CLI::App* sc : {decode, encode, compile, simulate, witness, check, eval, vecseq,
                       equiv, mix, identity})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*decode) return cmd_decode(opt, wordfile, dot);
    if (*encode) return cmd_encode(opt, treefile);
    if (*compile) return cmd_compile(opt, machinefile);
    if (*simulate) return cmd_simulate(opt, machinefile, max_len, max_counter);
    if (*witness) return cmd_witness(opt, machinefile, trees, max_len, max_counter);
    if (*check) return cmd_check_witness(opt, machinefile, wordfile, ignore_prefix);
    if (*eval) return cmd_eval(opt, formulafile, wordfile, u_threshold);
    if (*equiv) return cmd_vecseq_equiv(opt, ffile, gfile, bounded, transfer);
    if (*mix) return cmd_vecseq_mix(opt, ffile, gfile, bounded, transfer);
    if (*identity) return cmd_vecseq_identity(opt, dim, side);
  } catch (const msou::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
