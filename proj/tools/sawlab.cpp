#include <algorithm>
#include <fstream>
#include <iostream>
#include <new>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sawlab/configuration.hpp"
#include "sawlab/decomposition.hpp"
#include "sawlab/error.hpp"
#include "sawlab/grammar.hpp"
#include "sawlab/kernels.hpp"
#include "sawlab/mcfg.hpp"
#include "sawlab/oracle.hpp"
#include "sawlab/series.hpp"
#include "sawlab/system.hpp"

namespace {

using namespace sawlab;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitNonStabilization = 3;
constexpr int kExitResource = 4;

const char* const kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  invalid input or usage error\n"
    "  2  comparison mismatch\n"
    "  3  solver did not stabilize\n"
    "  4  resource cap exceeded (see --max-cells, SAWLAB_MAX_CELLS)";

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "cannot write " + path);
  out << text;
  require(static_cast<bool>(out), "failed writing " + path);
}

ConeTypeSystem load_valid(const std::string& path) {
  ConeTypeSystem sys = load_system(path);
  require_valid(sys);
  return sys;
}

int run_validate(const std::string& file) {
  const ConeTypeSystem sys = load_system(file);
  const ValidationReport rep = validate_system(sys);
  if (!rep.accepted()) {
    for (const auto& v : rep.violations) std::cout << "violation: " << v << '\n';
    std::cout << "invalid (" << rep.violations.size() << " violations)\n";
    return kExitInvalid;
  }
  std::cout << "valid: " << rep.type_count << " cone types, max adhesion size " << rep.k_max << '\n';
  return kExitOk;
}

int run_unfold(const std::string& file, int depth, const std::string& out, const Limits& limits) {
  require(depth >= 0, "--depth must be non-negative");
  const UnfoldedDecomposition dec = unfold(load_valid(file), depth, limits);
  write_output(graph_to_json(dec.graph).dump(2) + "\n", out);
  return kExitOk;
}

int run_count(const std::string& file, int max_len, bool words, const Limits& limits) {
  require(max_len >= 1, "--max-len must be at least 1");
  const FiniteGraph ball = extract_ball(load_valid(file), max_len, limits);
  const SawCensus census = enumerate_saws(ball, max_len, words);
  std::cout << "n\tc_n\n";
  for (int n = 1; n <= max_len; ++n) std::cout << n << '\t' << census.counts[static_cast<std::size_t>(n - 1)] << '\n';
  if (words) {
    std::cout << "\nn\tword\n";
    for (int n = 1; n <= max_len; ++n)
      for (const auto& w : census.words[static_cast<std::size_t>(n - 1)]) std::cout << n << '\t' << w << '\n';
  }
  return kExitOk;
}

int run_build_grammar(const std::string& file, const std::string& kind, const std::string& out, bool expand,
                      const Limits& limits) {
  const ConeTypeSystem sys = load_valid(file);
  json doc;
  if (kind == "cfg") {
    doc = export_grammar(build_config_cfg(sys, limits), expand, limits);
  } else {
    const SawMcfg g = build_saw_mcfg(sys, limits);
    const int k = validate_system(sys).k_max;
    ensure(check_rank_bound(g, k), "built grammar exceeds the rank bound for adhesion size " + std::to_string(k));
    doc = export_grammar(g, expand, limits);
  }
  write_output(doc.dump(2) + "\n", out);
  return kExitOk;
}

int run_series(const std::string& file, int order, const std::string& solver, const Limits& limits) {
  require(order >= 1, "--order must be at least 1");
  const Solver s = solver == "newton" ? Solver::Newton : Solver::Kleene;
  std::cout << series_table(saw_coefficients(load_valid(file), order, limits, Execution::Parallel, s));
  return kExitOk;
}

int run_compare(const std::string& file, int max_len, bool language, bool bijection, bool as_json,
                const Limits& limits) {
  const ConeTypeSystem sys = load_valid(file);
  bool pass = true;
  json doc;
  const CountReport counts = compare_counts(sys, max_len, limits);
  pass = pass && counts.pass;
  if (as_json)
    doc["counts"] = report_json(counts);
  else
    std::cout << format_report(counts);
  if (language) {
    const LanguageReport rep = compare_languages(sys, max_len, limits);
    pass = pass && rep.pass;
    if (as_json)
      doc["language"] = report_json(rep);
    else
      std::cout << format_report(rep);
  }
  if (bijection) {
    const BijectionReport rep = bijection_check(sys, max_len, limits);
    pass = pass && rep.pass;
    if (as_json)
      doc["bijection"] = report_json(rep);
    else
      std::cout << format_report(rep);
  }
  if (as_json) {
    doc["pass"] = pass;
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "overall: " << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? kExitOk : kExitMismatch;
}

void require_grammar(const mcfg::Grammar& g) {
  const mcfg::GrammarReport rep = mcfg::validate_grammar(g);
  for (const auto& v : rep.violations) std::cerr << "violation: " << v << '\n';
  require(rep.accepted(), "grammar is not a valid MCFG");
}

int run_mcfg_parse(const std::string& file, const std::string& word, const Limits& limits) {
  const mcfg::Grammar g = mcfg::load(file);
  require_grammar(g);
  const mcfg::Recognition r = mcfg::recognize(g, mcfg::parse_word(g, word), limits);
  std::cout << (r.member ? "member" : "non-member") << '\n';
  if (r.member)
    std::cout << "derivations: " << (r.derivations.saturated ? ">= " : "") << r.derivations.value << '\n';
  return kExitOk;
}

int run_mcfg_generate(const std::string& file, int max_len, const Limits& limits) {
  require(max_len >= 0, "--max-len must be non-negative");
  const mcfg::Grammar g = mcfg::load(file);
  require_grammar(g);
  std::vector<std::pair<std::size_t, std::string>> words;
  for (const auto& w : mcfg::generate(g, max_len, limits)) words.emplace_back(w.size(), mcfg::format_word(g, w));
  std::sort(words.begin(), words.end());
  for (const auto& [len, w] : words) std::cout << (len == 0 ? std::string("ε") : w) << '\n';
  return kExitOk;
}

int run_configs(const std::string& file, const std::string& type_name, const Limits& limits) {
  const ConeTypeSystem sys = load_valid(file);
  const TypeId t = type_name.empty() ? sys.root_type : sys.find_type(type_name);
  require(t >= 0, "unknown cone type " + type_name);
  std::cout << dump_configurations(sys, t, enumerate_configurations(sys, t, limits));
  return kExitOk;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Invalid:
      return kExitInvalid;
    case ErrorKind::NonStabilization:
      return kExitNonStabilization;
    case ErrorKind::ResourceLimit:
      return kExitResource;
    case ErrorKind::Internal:
      break;
  }
  return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-avoiding walk grammars from cone-type systems"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  int threads = 0;
  long long max_cells = 0;
  app.add_option("--threads", threads, "Worker thread cap (0 = library default)")->check(CLI::NonNegativeNumber);
  app.add_option("--max-cells", max_cells, "Cap on vertex and item tables; overrides SAWLAB_MAX_CELLS")
      ->check(CLI::PositiveNumber);

  std::string file, out, kind = "mcfg", word, type_name;
  int depth = 0, max_len = 0, order = 0;
  bool words = false, expand = false, language = false, bijection = false, as_json = false;

  auto* validate = app.add_subcommand("validate", "Check a cone-type system file");
  validate->add_option("file", file, "System JSON")->required();

  auto* unfold_cmd = app.add_subcommand("unfold", "Glue the decomposition tree to a depth and print the graph");
  unfold_cmd->add_option("file", file, "System JSON")->required();
  unfold_cmd->add_option("--depth", depth, "Tree depth")->required();
  unfold_cmd->add_option("--out", out, "Write the graph JSON here instead of standard output");

  auto* count = app.add_subcommand("count-saws", "Count self-avoiding walks from the root vertex by brute force");
  count->add_option("file", file, "System JSON")->required();
  count->add_option("--max-len", max_len, "Largest walk length")->required();
  count->add_flag("--words", words, "Also list every walk's label word");

  auto* build = app.add_subcommand("build-grammar", "Build the configuration CFG or the SAW MCFG");
  build->add_option("file", file, "System JSON")->required();
  build->add_option("--kind", kind, "cfg or mcfg")->check(CLI::IsMember({"cfg", "mcfg"}));
  build->add_option("--out", out, "Write the grammar JSON here instead of standard output");
  build->add_flag("--expand", expand, "Write one rule per tail combination");

  auto* series = app.add_subcommand("series", "SAW generating function coefficients from the grammar");
  series->add_option("file", file, "System JSON")->required();
  series->add_option("--order", order, "Truncation order N")->required();
  std::string solver = "kleene";
  series->add_option("--solver", solver, "kleene (reference) or newton")->check(CLI::IsMember({"kleene", "newton"}));

  auto* compare = app.add_subcommand("compare", "Cross-check the grammar pipeline against brute force");
  compare->add_option("file", file, "System JSON")->required();
  compare->add_option("--max-len", max_len, "Largest walk length or weight")->required();
  compare->add_flag("--language", language, "Also compare generated words with walk label words");
  compare->add_flag("--bijection", bijection, "Also check the configuration/walk bijection");
  compare->add_flag("--json", as_json, "Machine-readable report");

  auto* configs = app.add_subcommand("configs", "List the configurations of one cone type");
  configs->add_option("file", file, "System JSON")->required();
  configs->add_option("--type", type_name, "Cone type name (default: root type)");

  auto* mcfg_cmd = app.add_subcommand("mcfg", "Generic MCFG tools");
  mcfg_cmd->require_subcommand(1);
  auto* parse = mcfg_cmd->add_subcommand("parse", "Decide membership and count derivations");
  parse->add_option("grammar", file, "Grammar JSON")->required();
  parse->add_option("--word", word, "Word to parse")->required();
  auto* generate = mcfg_cmd->add_subcommand("generate", "List generated words up to a length");
  generate->add_option("grammar", file, "Grammar JSON")->required();
  generate->add_option("--max-len", max_len, "Largest word length")->required();

  for (auto* sub : {validate, unfold_cmd, count, build, series, compare, configs, mcfg_cmd, parse, generate})
    sub->footer(kExitCodes);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    Limits limits = Limits::from_environment();
    if (max_cells > 0) {
      limits.max_vertices = static_cast<std::size_t>(max_cells);
      limits.max_items = static_cast<std::size_t>(max_cells);
    }
    if (threads > 0) kernels::set_thread_count(threads);

    if (*validate) return run_validate(file);
    if (*unfold_cmd) return run_unfold(file, depth, out, limits);
    if (*count) return run_count(file, max_len, words, limits);
    if (*build) return run_build_grammar(file, kind, out, expand, limits);
    if (*series) return run_series(file, order, solver, limits);
    if (*compare) return run_compare(file, max_len, language, bijection, as_json, limits);
    if (*configs) return run_configs(file, type_name, limits);
    if (*parse) return run_mcfg_parse(file, word, limits);
    if (*generate) return run_mcfg_generate(file, max_len, limits);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
