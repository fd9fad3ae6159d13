#pragma once

// Shared helpers for the unit and acceptance binaries. The direct graph builders and the
// walk enumerator here deliberately share nothing with the library: vertices are
// coordinates or reduced group words, and the search keeps its own visited set.

#include <sys/wait.h>

#include <array>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sawlab/system.hpp"

namespace testsupport {

inline std::string corpus_path(const std::string& name) { return std::string(SAWLAB_CORPUS_DIR) + "/" + name + ".json"; }

inline sawlab::ConeTypeSystem corpus(const std::string& name) { return sawlab::load_system(corpus_path(name)); }

inline const std::vector<std::string>& corpus_systems() {
  static const std::vector<std::string> names{"line", "ladder", "tree3", "paper-example", "free-product-c2-c3"};
  return names;
}

struct CliResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with the given argument string; stderr is discarded.
inline CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SAWLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// ---- direct constructions ----

struct DirectArc {
  std::string label;
  std::string to;
};

using Neighbours = std::function<std::vector<DirectArc>(const std::string&)>;

struct DirectGraph {
  std::string origin;
  Neighbours next;
};

inline std::pair<long, long> split_pair(const std::string& v) {
  const auto comma = v.find(',');
  return {std::stol(v.substr(0, comma)), std::stol(v.substr(comma + 1))};
}

inline std::string pair_key(long a, long b) { return std::to_string(a) + "," + std::to_string(b); }

// Integers, r = +1, l = -1.
inline DirectGraph line_graph() {
  return {"0", [](const std::string& v) {
            const long x = std::stol(v);
            return std::vector<DirectArc>{{"r", std::to_string(x + 1)}, {"l", std::to_string(x - 1)}};
          }};
}

// Z x {0,1}; r/l move along the rails, s switches rail.
inline DirectGraph ladder_graph() {
  return {pair_key(0, 0), [](const std::string& v) {
            const auto [x, y] = split_pair(v);
            return std::vector<DirectArc>{
                {"r", pair_key(x + 1, y)}, {"l", pair_key(x - 1, y)}, {"s", pair_key(x, 1 - y)}};
          }};
}

// Right multiplication by an involution on reduced words.
inline std::string times_involution(const std::string& w, char g) {
  if (!w.empty() && w.back() == g) return w.substr(0, w.size() - 1);
  return w + g;
}

// Cayley graph of C2*C2*C2 on generators a, b, c: the 3-regular tree.
inline DirectGraph tree3_graph() {
  return {"", [](const std::string& w) {
            std::vector<DirectArc> out;
            for (char g : std::string("abc")) out.push_back({std::string(1, g), times_involution(w, g)});
            return out;
          }};
}

// Cayley graph of C2*C3 on a (order 2) and t (order 3); words alternate a with t or T.
inline DirectGraph free_product_graph() {
  return {"", [](const std::string& w) {
            std::vector<DirectArc> out;
            out.push_back({"a", times_involution(w, 'a')});
            for (char g : std::string("tT")) {
              std::string x = w;
              if (!x.empty() && (x.back() == 't' || x.back() == 'T')) {
                const int p = ((x.back() == 't' ? 1 : 2) + (g == 't' ? 1 : 2)) % 3;
                x.pop_back();
                if (p != 0) x.push_back(p == 1 ? 't' : 'T');
              } else {
                x.push_back(g);
              }
              out.push_back({std::string(1, g), x});
            }
            return out;
          }};
}

// (C2*C2*C2) x C3 as pairs (reduced word, residue); t/T act on the residue.
inline DirectGraph product_graph() {
  return {"|0", [](const std::string& v) {
            const auto bar = v.find('|');
            const std::string w = v.substr(0, bar);
            const int i = std::stoi(v.substr(bar + 1));
            std::vector<DirectArc> out;
            for (char g : std::string("abc")) out.push_back({std::string(1, g), times_involution(w, g) + "|" + std::to_string(i)});
            out.push_back({"t", w + "|" + std::to_string((i + 1) % 3)});
            out.push_back({"T", w + "|" + std::to_string((i + 2) % 3)});
            return out;
          }};
}

inline DirectGraph direct_graph(const std::string& system) {
  if (system == "line") return line_graph();
  if (system == "ladder") return ladder_graph();
  if (system == "tree3") return tree3_graph();
  if (system == "free-product-c2-c3") return free_product_graph();
  return product_graph();
}

struct DirectCensus {
  std::vector<std::uint64_t> counts;  // counts[n-1]
  std::set<std::string> words;
};

// Backtracking over the direct graph; all labels are single characters.
inline DirectCensus direct_census(const DirectGraph& g, int max_len, bool keep_words) {
  DirectCensus c;
  c.counts.assign(static_cast<std::size_t>(max_len), 0);
  std::unordered_set<std::string> visited{g.origin};
  std::string word;
  std::function<void(const std::string&)> go = [&](const std::string& v) {
    if (static_cast<int>(word.size()) == max_len) return;
    for (const auto& arc : g.next(v)) {
      if (visited.count(arc.to)) continue;
      visited.insert(arc.to);
      word += arc.label;
      ++c.counts[word.size() - 1];
      if (keep_words) c.words.insert(word);
      go(arc.to);
      word.pop_back();
      visited.erase(arc.to);
    }
  };
  go(g.origin);
  return c;
}

// Counts frozen from two independent enumerators (this file and a separate script).
inline const std::vector<std::uint64_t>& frozen_counts(const std::string& system) {
  static const std::vector<std::uint64_t> line(20, 2);
  static const std::vector<std::uint64_t> ladder{3,    6,    12,   20,   36,   58,    100,   160,   268,   430,
                                                 708,  1140, 1860, 3002, 4876, 7880, 12772, 20654, 33444, 54100};
  static const std::vector<std::uint64_t> tree3{3, 6, 12, 24, 48, 96, 192, 384, 768, 1536, 3072, 6144};
  static const std::vector<std::uint64_t> free_product{3, 6, 10, 18, 32, 56, 100, 176, 312, 552, 976, 1728};
  static const std::vector<std::uint64_t> product{5, 20, 78, 294, 1086, 3996, 14616, 53316, 194328, 707340};
  if (system == "line") return line;
  if (system == "ladder") return ladder;
  if (system == "tree3") return tree3;
  if (system == "free-product-c2-c3") return free_product;
  return product;
}

}  // namespace testsupport
