#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sawlab/decomposition.hpp"
#include "sawlab/limits.hpp"
#include "sawlab/series.hpp"

namespace sawlab {

struct SawCensus {
  int max_len = 0;
  std::vector<std::uint64_t> counts;            // counts[n-1] = c_n
  std::vector<std::vector<std::string>> words;  // words[n-1], sorted; empty unless requested
};

// Labels are written one after another when every label is a single character,
// otherwise separated by spaces.
std::string join_labels(const std::vector<std::string>& labels, bool compact);
bool compact_alphabet(const FiniteGraph& graph);

SawCensus enumerate_saws(const FiniteGraph& graph, int max_len, bool keep_words,
                         Execution exec = Execution::Parallel);

struct CountRow {
  int n = 0;
  BigInt oracle;
  BigInt grammar;
  bool match = false;
};

struct CountReport {
  std::vector<CountRow> rows;
  bool pass = false;
};

CountReport compare_counts(const ConeTypeSystem& system, int max_len, const Limits& limits = {});

struct LanguageReport {
  int max_len = 0;
  std::size_t oracle_words = 0;
  std::size_t grammar_words = 0;
  std::vector<std::string> only_oracle;
  std::vector<std::string> only_grammar;
  bool pass = false;
};

LanguageReport compare_languages(const ConeTypeSystem& system, int max_len, const Limits& limits = {});

struct BijectionReport {
  int max_weight = 0;
  std::vector<std::uint64_t> assignments;  // per weight 1..max_weight
  std::vector<std::uint64_t> saws;         // per length 1..max_weight
  bool injective = false;
  bool surjective = false;
  bool weight_is_length = false;
  bool round_trips = false;
  std::vector<std::string> failures;  // first few problems, for diagnostics
  bool pass = false;
};

BijectionReport bijection_check(const ConeTypeSystem& system, int max_weight, const Limits& limits = {});

std::string format_report(const CountReport& r);
std::string format_report(const LanguageReport& r);
std::string format_report(const BijectionReport& r);
nlohmann::json report_json(const CountReport& r);
nlohmann::json report_json(const LanguageReport& r);
nlohmann::json report_json(const BijectionReport& r);

}  // namespace sawlab
