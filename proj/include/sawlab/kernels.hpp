#pragma once

#include <cstdint>
#include <vector>

#include "sawlab/series.hpp"

namespace sawlab::kernels {

// Compressed adjacency of an undirected labelled graph; arc k leaves its source with
// label label[k] towards target[k].
struct ArcGraph {
  int origin = 0;
  std::vector<int> offsets;  // size vertex_count + 1
  std::vector<int> target;
  std::vector<int> label;
};

struct CensusResult {
  std::vector<std::uint64_t> counts;         // counts[n-1] = walks of length n
  std::vector<std::vector<int>> label_words;  // every walk's label sequence, when requested
};

CensusResult saw_census_serial(const ArcGraph& g, int max_len, bool keep_words);
// Splits the search at all self-avoiding prefixes of length 2 and merges the pieces in
// prefix order, so output equals the serial kernel for every thread count.
CensusResult saw_census_parallel(const ArcGraph& g, int max_len, bool keep_words);

void kleene_sweep_serial(const PolynomialSystem& sys, const std::vector<TruncatedSeries>& current,
                         std::vector<TruncatedSeries>& next);
void kleene_sweep_parallel(const PolynomialSystem& sys, const std::vector<TruncatedSeries>& current,
                           std::vector<TruncatedSeries>& next);

// Returns the OpenMP thread limit in effect (1 without OpenMP).
int set_thread_count(int threads);

}  // namespace sawlab::kernels
