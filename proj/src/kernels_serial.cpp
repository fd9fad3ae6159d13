#include <algorithm>

#include "sawlab/kernels.hpp"

namespace sawlab::kernels {

namespace {

bool shortlex(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

CensusResult saw_census_serial(const ArcGraph& g, int max_len, bool keep_words) {
  CensusResult out;
  out.counts.assign(static_cast<std::size_t>(std::max(max_len, 0)), 0);
  const std::size_t n = g.offsets.empty() ? 0 : g.offsets.size() - 1;
  std::vector<char> visited(n, 0);
  std::vector<int> word;
  auto dfs = [&](auto&& self, int v) -> void {
    if (static_cast<int>(word.size()) == max_len) return;
    for (int k = g.offsets[static_cast<std::size_t>(v)]; k < g.offsets[static_cast<std::size_t>(v) + 1]; ++k) {
      const int w = g.target[static_cast<std::size_t>(k)];
      if (visited[static_cast<std::size_t>(w)]) continue;
      visited[static_cast<std::size_t>(w)] = 1;
      word.push_back(g.label[static_cast<std::size_t>(k)]);
      ++out.counts[word.size() - 1];
      if (keep_words) out.label_words.push_back(word);
      self(self, w);
      word.pop_back();
      visited[static_cast<std::size_t>(w)] = 0;
    }
  };
  if (n > 0) {
    visited[static_cast<std::size_t>(g.origin)] = 1;
    dfs(dfs, g.origin);
  }
  std::sort(out.label_words.begin(), out.label_words.end(), shortlex);
  return out;
}

void kleene_sweep_serial(const PolynomialSystem& sys, const std::vector<TruncatedSeries>& current,
                         std::vector<TruncatedSeries>& next) {
  const int order = current.empty() ? 0 : current[0].order();
  for (std::size_t i = 0; i < sys.size(); ++i) {
    TruncatedSeries acc(order);
    for (const Monomial& m : sys.equations[i]) {
      if (m.weight > order) continue;
      TruncatedSeries term = TruncatedSeries::monomial(order, m.weight);
      for (const auto& factor : m.factors) {
        TruncatedSeries sum(order);
        for (int u : factor) sum += current[static_cast<std::size_t>(u)];
        term = term * sum;
      }
      acc += term;
    }
    next[i] = std::move(acc);
  }
}

}  // namespace sawlab::kernels
