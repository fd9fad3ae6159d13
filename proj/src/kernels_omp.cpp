#include <algorithm>

#include "sawlab/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sawlab::kernels {

int set_thread_count(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
  return omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

namespace {

struct Prefix {
  std::vector<int> vertices;
  std::vector<int> labels;
};

}  // namespace

CensusResult saw_census_parallel(const ArcGraph& g, int max_len, bool keep_words) {
  CensusResult out;
  out.counts.assign(static_cast<std::size_t>(std::max(max_len, 0)), 0);
  const std::size_t n = g.offsets.empty() ? 0 : g.offsets.size() - 1;
  if (n == 0 || max_len <= 0) return out;
  const int split = std::min(2, max_len);

  // prefixes of length `split`, shorter walks counted on the way
  std::vector<Prefix> prefixes{{{g.origin}, {}}};
  for (int depth = 0; depth < split; ++depth) {
    std::vector<Prefix> grown;
    for (const Prefix& p : prefixes) {
      const int v = p.vertices.back();
      for (int k = g.offsets[static_cast<std::size_t>(v)]; k < g.offsets[static_cast<std::size_t>(v) + 1]; ++k) {
        const int w = g.target[static_cast<std::size_t>(k)];
        if (std::find(p.vertices.begin(), p.vertices.end(), w) != p.vertices.end()) continue;
        Prefix q = p;
        q.vertices.push_back(w);
        q.labels.push_back(g.label[static_cast<std::size_t>(k)]);
        ++out.counts[static_cast<std::size_t>(depth)];
        if (keep_words) out.label_words.push_back(q.labels);
        grown.push_back(std::move(q));
      }
    }
    prefixes = std::move(grown);
  }

  std::vector<CensusResult> parts(prefixes.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    CensusResult& part = parts[i];
    part.counts.assign(out.counts.size(), 0);
    std::vector<char> visited(n, 0);
    for (int v : prefixes[i].vertices) visited[static_cast<std::size_t>(v)] = 1;
    std::vector<int> word = prefixes[i].labels;
    auto dfs = [&](auto&& self, int v) -> void {
      if (static_cast<int>(word.size()) == max_len) return;
      for (int k = g.offsets[static_cast<std::size_t>(v)]; k < g.offsets[static_cast<std::size_t>(v) + 1]; ++k) {
        const int w = g.target[static_cast<std::size_t>(k)];
        if (visited[static_cast<std::size_t>(w)]) continue;
        visited[static_cast<std::size_t>(w)] = 1;
        word.push_back(g.label[static_cast<std::size_t>(k)]);
        ++part.counts[word.size() - 1];
        if (keep_words) part.label_words.push_back(word);
        self(self, w);
        word.pop_back();
        visited[static_cast<std::size_t>(w)] = 0;
      }
    };
    dfs(dfs, prefixes[i].vertices.back());
  }
  for (auto& part : parts) {
    for (std::size_t k = 0; k < out.counts.size(); ++k) out.counts[k] += part.counts[k];
    for (auto& w : part.label_words) out.label_words.push_back(std::move(w));
  }
  std::sort(out.label_words.begin(), out.label_words.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

void kleene_sweep_parallel(const PolynomialSystem& sys, const std::vector<TruncatedSeries>& current,
                           std::vector<TruncatedSeries>& next) {
  const int order = current.empty() ? 0 : current[0].order();
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(sys.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    TruncatedSeries acc(order);
    for (const Monomial& m : sys.equations[static_cast<std::size_t>(i)]) {
      if (m.weight > order) continue;
      TruncatedSeries term = TruncatedSeries::monomial(order, m.weight);
      for (const auto& factor : m.factors) {
        TruncatedSeries sum(order);
        for (int u : factor) sum += current[static_cast<std::size_t>(u)];
        term = term * sum;
      }
      acc += term;
    }
    next[static_cast<std::size_t>(i)] = std::move(acc);
  }
}

}  // namespace sawlab::kernels
