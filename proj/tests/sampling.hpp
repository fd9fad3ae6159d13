#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sawlab/contraction.hpp"
#include "sawlab/grammar.hpp"

namespace testsupport {

// A random bounded consistent assignment: every non-boring node picks a uniformly random
// compatible configuration for each child slot. Returns nothing when the draw grows past
// the depth or weight bound.
inline std::optional<sawlab::ConfigAssignment> sample_assignment(const sawlab::GrammarSkeleton& sk, std::mt19937_64& rng,
                                                                 int max_depth, int max_weight) {
  sawlab::ConfigAssignment a;
  int weight = 0;
  auto pick = [&rng](const std::vector<int>& xs) {
    std::uniform_int_distribution<std::size_t> d(0, xs.size() - 1);
    return xs[d(rng)];
  };
  auto expand = [&](auto&& self, int nt, sawlab::NodePath path) -> bool {
    const auto u = static_cast<std::size_t>(nt);
    if (sk.boring[u]) return true;
    if (static_cast<int>(path.size()) > max_depth) return false;
    weight += sk.nt_weight[u];
    if (weight > max_weight) return false;
    a.configs[path] = sk.config(nt);
    for (std::size_t s = 0; s < sk.slots[u].size(); ++s) {
      sawlab::NodePath child = path;
      child.push_back(static_cast<int>(s));
      if (!self(self, pick(sk.slots[u][s]), child)) return false;
    }
    return true;
  };
  if (!expand(expand, pick(sk.roots), {})) return std::nullopt;
  return a;
}

inline sawlab::ConfigAssignment draw_assignment(const sawlab::GrammarSkeleton& sk, std::mt19937_64& rng) {
  for (;;)
    if (auto a = sample_assignment(sk, rng, 8, 12)) return *a;
}

struct LawCheck {
  bool weight_preserved = true;
  bool order_independent = true;
};

// Contracts two random tree edges in both orders, then a random subset in two random
// orders, comparing total weight after every step and the normalized results.
inline LawCheck check_contraction_laws(const sawlab::UnfoldedDecomposition& dec, const sawlab::ConfigAssignment& a,
                                       std::mt19937_64& rng) {
  LawCheck out;
  const int w = sawlab::total_weight(a);
  // tree edges at or just below explicit nodes first, then the rest
  std::vector<int> near, far;
  for (int n = 1; n < static_cast<int>(dec.nodes.size()); ++n) {
    const auto& node = dec.nodes[static_cast<std::size_t>(n)];
    const auto& parent = dec.nodes[static_cast<std::size_t>(node.parent)];
    (a.configs.count(node.path) || a.configs.count(parent.path) ? near : far).push_back(n);
  }
  std::shuffle(near.begin(), near.end(), rng);
  std::shuffle(far.begin(), far.end(), rng);
  std::vector<int> edges = near;
  edges.insert(edges.end(), far.begin(), far.end());
  const std::size_t k = std::min<std::size_t>(edges.size(), 2 + rng() % 7);
  std::vector<int> subset(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(k));

  auto run = [&](const std::vector<int>& order) {
    sawlab::ContractionState s(dec, a);
    for (int f : order) {
      s = sawlab::contract_edge(std::move(s), f);
      if (s.total_weight() != w) out.weight_preserved = false;
    }
    return s.normalized();
  };
  if (subset.size() >= 2) {
    const std::vector<int> ab{subset[0], subset[1]}, ba{subset[1], subset[0]};
    if (run(ab) != run(ba)) out.order_independent = false;
  }
  std::vector<int> other = subset;
  std::shuffle(other.begin(), other.end(), rng);
  if (run(subset) != run(other)) out.order_independent = false;
  return out;
}

}  // namespace testsupport
