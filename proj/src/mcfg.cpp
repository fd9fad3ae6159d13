#include "sawlab/mcfg.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "sawlab/error.hpp"

namespace sawlab::mcfg {

int Grammar::add_nonterminal(const std::string& name, int rank) {
  require(find_nonterminal(name) < 0, "duplicate nonterminal \"" + name + "\"");
  nonterminals.push_back(name);
  ranks.push_back(rank);
  return static_cast<int>(nonterminals.size()) - 1;
}

int Grammar::find_nonterminal(std::string_view name) const {
  for (std::size_t i = 0; i < nonterminals.size(); ++i)
    if (nonterminals[i] == name) return static_cast<int>(i);
  return -1;
}

int Grammar::terminal(const std::string& label) {
  int id = find_terminal(label);
  if (id >= 0) return id;
  terminals.push_back(label);
  return static_cast<int>(terminals.size()) - 1;
}

int Grammar::find_terminal(std::string_view label) const {
  for (std::size_t i = 0; i < terminals.size(); ++i)
    if (terminals[i] == label) return static_cast<int>(i);
  return -1;
}

std::uint64_t Grammar::expanded_rule_count() const {
  std::uint64_t total = 0;
  for (const auto& r : rules) {
    std::uint64_t n = 1;
    for (const auto& alts : r.tail) n *= alts.size();
    total += n;
  }
  return total;
}

int Grammar::max_rank() const { return ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end()); }

GrammarReport validate_grammar(const Grammar& g) {
  GrammarReport rep;
  rep.max_rank = g.max_rank();
  const int nts = static_cast<int>(g.nonterminals.size());
  if (g.start < 0 || g.start >= nts)
    rep.violations.push_back("start symbol missing");
  else if (g.ranks[static_cast<std::size_t>(g.start)] != 1)
    rep.violations.push_back("start symbol \"" + g.nonterminals[static_cast<std::size_t>(g.start)] + "\" has rank " +
                             std::to_string(g.ranks[static_cast<std::size_t>(g.start)]) + ", expected 1");
  for (std::size_t r = 0; r < g.rules.size(); ++r) {
    const Rule& rule = g.rules[r];
    const std::string who = "rule " + std::to_string(r);
    if (rule.head < 0 || rule.head >= nts) {
      rep.violations.push_back(who + ": head out of range");
      continue;
    }
    if (static_cast<int>(rule.args.size()) != g.ranks[static_cast<std::size_t>(rule.head)])
      rep.violations.push_back(who + ": head has " + std::to_string(rule.args.size()) + " components but rank " +
                               std::to_string(g.ranks[static_cast<std::size_t>(rule.head)]));
    std::vector<int> tail_rank;
    for (std::size_t i = 0; i < rule.tail.size(); ++i) {
      int rk = -1;
      if (rule.tail[i].empty()) rep.violations.push_back(who + ": tail position " + std::to_string(i) + " has no alternatives");
      for (int alt : rule.tail[i]) {
        if (alt < 0 || alt >= nts) {
          rep.violations.push_back(who + ": tail nonterminal out of range");
          continue;
        }
        if (rk < 0) rk = g.ranks[static_cast<std::size_t>(alt)];
        if (g.ranks[static_cast<std::size_t>(alt)] != rk)
          rep.violations.push_back(who + ": alternatives at tail position " + std::to_string(i) + " differ in rank");
      }
      tail_rank.push_back(std::max(rk, 0));
    }
    std::set<std::pair<int, int>> used;
    for (const auto& comp : rule.args)
      for (const Token& t : comp) {
        if (!t.is_var) {
          if (t.terminal < 0 || t.terminal >= static_cast<int>(g.terminals.size()))
            rep.violations.push_back(who + ": terminal out of range");
          continue;
        }
        if (t.slot < 0 || t.slot >= static_cast<int>(rule.tail.size()) || t.index < 0 ||
            t.index >= tail_rank[static_cast<std::size_t>(t.slot)]) {
          rep.violations.push_back(who + ": variable z[" + std::to_string(t.slot) + "," + std::to_string(t.index) +
                                   "] out of range (rank mismatch)");
          continue;
        }
        if (!used.insert({t.slot, t.index}).second)
          rep.violations.push_back(who + ": variable z[" + std::to_string(t.slot) + "," + std::to_string(t.index) +
                                   "] reused");
      }
    for (std::size_t i = 0; i < rule.tail.size(); ++i)
      for (int j = 0; j < tail_rank[i]; ++j)
        if (!used.count({static_cast<int>(i), j})) {
          rep.erasing = true;
          rep.notes.push_back(who + ": variable z[" + std::to_string(i) + "," + std::to_string(j) + "] unused (erasing)");
        }
  }
  return rep;
}

Term apply_rule(const Grammar& g, int rule_index, const std::vector<Term>& terms) {
  require(rule_index >= 0 && rule_index < static_cast<int>(g.rules.size()), "apply_rule: rule out of range");
  const Rule& rule = g.rules[static_cast<std::size_t>(rule_index)];
  require(terms.size() == rule.tail.size(), "apply_rule: expected " + std::to_string(rule.tail.size()) + " terms, got " +
                                                std::to_string(terms.size()));
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& alts = rule.tail[i];
    require(std::find(alts.begin(), alts.end(), terms[i].nonterminal) != alts.end(),
            "apply_rule: term " + std::to_string(i) + " has a nonterminal not allowed at that position");
    require(static_cast<int>(terms[i].components.size()) == g.ranks[static_cast<std::size_t>(terms[i].nonterminal)],
            "apply_rule: term " + std::to_string(i) + " has the wrong rank");
  }
  Term out;
  out.nonterminal = rule.head;
  for (const auto& comp : rule.args) {
    Word w;
    for (const Token& t : comp) {
      if (!t.is_var) {
        w.push_back(t.terminal);
        continue;
      }
      const Word& sub = terms[static_cast<std::size_t>(t.slot)].components[static_cast<std::size_t>(t.index)];
      w.insert(w.end(), sub.begin(), sub.end());
    }
    out.components.push_back(std::move(w));
  }
  return out;
}

Term evaluate(const Grammar& g, const DerivationTree& tree) {
  std::vector<Term> sub;
  for (const auto& c : tree.children) sub.push_back(evaluate(g, c));
  return apply_rule(g, tree.rule, sub);
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(static_cast<unsigned>(x))) * 1099511628211ull;
    return h;
  }
};

Count add(Count a, Count b, std::uint64_t cap) {
  if (a.saturated || b.saturated) return {cap, true};
  if (a.value > cap - b.value) return {cap, true};
  return {a.value + b.value, false};
}

Count mul(Count a, Count b, std::uint64_t cap) {
  if (a.value == 0 && !a.saturated) return {};
  if (b.value == 0 && !b.saturated) return {};
  if (a.saturated || b.saturated) return {cap, true};
  if (b.value != 0 && a.value > cap / b.value) return {cap, true};
  return {a.value * b.value, false};
}

// Hypergraph of one saturated chart: hyperedge h derives heads[h] from the items
// children[offsets[h] .. offsets[h+1]).
struct Hypergraph {
  std::vector<int> heads;
  std::vector<int> offsets{0};
  std::vector<int> children;

  void add(int head, const std::vector<int>& kids) {
    heads.push_back(head);
    children.insert(children.end(), kids.begin(), kids.end());
    offsets.push_back(static_cast<int>(children.size()));
  }
};

// Derivation counts of every item. Items on a dependency cycle have infinitely many
// derivations (every chart item is derivable), reported as saturated.
std::vector<Count> count_derivations(std::size_t items, const Hypergraph& hg, std::uint64_t cap) {
  const std::size_t nh = hg.heads.size();
  std::vector<int> by_head_off(items + 1, 0), by_head;
  for (int h : hg.heads) ++by_head_off[static_cast<std::size_t>(h) + 1];
  for (std::size_t i = 0; i < items; ++i) by_head_off[i + 1] += by_head_off[i];
  by_head.resize(nh);
  {
    std::vector<int> fill(by_head_off.begin(), by_head_off.end() - 1);
    for (std::size_t e = 0; e < nh; ++e) by_head[static_cast<std::size_t>(fill[static_cast<std::size_t>(hg.heads[e])]++)] = static_cast<int>(e);
  }
  // successors of an item: children of its hyperedges
  auto succ_begin = [&](int v) { return by_head_off[static_cast<std::size_t>(v)]; };
  auto succ_end = [&](int v) { return by_head_off[static_cast<std::size_t>(v) + 1]; };

  std::vector<Count> count(items);
  std::vector<int> idx(items, -1), low(items, 0);
  std::vector<bool> on_stack(items, false);
  std::vector<int> stack;
  int counter = 0;
  struct Frame {
    int v;
    int he;     // position in by_head
    int child;  // position within the hyperedge
  };
  std::vector<Frame> call;

  auto finish_scc = [&](int root) {
    std::vector<int> comp;
    for (;;) {
      int w = stack.back();
      stack.pop_back();
      on_stack[static_cast<std::size_t>(w)] = false;
      comp.push_back(w);
      if (w == root) break;
    }
    bool cyclic = comp.size() > 1;
    if (!cyclic) {
      int v = comp[0];
      for (int p = succ_begin(v); p < succ_end(v) && !cyclic; ++p) {
        int e = by_head[static_cast<std::size_t>(p)];
        for (int k = hg.offsets[static_cast<std::size_t>(e)]; k < hg.offsets[static_cast<std::size_t>(e) + 1]; ++k)
          if (hg.children[static_cast<std::size_t>(k)] == v) cyclic = true;
      }
    }
    if (cyclic) {
      for (int w : comp) count[static_cast<std::size_t>(w)] = {cap, true};
      return;
    }
    int v = comp[0];
    Count total;
    for (int p = succ_begin(v); p < succ_end(v); ++p) {
      int e = by_head[static_cast<std::size_t>(p)];
      Count prod{1, false};
      for (int k = hg.offsets[static_cast<std::size_t>(e)]; k < hg.offsets[static_cast<std::size_t>(e) + 1]; ++k)
        prod = mul(prod, count[static_cast<std::size_t>(hg.children[static_cast<std::size_t>(k)])], cap);
      total = add(total, prod, cap);
    }
    count[static_cast<std::size_t>(v)] = total;
  };

  for (std::size_t s = 0; s < items; ++s) {
    if (idx[s] >= 0) continue;
    call.push_back({static_cast<int>(s), succ_begin(static_cast<int>(s)), 0});
    idx[s] = low[s] = counter++;
    stack.push_back(static_cast<int>(s));
    on_stack[s] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const int v = f.v;
      bool descended = false;
      while (f.he < succ_end(v)) {
        int e = by_head[static_cast<std::size_t>(f.he)];
        int k = hg.offsets[static_cast<std::size_t>(e)] + f.child;
        if (k >= hg.offsets[static_cast<std::size_t>(e) + 1]) {
          ++f.he;
          f.child = 0;
          continue;
        }
        ++f.child;
        int w = hg.children[static_cast<std::size_t>(k)];
        if (idx[static_cast<std::size_t>(w)] < 0) {
          idx[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = true;
          call.push_back({w, succ_begin(w), 0});
          descended = true;
          break;
        }
        if (on_stack[static_cast<std::size_t>(w)])
          low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], idx[static_cast<std::size_t>(w)]);
      }
      if (descended) continue;
      if (low[static_cast<std::size_t>(v)] == idx[static_cast<std::size_t>(v)]) finish_scc(v);
      call.pop_back();
      if (!call.empty()) {
        int parent = call.back().v;
        low[static_cast<std::size_t>(parent)] = std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(v)]);
      }
    }
  }
  return count;
}

void require_non_erasing(const Grammar& g) {
  GrammarReport rep = validate_grammar(g);
  if (!rep.accepted()) {
    std::string msg = "grammar rejected:";
    for (const auto& v : rep.violations) msg += "\n  " + v;
    fail(ErrorKind::Invalid, msg);
  }
  require(!rep.erasing, "grammar has erasing rules, which this engine does not support");
}

int literal_count(const Rule& r) {
  int n = 0;
  for (const auto& c : r.args)
    for (const Token& t : c) n += t.is_var ? 0 : 1;
  return n;
}

// Saturation over terms whose total length is at most max_len.
class TermChart {
 public:
  TermChart(const Grammar& g, int max_len, const Limits& limits) : g_(g), max_len_(max_len), limits_(limits) {
    by_len_.assign(g.nonterminals.size(), std::vector<std::vector<int>>(static_cast<std::size_t>(max_len) + 1));
    for (const auto& r : g.rules) literals_.push_back(literal_count(r));
  }

  void saturate() {
    for (int round = 0;; ++round) {
      bool grew = false;
      for (std::size_t r = 0; r < g_.rules.size(); ++r)
        combine(r, round, false, [&](const std::vector<int>& kids) { grew |= insert(build(r, kids), round); });
      if (!grew && round > 0) break;
    }
  }

  Hypergraph hypergraph() const {
    Hypergraph hg;
    for (std::size_t r = 0; r < g_.rules.size(); ++r)
      combine(r, 0, true, [&](const std::vector<int>& kids) {
        Term t = build(r, kids);
        auto it = index_.find(key(t));
        ensure(it != index_.end(), "term chart: derived term missing after saturation");
        hg.add(it->second, kids);
      });
    return hg;
  }

  std::size_t size() const { return terms_.size(); }
  const Term& term(std::size_t i) const { return terms_[i]; }

 private:
  static std::vector<int> key(const Term& t) {
    std::vector<int> k{t.nonterminal};
    for (const auto& c : t.components) {
      k.push_back(-1);
      k.insert(k.end(), c.begin(), c.end());
    }
    return k;
  }

  Term build(std::size_t r, const std::vector<int>& kids) const {
    const Rule& rule = g_.rules[r];
    Term out;
    out.nonterminal = rule.head;
    for (const auto& comp : rule.args) {
      Word w;
      for (const Token& t : comp) {
        if (!t.is_var) {
          w.push_back(t.terminal);
          continue;
        }
        const Word& sub = terms_[static_cast<std::size_t>(kids[static_cast<std::size_t>(t.slot)])].components[static_cast<std::size_t>(t.index)];
        w.insert(w.end(), sub.begin(), sub.end());
      }
      out.components.push_back(std::move(w));
    }
    return out;
  }

  bool insert(Term t, int round) {
    int total = 0;
    for (const auto& c : t.components) total += static_cast<int>(c.size());
    auto [it, fresh] = index_.emplace(key(t), static_cast<int>(terms_.size()));
    if (!fresh) return false;
    if (terms_.size() >= limits_.max_items)
      fail(ErrorKind::ResourceLimit, "generate: term cap of " + std::to_string(limits_.max_items) + " exceeded");
    by_len_[static_cast<std::size_t>(t.nonterminal)][static_cast<std::size_t>(total)].push_back(it->second);
    terms_.push_back(std::move(t));
    born_.push_back(round);
    total_.push_back(total);
    return true;
  }

  // Semi-naive: outside the final pass, a combination must use at least one term born
  // in the previous round and none born in the current one.
  template <class Emit>
  void combine(std::size_t r, int round, bool final_pass, Emit&& emit) const {
    const Rule& rule = g_.rules[r];
    const int budget = max_len_ - literals_[r];
    if (budget < 0) return;
    std::vector<int> kids(rule.tail.size(), -1);
    const std::size_t last = rule.tail.size();
    auto rec = [&](auto&& self, std::size_t k, int left, bool delta) -> void {
      if (k == last) {
        if (final_pass || round == 0 || delta) emit(kids);
        return;
      }
      for (int alt : rule.tail[k]) {
        const auto& buckets = by_len_[static_cast<std::size_t>(alt)];
        for (int len = 0; len <= left; ++len) {
          const auto& bucket = buckets[static_cast<std::size_t>(len)];
          for (std::size_t p = 0; p < bucket.size(); ++p) {
            const int id = bucket[p];
            const int b = born_[static_cast<std::size_t>(id)];
            bool d = delta;
            if (!final_pass) {
              if (b >= round) continue;
              d = d || b == round - 1;
              if (k + 1 == last && !d) continue;
            }
            kids[k] = id;
            self(self, k + 1, left - len, d);
          }
        }
      }
    };
    rec(rec, 0, budget, false);
  }

  const Grammar& g_;
  int max_len_;
  Limits limits_;
  std::vector<int> literals_;
  std::vector<Term> terms_;
  std::vector<int> born_;
  std::vector<int> total_;
  std::unordered_map<std::vector<int>, int, VecHash> index_;
  std::vector<std::vector<std::vector<int>>> by_len_;
};

using Span = std::pair<int, int>;

struct SpanItem {
  int nonterminal;
  std::vector<Span> spans;
};

// Span items over one input word; an item's spans are pairwise disjoint.
class SpanChart {
 public:
  SpanChart(const Grammar& g, const Word& w, const Limits& limits) : g_(g), w_(w), limits_(limits) {
    by_nt_.resize(g.nonterminals.size());
  }

  void saturate() {
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t r = 0; r < g_.rules.size(); ++r) {
        std::vector<SpanItem> fresh;
        search(r, [&](const SpanItem& head, const std::vector<int>&) { fresh.push_back(head); });
        for (auto& item : fresh) grew |= insert(std::move(item));
      }
    }
  }

  Hypergraph hypergraph() {
    Hypergraph hg;
    for (std::size_t r = 0; r < g_.rules.size(); ++r)
      search(r, [&](const SpanItem& head, const std::vector<int>& kids) {
        auto it = index_.find(key(head));
        ensure(it != index_.end(), "span chart: derived item missing after saturation");
        hg.add(it->second, kids);
      });
    return hg;
  }

  std::size_t size() const { return items_.size(); }

  int find(int nt, const std::vector<Span>& spans) const {
    auto it = index_.find(key(SpanItem{nt, spans}));
    return it == index_.end() ? -1 : it->second;
  }

 private:
  static std::vector<int> key(const SpanItem& it) {
    std::vector<int> k{it.nonterminal};
    for (auto [a, b] : it.spans) {
      k.push_back(a);
      k.push_back(b);
    }
    return k;
  }

  long long start_key(int nt, int comp, int start) const {
    return (static_cast<long long>(nt) * 64 + comp) * (static_cast<long long>(w_.size()) + 1) + start;
  }

  bool insert(SpanItem item) {
    auto [it, fresh] = index_.emplace(key(item), static_cast<int>(items_.size()));
    if (!fresh) return false;
    if (items_.size() >= limits_.max_items)
      fail(ErrorKind::ResourceLimit, "recognize: span-table cap of " + std::to_string(limits_.max_items) + " exceeded");
    const int id = it->second;
    by_nt_[static_cast<std::size_t>(item.nonterminal)].push_back(id);
    for (std::size_t j = 0; j < item.spans.size(); ++j)
      by_start_[start_key(item.nonterminal, static_cast<int>(j), item.spans[j].first)].push_back(id);
    items_.push_back(std::move(item));
    return true;
  }

  template <class Emit>
  void search(std::size_t r, Emit&& emit) {
    const Rule& rule = g_.rules[r];
    const int n = static_cast<int>(w_.size());
    std::vector<int> kids(rule.tail.size(), -1);
    SpanItem head{rule.head, std::vector<Span>(rule.args.size())};
    static const std::vector<int> kNone;

    auto candidates = [&](int alt, int comp, int start) -> const std::vector<int>& {
      if (start < 0) return by_nt_[static_cast<std::size_t>(alt)];
      auto it = by_start_.find(start_key(alt, comp, start));
      return it == by_start_.end() ? kNone : it->second;
    };

    auto step = [&](auto&& self, std::size_t h, std::size_t t, int cursor) -> void {
      if (h == rule.args.size()) {
        if (disjoint(head.spans)) emit(head, kids);
        return;
      }
      const Component& comp = rule.args[h];
      if (t == comp.size()) {
        if (cursor < 0) {
          for (int p = 0; p <= n; ++p) {
            head.spans[h] = {p, p};
            self(self, h + 1, 0, -1);
          }
        } else {
          head.spans[h].second = cursor;
          self(self, h + 1, 0, -1);
        }
        return;
      }
      const Token& tok = comp[t];
      if (!tok.is_var) {
        if (cursor >= 0) {
          if (cursor < n && w_[static_cast<std::size_t>(cursor)] == tok.terminal) self(self, h, t + 1, cursor + 1);
          return;
        }
        for (int p = 0; p < n; ++p)
          if (w_[static_cast<std::size_t>(p)] == tok.terminal) {
            head.spans[h].first = p;
            self(self, h, t + 1, p + 1);
          }
        return;
      }
      const std::size_t slot = static_cast<std::size_t>(tok.slot);
      if (kids[slot] >= 0) {
        const Span s = items_[static_cast<std::size_t>(kids[slot])].spans[static_cast<std::size_t>(tok.index)];
        if (cursor >= 0 && s.first != cursor) return;
        if (cursor < 0) head.spans[h].first = s.first;
        self(self, h, t + 1, s.second);
        return;
      }
      for (int alt : rule.tail[slot]) {
        const auto& cands = candidates(alt, tok.index, cursor);
        for (std::size_t p = 0, end = cands.size(); p < end; ++p) {
          const int id = cands[p];
          if (!disjoint(items_[static_cast<std::size_t>(id)].spans)) continue;
          const Span s = items_[static_cast<std::size_t>(id)].spans[static_cast<std::size_t>(tok.index)];
          kids[slot] = id;
          if (cursor < 0) head.spans[h].first = s.first;
          self(self, h, t + 1, s.second);
          kids[slot] = -1;
        }
      }
    };
    step(step, 0, 0, -1);
  }

  static bool disjoint(const std::vector<Span>& spans) {
    for (std::size_t a = 0; a < spans.size(); ++a)
      for (std::size_t b = a + 1; b < spans.size(); ++b) {
        if (spans[a].first == spans[a].second || spans[b].first == spans[b].second) continue;
        if (spans[a].first < spans[b].second && spans[b].first < spans[a].second) return false;
      }
    return true;
  }

  const Grammar& g_;
  const Word& w_;
  Limits limits_;
  std::vector<SpanItem> items_;
  std::unordered_map<std::vector<int>, int, VecHash> index_;
  std::vector<std::vector<int>> by_nt_;
  std::unordered_map<long long, std::vector<int>> by_start_;
};

}  // namespace

Recognition recognize(const Grammar& g, const Word& word, const Limits& limits, std::uint64_t cap) {
  require_non_erasing(g);
  for (const auto& r : g.rules) require(r.args.size() <= 64, "recognize: rank above 64 unsupported");
  SpanChart chart(g, word, limits);
  chart.saturate();
  const int target = chart.find(g.start, {{0, static_cast<int>(word.size())}});
  if (target < 0) return {};
  auto counts = count_derivations(chart.size(), chart.hypergraph(), cap);
  return {true, counts[static_cast<std::size_t>(target)]};
}

std::map<Word, Count> generate_counted(const Grammar& g, int max_len, const Limits& limits, std::uint64_t cap) {
  require(max_len >= 0, "generate: negative length bound");
  require_non_erasing(g);
  TermChart chart(g, max_len, limits);
  chart.saturate();
  auto counts = count_derivations(chart.size(), chart.hypergraph(), cap);
  std::map<Word, Count> out;
  for (std::size_t i = 0; i < chart.size(); ++i)
    if (chart.term(i).nonterminal == g.start) out.emplace(chart.term(i).components[0], counts[i]);
  return out;
}

std::vector<Word> generate(const Grammar& g, int max_len, const Limits& limits) {
  require(max_len >= 0, "generate: negative length bound");
  require_non_erasing(g);
  TermChart chart(g, max_len, limits);
  chart.saturate();
  std::vector<Word> out;
  for (std::size_t i = 0; i < chart.size(); ++i)
    if (chart.term(i).nonterminal == g.start) out.push_back(chart.term(i).components[0]);
  std::sort(out.begin(), out.end());
  return out;
}

AmbiguityReport check_unambiguous_upto(const Grammar& g, int max_len, const Limits& limits) {
  AmbiguityReport rep;
  rep.counts = generate_counted(g, max_len, limits);
  for (const auto& [w, c] : rep.counts)
    if (c.saturated || c.value >= 2) rep.ambiguous.push_back(w);
  return rep;
}

namespace {

bool single_char_alphabet(const Grammar& g) {
  return std::all_of(g.terminals.begin(), g.terminals.end(), [](const std::string& t) { return t.size() == 1; });
}

}  // namespace

std::string format_word(const Grammar& g, const Word& w) {
  const bool compact = single_char_alphabet(g);
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += w[i] >= 0 && w[i] < static_cast<int>(g.terminals.size()) ? g.terminals[static_cast<std::size_t>(w[i])] : "?";
  }
  return out;
}

Word parse_word(const Grammar& g, std::string_view text) {
  Word w;
  if (single_char_alphabet(g)) {
    for (char c : text) w.push_back(g.find_terminal(std::string(1, c)));
    return w;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j > i) w.push_back(g.find_terminal(text.substr(i, j - i)));
    i = j;
  }
  return w;
}

}  // namespace sawlab::mcfg
