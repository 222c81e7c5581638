#pragma once

/**
 * @file statesum.hpp
 * @brief The virtual-shaded 3-fold state sum.
 *
 * Every crossing resolves three ways:
 *
 *   X1[a,b,c,d] -> M*A (ab)(cd) + M*B (ad)(bc) + F (ac)(bd)
 *   X2[a,b,c,d] -> M*X (ab)(cd) + M*Y (ad)(bc) + Z (ac)(bd)
 *
 * After resolving, the con-pairs form a 2-regular multigraph on the edge
 * labels; each connected component is a closed polygon and contributes one
 * factor of the loop value o. Truncating at level k keeps only states with at
 * most k smoothings, which is exactly the sum modulo M^(k+1).
 *
 * Enumeration is a depth-first walk over crossings that carries a rollback
 * union-find, so a leaf costs O(1) beyond the two unions of its last crossing.
 */

#include <vse/diagram.hpp>
#include <vse/poly.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

namespace vse {

enum class Resolution : std::uint8_t { Smooth1, Smooth2, Virtual };

using State = std::vector<Resolution>;

/// The two con-pairs, as slot indices, of a resolution.
inline constexpr std::array<std::array<std::array<int, 2>, 2>, 3> kResolutionSlots{{
    {{{0, 1}, {2, 3}}},  // Smooth1
    {{{0, 3}, {1, 2}}},  // Smooth2
    {{{0, 2}, {1, 3}}},  // Virtual
}};

inline Monomial crossing_weight(CrossingKind kind, Resolution r) {
  const bool shaded = kind == CrossingKind::X1;
  switch (r) {
    case Resolution::Smooth1:
      return Monomial::variable(Var::M) * Monomial::variable(shaded ? Var::A : Var::X);
    case Resolution::Smooth2:
      return Monomial::variable(Var::M) * Monomial::variable(shaded ? Var::B : Var::Y);
    case Resolution::Virtual:
      return Monomial::variable(shaded ? Var::F : Var::Z);
  }
  return {};
}

/// Either a truncation level k (keep M-degree <= k) or the full expansion.
class Level {
 public:
  static Level full() { return Level(std::nullopt); }
  static Level truncated(std::uint32_t k) { return Level(k); }

  bool is_full() const { return !k_.has_value(); }
  std::uint32_t k() const {
    if (!k_) throw std::logic_error("full level has no k");
    return *k_;
  }

  /// Largest number of smoothings a surviving state on n crossings may carry.
  std::size_t max_smoothings(std::size_t n) const {
    return k_ ? std::min<std::size_t>(*k_, n) : n;
  }

  std::string to_string() const { return k_ ? std::to_string(*k_) : "inf"; }

  static Level parse(std::string_view s) {
    if (s == "inf" || s == "full" || s == "infinity") return full();
    if (s.empty() || s.size() > 9) throw std::invalid_argument("invalid level '" + std::string(s) + "'");
    std::uint32_t k = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw std::invalid_argument("invalid level '" + std::string(s) + "'");
      k = k * 10 + static_cast<std::uint32_t>(c - '0');
    }
    return truncated(k);
  }

  friend bool operator==(const Level&, const Level&) = default;

 private:
  explicit Level(std::optional<std::uint32_t> k) : k_(k) {}
  std::optional<std::uint32_t> k_;
};

/// Number of states with nonzero weight: sum_{l<=k} C(n,l) 2^l, or 3^n.
inline Integer count_states(std::size_t n, const Level& level) {
  Integer total = 0, binom = 1, two_pow = 1;
  const std::size_t top = level.max_smoothings(n);
  for (std::size_t l = 0; l <= top; ++l) {
    total += binom * two_pow;
    binom = binom * static_cast<unsigned long>(n - l) / static_cast<unsigned long>(l + 1);
    two_pow *= 2;
  }
  return total;
}

class StateBudgetExceeded : public std::runtime_error {
 public:
  StateBudgetExceeded(const Integer& states, const Integer& budget)
      : std::runtime_error("state budget exceeded: " + states.get_str() + " states > budget " +
                           budget.get_str() + " (use a finite level k or raise the budget)") {}
};

/// Calls `visit(const State&)` for every state with at most
/// level.max_smoothings(n) smoothings, in depth-first order
/// (Virtual, Smooth1, Smooth2 at each crossing).
template <class Visitor>
void for_each_state(std::size_t n, const Level& level, Visitor&& visit) {
  State s(n, Resolution::Virtual);
  const std::size_t budget = level.max_smoothings(n);
  auto rec = [&](auto& self, std::size_t i, std::size_t left) -> void {
    if (i == n) {
      visit(static_cast<const State&>(s));
      return;
    }
    s[i] = Resolution::Virtual;
    self(self, i + 1, left);
    if (left == 0) return;
    for (auto r : {Resolution::Smooth1, Resolution::Smooth2}) {
      s[i] = r;
      self(self, i + 1, left - 1);
    }
    s[i] = Resolution::Virtual;
  };
  rec(rec, 0, budget);
}

inline std::vector<State> enumerate_states(std::size_t n, const Level& level) {
  std::vector<State> out;
  for_each_state(n, level, [&](const State& s) { out.push_back(s); });
  return out;
}

/// Crossings plus fixed con-pairs over dense label ids. A link diagram has no
/// fixed pairs; move templates closed by an exterior matching do.
struct StateGraph {
  std::vector<CrossingKind> kinds;
  std::vector<std::array<std::uint32_t, 4>> ends;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> fixed_pairs;
  std::size_t num_labels = 0;
  std::size_t free_loops = 0;

  std::size_t crossing_count() const { return kinds.size(); }
};

inline void check_exponent_range(const StateGraph& g) {
  if (g.crossing_count() > Monomial::kMaxExponent ||
      g.num_labels + g.free_loops > Monomial::kMaxExponent)
    throw std::overflow_error("diagram too large for the monomial exponent range");
}

inline StateGraph make_state_graph(const LinkDiagram& d) {
  require_valid(d);
  auto idx = index_labels(d);
  StateGraph g;
  g.kinds = std::move(idx.kinds);
  g.ends = std::move(idx.ends);
  g.num_labels = idx.labels.size();
  g.free_loops = idx.free_loops;
  check_exponent_range(g);
  return g;
}

/// Builds a graph from crossings and explicit con-pairs; every label must have
/// degree exactly two across crossing slots and pairs.
inline StateGraph make_state_graph(const std::vector<Crossing>& crossings,
                                   const std::vector<std::pair<std::string, std::string>>& pairs,
                                   std::size_t free_loops = 0) {
  StateGraph g;
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<int> degree;
  auto id_of = [&](const std::string& label) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<std::uint32_t>(degree.size()));
    if (inserted) degree.push_back(0);
    ++degree[it->second];
    return it->second;
  };
  for (const auto& c : crossings) {
    g.kinds.push_back(c.kind);
    g.ends.push_back({id_of(c.ends[0]), id_of(c.ends[1]), id_of(c.ends[2]), id_of(c.ends[3])});
  }
  for (const auto& [a, b] : pairs) {
    auto ia = id_of(a);
    auto ib = id_of(b);
    g.fixed_pairs.emplace_back(ia, ib);
  }
  for (const auto& [label, id] : ids)
    if (degree[id] != 2)
      throw InvalidDiagram("label '" + label + "' has degree " + std::to_string(degree[id]) +
                           " in closed fragment");
  g.num_labels = degree.size();
  g.free_loops = free_loops;
  check_exponent_range(g);
  return g;
}

namespace detail {

// Union-find with undo; no path compression so unions can be rolled back.
class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
    history_.reserve(2 * n + 8);
  }

  std::uint32_t find(std::uint32_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    bool bumped = rank_[a] == rank_[b];
    parent_[b] = a;
    if (bumped) ++rank_[a];
    history_.push_back({b, bumped});
    return true;
  }

  std::size_t mark() const { return history_.size(); }

  void rollback(std::size_t mark) {
    while (history_.size() > mark) {
      auto [child, bumped] = history_.back();
      history_.pop_back();
      auto root = parent_[child];
      if (bumped) --rank_[root];
      parent_[child] = child;
    }
  }

 private:
  struct Change {
    std::uint32_t child;
    bool bumped;
  };
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
  std::vector<Change> history_;
};

using MonomialCounts = std::unordered_map<Monomial, std::uint64_t, MonomialHash>;

// Depth-first evaluation of all states below a fixed prefix.
class StateWalker {
 public:
  StateWalker(const StateGraph& g, std::size_t max_smoothings)
      : g_(g), uf_(g.num_labels), max_smoothings_(max_smoothings) {
    for (std::size_t i = 0; i < g.crossing_count(); ++i)
      for (int r = 0; r < 3; ++r)
        weights_.push_back(crossing_weight(g.kinds[i], static_cast<Resolution>(r)));
    base_components_ = g.num_labels;
    for (auto [a, b] : g.fixed_pairs)
      if (uf_.unite(a, b)) --base_components_;
    base_mark_ = uf_.mark();
  }

  /// Walks every completion of `prefix` and adds the weights into `counts`.
  void walk(const std::vector<Resolution>& prefix, MonomialCounts& counts) {
    uf_.rollback(base_mark_);
    std::size_t components = base_components_;
    Monomial weight;
    std::size_t used = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      components -= apply(i, prefix[i]);
      weight *= weights_[3 * i + static_cast<std::size_t>(prefix[i])];
      if (prefix[i] != Resolution::Virtual) ++used;
    }
    if (used > max_smoothings_) return;
    counts_ = &counts;
    descend(prefix.size(), max_smoothings_ - used, weight, components);
  }

 private:
  std::size_t apply(std::size_t i, Resolution r) {
    const auto& e = g_.ends[i];
    const auto& slots = kResolutionSlots[static_cast<std::size_t>(r)];
    std::size_t merged = 0;
    for (const auto& p : slots) merged += uf_.unite(e[p[0]], e[p[1]]) ? 1 : 0;
    return merged;
  }

  void descend(std::size_t i, std::size_t left, Monomial weight, std::size_t components) {
    if (i == g_.crossing_count()) {
      auto loops = static_cast<std::uint32_t>(components + g_.free_loops);
      ++(*counts_)[weight * Monomial::variable(Var::o, loops)];
      return;
    }
    for (auto res : {Resolution::Virtual, Resolution::Smooth1, Resolution::Smooth2}) {
      bool smoothing = res != Resolution::Virtual;
      if (smoothing && left == 0) break;
      auto mark = uf_.mark();
      auto merged = apply(i, res);
      descend(i + 1, smoothing ? left - 1 : left, weight * weights_[3 * i + static_cast<std::size_t>(res)],
              components - merged);
      uf_.rollback(mark);
    }
  }

  const StateGraph& g_;
  RollbackUnionFind uf_;
  std::size_t max_smoothings_;
  std::vector<Monomial> weights_;
  std::size_t base_components_ = 0;
  std::size_t base_mark_ = 0;
  MonomialCounts* counts_ = nullptr;
};

inline Polynomial counts_to_polynomial(const MonomialCounts& counts) {
  std::vector<Term> terms;
  terms.reserve(counts.size());
  for (const auto& [m, c] : counts)
    if (c) terms.push_back({m, Rational(Integer(static_cast<unsigned long>(c)))});
  return Polynomial::from_terms(std::move(terms));
}

}  // namespace detail

struct StateSumOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
  /// Refuse to enumerate more states than this, if set.
  std::optional<Integer> max_states;
};

inline Polynomial state_sum(const StateGraph& g, const Level& level, const StateSumOptions& opts = {}) {
  const std::size_t n = g.crossing_count();
  Integer states = count_states(n, level);
  if (opts.max_states && states > *opts.max_states) throw StateBudgetExceeded(states, *opts.max_states);
  // Per-monomial counts are bounded by the state count.
  if (states > Integer("18446744073709551615"))
    throw StateBudgetExceeded(states, Integer("18446744073709551615"));

  const std::size_t max_smoothings = level.max_smoothings(n);
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());

  if (threads <= 1 || n < 4) {
    detail::MonomialCounts counts;
    detail::StateWalker walker(g, max_smoothings);
    walker.walk({}, counts);
    return detail::counts_to_polynomial(counts);
  }

  // Split on a prefix of the crossings; each prefix is an independent task.
  std::size_t depth = 0;
  for (std::size_t tasks = 1; depth < n && tasks < 16u * threads; ++depth) tasks *= 3;
  std::vector<std::vector<Resolution>> prefixes;
  for_each_state(depth, Level::truncated(static_cast<std::uint32_t>(std::min(max_smoothings, depth))),
                 [&](const State& s) { prefixes.push_back(s); });

  std::atomic<std::size_t> next{0};
  std::vector<detail::MonomialCounts> partial(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      detail::StateWalker walker(g, max_smoothings);
      for (std::size_t i; (i = next.fetch_add(1)) < prefixes.size();) walker.walk(prefixes[i], partial[t]);
    });
  }
  for (auto& th : pool) th.join();
  detail::MonomialCounts total;
  for (const auto& part : partial)
    for (const auto& [m, c] : part) total[m] += c;
  return detail::counts_to_polynomial(total);
}

inline Polynomial state_sum(const LinkDiagram& d, const Level& level, const StateSumOptions& opts = {}) {
  return state_sum(make_state_graph(d), level, opts);
}

/// Number of closed polygons (components of the con-pair multigraph) in a state.
inline std::size_t count_loops(const StateGraph& g, const State& s) {
  if (s.size() != g.crossing_count()) throw std::invalid_argument("state length does not match crossing count");
  detail::RollbackUnionFind uf(g.num_labels);
  std::size_t components = g.num_labels;
  for (auto [a, b] : g.fixed_pairs)
    if (uf.unite(a, b)) --components;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (const auto& p : kResolutionSlots[static_cast<std::size_t>(s[i])])
      if (uf.unite(g.ends[i][p[0]], g.ends[i][p[1]])) --components;
  return components;
}

inline Polynomial evaluate_state(const StateGraph& g, const State& s) {
  Monomial weight;
  for (std::size_t i = 0; i < s.size() && i < g.crossing_count(); ++i)
    weight *= crossing_weight(g.kinds[i], s[i]);
  auto loops = static_cast<std::uint32_t>(count_loops(g, s) + g.free_loops);
  return Polynomial::term(weight * Monomial::variable(Var::o, loops), 1);
}

inline Polynomial evaluate_state(const LinkDiagram& d, const State& s) {
  return evaluate_state(make_state_graph(d), s);
}

}  // namespace vse
