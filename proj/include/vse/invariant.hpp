#pragma once

// The invariant pipeline: eta_k(L) = reduce(state_sum(L, k), B_k).
// Also the bracket specialization and an independent bracket oracle used to
// cross-check the state-sum engine.

#include <vse/basis_store.hpp>
#include <vse/diagram.hpp>
#include <vse/poly.hpp>
#include <vse/statesum.hpp>

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vse {

struct InvariantResult {
  std::string id;
  Level level = Level::full();
  Polynomial value;
  Integer state_count;
  std::chrono::nanoseconds timing{0};
  /// The basis came from unverified reference data.
  bool provisional = false;
};

/// Default state budget for the full level, 3^14.
inline const Integer kDefaultFullStateBudget = 4782969;

struct EtaOptions {
  unsigned threads = 1;
  /// Unset: 3^14 at the full level, unlimited at finite levels.
  std::optional<Integer> max_states;
};

inline InvariantResult eta(const LinkDiagram& d, const Level& level, BasisStore& store, const EtaOptions& opts = {},
                           std::string id = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  auto g = make_state_graph(d);
  InvariantResult r;
  r.id = std::move(id);
  r.level = level;
  r.state_count = count_states(d.crossings.size(), level);

  StateSumOptions so;
  so.threads = opts.threads;
  so.max_states = opts.max_states;
  if (!so.max_states && level.is_full()) so.max_states = kDefaultFullStateBudget;
  auto sum = state_sum(g, level, so);

  const auto& basis = store.get(level);
  r.value = reduce(sum, basis);
  r.provisional = basis.provisional;
  r.timing = std::chrono::steady_clock::now() - t0;
  return r;
}

enum class Verdict { Distinguished, EqualAtLevel };

inline std::string_view to_string(Verdict v) { return v == Verdict::Distinguished ? "DISTINGUISHED" : "EQUAL-at-level"; }

struct Comparison {
  Verdict verdict;
  InvariantResult a, b;
};

/// One-sided: equal values never certify that the links are equivalent.
inline Comparison compare(const LinkDiagram& d1, const LinkDiagram& d2, const Level& level, BasisStore& store,
                          const EtaOptions& opts = {}) {
  auto a = eta(d1, level, store, opts, "a");
  auto b = eta(d2, level, store, opts, "b");
  Verdict v = a.value == b.value ? Verdict::EqualAtLevel : Verdict::Distinguished;
  return {v, std::move(a), std::move(b)};
}

/// M -> 1, X -> A, Y -> B, F -> 0, Z -> 0.
inline Polynomial bracket_specialize(const Polynomial& p) {
  using namespace vars;
  return substitute(p, {{Var::M, Polynomial(1)}, {Var::X, A}, {Var::Y, B}, {Var::F, Polynomial(0)},
                        {Var::Z, Polynomial(0)}});
}

class OracleBudgetExceeded : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two-smoothing bracket state sum over all 2^n states. Smoothing (ab)(cd)
/// weighs A and (ad)(bc) weighs B at every crossing; loops are counted by a
/// walk over an explicit adjacency list.
inline Polynomial kauffman_bracket_oracle(const LinkDiagram& d, std::size_t max_crossings = 16) {
  require_valid(d);
  const std::size_t n = d.crossings.size();
  if (n > max_crossings)
    throw OracleBudgetExceeded("bracket oracle limited to " + std::to_string(max_crossings) + " crossings, got " +
                               std::to_string(n));

  std::map<std::string, int> id;
  for (const auto& c : d.crossings)
    for (const auto& e : c.ends) id.emplace(e, static_cast<int>(id.size()));
  const int labels = static_cast<int>(id.size());

  // Exponents of A, B and o -> coefficient.
  std::map<std::array<unsigned, 3>, long> acc;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::vector<int>> adj(labels);
    unsigned a_count = 0, b_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& e = d.crossings[i].ends;
      int v[4] = {id[e[0]], id[e[1]], id[e[2]], id[e[3]]};
      auto join = [&](int x, int y) {
        adj[x].push_back(y);
        adj[y].push_back(x);
      };
      if (mask >> i & 1) {
        join(v[0], v[3]);
        join(v[1], v[2]);
        ++b_count;
      } else {
        join(v[0], v[1]);
        join(v[2], v[3]);
        ++a_count;
      }
    }
    std::vector<char> seen(labels, 0);
    unsigned loops = 0;
    for (int s = 0; s < labels; ++s) {
      if (seen[s]) continue;
      ++loops;
      std::vector<int> stack{s};
      seen[s] = 1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[x])
          if (!seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
      }
    }
    ++acc[{a_count, b_count, loops + static_cast<unsigned>(d.free_loops)}];
  }

  using namespace vars;
  Polynomial out;
  for (const auto& [e, c] : acc) out = out + Polynomial(c) * pow(A, e[0]) * pow(B, e[1]) * pow(o, e[2]);
  return out;
}

}  // namespace vse
