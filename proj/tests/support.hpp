#pragma once

// Helpers shared by the test suites: fixture paths, random diagrams, move
// insertion, and a brute-force state sum written independently of the
// enumerator in statesum.hpp.

#include <vse/vse.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

#ifndef VSE_SOURCE_DIR
#error "VSE_SOURCE_DIR must point at the repository root"
#endif

namespace vse::test {

inline std::string data_path(const std::string& rel) { return std::string(VSE_SOURCE_DIR) + "/data/" + rel; }
inline LinkDiagram fixture(const std::string& name) { return load_link(data_path("links/" + name)); }

inline const std::vector<std::string>& micro_fixtures() {
  static const std::vector<std::string> names = {"unknot.vse",  "unlink2.vse", "kink_x1.vse",
                                                 "kink_x1_virtual.vse", "kink_x2.vse", "hopf_x1.vse"};
  return names;
}

/// Uniformly random slot pairing on n crossings with random kinds; always
/// valid, not necessarily planar.
inline LinkDiagram random_diagram(std::mt19937_64& rng, std::size_t n, std::size_t loops = 0) {
  std::vector<std::size_t> slots(4 * n);
  for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
  std::shuffle(slots.begin(), slots.end(), rng);
  LinkDiagram d;
  d.crossings.resize(n);
  std::bernoulli_distribution coin(0.5);
  for (auto& c : d.crossings) c.kind = coin(rng) ? CrossingKind::X1 : CrossingKind::X2;
  for (std::size_t e = 0; e < 2 * n; ++e) {
    const std::string label = "e" + std::to_string(e);
    for (std::size_t s : {slots[2 * e], slots[2 * e + 1]}) d.crossings[s / 4].ends[s % 4] = label;
  }
  d.free_loops = loops;
  return d;
}

/// Every label of d, once each, in first-occurrence order.
inline std::vector<std::string> edge_labels(const LinkDiagram& d) {
  std::vector<std::string> out;
  for (const auto& c : d.crossings)
    for (const auto& e : c.ends)
      if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  return out;
}

namespace detail {
inline void rename_nth(LinkDiagram& d, const std::string& label, int which, const std::string& to) {
  int seen = 0;
  for (auto& c : d.crossings)
    for (auto& e : c.ends)
      if (e == label && seen++ == which) {
        e = to;
        return;
      }
}
}  // namespace detail

/// Move-2 insertion between edges u and v: u becomes the arc a..d and v the
/// arc b..c of the template's left side. With u == v the two arcs are the two
/// halves of one edge, joined through d = b.
inline LinkDiagram insert_move2(const LinkDiagram& src, const std::string& u, const std::string& v,
                                CrossingKind first, const std::string& tag = "r") {
  LinkDiagram d = src;
  const CrossingKind second = first == CrossingKind::X1 ? CrossingKind::X2 : CrossingKind::X1;
  const std::string a = tag + "a", b = tag + "b", c = tag + "c", dd = tag + "d", e = tag + "e", f = tag + "f";
  if (u == v) {
    detail::rename_nth(d, u, 0, a);
    detail::rename_nth(d, u, 0, c);
    d.crossings.push_back({first, {a, dd, f, e}});
    d.crossings.push_back({second, {dd, e, f, c}});
  } else {
    detail::rename_nth(d, u, 0, a);
    detail::rename_nth(d, u, 0, dd);
    detail::rename_nth(d, v, 0, b);
    detail::rename_nth(d, v, 0, c);
    d.crossings.push_back({first, {a, b, f, e}});
    d.crossings.push_back({second, {dd, e, f, c}});
  }
  return d;
}

/// Cuts each edge in `edges` and plugs in a template side. The ends of
/// edges[i] become boundary[2i] and boundary[2i+1]; interior labels get `tag`.
inline LinkDiagram embed_tangle(const LinkDiagram& src, const std::vector<std::string>& edges,
                                const std::vector<Crossing>& side, const std::vector<std::string>& boundary,
                                const std::string& tag = "t") {
  LinkDiagram d = src;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    detail::rename_nth(d, edges[i], 0, tag + "_" + boundary[2 * i]);
    detail::rename_nth(d, edges[i], 0, tag + "_" + boundary[2 * i + 1]);
  }
  for (Crossing c : side) {
    for (auto& e : c.ends)
      e = std::find(boundary.begin(), boundary.end(), e) != boundary.end() ? tag + "_" + e : tag + e;
    d.crossings.push_back(c);
  }
  return d;
}

/// A closed diagram from template crossings plus the matching as direct edges:
/// each matched pair (x, y) is realised by renaming y to x.
inline LinkDiagram close_side(const std::vector<Crossing>& crossings, const ExteriorMatching& m) {
  LinkDiagram d;
  d.crossings = crossings;
  for (const auto& [x, y] : m)
    for (auto& c : d.crossings)
      for (auto& e : c.ends)
        if (e == y) e = x;
  return d;
}

/// State sum over all 3^n states by a base-3 counter, loops counted by label
/// relinking, no shared code with the library enumerator.
inline Polynomial brute_state_sum(const LinkDiagram& d, std::optional<std::uint32_t> k = std::nullopt) {
  using namespace vars;
  const std::size_t n = d.crossings.size();
  std::map<std::string, int> id;
  for (const auto& c : d.crossings)
    for (const auto& e : c.ends) id.emplace(e, static_cast<int>(id.size()));
  const int labels = static_cast<int>(id.size());
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;

  Polynomial sum;
  std::vector<int> digit(n, 0);
  for (std::size_t s = 0; s < total; ++s) {
    std::size_t x = s, smooth = 0;
    for (std::size_t i = 0; i < n; ++i, x /= 3) {
      digit[i] = static_cast<int>(x % 3);
      smooth += digit[i] != 2;
    }
    if (k && smooth > *k) continue;

    // Each label has two incident con-pairs; a loop is a closed walk.
    std::vector<std::vector<int>> nbr(labels);
    Polynomial w(1);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& e = d.crossings[i].ends;
      int v0 = id[e[0]], v1 = id[e[1]], v2 = id[e[2]], v3 = id[e[3]];
      std::array<int, 4> p;
      const bool shaded = d.crossings[i].kind == CrossingKind::X1;
      if (digit[i] == 0) {
        p = {v0, v1, v2, v3};
        w = w * M * (shaded ? A : X);
      } else if (digit[i] == 1) {
        p = {v0, v3, v1, v2};
        w = w * M * (shaded ? B : Y);
      } else {
        p = {v0, v2, v1, v3};
        w = w * (shaded ? F : Z);
      }
      nbr[p[0]].push_back(p[1]);
      nbr[p[1]].push_back(p[0]);
      nbr[p[2]].push_back(p[3]);
      nbr[p[3]].push_back(p[2]);
    }
    std::vector<int> comp(labels, -1);
    int loops = 0;
    for (int v = 0; v < labels; ++v) {
      if (comp[v] >= 0) continue;
      std::vector<int> queue{v};
      comp[v] = loops;
      for (std::size_t q = 0; q < queue.size(); ++q)
        for (int y : nbr[queue[q]])
          if (comp[y] < 0) {
            comp[y] = loops;
            queue.push_back(y);
          }
      ++loops;
    }
    sum = sum + w * pow(o, static_cast<unsigned>(loops + d.free_loops));
  }
  return sum;
}

/// Shared store: every suite reads the same cache directory.
inline BasisStore& shared_store() {
  static BasisStore store;
  return store;
}

}  // namespace vse::test
