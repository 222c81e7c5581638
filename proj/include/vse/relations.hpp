#pragma once

// Reidemeister-move relations.
//
// A move template is a pair of tangles with the same boundary. Closing both
// sides with a perfect matching of the boundary gives two small closed
// diagrams; the difference of their full state sums must vanish in the
// quotient ring. One relation per (template, matching).

#include <vse/diagram.hpp>
#include <vse/poly.hpp>
#include <vse/statesum.hpp>

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vse {

using ConPair = std::pair<std::string, std::string>;
using ExteriorMatching = std::vector<ConPair>;

struct MoveTemplate {
  std::string name;
  std::vector<Crossing> left;
  std::vector<ConPair> left_pairs;
  std::vector<Crossing> right;
  std::vector<ConPair> right_pairs;
  std::vector<std::string> boundary;
};

namespace detail {
inline Crossing x1(std::string a, std::string b, std::string c, std::string d) {
  return {CrossingKind::X1, {std::move(a), std::move(b), std::move(c), std::move(d)}};
}
inline Crossing x2(std::string a, std::string b, std::string c, std::string d) {
  return {CrossingKind::X2, {std::move(a), std::move(b), std::move(c), std::move(d)}};
}
}  // namespace detail

// Move 2, both shadings. The crossing pair cancels to two parallel arcs.
inline MoveTemplate move21() {
  using detail::x1, detail::x2;
  return {"move21", {x1("a", "b", "f", "e"), x2("d", "e", "f", "c")}, {}, {}, {{"a", "d"}, {"b", "c"}},
          {"a", "b", "c", "d"}};
}
inline MoveTemplate move22() {
  using detail::x1, detail::x2;
  return {"move22", {x2("a", "b", "f", "e"), x1("d", "e", "f", "c")}, {}, {}, {{"a", "d"}, {"b", "c"}},
          {"a", "b", "c", "d"}};
}

// Move 3, both shadings.
inline MoveTemplate move31() {
  using detail::x1, detail::x2;
  return {"move31",
          {x1("a", "b", "h", "g"), x2("i", "e", "f", "g"), x2("h", "c", "d", "i")},
          {},
          {x1("a", "i", "h", "f"), x1("c", "g", "i", "b"), x2("h", "g", "d", "e")},
          {},
          {"a", "b", "c", "d", "e", "f"}};
}
inline MoveTemplate move32() {
  using detail::x1, detail::x2;
  return {"move32",
          {x2("a", "b", "h", "g"), x1("i", "e", "f", "g"), x1("h", "c", "d", "i")},
          {},
          {x2("a", "i", "h", "f"), x2("c", "g", "i", "b"), x1("h", "g", "d", "e")},
          {},
          {"a", "b", "c", "d", "e", "f"}};
}

inline std::vector<MoveTemplate> standard_templates() { return {move21(), move22(), move31(), move32()}; }

/// All perfect matchings of the boundary; the first label is paired with each
/// later label in turn, recursively.
inline std::vector<ExteriorMatching> exterior_matchings(const std::vector<std::string>& boundary) {
  if (boundary.size() % 2 != 0) throw std::invalid_argument("odd number of boundary labels");
  std::vector<ExteriorMatching> out;
  ExteriorMatching current;
  auto rec = [&](auto& self, std::vector<std::string> rest) -> void {
    if (rest.empty()) {
      out.push_back(current);
      return;
    }
    for (std::size_t j = 1; j < rest.size(); ++j) {
      std::vector<std::string> next;
      for (std::size_t i = 1; i < rest.size(); ++i)
        if (i != j) next.push_back(rest[i]);
      current.emplace_back(rest[0], rest[j]);
      self(self, std::move(next));
      current.pop_back();
    }
  };
  rec(rec, boundary);
  return out;
}

namespace detail {
inline void check_matching(const MoveTemplate& t, const ExteriorMatching& m) {
  std::multiset<std::string> want(t.boundary.begin(), t.boundary.end());
  std::multiset<std::string> got;
  for (const auto& [a, b] : m) {
    got.insert(a);
    got.insert(b);
  }
  if (want != got) throw std::invalid_argument("exterior matching does not match the boundary of " + t.name);
}
}  // namespace detail

/// Full state sum of one side of a template closed by `m`.
inline Polynomial closed_side_sum(const std::vector<Crossing>& crossings, const std::vector<ConPair>& pairs,
                                  const ExteriorMatching& m) {
  std::vector<ConPair> all = pairs;
  all.insert(all.end(), m.begin(), m.end());
  return state_sum(make_state_graph(crossings, all), Level::full());
}

/// StateSum(Left * closure) - StateSum(Right * closure).
inline Polynomial move_relation(const MoveTemplate& t, const ExteriorMatching& m) {
  detail::check_matching(t, m);
  return closed_side_sum(t.left, t.left_pairs, m) - closed_side_sum(t.right, t.right_pairs, m);
}

/// Relations of every template and matching in generation order, unnormalized.
inline std::vector<Polynomial> raw_relations(const std::vector<MoveTemplate>& templates = standard_templates()) {
  std::vector<Polynomial> out;
  for (const auto& t : templates)
    for (const auto& m : exterior_matchings(t.boundary)) out.push_back(move_relation(t, m));
  return out;
}

/// Integer content removed; the sign is kept, so a relation and its negation
/// stay distinct generators.
inline Polynomial canonical_relation(const Polynomial& p) {
  auto q = p.primitive();
  return q.is_zero() || sgn(p.leading_coeff()) == sgn(q.leading_coeff()) ? q : -q;
}

/// Canonicalized, deduplicated relations; first occurrence order is kept and
/// zero relations are dropped.
inline std::vector<Polynomial> distinct_relations(const std::vector<Polynomial>& raw) {
  std::vector<Polynomial> out;
  for (const auto& r : raw) {
    auto c = canonical_relation(r);
    if (c.is_zero()) continue;
    bool seen = false;
    for (const auto& q : out)
      if (q == c) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<Polynomial> generate_all_relations() { return distinct_relations(raw_relations()); }

}  // namespace vse
