#pragma once

/**
 * @file groebner.hpp
 * @brief Buchberger's algorithm and normal forms for lex(A,B,F,X,Y,Z,M,o).
 *
 * Pairs are processed with the normal selection strategy (smallest lcm of
 * leading monomials first, ties by creation index). Useless pairs are
 * discarded with the Gebauer-Moeller installation of Buchberger's coprime and
 * chain criteria. The result is always the reduced monic basis, which is
 * unique for the ideal and order, sorted by ascending leading monomial.
 */

#include <vse/poly.hpp>
#include <vse/statesum.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vse {

struct GroebnerBasis {
  std::vector<Polynomial> polynomials;
  Level level = Level::full();
  /// Set when the basis was loaded from unverified reference data.
  bool provisional = false;

  std::size_t size() const { return polynomials.size(); }
};

class GroebnerTimeout : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Index of the first divisor whose leading monomial divides m, or -1.
inline std::ptrdiff_t find_divisor(Monomial m, const std::vector<Monomial>& leads) {
  for (std::size_t i = 0; i < leads.size(); ++i)
    if (leads[i].divides(m)) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

inline Polynomial reduce_by(const Polynomial& p, const std::vector<const Polynomial*>& divisors) {
  std::vector<Monomial> leads;
  leads.reserve(divisors.size());
  for (auto* g : divisors) leads.push_back(g->leading_monomial());

  // Pending terms live in a tree ordered by descending monomial; only the
  // divisor's terms are touched per step, never the whole pending set.
  std::map<Monomial, Rational, std::greater<>> work;
  for (const auto& t : p.terms()) work.emplace_hint(work.end(), t.monomial, t.coeff);
  std::vector<Term> remainder;
  Rational scaled;
  while (!work.empty()) {
    auto top = work.begin();
    auto d = find_divisor(top->first, leads);
    if (d < 0) {
      remainder.push_back({top->first, std::move(top->second)});
      work.erase(top);
      continue;
    }
    const Polynomial& g = *divisors[static_cast<std::size_t>(d)];
    Rational c = top->second / g.leading_coeff();
    Monomial shift = top->first / g.leading_monomial();
    work.erase(top);
    auto hint = work.begin();
    for (std::size_t k = 1; k < g.size(); ++k) {
      const Term& gt = g.terms()[k];
      Monomial m = gt.monomial * shift;
      scaled = c * gt.coeff;
      hint = work.lower_bound(m);
      if (hint != work.end() && hint->first == m) {
        hint->second -= scaled;
        if (sgn(hint->second) == 0) hint = work.erase(hint);
      } else {
        hint = work.emplace_hint(hint, m, -scaled);
      }
    }
  }
  return Polynomial::from_sorted_terms(std::move(remainder));
}

}  // namespace detail

/// Fully reduced remainder of p on division by `divisors` (zero entries ignored).
inline Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& divisors) {
  std::vector<const Polynomial*> ptrs;
  for (const auto& g : divisors)
    if (!g.is_zero()) ptrs.push_back(&g);
  return detail::reduce_by(p, ptrs);
}

inline Polynomial reduce(const Polynomial& p, const GroebnerBasis& basis) { return reduce(p, basis.polynomials); }

inline Polynomial s_polynomial(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("S-polynomial of a zero polynomial");
  Monomial l = lcm(p.leading_monomial(), q.leading_monomial());
  Polynomial a = p.mul_term(l / p.leading_monomial(), 1 / p.leading_coeff());
  return Polynomial::axpy(a, -1 / q.leading_coeff(), l / q.leading_monomial(), q);
}

/// Interreduces a minimal set of generators into the reduced monic basis.
inline std::vector<Polynomial> interreduce(std::vector<Polynomial> polys) {
  for (auto& p : polys) p = p.monic();
  polys.erase(std::remove_if(polys.begin(), polys.end(), [](const Polynomial& p) { return p.is_zero(); }),
              polys.end());
  // Drop elements whose leading monomial another element's divides; keep the
  // earliest of exact ties.
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < polys.size() && !redundant; ++j) {
      if (i == j) continue;
      Monomial li = polys[i].leading_monomial(), lj = polys[j].leading_monomial();
      if (lj.divides(li) && (lj != li || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(polys[i]);
  }
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const Polynomial*> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(&minimal[j]);
    // The leading term is untouched; only the tail is reduced.
    const Term& lt = minimal[i].leading_term();
    Polynomial tail = minimal[i] - Polynomial::term(lt.monomial, lt.coeff);
    Polynomial t = detail::reduce_by(tail, others);
    reduced.push_back((Polynomial::term(lt.monomial, lt.coeff) + t).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [](const Polynomial& a, const Polynomial& b) {
    return a.leading_monomial() < b.leading_monomial();
  });
  return reduced;
}

enum class PairStrategy {
  /// Smallest lcm of leading monomials first.
  Normal,
  /// Smallest sugar degree first, lcm as tie-break.
  Sugar,
};

struct BuchbergerOptions {
  PairStrategy strategy = PairStrategy::Normal;
  /// Abort with GroebnerTimeout after this long, if set.
  std::optional<std::chrono::milliseconds> time_budget;
  /// Progress sink, called periodically while pairs are being reduced.
  std::function<void(const std::string&)> trace;
};

struct BuchbergerStats {
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t pairs_discarded = 0;
  std::size_t max_basis = 0;
};

namespace detail {

class Buchberger {
 public:
  explicit Buchberger(const BuchbergerOptions& opts) : opts_(opts), start_(std::chrono::steady_clock::now()) {}

  // Generators are added one at a time; the basis is completed and
  // interreduced after each, and the next generator starts from that reduced
  // basis with an empty pair queue.
  std::vector<Polynomial> run(const std::vector<Polynomial>& generators, std::vector<Polynomial> seed = {}) {
    reseed(std::move(seed));
    for (const auto& g : generators) {
      auto h = reduce_active(g);
      if (h.is_zero()) continue;
      insert(h.monic(), total_degree(h));
      complete();
      reseed(interreduce(active_basis()));
    }
    return active_basis();
  }

  BuchbergerStats stats;

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint32_t sugar = 0;
  };

  static std::uint32_t total_degree(const Polynomial& p) {
    std::uint32_t d = 0;
    for (const auto& t : p.terms()) d = std::max(d, t.monomial.total_degree());
    return d;
  }

  Pair make_pair(std::size_t i, std::size_t j) const {
    Monomial l = lcm(lead(i), lead(j));
    auto deg = l.total_degree();
    auto s = std::max(sugar_[i] + deg - lead(i).total_degree(), sugar_[j] + deg - lead(j).total_degree());
    return {i, j, l, s};
  }

  void complete() {
    const bool sugar = opts_.strategy == PairStrategy::Sugar;
    while (!pairs_.empty()) {
      check_time();
      auto it = std::min_element(pairs_.begin(), pairs_.end(), [sugar](const Pair& a, const Pair& b) {
        if (sugar && a.sugar != b.sugar) return a.sugar < b.sugar;
        if (a.lcm != b.lcm) return a.lcm < b.lcm;
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
      });
      Pair pr = *it;
      pairs_.erase(it);
      ++stats.pairs_reduced;
      auto h = reduce_active(s_polynomial(polys_[pr.i], polys_[pr.j]));
      if (opts_.trace && stats.pairs_reduced % 100 == 0)
        opts_.trace("pairs=" + std::to_string(stats.pairs_reduced) + " queue=" + std::to_string(pairs_.size()) +
                    " basis=" + std::to_string(std::count(active_.begin(), active_.end(), true)));
      if (h.is_zero()) {
        ++stats.zero_reductions;
        continue;
      }
      insert(h.monic(), pr.sugar);
    }
  }

  std::vector<Polynomial> active_basis() const {
    std::vector<Polynomial> basis;
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i]) basis.push_back(polys_[i]);
    return basis;
  }

  // Restart from a complete basis: none of its pairs need treatment.
  void reseed(std::vector<Polynomial> basis) {
    polys_ = std::move(basis);
    active_.assign(polys_.size(), true);
    sugar_.clear();
    for (const auto& p : polys_) sugar_.push_back(total_degree(p));
    pairs_.clear();
  }

  void check_time() const {
    if (opts_.time_budget && std::chrono::steady_clock::now() - start_ > *opts_.time_budget)
      throw GroebnerTimeout("Buchberger exceeded its time budget");
  }

  Polynomial reduce_active(const Polynomial& p) const {
    std::vector<const Polynomial*> g;
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i]) g.push_back(&polys_[i]);
    return reduce_by(p, g);
  }

  Monomial lead(std::size_t i) const { return polys_[i].leading_monomial(); }

  // Gebauer-Moeller update for a new element h.
  void insert(Polynomial h, std::uint32_t sugar) {
    const std::size_t hi = polys_.size();
    const Monomial lh = h.leading_monomial();
    polys_.push_back(std::move(h));
    active_.push_back(true);
    sugar_.push_back(std::max(sugar, lh.total_degree()));

    std::vector<Pair> candidates;
    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g]) candidates.push_back(make_pair(g, hi));

    // Chain criterion among the new pairs: keep (g,h) unless another new pair's
    // lcm properly divides it; coprime pairs are kept here and dropped below.
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const auto& p = candidates[a];
      bool keep = true;
      if (!coprime(lead(p.i), lh)) {
        for (std::size_t b = 0; b < candidates.size() && keep; ++b) {
          if (a == b) continue;
          const auto& q = candidates[b];
          if (q.lcm.divides(p.lcm) && (q.lcm != p.lcm || b < a)) keep = false;
        }
      }
      if (keep) kept.push_back(p);
    }
    std::vector<Pair> fresh;
    for (const auto& p : kept) {
      if (coprime(lead(p.i), lh)) {
        ++stats.pairs_discarded;
        continue;
      }
      fresh.push_back(p);
    }
    stats.pairs_discarded += candidates.size() - kept.size();

    // Old pairs whose lcm is divisible by lh, with both lcm(g,h) differing.
    std::vector<Pair> old;
    for (const auto& p : pairs_) {
      if (lh.divides(p.lcm) && lcm(lead(p.i), lh) != p.lcm && lcm(lead(p.j), lh) != p.lcm) {
        ++stats.pairs_discarded;
        continue;
      }
      old.push_back(p);
    }
    pairs_ = std::move(old);
    pairs_.insert(pairs_.end(), fresh.begin(), fresh.end());

    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g] && lh.divides(lead(g))) active_[g] = false;
    stats.max_basis = std::max(stats.max_basis, static_cast<std::size_t>(std::count(active_.begin(), active_.end(), true)));
  }

  BuchbergerOptions opts_;
  std::chrono::steady_clock::time_point start_;
  std::vector<Polynomial> polys_;
  std::vector<bool> active_;
  std::vector<std::uint32_t> sugar_;
  std::vector<Pair> pairs_;
};

}  // namespace detail

/// Largest monomial dividing every term of every generator.
inline Monomial common_monomial_factor(const std::vector<Polynomial>& polys) {
  std::optional<Monomial> g;
  for (const auto& p : polys)
    for (const auto& t : p.terms()) g = g ? gcd(*g, t.monomial) : t.monomial;
  return g.value_or(Monomial{});
}

/// Reduced monic Groebner basis of the ideal generated by `generators`.
///
/// A monomial m common to all generators is factored out first: the reduced
/// basis of m*J is m times the reduced basis of J.
inline GroebnerBasis buchberger(const std::vector<Polynomial>& generators, const BuchbergerOptions& opts = {},
                                BuchbergerStats* stats = nullptr) {
  std::vector<Polynomial> gens;
  for (const auto& g : generators)
    if (!g.is_zero()) gens.push_back(g);
  Monomial common = common_monomial_factor(gens);
  if (!common.is_one()) {
    for (auto& g : gens) {
      std::vector<Term> terms;
      for (const auto& t : g.terms()) terms.push_back({t.monomial / common, t.coeff});
      g = Polynomial::from_sorted_terms(std::move(terms));
    }
  }
  detail::Buchberger engine(opts);
  GroebnerBasis b;
  b.polynomials = engine.run(gens);
  if (!common.is_one())
    for (auto& p : b.polynomials) p = p.mul_term(common, 1);
  if (stats) *stats = engine.stats;
  return b;
}

/// Reduced basis of the ideal generated by a complete basis `base` together
/// with `extra`. Pairs inside `base` are never formed.
inline GroebnerBasis extend_basis(const GroebnerBasis& base, const std::vector<Polynomial>& extra,
                                  const BuchbergerOptions& opts = {}, BuchbergerStats* stats = nullptr) {
  detail::Buchberger engine(opts);
  GroebnerBasis b;
  b.polynomials = interreduce(engine.run(extra, base.polynomials));
  if (stats) *stats = engine.stats;
  return b;
}

/// Every S-polynomial reduces to zero.
inline bool is_groebner_basis(const std::vector<Polynomial>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!reduce(s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
  return true;
}

/// No term of any element is divisible by another element's leading monomial,
/// and all leading coefficients are one.
inline bool is_reduced_basis(const std::vector<Polynomial>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].leading_coeff() != 1) return false;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : basis[i].terms())
        if (basis[j].leading_monomial().divides(t.monomial)) return false;
    }
  }
  return true;
}

struct ReferenceCheck {
  std::string name;
  bool passed = false;
  Polynomial remainder;
};

struct ReferenceReport {
  /// Each reference polynomial reduced modulo the basis.
  std::vector<ReferenceCheck> reference_in_basis;
  /// Each basis element divided by the reference list.
  std::vector<ReferenceCheck> basis_in_reference;

  bool reference_in_basis_ok() const {
    return std::all_of(reference_in_basis.begin(), reference_in_basis.end(), [](auto& c) { return c.passed; });
  }
  bool basis_in_reference_ok() const {
    return std::all_of(basis_in_reference.begin(), basis_in_reference.end(), [](auto& c) { return c.passed; });
  }
  bool all_passed() const { return reference_in_basis_ok() && basis_in_reference_ok(); }
};

/// Mutual membership between a computed basis and a reference list. The
/// reverse direction treats the reference list as a candidate basis.
inline ReferenceReport verify_against_reference(const GroebnerBasis& basis, const std::vector<Polynomial>& reference,
                                                const std::vector<std::string>& names = {}) {
  ReferenceReport report;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    auto r = reduce(reference[i], basis);
    std::string name = i < names.size() ? names[i] : "ref_" + std::to_string(i + 1);
    report.reference_in_basis.push_back({name, r.is_zero(), r});
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto r = reduce(basis.polynomials[i], reference);
    report.basis_in_reference.push_back({"basis_" + std::to_string(i + 1), r.is_zero(), r});
  }
  return report;
}

}  // namespace vse
