#pragma once

/**
 * @file poly.hpp
 * @brief Exact sparse multivariate polynomials in Q[A,B,F,X,Y,Z,M,o].
 *
 * The variable set is fixed. A monomial packs its eight exponents into one
 * 128-bit word, 16 bits per variable with A in the most significant lane, so
 * integer comparison of the packed words is exactly the lexicographic order
 * A > B > F > X > Y > Z > M > o, and monomial multiplication is one addition.
 *
 * Polynomials keep their terms in strictly descending monomial order with no
 * zero coefficients; that makes equality, leading terms and printing trivial.
 */

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace vse {

using Rational = mpq_class;
using Integer = mpz_class;

enum class Var : std::uint8_t { A = 0, B, F, X, Y, Z, M, o };

inline constexpr std::size_t kNumVars = 8;
inline constexpr std::array<char, kNumVars> kVarNames{'A', 'B', 'F', 'X', 'Y', 'Z', 'M', 'o'};
inline constexpr std::array<Var, kNumVars> kAllVars{Var::A, Var::B, Var::F, Var::X,
                                                    Var::Y, Var::Z, Var::M, Var::o};

inline std::optional<Var> var_from_char(char c) {
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (kVarNames[i] == c) return static_cast<Var>(i);
  return std::nullopt;
}

namespace detail {
constexpr unsigned __int128 lane_high_bits() {
  unsigned __int128 h = 0;
  for (unsigned i = 0; i < kNumVars; ++i) h |= static_cast<unsigned __int128>(0x8000) << (i * 16);
  return h;
}
}  // namespace detail

class Monomial {
 public:
  using Word = unsigned __int128;
  static constexpr unsigned kLaneBits = 16;
  static constexpr std::uint32_t kMaxExponent = 0x7FFF;

  constexpr Monomial() = default;

  static Monomial variable(Var v, std::uint32_t exponent = 1) {
    check_exponent(exponent);
    Monomial m;
    m.bits_ = static_cast<Word>(exponent) << shift(v);
    return m;
  }

  static Monomial from_exponents(const std::array<std::uint32_t, kNumVars>& e) {
    Monomial m;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      check_exponent(e[i]);
      m.bits_ |= static_cast<Word>(e[i]) << shift(static_cast<Var>(i));
    }
    return m;
  }

  static constexpr Monomial from_packed(Word w) {
    Monomial m;
    m.bits_ = w;
    return m;
  }

  constexpr Word packed() const { return bits_; }

  std::uint32_t exponent(Var v) const {
    return static_cast<std::uint32_t>((bits_ >> shift(v)) & kLaneMask);
  }

  std::array<std::uint32_t, kNumVars> exponents() const {
    std::array<std::uint32_t, kNumVars> e{};
    for (std::size_t i = 0; i < kNumVars; ++i) e[i] = exponent(static_cast<Var>(i));
    return e;
  }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (auto v : kAllVars) d += exponent(v);
    return d;
  }

  constexpr bool is_one() const { return bits_ == 0; }

  /// True when this monomial divides `other`.
  bool divides(Monomial other) const {
    return (((other.bits_ | kHighBits) - bits_) & kHighBits) == kHighBits;
  }

  Monomial operator*(Monomial other) const {
    Word sum = bits_ + other.bits_;
    if ((sum & kHighBits) != 0) throw std::overflow_error("monomial exponent overflow");
    return from_packed(sum);
  }

  Monomial& operator*=(Monomial other) { return *this = *this * other; }

  /// Exact quotient; requires `other.divides(*this)`.
  Monomial operator/(Monomial other) const { return from_packed(bits_ - other.bits_); }

  friend Monomial lcm(Monomial a, Monomial b) {
    Monomial m;
    for (auto v : kAllVars)
      m.bits_ |= static_cast<Word>(std::max(a.exponent(v), b.exponent(v))) << shift(v);
    return m;
  }

  friend Monomial gcd(Monomial a, Monomial b) {
    Monomial m;
    for (auto v : kAllVars)
      m.bits_ |= static_cast<Word>(std::min(a.exponent(v), b.exponent(v))) << shift(v);
    return m;
  }

  friend bool coprime(Monomial a, Monomial b) { return gcd(a, b).is_one(); }

  friend constexpr bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }
  friend constexpr std::strong_ordering operator<=>(Monomial a, Monomial b) {
    if (a.bits_ < b.bits_) return std::strong_ordering::less;
    if (a.bits_ > b.bits_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  static constexpr Word kLaneMask = 0xFFFF;
  static constexpr Word kHighBits = detail::lane_high_bits();

  static constexpr unsigned shift(Var v) {
    return (static_cast<unsigned>(kNumVars) - 1 - static_cast<unsigned>(v)) * kLaneBits;
  }
  static void check_exponent(std::uint32_t e) {
    if (e > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
  }

  Word bits_{0};
};

struct MonomialHash {
  std::size_t operator()(Monomial m) const noexcept {
    auto w = m.packed();
    auto lo = static_cast<std::uint64_t>(w);
    auto hi = static_cast<std::uint64_t>(w >> 64);
    return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9E3779B97F4A7C15ULL));
  }
};

struct Term {
  Monomial monomial;
  Rational coeff;
};

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT: implicit constant lift
  Polynomial(const Rational& c) : Polynomial(term(Monomial{}, c)) {}  // NOLINT

  static Polynomial variable(Var v) { return term(Monomial::variable(v), 1); }

  static Polynomial term(Monomial m, const Rational& c) {
    Polynomial p;
    if (sgn(c) != 0) p.terms_.push_back({m, c});
    if (!p.terms_.empty()) p.terms_.back().coeff.canonicalize();
    return p;
  }

  /// Builds a polynomial from terms in any order, combining like monomials.
  static Polynomial from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.monomial > b.monomial; });
    Polynomial p;
    for (auto& t : terms) {
      t.coeff.canonicalize();
      if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
        p.terms_.back().coeff += t.coeff;
        if (sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
      } else if (sgn(t.coeff) != 0) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  /// Terms must already be strictly descending with nonzero coefficients.
  static Polynomial from_sorted_terms(std::vector<Term> terms) {
    Polynomial p;
    p.terms_ = std::move(terms);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  const Term& leading_term() const { return terms_.front(); }
  Monomial leading_monomial() const { return terms_.front().monomial; }
  const Rational& leading_coeff() const { return terms_.front().coeff; }

  std::uint32_t degree(Var v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.monomial.exponent(v));
    return d;
  }

  Rational coefficient(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Monomial key) { return t.monomial > key; });
    if (it != terms_.end() && it->monomial == m) return it->coeff;
    return 0;
  }

  friend bool operator==(const Polynomial& p, const Polynomial& q) {
    if (p.terms_.size() != q.terms_.size()) return false;
    for (std::size_t i = 0; i < p.terms_.size(); ++i)
      if (p.terms_[i].monomial != q.terms_[i].monomial || p.terms_[i].coeff != q.terms_[i].coeff)
        return false;
    return true;
  }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    return axpy(p, 1, Monomial{}, q);
  }
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) {
    return axpy(p, -1, Monomial{}, q);
  }
  Polynomial& operator+=(const Polynomial& q) { return *this = *this + q; }
  Polynomial& operator-=(const Polynomial& q) { return *this = *this - q; }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    if (q.size() == 1) return p.mul_term(q.terms_[0].monomial, q.terms_[0].coeff);
    if (p.size() == 1) return q.mul_term(p.terms_[0].monomial, p.terms_[0].coeff);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(p.size() * q.size());
    for (const auto& a : p.terms_)
      for (const auto& b : q.terms_) acc[a.monomial * b.monomial] += a.coeff * b.coeff;
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (sgn(c) != 0) out.push_back({m, std::move(c)});
    std::sort(out.begin(), out.end(),
              [](const Term& a, const Term& b) { return a.monomial > b.monomial; });
    return from_sorted_terms(std::move(out));
  }
  Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }

  Polynomial mul_term(Monomial m, const Rational& c) const {
    if (sgn(c) == 0) return {};
    Polynomial r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.monomial * m, t.coeff * c});
    return r;
  }

  /// Returns p + c * m * q in one merge pass.
  static Polynomial axpy(const Polynomial& p, const Rational& c, Monomial m, const Polynomial& q) {
    if (sgn(c) == 0 || q.is_zero()) return p;
    std::vector<Term> out;
    out.reserve(p.size() + q.size());
    auto i = p.terms_.begin();
    auto j = q.terms_.begin();
    while (i != p.terms_.end() || j != q.terms_.end()) {
      if (j == q.terms_.end()) {
        out.push_back(*i++);
        continue;
      }
      Monomial qm = j->monomial * m;
      if (i == p.terms_.end() || qm > i->monomial) {
        out.push_back({qm, c * j->coeff});
        ++j;
      } else if (i->monomial > qm) {
        out.push_back(*i++);
      } else {
        Rational s = i->coeff + c * j->coeff;
        if (sgn(s) != 0) out.push_back({qm, std::move(s)});
        ++i;
        ++j;
      }
    }
    return from_sorted_terms(std::move(out));
  }

  /// Scales so the leading coefficient is 1.
  Polynomial monic() const {
    if (is_zero()) return {};
    Rational inv = 1 / leading_coeff();
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff *= inv;
    return r;
  }

  /// Scales to coprime integer coefficients with a positive leading coefficient.
  Polynomial primitive() const {
    if (is_zero()) return {};
    Integer den = 1, num = 0;
    for (const auto& t : terms_) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
    }
    Rational scale(den, num);
    scale.canonicalize();
    if (sgn(leading_coeff()) < 0) scale = -scale;
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff *= scale;
    return r;
  }

 private:
  std::vector<Term> terms_;
};

inline Polynomial pow(const Polynomial& p, unsigned n) {
  Polynomial result(1), base(p);
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

/// Simultaneous substitution of variables by polynomials.
inline Polynomial substitute(const Polynomial& p, const std::map<Var, Polynomial>& assignment) {
  // Powers of the substituted polynomials are memoized per variable.
  std::array<std::vector<Polynomial>, kNumVars> powers;
  auto power_of = [&](Var v, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[static_cast<std::size_t>(v)];
    if (cache.empty()) cache.push_back(Polynomial(1));
    while (cache.size() <= e) cache.push_back(cache.back() * assignment.at(v));
    return cache[e];
  };
  Polynomial result;
  for (const auto& t : p.terms()) {
    Monomial kept;
    Polynomial factor(1);
    for (auto v : kAllVars) {
      auto e = t.monomial.exponent(v);
      if (e == 0) continue;
      if (assignment.count(v))
        factor *= power_of(v, e);
      else
        kept *= Monomial::variable(v, e);
    }
    result += factor.mul_term(kept, t.coeff);
  }
  return result;
}

/// Drops every term whose M-exponent exceeds k.
inline Polynomial truncate_M(const Polynomial& p, std::uint32_t k) {
  std::vector<Term> kept;
  for (const auto& t : p.terms())
    if (t.monomial.exponent(Var::M) <= k) kept.push_back(t);
  return Polynomial::from_sorted_terms(std::move(kept));
}

// ---------------------------------------------------------------------------
// Text form

inline std::string format(Monomial m) {
  std::string s;
  for (auto v : kAllVars) {
    auto e = m.exponent(v);
    if (e == 0) continue;
    if (!s.empty()) s += '*';
    s += kVarNames[static_cast<std::size_t>(v)];
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s;
}

/// Canonical form: descending lex order, e.g. "A^2 - 1/2*B*o + 3".
inline std::string format(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational mag = abs(t.coeff);
    bool negative = sgn(t.coeff) < 0;
    if (first)
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    first = false;
    if (t.monomial.is_one()) {
      s += mag.get_str();
    } else {
      if (mag != 1) s += mag.get_str() + "*";
      s += format(t.monomial);
    }
  }
  return s;
}

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

// Recursive-descent parser. Accepts the canonical grammar plus parentheses and
// implicit multiplication by juxtaposition ("2oYX", "M(X + Y)").
class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Polynomial parse_all() {
    Polynomial p = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool starts_factor(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || var_from_char(c).has_value();
  }

  Polynomial expression() {
    Polynomial acc;
    bool negate = false;
    char c = peek();
    if (c == '+' || c == '-') {
      negate = c == '-';
      ++pos_;
    }
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial t = term();
      acc = c == '+' ? acc + t : acc - t;
    }
    return acc;
  }

  Polynomial term() {
    if (!starts_factor(peek())) fail("expected a number, variable or '('");
    Polynomial acc = power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        if (!starts_factor(peek())) fail("expected a factor after '*'");
        acc *= power();
      } else if (starts_factor(c)) {
        acc *= power();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial power() {
    Polynomial base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected an exponent after '^'");
      Integer e = digits();
      if (e > Monomial::kMaxExponent) fail("exponent too large");
      base = pow(base, static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = digits();
      Integer den = 1;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          fail("expected a denominator after '/'");
        den = digits();
        if (den == 0) fail("zero denominator");
      }
      Rational q(num, den);
      q.canonicalize();
      return Polynomial(q);
    }
    if (auto v = var_from_char(c)) {
      ++pos_;
      return Polynomial::variable(*v);
    }
    fail("expected a number, variable or '('");
  }
};

}  // namespace detail

inline Polynomial parse(std::string_view text) { return detail::PolyParser(text).parse_all(); }

// Shorthands used throughout the library and tests.
namespace vars {
inline const Polynomial A = Polynomial::variable(Var::A);
inline const Polynomial B = Polynomial::variable(Var::B);
inline const Polynomial F = Polynomial::variable(Var::F);
inline const Polynomial X = Polynomial::variable(Var::X);
inline const Polynomial Y = Polynomial::variable(Var::Y);
inline const Polynomial Z = Polynomial::variable(Var::Z);
inline const Polynomial M = Polynomial::variable(Var::M);
inline const Polynomial o = Polynomial::variable(Var::o);
}  // namespace vars

}  // namespace vse
