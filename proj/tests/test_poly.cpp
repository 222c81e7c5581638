#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vse;
using namespace vse::vars;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int terms = 6, unsigned max_exp = 3) {
  std::uniform_int_distribution<int> coeff(-9, 9), den(1, 4);
  std::uniform_int_distribution<unsigned> ex(0, max_exp);
  std::vector<Term> ts;
  for (int i = 0; i < terms; ++i) {
    std::array<std::uint32_t, 8> e{};
    for (auto& x : e) x = rng() % 3 == 0 ? ex(rng) : 0;
    ts.push_back({Monomial::from_exponents(e), Rational(coeff(rng), den(rng))});
  }
  return Polynomial::from_terms(std::move(ts));
}

Monomial random_monomial(std::mt19937_64& rng) {
  std::array<std::uint32_t, 8> e{};
  for (auto& x : e) x = rng() % 4;
  return Monomial::from_exponents(e);
}

}  // namespace

TEST(Poly, AdditionExamples) {
  auto p = A * B + o;
  EXPECT_EQ(p + Polynomial(0), p);
  EXPECT_EQ((A + B) + (A - B), 2 * A);
  EXPECT_EQ(Polynomial(Rational(1, 2)) * o + Polynomial(Rational(1, 2)) * o, o);
}

TEST(Poly, MultiplicationExamples) {
  EXPECT_EQ((A + B) * (A - B), A * A - B * B);
  EXPECT_EQ(M * M, pow(M, 2));
  EXPECT_EQ(Z * pow(o, 2) * pow(Z, 2), pow(Z, 3) * pow(o, 2));
  auto p = A * X - 3 * o;
  EXPECT_EQ(p * Polynomial(1), p);
}

TEST(Poly, RationalsStayNormalized) {
  auto p = parse("2/4*A");
  EXPECT_EQ(p.leading_coeff(), Rational(1, 2));
  EXPECT_EQ(p.leading_coeff().get_den(), 2);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p - p).size(), 0u);
}

TEST(Poly, Substitute) {
  EXPECT_EQ(substitute(M * X + F, {{Var::M, Polynomial(1)}, {Var::X, A}, {Var::F, Polynomial(0)}}), A);
  EXPECT_EQ(substitute(pow(M, 2) * pow(Y, 2), {{Var::M, Polynomial(1)}, {Var::Y, B}}), pow(B, 2));
  EXPECT_EQ(substitute(M * A * o + M * B * o + F * o * o, {{Var::M, Polynomial(1)}, {Var::F, Polynomial(0)}}),
            A * o + B * o);
  // Simultaneous, not sequential.
  EXPECT_EQ(substitute(A + 2 * B, {{Var::A, B}, {Var::B, A}}), B + 2 * A);
}

TEST(Poly, TruncateM) {
  EXPECT_EQ(truncate_M(pow(M, 2) * X + M * Z + F, 1), M * Z + F);
  auto p = pow(M, 3) * pow(Y, 3) + 6 * pow(M, 2) * Z * pow(Y, 2);
  EXPECT_EQ(truncate_M(p, 2), 6 * pow(M, 2) * Z * pow(Y, 2));
  EXPECT_EQ(truncate_M(p, 3), p);
  EXPECT_EQ(truncate_M(p, 7), p);
}

TEST(Poly, MonomialOrder) {
  auto lm = [](const Polynomial& p) { return p.leading_monomial(); };
  EXPECT_GT(lm(A), lm(B));
  EXPECT_GT(lm(pow(Z, 3) * pow(o, 4)), lm(Z * pow(o, 9)));
  EXPECT_EQ(lm(A * M), lm(M * A));
  const Polynomial order[] = {A, B, F, X, Y, Z, M, o};
  for (int i = 0; i + 1 < 8; ++i) EXPECT_GT(lm(order[i]), lm(order[i + 1]));
  EXPECT_GT(lm(o), Monomial{});
}

TEST(Poly, MonomialOrderIsMultiplicative) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto a = random_monomial(rng);
    auto b = random_monomial(rng);
    auto m = random_monomial(rng);
    if (a < b) EXPECT_LT(a * m, b * m);
    if (b < a) EXPECT_LT(b * m, a * m);
  }
}

TEST(Poly, ParseAndFormat) {
  auto p = parse("-1/2*o*Z");
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.leading_coeff(), Rational(-1, 2));
  EXPECT_EQ(format(p), "-1/2*Z*o");
  EXPECT_TRUE(parse("0").is_zero());
  EXPECT_EQ(format(Polynomial(0)), "0");
  EXPECT_EQ(format(parse("B*A")), "A*B");
  EXPECT_EQ(format(parse("o - 2*A^2 + 3")), "-2*A^2 + o + 3");
  EXPECT_EQ(parse("o(Z^2 - 1)"), o * Z * Z - o);
  EXPECT_EQ(parse("2(X+oY)M"), 2 * M * X + 2 * M * o * Y);
}

TEST(Poly, ParseErrorsCarryPosition) {
  EXPECT_THROW(parse("A +"), ParseError);
  EXPECT_THROW(parse("(A"), ParseError);
  EXPECT_THROW(parse("Q"), ParseError);
  EXPECT_THROW(parse("1/0"), ParseError);
  try {
    parse("A + B)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
}

TEST(Poly, RoundTripRandom) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto p = random_poly(rng, 1 + static_cast<int>(rng() % 9));
    EXPECT_EQ(parse(format(p)), p) << format(p);
  }
}

TEST(Poly, RoundTripReferenceFixtures) {
  for (auto file : {"reference/ideal_generators.txt", "reference/ideal_generators_repairs.txt",
                    "reference/basis_inf.txt"}) {
    auto list = load_named_polynomials(test::data_path(file));
    for (const auto& e : list.entries)
      if (e.value) EXPECT_EQ(parse(format(*e.value)), *e.value) << e.name;
  }
}

TEST(Poly, RingAxiomsRandom) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 60; ++i) {
    auto p = random_poly(rng), q = random_poly(rng), r = random_poly(rng);
    EXPECT_EQ(p + q, q + p);
    EXPECT_EQ((p + q) + r, p + (q + r));
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_TRUE((p - p).is_zero());
  }
}

TEST(Poly, TruncationIsMultiplicativeModMk) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    auto p = random_poly(rng, 6, 4), q = random_poly(rng, 6, 4);
    for (std::uint32_t k = 0; k < 4; ++k)
      EXPECT_EQ(truncate_M(p * q, k), truncate_M(truncate_M(p, k) * truncate_M(q, k), k));
  }
}

TEST(Poly, ExponentOverflowIsReported) {
  auto big = Monomial::variable(Var::A, 0x7FFF);
  EXPECT_THROW(big * Monomial::variable(Var::A, 1), std::overflow_error);
}

TEST(Poly, PrimitiveAndMonic) {
  auto p = parse("-4*A*o + 6*o");
  EXPECT_EQ(p.primitive(), parse("2*A*o - 3*o"));
  EXPECT_EQ(p.monic(), parse("A*o - 3/2*o"));
  EXPECT_EQ(parse("1/2*A + 1/3").primitive(), parse("3*A + 2"));
}
