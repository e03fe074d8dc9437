#include <gtest/gtest.h>

#include <random>

#include "gwpower/field.hpp"
#include "oracles.hpp"

using namespace gwpower;

namespace
{

bool is_squarefree(std::int64_t n)
{
  n = std::llabs(n);
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0)
      return false;
  return n != 0;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(std::llabs(a), std::llabs(b)); }

} // namespace

TEST(NumberTheory, PrimalityAndFactors)
{
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(prime_factors(360), (std::vector<std::int64_t>{2, 3, 5}));
  EXPECT_EQ(prime_factors(-49), (std::vector<std::int64_t>{7}));
}

TEST(NumberTheory, LegendreMatchesSquareTable)
{
  for (std::int64_t p : {3, 5, 7, 11, 13, 101}) {
    std::vector<int> square(static_cast<std::size_t>(p), 0);
    for (std::int64_t x = 1; x < p; ++x)
      square[static_cast<std::size_t>(x * x % p)] = 1;
    for (std::int64_t a = 1; a < p; ++a)
      EXPECT_EQ(legendre(a, p), square[static_cast<std::size_t>(a)] ? 1 : -1) << a << " mod " << p;
  }
}

TEST(SquareClasses, RationalRepresentativesAreSignedSquarefree)
{
  const auto q = FieldDescriptor::rationals();
  EXPECT_EQ(class_of(q, 12).rep(), 3);
  EXPECT_EQ(class_of(q, Rational(-18, 5)).rep(), -10);
  EXPECT_EQ(class_of(q, Rational(1, 2)).rep(), 2);
  EXPECT_EQ(class_of(q, 49).rep(), 1);
  EXPECT_EQ(mul_class(class_of(q, 6), class_of(q, 10)).rep(), 15);
  EXPECT_EQ(class_atoms(class_of(q, -30)), (std::vector<std::int64_t>{-1, 2, 3, 5}));
}

TEST(SquareClasses, OtherFields)
{
  auto f7 = FieldDescriptor::prime_field(7);
  EXPECT_EQ(f7.nonresidue(), 3);
  EXPECT_EQ(class_of(f7, 2).rep(), 1);
  EXPECT_EQ(class_of(f7, 5).rep(), 3);
  EXPECT_EQ(class_of(f7, Rational(1, 3)).rep(), 3);
  EXPECT_EQ(class_of(FieldDescriptor::reals(), -5).rep(), -1);
  EXPECT_EQ(class_of(FieldDescriptor::reals(), Rational(2, 7)).rep(), 1);
  EXPECT_EQ(class_of(FieldDescriptor::complexes(), -5).rep(), 1);
  EXPECT_EQ(f7.name(), "F7");
}

TEST(SquareClasses, ZeroHasNoClass)
{
  const auto q = FieldDescriptor::rationals();
  EXPECT_THROW(class_of(q, 0), std::domain_error);
  EXPECT_THROW(class_of(FieldDescriptor::prime_field(5), 10), std::domain_error);
}

TEST(SquareClasses, PrimeFieldArguments)
{
  EXPECT_THROW(FieldDescriptor::prime_field(2), std::invalid_argument);
  EXPECT_THROW(FieldDescriptor::prime_field(9), std::invalid_argument);
}

TEST(Hilbert, RealPlaceMatchesSignRule)
{
  for (std::int64_t a : {-3, -1, 2, 5})
    for (std::int64_t b : {-7, -2, 1, 3})
      EXPECT_EQ(hilbert_symbol(a, b, Place::infinity()), oracle::real_hilbert(a, b));
}

TEST(Hilbert, LocalSymbolsMatchConicSearch)
{
  for (std::int64_t p : {2, 3}) {
    for (std::int64_t a = -15; a <= 15; ++a)
      for (std::int64_t b = -15; b <= 15; ++b) {
        if (!is_squarefree(a) || !is_squarefree(b))
          continue;
        EXPECT_EQ(hilbert_symbol(a, b, Place::at(p)), oracle::local_hilbert(a, b, p))
            << "(" << a << "," << b << ")_" << p;
      }
  }
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> pick(-30, 30);
  int done = 0;
  while (done < 25) {
    std::int64_t a = pick(rng), b = pick(rng);
    if (!is_squarefree(a) || !is_squarefree(b))
      continue;
    ++done;
    EXPECT_EQ(hilbert_symbol(a, b, Place::at(5)), oracle::local_hilbert(a, b, 5)) << "(" << a << "," << b << ")_5";
  }
}

TEST(Hilbert, ProductFormulaAndGlobalSolvability)
{
  for (std::int64_t a = -30; a <= 30; ++a)
    for (std::int64_t b = -30; b <= 30; ++b) {
      if (!is_squarefree(a) || !is_squarefree(b) || gcd64(a, b) != 1)
        continue;
      ASSERT_EQ(hilbert_product(a, b), 1) << a << "," << b;
      bool everywhere = hilbert_symbol(a, b, Place::infinity()) == 1;
      for (const auto& v : relevant_places(a, b))
        everywhere = everywhere && hilbert_symbol(a, b, v) == 1;
      EXPECT_EQ(everywhere, oracle::global_conic_solvable(a, b)) << a << "," << b;
    }
}

TEST(Hilbert, RationalArgumentsAndWitness)
{
  EXPECT_EQ(hilbert_symbol(2, 3, Place::at(3)), -1);
  EXPECT_EQ(hilbert_symbol(Rational(2, 9), Rational(12), Place::at(3)), -1);
  EXPECT_THROW(hilbert_symbol(0, 3, Place::at(3)), std::domain_error);
  const auto q = FieldDescriptor::rationals();
  EXPECT_TRUE(cup_vanishes(class_of(q, 2), class_of(q, 7)));
  EXPECT_FALSE(cup_vanishes(class_of(q, 2), class_of(q, 3)));
}
