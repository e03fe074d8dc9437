#include <gtest/gtest.h>

#include <random>

#include "gwpower/gw_ring.hpp"
#include "oracles.hpp"

using namespace gwpower;

namespace
{

const FieldDescriptor Q = FieldDescriptor::rationals();

GWElement g(std::int64_t a, std::int64_t c = 1) { return GWElement::form(Q, a, c); }

GWElement random_element(std::mt19937_64& rng, const FieldDescriptor& f, const std::vector<std::int64_t>& pool,
                         int terms)
{
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> coeff(-2, 2);
  GWElement x = GWElement::zero(f);
  for (int i = 0; i < terms; ++i)
    x += GWElement::form(f, pool[pick(rng)], coeff(rng));
  return x;
}

} // namespace

TEST(GWElement, CanonicalTermsAndRendering)
{
  GWElement x = g(2) + g(3) - g(6);
  EXPECT_EQ(x.coefficient(2), 1);
  EXPECT_EQ(x.coefficient(6), -1);
  EXPECT_EQ(x.rank(), 1);
  EXPECT_EQ((g(20, 2) - g(3)).to_string(), "-<3> + 2<5>");
  EXPECT_EQ((g(-1) + g(1)).to_string(), "<1> + <-1>");
  EXPECT_EQ(GWElement::zero(Q).to_string(), "0");
  EXPECT_TRUE(identical(g(8), g(2)));
  EXPECT_TRUE((g(3) - g(12)).is_zero_representation());
}

TEST(GWElement, MultiplicationOfGenerators)
{
  EXPECT_TRUE(identical(g(2) * g(3), g(6)));
  EXPECT_TRUE(identical(g(6) * g(10), g(15)));
  EXPECT_TRUE(identical((g(1) + g(2)) * (g(1) - g(3)), g(1) + g(2) - g(3) - g(6)));
  EXPECT_TRUE(identical(3 * g(5), g(5, 3)));
}

TEST(GWEquality, KnownRelations)
{
  EXPECT_TRUE(is_equal(g(2) + g(3), g(5) + g(30)));
  EXPECT_TRUE(is_equal(g(1) + g(1), g(2) + g(2)));
  EXPECT_TRUE(is_equal(g(3) + g(-3), hyperbolic(Q)));
  EXPECT_FALSE(is_equal(g(1), g(3)));
  EXPECT_FALSE(is_equal(g(1) + g(1), g(3) + g(3)));
  EXPECT_TRUE(witt_is_zero(hyperbolic(Q, 2)));
  EXPECT_FALSE(is_zero(hyperbolic(Q)));
}

TEST(GWEquality, TElementVanishesExactlyWhenTwoAndAAreOrthogonal)
{
  EXPECT_TRUE(is_zero(t_elem(class_of(Q, 7))));
  EXPECT_TRUE(is_zero(t_elem(class_of(Q, -1))));
  EXPECT_FALSE(is_zero(t_elem(class_of(Q, 3))));
  EXPECT_FALSE(is_zero(t_elem(class_of(Q, 5))));
}

TEST(GWEquality, RankTwoFormsMatchRepresentationOracle)
{
  const std::vector<std::int64_t> pool{1, -1, 2, -2, 3, -3, 5, 6, 7, 10};
  for (auto a : pool)
    for (auto b : pool)
      for (auto c : pool)
        for (auto d : pool)
          ASSERT_EQ(is_equal(g(a) + g(b), g(c) + g(d)), oracle::rank2_isometric_q(a, b, c, d))
              << "<" << a << "," << b << "> vs <" << c << "," << d << ">";
}

TEST(GWEquality, PrimeFieldsMatchValueCounts)
{
  std::mt19937_64 rng(11);
  for (std::int64_t p : {3, 5, 7}) {
    auto f = FieldDescriptor::prime_field(p);
    std::vector<std::int64_t> pool;
    for (std::int64_t a = 1; a < p; ++a)
      pool.push_back(a);
    for (int i = 0; i < 300; ++i) {
      GWElement x = random_element(rng, f, pool, 2);
      GWElement y = random_element(rng, f, pool, 2);
      y += GWElement::integer(f, x.rank() - y.rank());
      ASSERT_EQ(is_equal(x, y), oracle::fp_equal(x, y, p)) << x.to_string() << " vs " << y.to_string();
    }
  }
}

TEST(GWEquality, RealAndComplexInvariants)
{
  const auto r = FieldDescriptor::reals();
  GWElement x = GWElement::form(r, 3) + GWElement::form(r, -2);
  EXPECT_TRUE(is_equal(x, hyperbolic(r)));
  EXPECT_EQ(*invariants(x).signature, 0);
  const auto c = FieldDescriptor::complexes();
  EXPECT_TRUE(is_equal(GWElement::form(c, -1), GWElement::one(c)));
}

TEST(GWEquality, InvariantProfileRendering)
{
  GWElement x = g(2) + g(3) - g(6);
  EXPECT_EQ(invariants(x).rank, 1);
  EXPECT_NE(invariants(x).to_string(), invariants(g(1)).to_string());
}

TEST(GWProperties, RingLawsOnRandomElements)
{
  std::mt19937_64 rng(3);
  const std::vector<std::int64_t> pool{1, -1, 2, 3, 5, 6, -10, 15};
  for (int i = 0; i < 200; ++i) {
    GWElement x = random_element(rng, Q, pool, 3);
    GWElement y = random_element(rng, Q, pool, 3);
    GWElement z = random_element(rng, Q, pool, 2);
    EXPECT_TRUE(identical(x * y, y * x));
    EXPECT_TRUE(identical(x * (y + z), x * y + x * z));
    EXPECT_TRUE(identical((x * y) * z, x * (y * z)));
    EXPECT_TRUE(identical(x - x, GWElement::zero(Q)));
    EXPECT_EQ((x * y).rank(), x.rank() * y.rank());
  }
}

TEST(GWProperties, EqualityIsCompatibleWithArithmetic)
{
  std::mt19937_64 rng(4);
  const std::vector<std::int64_t> pool{1, -1, 2, 3, 5, 6, -10, 15};
  for (int i = 0; i < 200; ++i) {
    GWElement x = random_element(rng, Q, pool, 3);
    GWElement z = random_element(rng, Q, pool, 2);
    // <2> + <3> = <5> + <30> holds, so it survives adding and multiplying.
    GWElement rel_l = g(2) + g(3), rel_r = g(5) + g(30);
    EXPECT_TRUE(is_equal(x + rel_l, x + rel_r));
    EXPECT_TRUE(is_equal(z * rel_l + x, z * rel_r + x));
    EXPECT_TRUE(is_equal(x, x));
    EXPECT_EQ(is_equal(x, z), is_equal(z, x));
  }
}
