#include <gtest/gtest.h>

#include "gwpower/etale_poly.hpp"

using namespace gwpower;

namespace
{
const FieldDescriptor Q = FieldDescriptor::rationals();
GWElement g(std::int64_t a) { return GWElement::form(Q, a); }
} // namespace

TEST(Polynomials, Arithmetic)
{
  RationalPoly f{-2, 0, 0, 1};
  EXPECT_EQ(poly::derivative(f), (RationalPoly{0, 0, 3}));
  EXPECT_EQ(poly::gcd({-1, 0, 1}, {1, 1}), (RationalPoly{1, 1}));
  EXPECT_EQ(poly::to_string({1, -3, 0, 1}), "x^3 - 3x + 1");
  EXPECT_EQ(poly::to_string({Rational(1, 2), 0, 1}), "x^2 + 1/2");
}

TEST(EtalePoly, Validation)
{
  EXPECT_THROW(EtalePoly({1}), std::invalid_argument);
  EXPECT_THROW(EtalePoly({1, 2}), std::invalid_argument);
  EXPECT_THROW(EtalePoly({1, 2, 1}), std::invalid_argument); // (x+1)^2
  EXPECT_NO_THROW(EtalePoly({-1, 0, 1}));
}

TEST(EtalePoly, PowerSums)
{
  EXPECT_EQ(EtalePoly({-2, 0, 1}).power_sums(4), (std::vector<Rational>{2, 0, 4, 0, 8}));
  // Roots of x^2 - x - 1: Lucas numbers.
  EXPECT_EQ(EtalePoly({-1, -1, 1}).power_sums(5), (std::vector<Rational>{2, 1, 3, 4, 7, 11}));
}

TEST(TraceForm, QuadraticAndCubic)
{
  EXPECT_TRUE(is_equal(trace_form_poly(EtalePoly({-5, 0, 1})), g(2) + g(10)));
  // Gram matrix of x^3 - 2 is <3> plus a hyperbolic plane.
  EXPECT_TRUE(is_equal(trace_form_poly(EtalePoly({-2, 0, 0, 1})), g(3) + g(1) + g(-1)));
}

TEST(TraceForm, SignatureCountsRealRoots)
{
  const auto r = FieldDescriptor::reals();
  auto sig = [&](RationalPoly f) { return *invariants(trace_form_poly(EtalePoly(std::move(f)), r)).signature; };
  EXPECT_EQ(sig({-2, 0, 1}), 2);
  EXPECT_EQ(sig({1, 0, 1}), 0);
  EXPECT_EQ(sig({1, -3, 0, 1}), 3);
  EXPECT_EQ(sig({-1, -1, 0, 0, 0, 1}), 1);
  EXPECT_EQ(sig({1, 1, 0, 0, 1}), 0);
}

TEST(TraceForm, PrimeFieldsUnsupported)
{
  EXPECT_THROW(trace_form_poly(EtalePoly({-2, 0, 1}), FieldDescriptor::prime_field(7)), std::domain_error);
}

TEST(Diagonalize, ZeroDiagonalIsRepaired)
{
  std::vector<std::vector<Rational>> h{{0, 1}, {1, 0}};
  auto d = diagonalize_symmetric(h);
  ASSERT_EQ(d.size(), 2u);
  // Congruence preserves the determinant up to squares: -1.
  EXPECT_EQ(class_of(Q, d[0] * d[1]).rep(), -1);
}
