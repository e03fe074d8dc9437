#include <gtest/gtest.h>

#include "gwpower/parse.hpp"

using namespace gwpower;

namespace
{
const FieldDescriptor Q = FieldDescriptor::rationals();
}

TEST(ParseField, Names)
{
  EXPECT_EQ(parse_field("Q").kind(), FieldKind::Rationals);
  EXPECT_EQ(parse_field("QQ").kind(), FieldKind::Rationals);
  EXPECT_EQ(parse_field("R").kind(), FieldKind::RealClosed);
  EXPECT_EQ(parse_field("C").kind(), FieldKind::ComplexClosed);
  EXPECT_EQ(parse_field("F7").characteristic(), 7);
  EXPECT_EQ(parse_field("F_11").characteristic(), 11);
  EXPECT_EQ(parse_field("GF(13)").characteristic(), 13);
  EXPECT_THROW(parse_field("Z"), ParseError);
  EXPECT_THROW(parse_field("F2"), UnsupportedError);
  EXPECT_THROW(parse_field("F9"), UnsupportedError);
  EXPECT_THROW(parse_field("F4294967311"), UnsupportedError);
}

TEST(ParseForm, Examples)
{
  GWElement x = parse_form("<2> + <3> - <6>", Q);
  EXPECT_EQ(x.terms(), (GWElement::Terms{{2, 1}, {3, 1}, {6, -1}}));
  GWElement y = parse_form("2<5> + H", Q);
  EXPECT_EQ(y.terms(), (GWElement::Terms{{5, 2}, {1, 1}, {-1, 1}}));
  EXPECT_EQ(parse_form("-<12> + 3*<1/2>", Q).terms(), (GWElement::Terms{{3, -1}, {2, 3}}));
  EXPECT_EQ(parse_form("<-18/5>", Q).terms(), (GWElement::Terms{{-10, 1}}));
  EXPECT_EQ(parse_form("<3>", parse_field("F7")).terms(), (GWElement::Terms{{3, 1}}));
  EXPECT_EQ(parse_form("<9>", parse_field("F7")).terms(), (GWElement::Terms{{1, 1}}));
}

TEST(ParseForm, Errors)
{
  try {
    parse_form("<0>", Q);
    FAIL() << "expected an error";
  }
  catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("zero square class"), std::string::npos);
  }
  for (const char* bad : {"", "<", "<2", "<2> +", "2 3", "<1/0>", "<a>", "<2>>"}) {
    try {
      parse_form(bad, Q);
      ADD_FAILURE() << "accepted '" << bad << "'";
    }
    catch (const ParseError& e) {
      EXPECT_LE(e.position(), std::string(bad).size()) << bad;
    }
  }
  EXPECT_THROW(parse_form("<7>", parse_field("F7")), ParseError);
}

TEST(ParseAlgebra, Examples)
{
  AlgebraValue k = parse_algebra("k(sqrt 2, sqrt 3)", Q);
  ASSERT_TRUE(k.galois.has_value());
  EXPECT_EQ(k.dimension, 4);
  EXPECT_EQ(k.galois->to_string(), "k(sqrt 2, sqrt 3)");
  AlgebraValue v = parse_algebra("k(sqrt 2) - k", Q);
  ASSERT_TRUE(v.galois.has_value());
  EXPECT_EQ(v.galois->to_string(), "-k + k(sqrt 2)");
  EXPECT_EQ(v.dimension, 1);
  AlgebraValue p = parse_algebra("poly(x^3 - 2)", Q);
  EXPECT_FALSE(p.galois.has_value());
  ASSERT_EQ(p.polynomials.size(), 1u);
  EXPECT_EQ(p.polynomials.front().to_string(), "x^3 - 2");
  EXPECT_EQ(p.dimension, 3);
}

TEST(ParseAlgebra, SharedContextAndProducts)
{
  AlgebraValue a = parse_algebra("2*k(sqrt 2) * k(sqrt 3) + k(sqrt 6)", Q);
  ASSERT_TRUE(a.galois.has_value());
  EXPECT_EQ(a.context.rank(), 2);
  EXPECT_EQ(a.dimension, 10);
  EXPECT_TRUE(is_equal(a.trace, trace_form(*a.galois)));
}

TEST(ParseAlgebra, Errors)
{
  EXPECT_THROW(parse_algebra("k(sqrt 2, sqrt 8)", Q), ParseError);
  EXPECT_THROW(parse_algebra("poly(x^2 + 2x + 1)", Q), ParseError);
  EXPECT_THROW(parse_algebra("k(sqrt 0)", Q), ParseError);
  EXPECT_THROW(parse_algebra("k(sqrt 2", Q), ParseError);
  EXPECT_THROW(parse_algebra("poly(x^3 - 2)", parse_field("F5")), UnsupportedError);
}
