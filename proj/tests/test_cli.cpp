#include <gtest/gtest.h>

#include "cli_args.hpp"
#include "gwpower/cli.hpp"

using namespace gwpower;

namespace
{

Command make(std::string name, std::vector<std::string> inputs, int n = 4)
{
  Command c;
  c.name = std::move(name);
  c.inputs = std::move(inputs);
  c.n = n;
  return c;
}

std::string value_of(const Report& r, const std::string& name)
{
  for (const auto& [k, v] : r.values)
    if (k == name)
      return v;
  return "<missing>";
}

} // namespace

TEST(Run, AnOfThree)
{
  Report r = run(make("an", {"<3>"}, 2));
  EXPECT_EQ(r.exit, 0);
  EXPECT_EQ(value_of(r, "a_2"), "<2> + <3> - <6>");
  ASSERT_TRUE(r.invariants.has_value());
  Report one = run(make("normalize", {"<1>"}));
  EXPECT_NE(*r.invariants, *one.invariants);
  ASSERT_EQ(r.results.size(), 1u);
  EXPECT_TRUE(r.results[0].informational);
  EXPECT_FALSE(r.results[0].pass);
}

TEST(Run, Equality)
{
  EXPECT_EQ(run(make("eq", {"<2>+<3>", "<5>+<30>"})).exit, 0);
  Report ne = run(make("eq", {"<1>", "<3>"}));
  EXPECT_EQ(ne.exit, 1);
  EXPECT_EQ(ne.status, "fail");
}

TEST(Run, VerifyCompat)
{
  Command c = make("verify", {"k(sqrt 2, sqrt 3)"}, 6);
  c.sub = "compat";
  Report r = run(c);
  EXPECT_EQ(r.exit, 0);
  EXPECT_EQ(r.status, "pass");
  EXPECT_EQ(r.results.size(), 14u);
  Command p = make("verify", {"poly(x^3 - 2)"}, 6);
  p.sub = "compat";
  EXPECT_EQ(run(p).exit, 0);
}

TEST(Run, SymPowAndTrace)
{
  Report s = run(make("sympow", {"k(sqrt 5)"}, 3));
  EXPECT_EQ(s.exit, 0);
  EXPECT_EQ(value_of(s, "A^(3)"), "2*k(sqrt 5)");
  Report t = run(make("trace", {"poly(x^3 - 2)"}));
  EXPECT_EQ(t.exit, 0);
  EXPECT_EQ(value_of(t, "dimension"), "3");
  EXPECT_EQ(run(make("sympow", {"poly(x^3 - 2)"})).exit, 3);
}

TEST(Run, Geom)
{
  Command c = make("geom", {"<1>"});
  c.N = 3;
  Report r = run(c);
  EXPECT_EQ(value_of(r, "a_3"), "<1>");
  EXPECT_EQ(r.values.size(), 4u);
}

TEST(Run, ErrorCodes)
{
  EXPECT_EQ(run(make("normalize", {"<0>"})).exit, 2);
  EXPECT_EQ(run(make("normalize", {"<2", "x"})).exit, 2);
  Command f = make("normalize", {"<1>"});
  f.field = "F9";
  EXPECT_EQ(run(f).exit, 3);
  f.field = "nonsense";
  EXPECT_EQ(run(f).exit, 2);
  EXPECT_EQ(run(make("bogus", {})).exit, 2);
  Command big = make("sympow", {"k(sqrt -1, sqrt 2, sqrt 3)"}, 40);
  EXPECT_EQ(run(big).exit, 3);
  Command tom = make("tableofmarks", {});
  tom.group = "S7";
  EXPECT_EQ(run(tom).exit, 2);
}

TEST(Run, TableOfMarks)
{
  Command c = make("tableofmarks", {});
  c.group = "V4";
  Report r = run(c);
  EXPECT_EQ(r.exit, 0);
  EXPECT_EQ(value_of(r, "H5"), "|H| = 4, marks 1 1 1 1 1");
}

TEST(Run, JsonAndTextCarrySameVerdicts)
{
  Command c = make("verify", {"k(sqrt 3) - k"}, 4);
  c.sub = "compat";
  Report r = run(c);
  Report back = report_from_json(nlohmann::ordered_json::parse(render_json(r)));
  EXPECT_EQ(back, r);
  std::string text = render_text(r);
  for (const auto& chk : back.results)
    EXPECT_NE(text.find((chk.pass ? "[pass] " : "[FAIL] ") + chk.name + ":"), std::string::npos) << chk.name;
}

TEST(Args, ParsesSubcommandsAndFlags)
{
  auto p = tools::parse_args({"an", "--field", "F7", "-n", "3", "<3>", "--json"});
  ASSERT_TRUE(std::holds_alternative<tools::Invocation>(p));
  const auto& inv = std::get<tools::Invocation>(p);
  EXPECT_EQ(inv.command.name, "an");
  EXPECT_EQ(inv.command.field, "F7");
  EXPECT_EQ(inv.command.n, 3);
  EXPECT_TRUE(inv.json);
  EXPECT_EQ(inv.command.inputs, (std::vector<std::string>{"<3>"}));

  auto v = tools::parse_args({"verify", "compat", "-n", "6", "k(sqrt 2, sqrt 3)"});
  ASSERT_TRUE(std::holds_alternative<tools::Invocation>(v));
  EXPECT_EQ(std::get<tools::Invocation>(v).command.sub, "compat");

  auto neg = tools::parse_args({"normalize", "--", "-<3> + <5>"});
  ASSERT_TRUE(std::holds_alternative<tools::Invocation>(neg));
  EXPECT_EQ(std::get<tools::Invocation>(neg).command.inputs.front(), "-<3> + <5>");
}

TEST(Args, UsageErrorsExitTwo)
{
  for (std::vector<std::string> bad : {std::vector<std::string>{}, {"frobnicate"}, {"an", "-n", "x", "<1>"},
                                       {"verify"}, {"verify", "nothing"}, {"tableofmarks", "--group", "S9"}}) {
    auto p = tools::parse_args(bad);
    ASSERT_TRUE(std::holds_alternative<tools::EarlyExit>(p));
    EXPECT_EQ(std::get<tools::EarlyExit>(p).code, 2);
  }
  auto h = tools::parse_args({"--help"});
  ASSERT_TRUE(std::holds_alternative<tools::EarlyExit>(h));
  EXPECT_EQ(std::get<tools::EarlyExit>(h).code, 0);
}
