#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "burnside.hpp"
#include "galois_sets.hpp"
#include "gw_power.hpp"
#include "gw_ring.hpp"
#include "parse.hpp"
#include "report.hpp"
#include "suites.hpp"

namespace gwpower
{

/// Thrown for malformed command lines (wrong arity, unknown subcommand).
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct Command
{
  std::string name; // normalize | eq | an | geom | sympow | trace | verify | tableofmarks
  std::string sub;  // verify suite name
  std::string field = "Q";
  int n = 4;
  int N = 8;
  std::vector<std::string> inputs;
  std::string group;
  std::uint64_t seed = kDefaultSeed;
};

inline const std::vector<std::string>& verify_suites()
{
  static const std::vector<std::string> names{"axioms", "welldef", "compat", "twist", "burnside"};
  return names;
}

namespace detail
{

inline void require_inputs(const Command& cmd, std::size_t count)
{
  if (cmd.inputs.size() != count)
    throw UsageError(cmd.name + " expects " + std::to_string(count) + " input expression" + (count == 1 ? "" : "s") +
                     ", got " + std::to_string(cmd.inputs.size()));
}

inline void require_nonnegative(const char* flag, int v)
{
  if (v < 0)
    throw UsageError(std::string(flag) + " must be nonnegative");
}

inline void add_checks(Report& r, const SuiteResult& s)
{
  r.results.insert(r.results.end(), s.checks.begin(), s.checks.end());
  r.values.emplace_back("summary", s.summary());
}

inline void run_verify(const Command& cmd, const FieldDescriptor& f, Report& r)
{
  const std::string& s = cmd.sub;
  if (s == "axioms") {
    add_checks(r, suite_axioms_integers(50, cmd.N, cmd.seed));
    add_checks(r, suite_axioms_gw(f, 50, cmd.N, cmd.seed));
  }
  else if (s == "welldef") {
    add_checks(r, suite_welldef(f, 300, 50, cmd.n, cmd.seed));
  }
  else if (s == "compat") {
    if (cmd.inputs.empty()) {
      add_checks(r, suite_main_theorem(cmd.n));
    }
    else {
      for (const auto& src : cmd.inputs) {
        AlgebraValue a = parse_algebra(src, f);
        if (a.galois) {
          for (const auto& c : verify_trace_compat(*a.galois, cmd.n))
            r.results.push_back(CheckResult{"Tr(A^(" + std::to_string(c.n) + ")) = a_" + std::to_string(c.n) +
                                                "(Tr A) for " + src,
                                            c.lhs.to_string(), c.rhs.to_string(), c.pass, false});
        }
        for (const auto& c : verify_rank_law(a.trace, a.dimension, cmd.n))
          r.results.push_back(CheckResult{"rank a_" + std::to_string(c.n) + "(Tr A) = C(m+n-1, n) for " + src,
                                          std::to_string(c.rhs.rank()), std::to_string(c.lhs.rank()), c.pass, false});
      }
    }
  }
  else if (s == "twist") {
    add_checks(r, suite_twisting(cmd.n));
  }
  else if (s == "burnside") {
    add_checks(r, suite_biquadratic({{2, 3}, {-1, 2}, {3, 5}}, cmd.N));
  }
  else {
    throw UsageError("unknown verify suite '" + s + "'");
  }
  r.finish_checks();
}

inline void run_command(const Command& cmd, Report& r)
{
  const FieldDescriptor f = parse_field(cmd.field);
  r.field = f.name();
  require_nonnegative("-n", cmd.n);
  require_nonnegative("-N", cmd.N);
  r.status = "done";

  if (cmd.name == "normalize") {
    require_inputs(cmd, 1);
    GWElement x = parse_form(cmd.inputs[0], f);
    r.values.emplace_back("value", x.to_string());
    r.set_form(x);
  }
  else if (cmd.name == "eq") {
    require_inputs(cmd, 2);
    GWElement x = parse_form(cmd.inputs[0], f);
    GWElement y = parse_form(cmd.inputs[1], f);
    r.values.emplace_back("lhs", x.to_string());
    r.values.emplace_back("rhs", y.to_string());
    r.values.emplace_back("lhs invariants", invariants(x).to_string());
    r.values.emplace_back("rhs invariants", invariants(y).to_string());
    r.results.push_back(CheckResult{"equal in GW(" + f.name() + ")", x.to_string(), y.to_string(), is_equal(x, y)});
    r.finish_checks();
  }
  else if (cmd.name == "an") {
    require_inputs(cmd, 1);
    GWElement q = parse_form(cmd.inputs[0], f);
    GWElement x = a_n(q, cmd.n);
    r.values.emplace_back("a_" + std::to_string(cmd.n), x.to_string());
    r.set_form(x);
    GWElement classical = classical_power(q, cmd.n);
    r.results.push_back(CheckResult{"a_" + std::to_string(cmd.n) + " agrees with the classical power S^" +
                                        std::to_string(cmd.n),
                                    x.to_string(), classical.to_string(), is_equal(x, classical), true});
  }
  else if (cmd.name == "geom") {
    require_inputs(cmd, 1);
    GWElement q = parse_form(cmd.inputs[0], f);
    auto series = a_series(q, cmd.N);
    for (int i = 0; i <= cmd.N; ++i)
      r.values.emplace_back("a_" + std::to_string(i), series[static_cast<std::size_t>(i)].to_string());
  }
  else if (cmd.name == "sympow") {
    require_inputs(cmd, 1);
    AlgebraValue a = parse_algebra(cmd.inputs[0], f);
    if (!a.galois)
      throw UnsupportedError("symmetric powers need Galois data; polynomial algebras support trace only");
    VirtualGaloisSet s = sym_class(*a.galois, cmd.n);
    GWElement tr = trace_form(s);
    GWElement expected = a_n(a.trace, cmd.n);
    r.values.emplace_back("A^(" + std::to_string(cmd.n) + ")", s.to_string());
    r.values.emplace_back("dimension", std::to_string(s.dimension()));
    r.values.emplace_back("Tr", tr.to_string());
    r.set_form(tr);
    r.results.push_back(CheckResult{"Tr(A^(" + std::to_string(cmd.n) + ")) = a_" + std::to_string(cmd.n) + "(Tr A)",
                                    tr.to_string(), expected.to_string(), is_equal(tr, expected)});
    r.finish_checks();
    if (r.exit == 0)
      r.status = "done";
  }
  else if (cmd.name == "trace") {
    require_inputs(cmd, 1);
    AlgebraValue a = parse_algebra(cmd.inputs[0], f);
    if (a.galois)
      r.values.emplace_back("class", a.galois->to_string());
    r.values.emplace_back("dimension", std::to_string(a.dimension));
    r.values.emplace_back("Tr", a.trace.to_string());
    r.set_form(a.trace);
  }
  else if (cmd.name == "verify") {
    run_verify(cmd, f, r);
  }
  else if (cmd.name == "tableofmarks") {
    if (cmd.group.empty())
      throw UsageError("tableofmarks requires --group");
    FiniteGroup g = [&] {
      try {
        return named_group(cmd.group);
      }
      catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }();
    TableOfMarks t = table_of_marks(g);
    r.values.emplace_back("order", std::to_string(g.order()));
    for (std::size_t i = 0; i < t.classes.size(); ++i) {
      std::ostringstream os;
      os << "|H| = " << std::popcount(t.classes[i]) << ", marks";
      for (auto m : t.marks[i])
        os << ' ' << m;
      r.values.emplace_back("H" + std::to_string(i + 1), os.str());
    }
  }
  else {
    throw UsageError("unknown command '" + cmd.name + "'");
  }
}

} // namespace detail

/// Runs one command. Errors become reports: exit 2 for parse and usage
/// errors, exit 3 for unsupported fields and exceeded guards.
inline Report run(const Command& cmd)
{
  Report r;
  r.command = cmd.name + (cmd.sub.empty() ? "" : " " + cmd.sub);
  r.field = cmd.field;
  r.inputs = cmd.inputs;
  auto fail = [&](int code, const std::string& msg) {
    r.values.clear();
    r.representation.clear();
    r.invariants.reset();
    r.status = "error";
    r.error = msg;
    r.exit = code;
  };
  try {
    detail::run_command(cmd, r);
  }
  catch (const ParseError& e) {
    fail(2, std::string("parse error: ") + e.what());
  }
  catch (const UsageError& e) {
    fail(2, std::string("usage error: ") + e.what());
  }
  catch (const UnsupportedError& e) {
    fail(3, std::string("unsupported: ") + e.what());
  }
  catch (const resource_error& e) {
    fail(3, std::string("guard exceeded: ") + e.what());
  }
  catch (const std::overflow_error& e) {
    fail(3, std::string("guard exceeded: ") + e.what());
  }
  catch (const std::invalid_argument& e) {
    fail(2, std::string("invalid input: ") + e.what());
  }
  catch (const std::exception& e) {
    fail(3, std::string("unsupported: ") + e.what());
  }
  return r;
}

} // namespace gwpower
