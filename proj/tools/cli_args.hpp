#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "gwpower/cli.hpp"

namespace gwpower::tools
{

struct Invocation
{
  Command command;
  bool json = false;
};

/// Result of argument parsing: an invocation to run, or an exit code with
/// text to print (help output or a usage error).
struct EarlyExit
{
  int code = 0;
  std::string text;
};

inline std::variant<Invocation, EarlyExit> parse_args(std::vector<std::string> args)
{
  Invocation inv;
  Command& cmd = inv.command;
  CLI::App app{"Power structure on Grothendieck-Witt rings: computations and verification suites", "gwpower"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool takes_inputs) {
    sub->add_option("--field", cmd.field, "Q, R, C or F<p> for an odd prime p")->capture_default_str();
    sub->add_option("-n", cmd.n, "power index")->capture_default_str();
    sub->add_option("-N", cmd.N, "truncation order")->capture_default_str();
    sub->add_option("--seed", cmd.seed, "seed for randomized suites")->capture_default_str();
    sub->add_flag("--json", inv.json, "emit a JSON report");
    if (takes_inputs)
      sub->add_option("inputs", cmd.inputs, "input expressions");
  };

  struct Entry
  {
    const char* name;
    const char* help;
  };
  const Entry plain[] = {{"normalize", "canonical form and invariants of a GW class"},
                         {"eq", "decide equality of two GW classes"},
                         {"an", "a_n of a GW class"},
                         {"geom", "a_0 .. a_N of a GW class"},
                         {"sympow", "n-th symmetric power of a multiquadratic algebra"},
                         {"trace", "trace form of an algebra"}};
  for (const auto& e : plain) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    common(sub, true);
    sub->callback([&cmd, name = std::string(e.name)] { cmd.name = name; });
  }

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->require_subcommand(1);
  for (const auto& s : verify_suites()) {
    CLI::App* sub = verify->add_subcommand(s, "the " + s + " suite");
    common(sub, s == "compat");
    sub->callback([&cmd, s] {
      cmd.name = "verify";
      cmd.sub = s;
    });
  }

  CLI::App* tom = app.add_subcommand("tableofmarks", "table of marks of a named group");
  tom->add_option("--group", cmd.group, "group name")->required()->check(CLI::IsMember(group_catalogue()));
  tom->add_flag("--json", inv.json, "emit a JSON report");
  tom->callback([&cmd] { cmd.name = "tableofmarks"; });

  // CLI11 consumes the argument vector from the back.
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  }
  catch (const CLI::CallForHelp& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    return EarlyExit{0, os.str()};
  }
  catch (const CLI::CallForAllHelp& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    return EarlyExit{0, os.str()};
  }
  catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    app.exit(e, out, err);
    return EarlyExit{2, err.str() + out.str()};
  }
  return inv;
}

} // namespace gwpower::tools
