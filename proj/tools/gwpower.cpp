#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "cli_args.hpp"
#include "gwpower/report.hpp"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  auto parsed = gwpower::tools::parse_args(args);
  if (auto* early = std::get_if<gwpower::tools::EarlyExit>(&parsed)) {
    (early->code == 0 ? std::cout : std::cerr) << early->text;
    return early->code;
  }
  const auto& inv = std::get<gwpower::tools::Invocation>(parsed);
  gwpower::Report report = gwpower::run(inv.command);
  std::cout << (inv.json ? gwpower::render_json(report) : gwpower::render_text(report));
  return report.exit;
}
