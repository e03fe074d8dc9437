#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gw_ring.hpp"

namespace gwpower
{

/// One verification check. Informational checks are reported but do not
/// affect the exit status.
struct CheckResult
{
  std::string name;
  std::string lhs;
  std::string rhs;
  bool pass = false;
  bool informational = false;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct Term
{
  std::int64_t rep = 0;
  std::int64_t coeff = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Report
{
  std::string command;
  std::string field;
  std::vector<std::string> inputs;
  std::vector<std::pair<std::string, std::string>> values; // named outputs, in order
  std::vector<Term> representation;                        // terms of the main GW output
  std::optional<std::string> invariants;
  std::vector<CheckResult> results;
  std::string status; // "done", "pass", "fail" or "error"
  std::optional<std::string> error;
  int exit = 0;

  friend bool operator==(const Report&, const Report&) = default;

  void set_form(const GWElement& x)
  {
    representation.clear();
    for (const auto& [rep, c] : x.display_terms())
      representation.push_back(Term{rep, c});
    invariants = gwpower::invariants(x).to_string();
  }

  bool all_pass() const
  {
    for (const auto& r : results)
      if (!r.informational && !r.pass)
        return false;
    return true;
  }

  /// Sets status and exit code from the checks (for verification commands).
  void finish_checks()
  {
    bool ok = all_pass();
    status = ok ? "pass" : "fail";
    exit = ok ? 0 : 1;
  }
};

inline void to_json(nlohmann::ordered_json& j, const CheckResult& c)
{
  j = nlohmann::ordered_json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}};
  if (c.informational)
    j["informational"] = true;
}

inline void from_json(const nlohmann::ordered_json& j, CheckResult& c)
{
  j.at("name").get_to(c.name);
  j.at("lhs").get_to(c.lhs);
  j.at("rhs").get_to(c.rhs);
  j.at("pass").get_to(c.pass);
  c.informational = j.value("informational", false);
}

inline nlohmann::ordered_json report_to_json(const Report& r)
{
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["field"] = r.field;
  j["inputs"] = r.inputs;
  nlohmann::ordered_json values = nlohmann::ordered_json::array();
  for (const auto& [name, text] : r.values)
    values.push_back({{"name", name}, {"value", text}});
  j["values"] = values;
  nlohmann::ordered_json rep = nlohmann::ordered_json::array();
  for (const auto& t : r.representation)
    rep.push_back({{"class", t.rep}, {"coeff", t.coeff}});
  j["representation"] = rep;
  if (r.invariants)
    j["invariants"] = *r.invariants;
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const auto& c : r.results) {
    nlohmann::ordered_json cj;
    to_json(cj, c);
    results.push_back(cj);
  }
  j["results"] = results;
  j["status"] = r.status;
  if (r.error)
    j["error"] = *r.error;
  j["exit"] = r.exit;
  return j;
}

inline Report report_from_json(const nlohmann::ordered_json& j)
{
  Report r;
  j.at("command").get_to(r.command);
  j.at("field").get_to(r.field);
  j.at("inputs").get_to(r.inputs);
  for (const auto& v : j.at("values"))
    r.values.emplace_back(v.at("name").get<std::string>(), v.at("value").get<std::string>());
  for (const auto& t : j.at("representation"))
    r.representation.push_back(Term{t.at("class").get<std::int64_t>(), t.at("coeff").get<std::int64_t>()});
  if (j.contains("invariants"))
    r.invariants = j.at("invariants").get<std::string>();
  for (const auto& c : j.at("results")) {
    CheckResult cr;
    from_json(c, cr);
    r.results.push_back(cr);
  }
  j.at("status").get_to(r.status);
  if (j.contains("error"))
    r.error = j.at("error").get<std::string>();
  j.at("exit").get_to(r.exit);
  return r;
}

inline std::string render_json(const Report& r)
{
  return report_to_json(r).dump(2) + "\n";
}

inline std::string render_text(const Report& r)
{
  std::ostringstream os;
  os << "command: " << r.command << "\n";
  os << "field: " << r.field << "\n";
  for (const auto& in : r.inputs)
    os << "input: " << in << "\n";
  for (const auto& [name, text] : r.values)
    os << name << " = " << text << "\n";
  if (r.invariants)
    os << "invariants: " << *r.invariants << "\n";
  for (const auto& c : r.results) {
    os << (c.informational ? "[info] " : (c.pass ? "[pass] " : "[FAIL] ")) << c.name << ": " << c.lhs
       << (c.pass ? " == " : " != ") << c.rhs << "\n";
  }
  if (r.error)
    os << "error: " << *r.error << "\n";
  os << "status: " << r.status << " (exit " << r.exit << ")\n";
  return os.str();
}

} // namespace gwpower
