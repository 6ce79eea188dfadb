#include "report.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace crr::cli {

Json make_report(const std::string& command) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  return j;
}

Json witness_json(const Circuit& c, const Assignment& x) {
  Json w = Json::object();
  for (Var v : x.vars()) w[c.var_name(v)] = x.value(v) ? 1 : 0;
  return w;
}

void emit_report(const Json& report, const std::optional<std::string>& json_path) {
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (json_path) {
    std::ofstream out(*json_path);
    if (!out) throw std::runtime_error("cannot write report to '" + *json_path + "'");
    out << text;
  }
}

}  // namespace crr::cli
