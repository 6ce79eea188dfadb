#include "crr/netlist.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace crr {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> toks;
  std::string cur;
  for (char ch : line) {
    if (ch == '#') break;
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) toks.push_back(std::move(cur));
  return toks;
}

}  // namespace

Circuit parse_netlist(std::string_view text, std::string name) {
  CircuitBuilder b(std::move(name));
  std::size_t pos = 0;
  int lineno = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    if (head == "input") {
      for (std::size_t i = 1; i < toks.size(); ++i) b.input(toks[i], lineno);
    } else if (head == "output") {
      for (std::size_t i = 1; i < toks.size(); ++i) b.output(toks[i], lineno);
    } else if (auto kind = gate_kind_from_string(head)) {
      if (toks.size() < 2)
        throw ParseError("gate line is missing an output variable", lineno);
      std::vector<std::string> fanins(toks.begin() + 2, toks.end());
      b.gate(*kind, toks[1], std::move(fanins), lineno);
    } else {
      throw ParseError("unknown gate kind '" + head + "'", lineno);
    }
  }
  try {
    return b.build();
  } catch (const CircuitError& e) {
    throw ParseError(e.what(), e.tag);
  }
}

std::string print_netlist(const Circuit& c) {
  std::ostringstream os;
  if (!c.inputs().empty()) {
    os << "input";
    for (Var v : c.inputs()) os << ' ' << c.var_name(v);
    os << '\n';
  }
  os << "output";
  for (Var z : c.outputs()) os << ' ' << c.var_name(z);
  os << '\n';
  for (const Gate& g : c.gates()) {
    os << to_string(g.kind) << ' ' << c.var_name(g.out);
    for (Var f : g.fanins) os << ' ' << c.var_name(f);
    os << '\n';
  }
  return os.str();
}

Circuit read_netlist_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string base = path;
  if (auto slash = base.find_last_of('/'); slash != std::string::npos)
    base = base.substr(slash + 1);
  return parse_netlist(ss.str(), base);
}

}  // namespace crr
