#include "crr/aiger.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "crr/netlist.hpp"

namespace crr {

namespace {

struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  int lineno = 0;

  bool next(std::string& out) {
    if (pos > text.size()) return false;
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    out.assign(line);
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return true;
  }
};

std::vector<std::uint64_t> parse_numbers(const std::string& line, std::size_t count,
                                         int lineno) {
  std::istringstream is(line);
  std::vector<std::uint64_t> nums;
  std::uint64_t v;
  while (is >> v) nums.push_back(v);
  if (!is.eof() || nums.size() != count)
    throw ParseError("expected " + std::to_string(count) + " numbers", lineno);
  return nums;
}

}  // namespace

Circuit parse_aiger_ascii(std::string_view text, std::string name) {
  LineReader rd{text};
  std::string line;
  if (!rd.next(line)) throw ParseError("empty file", 1);
  std::istringstream hdr(line);
  std::string magic;
  std::uint64_t m = 0, i = 0, l = 0, o = 0, a = 0;
  if (!(hdr >> magic >> m >> i >> l >> o >> a) || magic != "aag")
    throw ParseError("malformed header, expected 'aag M I L O A'", rd.lineno);
  if (l != 0)
    throw ParseError("sequential AIGER (L=" + std::to_string(l) +
                         ") is not supported",
                     rd.lineno);
  const std::uint64_t max_lit = 2 * m + 1;
  auto check_lit = [&](std::uint64_t lit, int lineno) {
    if (lit > max_lit)
      throw ParseError("literal " + std::to_string(lit) + " out of range", lineno);
  };

  std::vector<std::uint64_t> input_lits;
  for (std::uint64_t k = 0; k < i; ++k) {
    if (!rd.next(line)) throw ParseError("missing input line", rd.lineno);
    auto nums = parse_numbers(line, 1, rd.lineno);
    check_lit(nums[0], rd.lineno);
    if (nums[0] < 2 || (nums[0] & 1))
      throw ParseError("input literal must be a positive even literal", rd.lineno);
    input_lits.push_back(nums[0]);
  }
  std::vector<std::uint64_t> output_lits;
  for (std::uint64_t k = 0; k < o; ++k) {
    if (!rd.next(line)) throw ParseError("missing output line", rd.lineno);
    auto nums = parse_numbers(line, 1, rd.lineno);
    check_lit(nums[0], rd.lineno);
    output_lits.push_back(nums[0]);
  }
  struct AndDef {
    std::uint64_t lhs, rhs0, rhs1;
    int lineno;
  };
  std::vector<AndDef> ands;
  for (std::uint64_t k = 0; k < a; ++k) {
    if (!rd.next(line)) throw ParseError("missing and line", rd.lineno);
    auto nums = parse_numbers(line, 3, rd.lineno);
    for (auto v : nums) check_lit(v, rd.lineno);
    if (nums[0] < 2 || (nums[0] & 1))
      throw ParseError("and output must be a positive even literal", rd.lineno);
    ands.push_back({nums[0], nums[1], nums[2], rd.lineno});
  }
  // Optional symbol table; only input symbols are used for naming.
  std::map<std::uint64_t, std::string> input_symbols;
  while (rd.next(line)) {
    if (line.empty()) continue;
    if (line[0] == 'c') break;
    if (line[0] != 'i' && line[0] != 'o' && line[0] != 'l') continue;
    std::istringstream is(line.substr(1));
    std::uint64_t idx;
    std::string sym;
    if (line[0] == 'i' && (is >> idx) && std::getline(is >> std::ws, sym) &&
        idx < input_lits.size() && !sym.empty())
      input_symbols[idx] = sym;
  }

  std::set<std::uint64_t> input_vars, and_vars;
  for (auto lit : input_lits) input_vars.insert(lit >> 1);
  for (const auto& ad : ands) and_vars.insert(ad.lhs >> 1);
  if (input_vars.size() != input_lits.size())
    throw ParseError("duplicate input literal", 1);

  CircuitBuilder b(std::move(name));
  std::map<std::uint64_t, std::string> name_of_var;
  for (std::size_t k = 0; k < input_lits.size(); ++k) {
    auto it = input_symbols.find(k);
    std::string nm = it != input_symbols.end() ? it->second
                                               : "i" + std::to_string(k);
    name_of_var[input_lits[k] >> 1] = nm;
    b.input(nm);
  }
  for (const auto& ad : ands) {
    auto var = ad.lhs >> 1;
    if (input_vars.count(var) || !name_of_var.emplace(var, "a" + std::to_string(var)).second)
      throw ParseError("literal " + std::to_string(ad.lhs) + " is already defined",
                       ad.lineno);
  }

  bool have_const0 = false, have_const1 = false;
  std::set<std::uint64_t> have_not;
  // Resolves an AIGER literal to a variable name, materializing constant and
  // inverter gates on first use.
  auto resolve = [&](std::uint64_t lit, int lineno) -> std::string {
    auto var = lit >> 1;
    if (var == 0) {
      if (lit == 0) {
        if (!have_const0) b.gate(GateKind::Const0, "false", {}), have_const0 = true;
        return "false";
      }
      if (!have_const1) b.gate(GateKind::Const1, "true", {}), have_const1 = true;
      return "true";
    }
    auto it = name_of_var.find(var);
    if (it == name_of_var.end())
      throw ParseError("literal " + std::to_string(lit) + " is never defined", lineno);
    if (!(lit & 1)) return it->second;
    std::string nn = "n" + std::to_string(lit);
    if (have_not.insert(lit).second) b.gate(GateKind::Not, nn, {it->second}, lineno);
    return nn;
  };

  for (const auto& ad : ands) {
    std::string in0 = resolve(ad.rhs0, ad.lineno);
    std::string in1 = resolve(ad.rhs1, ad.lineno);
    b.gate(GateKind::And, name_of_var[ad.lhs >> 1], {in0, in1}, ad.lineno);
  }
  for (auto lit : output_lits) b.output(resolve(lit, 1));

  try {
    return b.build();
  } catch (const CircuitError& e) {
    throw ParseError(e.what(), e.tag);
  }
}

Circuit read_aiger_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string base = path;
  if (auto slash = base.find_last_of('/'); slash != std::string::npos)
    base = base.substr(slash + 1);
  return parse_aiger_ascii(ss.str(), base);
}

Circuit read_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string content = ss.str();
  std::string base = path;
  if (auto slash = base.find_last_of('/'); slash != std::string::npos)
    base = base.substr(slash + 1);
  if (content.rfind("aag", 0) == 0) return parse_aiger_ascii(content, base);
  return parse_netlist(content, base);
}

}  // namespace crr
