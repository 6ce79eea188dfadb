#include "crr/dimacs.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace crr {

void write_dimacs(std::ostream& os, const CnfFormula& f) {
  for (Var v = 0; v < f.num_vars(); ++v) {
    const std::string& nm = f.name(v);
    os << "c var " << (v + 1) << ' ' << (nm.empty() ? "v" + std::to_string(v) : nm)
       << ' ' << to_string(f.role(v)) << '\n';
  }
  os << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const Clause& c : f.clauses()) {
    for (Lit l : c.lits()) os << (l.negated() ? -(l.var() + 1) : (l.var() + 1)) << ' ';
    os << "0\n";
  }
}

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  write_dimacs(os, f);
  return os.str();
}

CnfFormula read_dimacs(std::istream& is) {
  CnfFormula f;
  bool have_header = false;
  std::vector<Lit> current;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") {
      std::string tag;
      if (ls >> tag && tag == "var") {
        long id;
        std::string name, role;
        if (ls >> id >> name >> role) {
          if (id < 1) throw std::runtime_error("dimacs: bad variable id in comment");
          f.ensure_num_vars(static_cast<int>(id));
          f.set_name(static_cast<Var>(id - 1), name);
          if (auto r = var_role_from_string(role))
            f.set_role(static_cast<Var>(id - 1), *r);
        }
      }
      continue;
    }
    if (first == "p") {
      std::string fmt;
      long nv = 0, nc = 0;
      if (!(ls >> fmt >> nv >> nc) || fmt != "cnf")
        throw std::runtime_error("dimacs: malformed problem line");
      f.ensure_num_vars(static_cast<int>(nv));
      have_header = true;
      continue;
    }
    if (!have_header) throw std::runtime_error("dimacs: clause before problem line");
    std::istringstream cs(line);
    long lit;
    while (cs >> lit) {
      if (lit == 0) {
        f.add_clause(Clause(std::move(current)));
        current.clear();
      } else {
        Var v = static_cast<Var>((lit > 0 ? lit : -lit) - 1);
        if (v >= f.num_vars()) throw std::runtime_error("dimacs: literal out of range");
        current.emplace_back(v, lit < 0);
      }
    }
  }
  if (!current.empty()) f.add_clause(Clause(std::move(current)));
  if (!have_header) throw std::runtime_error("dimacs: missing problem line");
  return f;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream is(text);
  return read_dimacs(is);
}

}  // namespace crr
