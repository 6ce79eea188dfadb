#pragma once

#include <iosfwd>
#include <string>

#include "crr/cnf.hpp"

namespace crr {

// DIMACS CNF with a comment header mapping variables to names and roles:
//   c var <dimacs-id> <name> <role>
// DIMACS ids are the internal variable ids plus one.
void write_dimacs(std::ostream& os, const CnfFormula& f);
std::string to_dimacs(const CnfFormula& f);

// Reads DIMACS back, honoring `c var` comments when present.
CnfFormula read_dimacs(std::istream& is);
CnfFormula parse_dimacs(const std::string& text);

}  // namespace crr
