#ifndef CARNOT_GROUPFILE_HPP
#define CARNOT_GROUPFILE_HPP

#include "carnot/quotient.hpp"

#include <string>
#include <vector>

namespace carnot {

/// Parsed group-definition file. Sections:
///   [basis]     name: weight            (one per line)
///   [brackets]  [a,b] = q1*c + q2*d     (rational coefficients)
///   [subgroup]  names spanning the subalgebra (optional)
///   [order]     explicit adapted ordering, subgroup block first (optional)
struct GroupFile {
  std::vector<std::string> basis_names;
  std::vector<int> basis_weights;
  struct Bracket {
    std::string left, right;
    std::vector<std::pair<Rational, std::string>> terms;
  };
  std::vector<Bracket> brackets;
  std::vector<std::string> subgroup;
  std::vector<std::string> order;
};

GroupFile parse_group_file(const std::string& text);
std::string print_group_file(const GroupFile& gf);

/// Validates and builds the quotient model described by the file.
QuotientModel build_from_file(const GroupFile& gf);

}  // namespace carnot

#endif
