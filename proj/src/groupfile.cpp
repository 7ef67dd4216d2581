#include "carnot/groupfile.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace carnot {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_names(const std::string& body) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : body) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// "q*name" or "name" or "-name"
std::pair<Rational, std::string> parse_term(const std::string& term) {
  std::string t = trim(term);
  if (t.empty()) throw Error(ErrorCode::ParseError, "empty bracket term");
  Rational sign(1);
  if (t[0] == '-') {
    sign = -1;
    t = trim(t.substr(1));
  } else if (t[0] == '+') {
    t = trim(t.substr(1));
  }
  auto star = t.find('*');
  if (star == std::string::npos) {
    if (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '.')
      throw Error(ErrorCode::ParseError, "bracket term '" + term + "' has no target");
    return {sign, t};
  }
  Rational q = parse_rational(t.substr(0, star));
  return {sign * q, trim(t.substr(star + 1))};
}

}  // namespace

GroupFile parse_group_file(const std::string& text) {
  GroupFile gf;
  std::istringstream in(text);
  std::string line;
  enum class Section { none, basis, brackets, subgroup, order } section = Section::none;
  int lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line == "[basis]") { section = Section::basis; continue; }
    if (line == "[brackets]") { section = Section::brackets; continue; }
    if (line == "[subgroup]") { section = Section::subgroup; continue; }
    if (line == "[order]") { section = Section::order; continue; }
    if (line.front() == '[' && line.back() == ']' && line.find(',') == std::string::npos)
      throw Error(ErrorCode::ParseError,
                  "unknown section " + line + " at line " + std::to_string(lineno));

    switch (section) {
      case Section::basis: {
        auto colon = line.find(':');
        if (colon == std::string::npos)
          throw Error(ErrorCode::ParseError,
                      "expected 'name: weight' at line " + std::to_string(lineno));
        std::string name = trim(line.substr(0, colon));
        std::string w = trim(line.substr(colon + 1));
        if (name.empty() || w.empty())
          throw Error(ErrorCode::ParseError,
                      "expected 'name: weight' at line " + std::to_string(lineno));
        gf.basis_names.push_back(name);
        gf.basis_weights.push_back(std::stoi(w));
        break;
      }
      case Section::brackets: {
        // [a, b] = terms
        if (line.front() != '[')
          throw Error(ErrorCode::ParseError,
                      "expected '[a,b] = ...' at line " + std::to_string(lineno));
        auto close = line.find(']');
        auto eq = line.find('=', close);
        if (close == std::string::npos || eq == std::string::npos)
          throw Error(ErrorCode::ParseError,
                      "expected '[a,b] = ...' at line " + std::to_string(lineno));
        auto names = split_names(line.substr(1, close - 1));
        if (names.size() != 2)
          throw Error(ErrorCode::ParseError,
                      "bracket needs two arguments at line " + std::to_string(lineno));
        GroupFile::Bracket br;
        br.left = names[0];
        br.right = names[1];
        std::string rhs = trim(line.substr(eq + 1));
        if (rhs == "0") {
          gf.brackets.push_back(std::move(br));
          break;
        }
        // split on top-level + and - (keeping the sign with the term)
        std::string cur;
        for (size_t i = 0; i < rhs.size(); ++i) {
          char c = rhs[i];
          if ((c == '+' || c == '-') && i > 0 && !trim(cur).empty()) {
            br.terms.push_back(parse_term(cur));
            cur = (c == '-') ? "-" : "";
          } else {
            cur.push_back(c);
          }
        }
        if (!trim(cur).empty()) br.terms.push_back(parse_term(cur));
        gf.brackets.push_back(std::move(br));
        break;
      }
      case Section::subgroup: {
        for (auto& n : split_names(line)) gf.subgroup.push_back(n);
        break;
      }
      case Section::order: {
        for (auto& n : split_names(line)) gf.order.push_back(n);
        break;
      }
      case Section::none:
        throw Error(ErrorCode::ParseError,
                    "content before any section at line " + std::to_string(lineno));
    }
  }
  if (gf.basis_names.empty())
    throw Error(ErrorCode::ParseError, "missing [basis] section");
  return gf;
}

std::string print_group_file(const GroupFile& gf) {
  std::ostringstream out;
  out << "[basis]\n";
  for (size_t i = 0; i < gf.basis_names.size(); ++i)
    out << gf.basis_names[i] << ": " << gf.basis_weights[i] << "\n";
  if (!gf.brackets.empty()) {
    out << "[brackets]\n";
    for (const auto& br : gf.brackets) {
      out << "[" << br.left << ", " << br.right << "] = ";
      if (br.terms.empty()) {
        out << "0\n";
        continue;
      }
      bool first = true;
      for (const auto& [q, name] : br.terms) {
        Rational mag = q < 0 ? Rational(-q) : q;
        if (first) {
          if (q < 0) out << "-";
          first = false;
        } else {
          out << (q < 0 ? " - " : " + ");
        }
        if (mag != 1) out << to_string(mag) << "*";
        out << name;
      }
      out << "\n";
    }
  }
  if (!gf.subgroup.empty()) {
    out << "[subgroup]\n";
    for (size_t i = 0; i < gf.subgroup.size(); ++i)
      out << gf.subgroup[i] << (i + 1 == gf.subgroup.size() ? "\n" : " ");
  }
  if (!gf.order.empty()) {
    out << "[order]\n";
    for (size_t i = 0; i < gf.order.size(); ++i)
      out << gf.order[i] << (i + 1 == gf.order.size() ? "\n" : " ");
  }
  return out.str();
}

QuotientModel build_from_file(const GroupFile& gf) {
  const int n = static_cast<int>(gf.basis_names.size());
  auto index_of = [&](const std::string& name) {
    for (int i = 0; i < n; ++i)
      if (gf.basis_names[static_cast<size_t>(i)] == name) return i;
    throw Error(ErrorCode::ParseError, "unknown basis name '" + name + "'");
  };

  // resolve the adapted ordering: explicit [order] (subgroup block first) or
  // subgroup names followed by the remaining basis
  std::vector<int> sub_idx;
  for (const auto& s : gf.subgroup) sub_idx.push_back(index_of(s));

  std::vector<int> order;
  if (!gf.order.empty()) {
    if (static_cast<int>(gf.order.size()) != n)
      throw Error(ErrorCode::BadInput, "[order] must list every basis vector");
    for (const auto& nme : gf.order) order.push_back(index_of(nme));
    std::vector<int> sorted_order(order);
    std::sort(sorted_order.begin(), sorted_order.end());
    for (int i = 0; i < n; ++i)
      if (sorted_order[static_cast<size_t>(i)] != i)
        throw Error(ErrorCode::BadInput, "[order] must be a permutation of the basis");
    for (size_t i = 0; i < sub_idx.size(); ++i)
      if (std::find(sub_idx.begin(), sub_idx.end(), order[i]) == sub_idx.end())
        throw Error(ErrorCode::BadInput,
                    "[order] must list the subgroup block first");
  } else {
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (int s : sub_idx) {
      order.push_back(s);
      used[static_cast<size_t>(s)] = true;
    }
    for (int i = 0; i < n; ++i)
      if (!used[static_cast<size_t>(i)]) order.push_back(i);
  }

  // build the algebra directly in adapted order
  std::vector<int> slot_of(static_cast<size_t>(n));
  AlgebraInput in;
  for (int s = 0; s < n; ++s) {
    int orig = order[static_cast<size_t>(s)];
    slot_of[static_cast<size_t>(orig)] = s;
    in.names.push_back(gf.basis_names[static_cast<size_t>(orig)]);
    in.weights.push_back(gf.basis_weights[static_cast<size_t>(orig)]);
  }
  for (const auto& br : gf.brackets) {
    AlgebraInput::Bracket b;
    b.left = slot_of[static_cast<size_t>(index_of(br.left))];
    b.right = slot_of[static_cast<size_t>(index_of(br.right))];
    for (const auto& [q, name] : br.terms)
      b.terms.emplace_back(slot_of[static_cast<size_t>(index_of(name))], q);
    in.brackets.push_back(std::move(b));
  }

  auto alg = StratifiedAlgebra::validate(in);
  SubgroupSpec spec;
  for (size_t i = 0; i < sub_idx.size(); ++i) spec.generators.push_back(static_cast<int>(i));
  return build_quotient(alg, spec);
}

}  // namespace carnot
