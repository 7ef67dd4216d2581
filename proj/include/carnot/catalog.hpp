#ifndef CARNOT_CATALOG_HPP
#define CARNOT_CATALOG_HPP

#include "carnot/quotient.hpp"

#include <memory>
#include <string>
#include <vector>

namespace carnot {

inline constexpr const char* kCatalogVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

/// Built-in, validated quotient models with per-model designated polynomial
/// test functions (used by the remainder and mean-value suites).
struct CatalogEntry {
  std::string name;
  std::string title;
  std::shared_ptr<const QuotientModel> model;
  std::vector<std::string> test_functions;
};

const std::vector<CatalogEntry>& catalog();

/// Lookup by name; throws BadInput with the list of known names.
const CatalogEntry& catalog_entry(const std::string& name);
const QuotientModel& catalog_model(const std::string& name);

}  // namespace carnot

#endif
