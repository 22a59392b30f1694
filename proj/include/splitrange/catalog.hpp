#pragma once

#include <functional>
#include <string>
#include <vector>

#include "splitrange/splitting.hpp"

namespace splitrange {

/// A named, reproducible operator pair used by the property suites and the
/// experiment registry. Every entry has exact (closed-form) resolvents.
struct CatalogEntry {
  std::string name;
  std::string summary;
  // Both operators are 3*-monotone (rectangular); range-formula equalities
  // such as v = P_{cl D ∩ cl R}(0) are only guaranteed for these pairs.
  bool three_star = false;
  // Multiplier on the comparison window for displacement-sampling inputs:
  // (Id - T) can contract (e.g. through a resolvent of a strongly monotone
  // linear map), so inputs must come from a proportionally larger box for
  // the sampled range to fill the comparison window.
  double input_scale = 1.0;
  std::function<OperatorPair()> make;
};

const std::vector<CatalogEntry>& pair_catalog();

/// Look up one entry by name; throws std::invalid_argument on unknown names.
const CatalogEntry& catalog_entry(const std::string& name);

std::vector<std::string> catalog_names();

}  // namespace splitrange
