#pragma once

#include <functional>
#include <string>
#include <vector>

#include "randgrp/groups.hpp"

namespace randgrp::testsupport {

struct CatalogEntry {
  std::string name;
  int order;
  std::function<groups::MarkedFiniteGroup(std::vector<int>)> make;
};

/// Every isomorphism class of groups of order <= max_order (max 8 supported):
/// cyclics, Z2xZ2, Z6, S3, Z8, Z4xZ2, Z2^3, D4, Q8.
std::vector<CatalogEntry> small_group_catalog(int max_order);

} // namespace randgrp::testsupport
