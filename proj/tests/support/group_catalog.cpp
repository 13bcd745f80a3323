#include "support/group_catalog.hpp"

namespace randgrp::testsupport {

using groups::MarkedFiniteGroup;

std::vector<CatalogEntry> small_group_catalog(int max_order) {
  std::vector<CatalogEntry> all = {
      {"Z1", 1, [](std::vector<int> m) { return groups::cyclic(1, std::move(m)); }},
      {"Z2", 2, [](std::vector<int> m) { return groups::cyclic(2, std::move(m)); }},
      {"Z3", 3, [](std::vector<int> m) { return groups::cyclic(3, std::move(m)); }},
      {"Z4", 4, [](std::vector<int> m) { return groups::cyclic(4, std::move(m)); }},
      {"Z2xZ2", 4,
       [](std::vector<int> m) {
         return groups::direct_product(groups::cyclic(2, {0, 0}),
                                       groups::cyclic(2, {0, 0}), std::move(m));
       }},
      {"Z5", 5, [](std::vector<int> m) { return groups::cyclic(5, std::move(m)); }},
      {"Z6", 6, [](std::vector<int> m) { return groups::cyclic(6, std::move(m)); }},
      {"S3", 6, [](std::vector<int> m) { return groups::dihedral(3, std::move(m)); }},
      {"Z7", 7, [](std::vector<int> m) { return groups::cyclic(7, std::move(m)); }},
      {"Z8", 8, [](std::vector<int> m) { return groups::cyclic(8, std::move(m)); }},
      {"Z4xZ2", 8,
       [](std::vector<int> m) {
         return groups::direct_product(groups::cyclic(4, {0, 0}),
                                       groups::cyclic(2, {0, 0}), std::move(m));
       }},
      {"Z2xZ2xZ2", 8,
       [](std::vector<int> m) {
         return groups::direct_product(
             groups::direct_product(groups::cyclic(2, {0, 0}),
                                    groups::cyclic(2, {0, 0}), {0, 0}),
             groups::cyclic(2, {0, 0}), std::move(m));
       }},
      {"D4", 8, [](std::vector<int> m) { return groups::dihedral(4, std::move(m)); }},
      {"Q8", 8, [](std::vector<int> m) { return groups::quaternion8(std::move(m)); }},
  };
  std::vector<CatalogEntry> out;
  for (auto& e : all)
    if (e.order <= max_order) out.push_back(std::move(e));
  return out;
}

} // namespace randgrp::testsupport
