#pragma once

#include <string>
#include <vector>

#include "cftengine/group.hpp"

namespace cfe {

// Cyclic extension <a, b | a^m, b^n = a^s, b a b^-1 = a^r>; element a^i b^j has index i + m j.
GroupPtr metacyclic_group(int m, int n, int r, int s, std::string name);
GroupPtr cyclic_group(int n);
GroupPtr dihedral_group(int n);  // order 2n
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, std::string name = "");
// n ⋊ C2 where the C2 generator acts by the involution auto_images (an automorphism of n)
GroupPtr semidirect_c2(const GroupPtr& n, const std::vector<int>& auto_images, std::string name);
GroupPtr symmetric_group(int n);
GroupPtr alternating_group(int n);

// All groups of order <= 16 up to isomorphism, plus S4; deterministic order.
const std::vector<GroupPtr>& catalog();
GroupPtr catalog_group(const std::string& name);

}  // namespace cfe
