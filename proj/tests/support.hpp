#pragma once

#include <algorithm>
#include <stdexcept>

#include "cftengine/catalog.hpp"
#include "cftengine/system.hpp"

namespace cfe::test {

inline int perm_element(const GroupPtr& g, const std::vector<int>& perm) {
    const auto& ps = g->permutations();
    auto it = std::find(ps.begin(), ps.end(), perm);
    if (it == ps.end()) throw std::invalid_argument("permutation not in group");
    return static_cast<int>(it - ps.begin());
}

inline std::shared_ptr<const SubgroupSystem> full_system(const GroupPtr& g) {
    return std::make_shared<const SubgroupSystem>(SubgroupSystem::full(make_lattice(g)));
}

inline int lattice_id(const SubgroupSystem& s, const Subgroup& h) { return s.lattice()->id_of(h); }

inline Subgroup gen(const GroupPtr& g, std::vector<int> xs) { return Subgroup::generated(g, xs); }

}  // namespace cfe::test
