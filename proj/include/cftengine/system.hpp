#pragma once

#include <functional>
#include <memory>
#include <set>
#include <vector>

#include "cftengine/group.hpp"
#include "cftengine/report.hpp"

namespace cfe {

using LatticePtr = std::shared_ptr<const SubgroupLattice>;

LatticePtr make_lattice(GroupPtr g);

// Base subgroups with restriction and induction sets, all referenced by lattice id.
class SubgroupSystem {
public:
    SubgroupSystem(LatticePtr lat, std::vector<int> base, std::vector<std::set<int>> res_sets,
                   std::vector<std::set<int>> ind_sets);

    // every subgroup, with res = ind = all subgroups
    static SubgroupSystem full(LatticePtr lat);
    // base = subgroups satisfying pred; res = ind = base members contained in H
    static SubgroupSystem filtered(LatticePtr lat, const std::function<bool(const Subgroup&)>& pred);

    const LatticePtr& lattice() const { return lat_; }
    const GroupPtr& group() const { return lat_->group(); }
    const Subgroup& sub(int id) const { return (*lat_)[id]; }
    const std::vector<int>& base() const { return base_; }
    bool in_base(int id) const { return in_base_.at(id) != 0; }
    // indexed by lattice id; empty outside the base
    const std::set<int>& res_set(int h) const { return res_.at(h); }
    const std::set<int>& ind_set(int h) const { return ind_.at(h); }
    bool in_res(int h, int i) const { return res_.at(h).count(i) > 0; }
    bool in_ind(int h, int i) const { return ind_.at(h).count(i) > 0; }

    Report validate() const;
    // all structural conditions plus the Mackey intersection condition
    bool is_mackey() const { return mackey_; }
    std::string label(int id) const;

private:
    LatticePtr lat_;
    std::vector<int> base_;
    std::vector<char> in_base_;
    std::vector<std::set<int>> res_;
    std::vector<std::set<int>> ind_;
    bool mackey_ = false;
};

}  // namespace cfe
