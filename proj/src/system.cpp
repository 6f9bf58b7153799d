#include "cftengine/system.hpp"

#include <sstream>

namespace cfe {

LatticePtr make_lattice(GroupPtr g) { return std::make_shared<const SubgroupLattice>(std::move(g)); }

SubgroupSystem::SubgroupSystem(LatticePtr lat, std::vector<int> base, std::vector<std::set<int>> res_sets,
                               std::vector<std::set<int>> ind_sets)
    : lat_(std::move(lat)), base_(std::move(base)), res_(std::move(res_sets)), ind_(std::move(ind_sets)) {
    int n = lat_->size();
    res_.resize(n);
    ind_.resize(n);
    in_base_.assign(n, 0);
    for (int b : base_) {
        if (b < 0 || b >= n) throw std::invalid_argument("subgroup id out of range in system base");
        in_base_[b] = 1;
    }
    for (int h = 0; h < n; ++h)
        for (const auto* s : {&res_[h], &ind_[h]})
            for (int i : *s)
                if (i < 0 || i >= n) throw std::invalid_argument("subgroup id out of range in system");
    mackey_ = validate().ok();
}

SubgroupSystem SubgroupSystem::full(LatticePtr lat) {
    return filtered(std::move(lat), [](const Subgroup&) { return true; });
}

SubgroupSystem SubgroupSystem::filtered(LatticePtr lat, const std::function<bool(const Subgroup&)>& pred) {
    int n = lat->size();
    std::vector<int> base;
    for (int i = 0; i < n; ++i)
        if (pred((*lat)[i])) base.push_back(i);
    std::vector<std::set<int>> res(n), ind(n);
    for (int h : base)
        for (int i : base)
            if (lat->leq(i, h)) { res[h].insert(i); ind[h].insert(i); }
    return SubgroupSystem(std::move(lat), std::move(base), std::move(res), std::move(ind));
}

std::string SubgroupSystem::label(int id) const {
    const Subgroup& s = sub(id);
    std::ostringstream os;
    os << "H" << id << "{";
    for (size_t k = 0; k < s.elements().size(); ++k) os << (k ? "," : "") << s.elements()[k];
    os << "}";
    return os.str();
}

Report SubgroupSystem::validate() const {
    Report r;
    const int n = lat_->size();
    const int order = group()->order();
    Verdict conj_closed, reflexive, contained, transitive, equivariant, mackey;
    for (int h : base_)
        for (int g = 0; g < order; ++g)
            if (!in_base(lat_->conj(g, h))) conj_closed.fail("g=" + std::to_string(g) + " H=" + label(h));
    for (int h = 0; h < n; ++h) {
        if (!in_base(h)) {
            if (!res_[h].empty() || !ind_[h].empty()) contained.fail("sets attached to non-base " + label(h));
            continue;
        }
        for (const auto* s : {&res_[h], &ind_[h]}) {
            const char* kind = s == &res_[h] ? "res" : "ind";
            if (!s->count(h)) reflexive.fail(std::string(kind) + " set of " + label(h) + " misses H");
            for (int i : *s) {
                if (!in_base(i) || !lat_->leq(i, h))
                    contained.fail(std::string(kind) + " " + label(i) + " not a base subgroup of " + label(h));
                else
                    for (int j : (s == &res_[h] ? res_[i] : ind_[i]))
                        if (!s->count(j))
                            transitive.fail(std::string(kind) + " H=" + label(h) + " I=" + label(i) + " J=" + label(j));
            }
            for (int g = 0; g < order; ++g) {
                int gh = lat_->conj(g, h);
                if (!in_base(gh)) continue;
                const std::set<int>& target = s == &res_[h] ? res_[gh] : ind_[gh];
                std::set<int> moved;
                for (int i : *s) moved.insert(lat_->conj(g, i));
                if (moved != target) equivariant.fail(std::string(kind) + " g=" + std::to_string(g) + " H=" + label(h));
            }
        }
        for (int i : res_[h])
            for (int j : ind_[h]) {
                int ij = lat_->intersect(i, j);
                if (!in_base(i) || !in_base(j)) continue;
                if (!res_[j].count(ij) || !ind_[i].count(ij))
                    mackey.fail("H=" + label(h) + " I=" + label(i) + " J=" + label(j));
            }
    }
    conj_closed.into(r, "base_conjugation_closed");
    reflexive.into(r, "reflexive");
    contained.into(r, "sets_within_base");
    transitive.into(r, "transitive");
    equivariant.into(r, "conjugation_equivariant");
    mackey.into(r, "mackey_intersections");
    return r;
}


}  // namespace cfe
