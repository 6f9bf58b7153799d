#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cftengine/abelian.hpp"
#include "cftengine/report.hpp"
#include "cftengine/system.hpp"

namespace cfe {

// Index set with restriction/induction sets and a group acting by conjugation.
// Subgroup systems use lattice ids (with non-base ids switched off); spectra use pair indices.
struct RicDomain {
    GroupPtr group;
    int size = 0;
    int group_order = 1;
    std::vector<char> in_base;
    std::vector<std::set<int>> res;
    std::vector<std::set<int>> ind;
    std::vector<int> conj;  // conj[g * size + x]
    std::vector<std::string> labels;

    int act(int g, int x) const { return conj[static_cast<size_t>(g) * size + x]; }
    std::vector<int> base() const;

    static std::shared_ptr<const RicDomain> of(const SubgroupSystem& sys);
};

using DomainPtr = std::shared_ptr<const RicDomain>;

struct NotSubfunctor : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Closed table of values and maps. res(i, h): C(h) -> C(i); ind(h, i): C(i) -> C(h); con(g, h): C(h) -> C(gh).
class RicFunctor {
public:
    RicFunctor() = default;
    explicit RicFunctor(DomainPtr dom, std::shared_ptr<const SubgroupSystem> sys = nullptr);

    const DomainPtr& domain() const { return dom_; }
    bool has_system() const { return sys_ != nullptr; }
    const SubgroupSystem& system() const;
    const std::shared_ptr<const SubgroupSystem>& system_ptr() const { return sys_; }

    void set_value(int x, FgAbGroup a);
    void set_res(int y, int x, AbHom f);
    void set_ind(int x, int y, AbHom f);
    void set_con(int g, int x, AbHom f);

    const FgAbGroup& value(int x) const;
    const AbHom& res(int y, int x) const;
    const AbHom& ind(int x, int y) const;
    const AbHom& con(int g, int x) const;
    bool has_res(int y, int x) const { return res_.count({y, x}) > 0; }
    bool has_ind(int x, int y) const { return ind_.count({x, y}) > 0; }

    // every value and every map the domain allows is present with matching (co)domains
    Report check_complete() const;

    std::string name;

private:
    DomainPtr dom_;
    std::shared_ptr<const SubgroupSystem> sys_;
    std::vector<std::optional<FgAbGroup>> values_;
    std::map<std::pair<int, int>, AbHom> res_;
    std::map<std::pair<int, int>, AbHom> ind_;
    std::vector<std::optional<AbHom>> con_;
};

// triviality, transitivity, equivariance (plus completeness)
Report validate_ric_functor(const RicFunctor& f);

struct FunctorMorphism {
    std::map<int, AbHom> components;
};

// component (co)domains and the res/ind/con squares
Report validate_morphism(const RicFunctor& source, const RicFunctor& target, const FunctorMorphism& m);
Report morphism_isomorphism(const FunctorMorphism& m);

// Subfunctor given by generators of each value; maps must preserve it.
struct QuotientFunctor {
    RicFunctor functor;
    std::map<int, QuotientData> quotients;
};
QuotientFunctor quotient_functor(const RicFunctor& f, const std::map<int, std::vector<Vec>>& sub);

}  // namespace cfe
