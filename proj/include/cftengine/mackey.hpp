#pragma once

#include <map>
#include <random>

#include "cftengine/functor.hpp"
#include "cftengine/ramification.hpp"
#include "cftengine/transfer.hpp"

namespace cfe {

struct NotMackeySystem : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidDescentBasis : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Left action of a finite group on a finitely generated abelian group.
class GModule {
public:
    // images of some generating elements; the action of every element is derived and validated
    GModule(GroupPtr g, FgAbGroup a, const std::vector<std::pair<int, Mat>>& generator_images, std::string name = "");

    static GModule trivial(GroupPtr g, FgAbGroup a);
    // (Z/n)[G/H] on left cosets (n = 0 gives Z), optionally twisted by the sign of an index-2 subgroup
    static GModule permutation(GroupPtr g, const Subgroup& h, Int modulus, const Subgroup* sign_kernel = nullptr);
    // C2 acting on Z by -1
    static GModule negation(GroupPtr c2);
    static GModule random(const GroupPtr& g, const SubgroupLattice& lat, std::mt19937_64& rng);

    const GroupPtr& group() const { return g_; }
    const FgAbGroup& module() const { return a_; }
    const AbHom& act(int x) const { return act_.at(x); }
    const std::string& name() const { return name_; }

private:
    GModule() = default;
    void validate() const;

    GroupPtr g_;
    FgAbGroup a_;
    std::vector<AbHom> act_;
    std::string name_;
};

Report check_stability(const RicFunctor& f);
// res_{I,H} ind_{H,J} against the double coset sum, for every (H, I in S_r(H), J in S_i(H))
Report check_mackey_formula(const RicFunctor& f);
// right-hand side of the Mackey formula over a given set of I\H/J representatives
AbHom mackey_rhs(const RicFunctor& f, int h, int i, int j, const std::vector<int>& reps);
Report check_cohomological(const RicFunctor& f);
// Mackey formula over two different representative sets agrees, for every triple
Report check_mackey_rep_independence(const RicFunctor& f, std::mt19937_64& rng);

struct AbelianizationFunctor {
    RicFunctor functor;
    std::map<int, AbelianQuotient> quotients;
};
AbelianizationFunctor abelianization_functor(const AbelianizationSystem& r);

struct FixedPointFunctor {
    RicFunctor functor;
    std::map<int, AbHom> embedding;  // A^H -> A
};
FixedPointFunctor fixed_point_functor(const GModule& a, std::shared_ptr<const SubgroupSystem> sys);
// the norm sum over random left transversals reproduces the tabulated ind maps
Report check_fixed_point_ind_independence(const GModule& a, const FixedPointFunctor& fp, std::mt19937_64& rng,
                                          int trials = 2);

RicFunctor constant_functor(std::shared_ptr<const SubgroupSystem> sys, const FgAbGroup& a);
// values Omega, con = id, res = x e, ind = x f
RicFunctor omega_functor(const RamificationDatum& d, std::shared_ptr<const SubgroupSystem> sys, const FgAbGroup& omega);

// C2 with C(C2) = C(1) = Z, res = x2, ind = id: cohomological and stable, fails descent
RicFunctor non_descent_functor();

struct DescentResult {
    bool descent = false;
    std::string witness;
    FgAbGroup fixed;  // Phi(U)^{H/U}
};
DescentResult check_galois_descent(const RicFunctor& f, int h, int u);

struct Colimit {
    GModule module;
    int minimum;  // lattice id of the minimum of the basis
};
Colimit functor_colimit(const RicFunctor& f, const std::vector<int>& basis);

struct AdjunctionResult {
    AbHom epsilon;  // (A_*)* -> A
    bool epsilon_iso = false;
    FunctorMorphism eta;  // A_* -> ((A_*)*)_*  or  Phi -> (Phi*)_*
    Report eta_report;    // morphism validity and per-value isomorphy
    Report identities;    // counit-unit identities
};
// epsilon(A) and eta(A_*) together with the identity eps(A)_* o eta(A_*) = id
AdjunctionResult adjunction_for_module(const GModule& a, std::shared_ptr<const SubgroupSystem> sys,
                                       const std::vector<int>& basis);
// eta(Phi) together with the identity eps(Phi*) o eta(Phi)* = id
AdjunctionResult adjunction_for_functor(const RicFunctor& f, const std::vector<int>& basis);

// every normal subgroup of G in the base of the system
std::vector<int> normal_basis(const SubgroupSystem& sys);

}  // namespace cfe
