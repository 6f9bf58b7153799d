#pragma once

#include <map>

#include "cftengine/group.hpp"
#include "cftengine/report.hpp"
#include "cftengine/system.hpp"

namespace cfe {

struct NotTransferInducing : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// prod_i kappa_T(t_i g) in the order of the reps of T (right transversal)
int pretransfer(const Transversal& t, int g);

// minimal element of the coset x r (r normal, so left and right cosets agree)
int coset_rep(const Subgroup& r, int x);

// Ver: ambient/r_g -> sub/r_h. Validates the transfer-inducing condition once and tabulates.
class TransferMap {
public:
    TransferMap(const Subgroup& ambient, const Subgroup& sub, const Subgroup& r_sub, const Subgroup& r_ambient);

    // canonical representative of V(g) r_sub
    int operator()(int g) const { return table_.at(g); }
    int with_transversal(const Transversal& t, int g) const;
    const Subgroup& sub() const { return sub_; }
    const Subgroup& r_sub() const { return r_sub_; }

private:
    Subgroup ambient_;
    Subgroup sub_;
    Subgroup r_sub_;
    std::vector<int> table_;
};

int transfer(const Subgroup& ambient, const Subgroup& sub, const Subgroup& r_sub, const Subgroup& r_ambient, int g);

struct LambdaTerm {
    int rho;
    int lambda;
};

// prod_rho rho g^lambda rho^-1 modulo r_sub, with reps of sub \ ambient / <g>
int transfer_via_lambda(const Subgroup& ambient, const Subgroup& sub, const Subgroup& r_sub, int g,
                        const std::vector<int>& reps, std::vector<LambdaTerm>* terms = nullptr);

// H -> R(H) on the base of a subgroup system (lattice ids)
class AbelianizationSystem {
public:
    AbelianizationSystem(const SubgroupSystem& sys, std::map<int, int> assignment);
    static AbelianizationSystem commutators(const SubgroupSystem& sys);
    static AbelianizationSystem trivial_quotients(const SubgroupSystem& sys);  // R(H) = H

    const SubgroupSystem& system() const { return sys_; }
    int r_id(int h) const { return r_.at(h); }
    const Subgroup& r(int h) const { return sys_.sub(r_.at(h)); }

private:
    SubgroupSystem sys_;
    std::map<int, int> r_;
};

Report validate_abelianization_system(const AbelianizationSystem& r);

}  // namespace cfe
