#include "cftengine/transfer.hpp"

#include <algorithm>

namespace cfe {

int pretransfer(const Transversal& t, int g) {
    if (t.side != Side::Right) throw std::invalid_argument("pretransfer needs a right transversal");
    const auto& grp = t.ambient.group();
    int v = 0;
    for (int rep : t.reps) v = grp->mul(v, t_remover(t, grp->mul(rep, g)));
    return v;
}

int coset_rep(const Subgroup& r, int x) {
    const auto& g = r.group();
    int best = x;
    for (int y : r.elements()) best = std::min(best, g->mul(x, y));
    return best;
}

TransferMap::TransferMap(const Subgroup& ambient, const Subgroup& sub, const Subgroup& r_sub,
                         const Subgroup& r_ambient)
    : ambient_(ambient), sub_(sub), r_sub_(r_sub) {
    if (!ambient.contains(sub) || !sub.contains(r_sub) || !ambient.contains(r_ambient))
        throw std::invalid_argument("transfer data not nested");
    if (!r_sub.is_normal_in(sub)) throw std::invalid_argument("coabelian subgroup of the target is not normal");
    Transversal t = right_transversal(ambient, sub);
    table_.assign(ambient.group()->order(), -1);
    for (int g : ambient.elements()) table_[g] = coset_rep(r_sub, pretransfer(t, g));
    for (int r : r_ambient.elements())
        if (table_[r] != coset_rep(r_sub, 0))
            throw NotTransferInducing("pretransfer of " + std::to_string(r) + " leaves the target coabelian subgroup");
}

int TransferMap::with_transversal(const Transversal& t, int g) const {
    if (!(t.ambient == ambient_) || !(t.sub == sub_)) throw std::invalid_argument("transversal for different subgroups");
    return coset_rep(r_sub_, pretransfer(t, g));
}

int transfer(const Subgroup& ambient, const Subgroup& sub, const Subgroup& r_sub, const Subgroup& r_ambient, int g) {
    return TransferMap(ambient, sub, r_sub, r_ambient)(g);
}

int transfer_via_lambda(const Subgroup& ambient, const Subgroup& sub, const Subgroup& r_sub, int g,
                        const std::vector<int>& reps, std::vector<LambdaTerm>* terms) {
    const auto& grp = ambient.group();
    Subgroup cyc = Subgroup::generated(grp, {g});
    if (!is_double_coset_reps(ambient, sub, cyc, reps)) throw InvalidReps("not a set of H\\G/<g> representatives");
    int v = 0;
    int total = 0;
    for (int rho : reps) {
        int lambda = 1;
        int p = g;
        while (!sub.contains(grp->conj(rho, p))) { p = grp->mul(p, g); ++lambda; }
        v = grp->mul(v, grp->conj(rho, p));
        total += lambda;
        if (terms) terms->push_back({rho, lambda});
    }
    if (total != sub.index_in(ambient)) throw std::logic_error("lambda exponents do not sum to the index");
    return coset_rep(r_sub, v);
}

AbelianizationSystem::AbelianizationSystem(const SubgroupSystem& sys, std::map<int, int> assignment)
    : sys_(sys), r_(std::move(assignment)) {
    for (int h : sys_.base())
        if (!r_.count(h)) throw std::invalid_argument("abelianization system misses " + sys_.label(h));
}

AbelianizationSystem AbelianizationSystem::commutators(const SubgroupSystem& sys) {
    std::map<int, int> r;
    for (int h : sys.base()) r[h] = sys.lattice()->id_of(sys.sub(h).commutator_subgroup());
    return AbelianizationSystem(sys, r);
}

AbelianizationSystem AbelianizationSystem::trivial_quotients(const SubgroupSystem& sys) {
    std::map<int, int> r;
    for (int h : sys.base()) r[h] = h;
    return AbelianizationSystem(sys, r);
}

Report validate_abelianization_system(const AbelianizationSystem& ab) {
    const SubgroupSystem& sys = ab.system();
    const auto& lat = *sys.lattice();
    const auto& g = sys.group();
    Report rep;
    Verdict coabelian, equivariant, transfer_ok, inclusion_ok;
    for (int h : sys.base()) {
        const Subgroup& H = sys.sub(h);
        const Subgroup& R = ab.r(h);
        if (!R.is_normal_in(H)) { coabelian.fail("R(H) not normal in H=" + sys.label(h)); continue; }
        bool abel = true;
        for (int a : H.elements())
            for (int b : H.elements())
                if (abel && !R.contains(g->commutator(a, b))) abel = false;
        if (!abel) coabelian.fail("H/R(H) not abelian for H=" + sys.label(h));
    }
    coabelian.into(rep, "coabelian");
    if (!coabelian.pass()) return rep;
    for (int h : sys.base())
        for (int x = 0; x < g->order(); ++x)
            if (lat.conj(x, ab.r_id(h)) != ab.r_id(lat.conj(x, h)))
                equivariant.fail("g=" + std::to_string(x) + " H=" + sys.label(h));
    for (int h : sys.base()) {
        const Subgroup& H = sys.sub(h);
        for (int i : sys.res_set(h)) {
            Transversal t = right_transversal(H, sys.sub(i));
            for (int r : ab.r(h).elements())
                if (!ab.r(i).contains(pretransfer(t, r))) {
                    transfer_ok.fail("H=" + sys.label(h) + " I=" + sys.label(i) + " r=" + std::to_string(r));
                    break;
                }
        }
        for (int i : sys.ind_set(h))
            if (!ab.r(h).contains(ab.r(i))) inclusion_ok.fail("H=" + sys.label(h) + " I=" + sys.label(i));
    }
    equivariant.into(rep, "conjugation_equivariant");
    transfer_ok.into(rep, "transfer_compatible");
    inclusion_ok.into(rep, "induction_compatible");
    return rep;
}

}  // namespace cfe
