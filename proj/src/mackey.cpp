#include "cftengine/mackey.hpp"

#include <algorithm>
#include <deque>

#include "cftengine/catalog.hpp"

namespace cfe {

namespace {

FgAbGroup power_group(int k, Int modulus) {
    if (k == 0 || modulus == 1) return FgAbGroup::trivial();
    if (modulus == 0) return FgAbGroup(k, {});
    return FgAbGroup(0, std::vector<Int>(k, modulus));
}

// small generating set of a subgroup, chosen greedily in element order
std::vector<int> generating_set(const Subgroup& h) {
    std::vector<int> gens;
    Subgroup cur = Subgroup::trivial(h.group());
    for (int x : h.elements()) {
        if (cur.contains(x)) continue;
        gens.push_back(x);
        cur = Subgroup::generated(h.group(), gens);
        if (cur.order() == h.order()) break;
    }
    return gens;
}

Vec solve_in(const Preimage& pre, const Vec& x, const std::string& what) {
    auto y = pre(x);
    if (!y) throw std::logic_error(what);
    return *y;
}

// elementary unimodular change of basis P together with its inverse
std::pair<Mat, Mat> random_unimodular(int n, std::mt19937_64& rng) {
    Mat p = Mat::identity(n), q = Mat::identity(n);
    if (n < 2) return {p, q};
    std::uniform_int_distribution<int> pick(0, n - 1), coef(-1, 1);
    for (int step = 0; step < n; ++step) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        Int c = coef(rng);
        // P <- E P with E = I + c e_ij, P^-1 <- P^-1 E^-1
        Mat e = Mat::identity(n), ei = Mat::identity(n);
        e(i, j) = c;
        ei(i, j) = -c;
        p = e * p;
        q = q * ei;
    }
    return {p, q};
}

std::string triple(const SubgroupSystem& s, int h, int i, int j) {
    return "(" + s.label(h) + ", " + s.label(i) + ", " + s.label(j) + ")";
}

}  // namespace

GModule::GModule(GroupPtr g, FgAbGroup a, const std::vector<std::pair<int, Mat>>& generator_images, std::string name)
    : g_(std::move(g)), a_(std::move(a)), name_(std::move(name)) {
    int n = g_->order();
    std::vector<std::optional<AbHom>> rho(n);
    rho[0] = AbHom::identity(a_);
    std::vector<std::pair<int, AbHom>> gens;
    for (const auto& [s, m] : generator_images) {
        if (s < 0 || s >= n) throw std::invalid_argument("generator outside the group");
        gens.emplace_back(s, AbHom(a_, a_, m));
    }
    std::deque<int> todo{0};
    while (!todo.empty()) {
        int x = todo.front();
        todo.pop_front();
        for (const auto& [s, m] : gens) {
            int xs = g_->mul(x, s);
            if (rho[xs]) continue;
            rho[xs] = *rho[x] * m;
            todo.push_back(xs);
        }
    }
    for (int x = 0; x < n; ++x)
        if (!rho[x]) throw std::invalid_argument("action images do not generate the group (missing element " +
                                                 std::to_string(x) + ")");
    for (const auto& [s, m] : gens)
        if (!(*rho[s] == m)) throw std::invalid_argument("action does not respect the group at element " + std::to_string(s));
    act_.reserve(n);
    for (auto& r : rho) act_.push_back(std::move(*r));
    validate();
}

void GModule::validate() const {
    int n = g_->order();
    for (int x = 0; x < n; ++x) {
        if (!is_isomorphism(act_[x])) throw std::invalid_argument("action of " + std::to_string(x) + " is not invertible");
        for (int y = 0; y < n; ++y)
            if (!(act_[x] * act_[y] == act_[g_->mul(x, y)]))
                throw std::invalid_argument("action is not a homomorphism at (" + std::to_string(x) + "," +
                                            std::to_string(y) + ")");
    }
}

GModule GModule::trivial(GroupPtr g, FgAbGroup a) {
    Mat id = Mat::identity(a.ngens());
    std::vector<std::pair<int, Mat>> imgs;
    for (int s : g->generators()) imgs.emplace_back(s, id);
    return GModule(g, a, imgs, "trivial " + a.str());
}

GModule GModule::permutation(GroupPtr g, const Subgroup& h, Int modulus, const Subgroup* sign_kernel) {
    if (modulus < 0) throw std::invalid_argument("negative modulus");
    if (sign_kernel && sign_kernel->index_in(Subgroup::whole(g)) != 2)
        throw std::invalid_argument("sign kernel must have index 2");
    Transversal t = left_transversal(Subgroup::whole(g), h);
    int k = static_cast<int>(t.reps.size());
    FgAbGroup a = power_group(k, modulus);
    std::vector<std::pair<int, Mat>> imgs;
    for (int s : g->generators()) {
        Mat m(a.ngens(), a.ngens());
        if (a.ngens() > 0) {
            Int sign = sign_kernel && !sign_kernel->contains(s) ? -1 : 1;
            for (int i = 0; i < k; ++i) m(t.coset_index.at(g->mul(s, t.reps[i])), i) = sign;
        }
        imgs.emplace_back(s, m);
    }
    std::string name = (modulus == 0 ? std::string("Z") : "Z/" + std::to_string(modulus)) + "[G/H" +
                       std::to_string(h.order()) + "]";
    if (sign_kernel) name += " (sign)";
    return GModule(g, a, imgs, name);
}

GModule GModule::negation(GroupPtr c2) {
    if (c2->order() != 2) throw std::invalid_argument("negation module needs C2");
    Mat m(1, 1);
    m(0, 0) = -1;
    return GModule(c2, FgAbGroup::integers(), {{1, m}}, "negation");
}

GModule GModule::random(const GroupPtr& g, const SubgroupLattice& lat, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 3);
    static const Int moduli[] = {0, 2, 3, 4, 0};
    std::uniform_int_distribution<int> mod_pick(0, 4);
    switch (kind(rng)) {
    case 0: {
        Int n = moduli[mod_pick(rng)];
        GModule m = trivial(g, n == 0 ? FgAbGroup(1, {2}) : FgAbGroup(1, {n}));
        return m;
    }
    default: break;
    }
    std::uniform_int_distribution<int> sub_pick(0, lat.size() - 1);
    const Subgroup& h = lat[sub_pick(rng)];
    Int modulus = moduli[mod_pick(rng)];
    std::vector<const Subgroup*> halves;
    for (const Subgroup& s : lat.all())
        if (2 * s.order() == g->order()) halves.push_back(&s);
    const Subgroup* sign = nullptr;
    if (!halves.empty() && std::uniform_int_distribution<int>(0, 1)(rng))
        sign = halves[std::uniform_int_distribution<size_t>(0, halves.size() - 1)(rng)];
    GModule base = permutation(g, h, modulus, sign);
    int n = base.module().ngens();
    if (n < 2 || n > 8) return base;
    // conjugate by a unimodular change of basis so the matrices are not monomial
    auto [p, q] = random_unimodular(n, rng);
    std::vector<std::pair<int, Mat>> imgs;
    for (int s : g->generators()) imgs.emplace_back(s, p * base.act(s).matrix() * q);
    return GModule(g, base.module(), imgs, base.name() + " (twisted basis)");
}

Report check_stability(const RicFunctor& f) {
    Report r;
    Verdict v;
    const SubgroupSystem& sys = f.system();
    for (int x : sys.base())
        for (int h : sys.sub(x).elements())
            if (!(f.con(h, x) == AbHom::identity(f.value(x)))) {
                v.fail("g=" + std::to_string(h) + " at " + sys.label(x));
                break;
            }
    v.into(r, "stability");
    return r;
}

AbHom mackey_rhs(const RicFunctor& f, int h, int i, int j, const std::vector<int>& reps) {
    const SubgroupSystem& sys = f.system();
    const SubgroupLattice& lat = *sys.lattice();
    const FiniteGroup& g = *sys.group();
    if (!is_double_coset_reps(sys.sub(h), sys.sub(i), sys.sub(j), reps))
        throw InvalidReps("not a set of double coset representatives");
    AbHom sum = AbHom::zero(f.value(j), f.value(i));
    for (int x : reps) {
        int ix = lat.intersect(lat.conj(g.inv(x), i), j);  // x^-1 I x ∩ J
        int k = lat.conj(x, ix);                              // I ∩ x J x^-1
        sum = sum + f.ind(i, k) * f.con(x, ix) * f.res(ix, j);
    }
    return sum;
}

Report check_mackey_formula(const RicFunctor& f) {
    const SubgroupSystem& sys = f.system();
    if (!sys.is_mackey()) throw NotMackeySystem("the subgroup system does not satisfy the Mackey conditions");
    Report r;
    Verdict v;
    for (int h : sys.base()) {
        for (int i : sys.res_set(h)) {
            for (int j : sys.ind_set(h)) {
                AbHom lhs = f.res(i, h) * f.ind(h, j);
                AbHom rhs = mackey_rhs(f, h, i, j, double_coset_reps(sys.sub(h), sys.sub(i), sys.sub(j)));
                if (!(lhs == rhs)) v.fail(triple(sys, h, i, j));
            }
            if (!v.pass()) break;
        }
        if (!v.pass()) break;
    }
    v.into(r, "mackey_formula");
    return r;
}

Report check_mackey_rep_independence(const RicFunctor& f, std::mt19937_64& rng) {
    const SubgroupSystem& sys = f.system();
    if (!sys.is_mackey()) throw NotMackeySystem("the subgroup system does not satisfy the Mackey conditions");
    const FiniteGroup& g = *sys.group();
    Report r;
    Verdict v;
    for (int h : sys.base())
        for (int i : sys.res_set(h))
            for (int j : sys.ind_set(h)) {
                std::vector<int> a = double_coset_reps(sys.sub(h), sys.sub(i), sys.sub(j));
                std::vector<int> b;
                const auto& ie = sys.sub(i).elements();
                const auto& je = sys.sub(j).elements();
                for (int x : a) {
                    int y = ie[std::uniform_int_distribution<size_t>(0, ie.size() - 1)(rng)];
                    int z = je[std::uniform_int_distribution<size_t>(0, je.size() - 1)(rng)];
                    b.push_back(g.mul(g.mul(y, x), z));
                }
                if (!(mackey_rhs(f, h, i, j, a) == mackey_rhs(f, h, i, j, b))) v.fail(triple(sys, h, i, j));
            }
    v.into(r, "mackey_rep_independence");
    return r;
}

Report check_cohomological(const RicFunctor& f) {
    const SubgroupSystem& sys = f.system();
    Report r;
    Verdict v;
    for (int h : sys.base())
        for (int i : sys.res_set(h)) {
            if (!sys.in_ind(h, i)) continue;
            Int idx = sys.sub(i).index_in(sys.sub(h));
            if (!(f.ind(h, i) * f.res(i, h) == AbHom::scalar(f.value(h), idx)))
                v.fail(sys.label(h) + " > " + sys.label(i));
        }
    v.into(r, "cohomological");
    return r;
}

AbelianizationFunctor abelianization_functor(const AbelianizationSystem& rs) {
    auto sys = std::make_shared<const SubgroupSystem>(rs.system());
    AbelianizationFunctor out{RicFunctor(RicDomain::of(*sys), sys), {}};
    out.functor.name = "pi_R";
    const FiniteGroup& g = *sys->group();
    for (int h : sys->base()) {
        out.quotients.emplace(h, AbelianQuotient(sys->sub(h), rs.r(h)));
        out.functor.set_value(h, out.quotients.at(h).group());
    }
    for (int h : sys->base()) {
        const AbelianQuotient& qh = out.quotients.at(h);
        int ng = qh.group().ngens();
        for (int i : sys->res_set(h)) {
            const AbelianQuotient& qi = out.quotients.at(i);
            TransferMap ver(sys->sub(h), sys->sub(i), rs.r(i), rs.r(h));
            std::vector<Vec> imgs;
            for (int k = 0; k < ng; ++k) imgs.push_back(qi(ver(qh.lift_gen(k))));
            out.functor.set_res(i, h, AbHom::from_images(qh.group(), qi.group(), imgs));
        }
        for (int i : sys->ind_set(h)) {
            const AbelianQuotient& qi = out.quotients.at(i);
            std::vector<Vec> imgs;
            for (int k = 0; k < qi.group().ngens(); ++k) imgs.push_back(qh(qi.lift_gen(k)));
            out.functor.set_ind(h, i, AbHom::from_images(qi.group(), qh.group(), imgs));
        }
        for (int x = 0; x < g.order(); ++x) {
            const AbelianQuotient& qx = out.quotients.at(sys->lattice()->conj(x, h));
            std::vector<Vec> imgs;
            for (int k = 0; k < ng; ++k) imgs.push_back(qx(g.conj(x, qh.lift_gen(k))));
            out.functor.set_con(x, h, AbHom::from_images(qh.group(), qx.group(), imgs));
        }
    }
    return out;
}

FixedPointFunctor fixed_point_functor(const GModule& a, std::shared_ptr<const SubgroupSystem> sys) {
    if (sys->group() != a.group()) throw std::invalid_argument("module and system live on different groups");
    FixedPointFunctor out{RicFunctor(RicDomain::of(*sys), sys), {}};
    out.functor.name = "fixed points of " + a.name();
    const FgAbGroup& m = a.module();
    const FiniteGroup& g = *sys->group();
    AbHom id = AbHom::identity(m);
    std::map<int, Preimage> solvers;
    for (int h : sys->base()) {
        std::vector<AbHom> maps;
        for (int s : generating_set(sys->sub(h))) maps.push_back(a.act(s) - id);
        SubgroupData fixed = common_kernel(m, maps);
        out.functor.set_value(h, fixed.group);
        out.embedding.emplace(h, fixed.embedding);
        solvers.emplace(h, Preimage(fixed.embedding));
    }
    for (int h : sys->base()) {
        const AbHom& eh = out.embedding.at(h);
        const FgAbGroup& vh = eh.domain();
        for (int i : sys->res_set(h)) {
            std::vector<Vec> imgs;
            for (int k = 0; k < vh.ngens(); ++k)
                imgs.push_back(solve_in(solvers.at(i), eh.image_of_gen(k), "res leaves the fixed points"));
            out.functor.set_res(i, h, AbHom::from_images(vh, out.embedding.at(i).domain(), imgs));
        }
        for (int i : sys->ind_set(h)) {
            const AbHom& ei = out.embedding.at(i);
            Transversal t = left_transversal(sys->sub(h), sys->sub(i));
            std::vector<Vec> imgs;
            for (int k = 0; k < ei.domain().ngens(); ++k) {
                Vec x = ei.image_of_gen(k);
                Vec s = m.zero();
                for (int rep : t.reps) s = m.add(s, a.act(rep)(x));
                imgs.push_back(solve_in(solvers.at(h), s, "norm leaves the fixed points"));
            }
            out.functor.set_ind(h, i, AbHom::from_images(ei.domain(), vh, imgs));
        }
        for (int x = 0; x < g.order(); ++x) {
            int gh = sys->lattice()->conj(x, h);
            std::vector<Vec> imgs;
            for (int k = 0; k < vh.ngens(); ++k)
                imgs.push_back(solve_in(solvers.at(gh), a.act(x)(eh.image_of_gen(k)), "action leaves the fixed points"));
            out.functor.set_con(x, h, AbHom::from_images(vh, out.embedding.at(gh).domain(), imgs));
        }
    }
    return out;
}

Report check_fixed_point_ind_independence(const GModule& a, const FixedPointFunctor& fp, std::mt19937_64& rng,
                                          int trials) {
    const SubgroupSystem& sys = fp.functor.system();
    const FiniteGroup& g = *sys.group();
    const FgAbGroup& m = a.module();
    Report r;
    Verdict v;
    for (int h : sys.base())
        for (int i : sys.ind_set(h)) {
            const AbHom& ei = fp.embedding.at(i);
            const AbHom& eh = fp.embedding.at(h);
            for (int trial = 0; trial < trials; ++trial) {
                Transversal rt = random_right_transversal(sys.sub(h), sys.sub(i), rng);
                for (int k = 0; k < ei.domain().ngens(); ++k) {
                    Vec s = m.zero();
                    for (int rep : rt.reps) s = m.add(s, a.act(g.inv(rep))(ei.image_of_gen(k)));
                    if (!(s == eh(fp.functor.ind(h, i).image_of_gen(k)))) {
                        v.fail(sys.label(h) + " > " + sys.label(i));
                        break;
                    }
                }
            }
        }
    v.into(r, "ind_transversal_independence");
    return r;
}

RicFunctor constant_functor(std::shared_ptr<const SubgroupSystem> sys, const FgAbGroup& a) {
    RicFunctor f(RicDomain::of(*sys), sys);
    f.name = "constant " + a.str();
    AbHom id = AbHom::identity(a);
    for (int h : sys->base()) f.set_value(h, a);
    for (int h : sys->base()) {
        for (int i : sys->res_set(h)) f.set_res(i, h, id);
        for (int i : sys->ind_set(h)) f.set_ind(h, i, id);
        for (int x = 0; x < sys->group()->order(); ++x) f.set_con(x, h, id);
    }
    return f;
}

RicFunctor omega_functor(const RamificationDatum& d, std::shared_ptr<const SubgroupSystem> sys, const FgAbGroup& omega) {
    if (sys->group() != d.group()) throw std::invalid_argument("datum and system live on different groups");
    if (omega.ngens() != 1) throw std::invalid_argument("Omega must be cyclic and nontrivial");
    RicFunctor f(RicDomain::of(*sys), sys);
    f.name = "Omega_d";
    AbHom id = AbHom::identity(omega);
    for (int h : sys->base()) f.set_value(h, omega);
    for (int h : sys->base()) {
        for (int k : sys->res_set(h)) f.set_res(k, h, AbHom::scalar(omega, d.degrees(sys->sub(h), sys->sub(k)).first));
        for (int k : sys->ind_set(h)) f.set_ind(h, k, AbHom::scalar(omega, d.degrees(sys->sub(h), sys->sub(k)).second));
        for (int x = 0; x < sys->group()->order(); ++x) f.set_con(x, h, id);
    }
    return f;
}

RicFunctor non_descent_functor() {
    GroupPtr c2 = cyclic_group(2);
    auto sys = std::make_shared<const SubgroupSystem>(SubgroupSystem::full(make_lattice(c2)));
    RicFunctor f(RicDomain::of(*sys), sys);
    f.name = "non-descent";
    FgAbGroup z = FgAbGroup::integers();
    AbHom id = AbHom::identity(z);
    int one = sys->lattice()->trivial(), top = sys->lattice()->whole();
    f.set_value(one, z);
    f.set_value(top, z);
    f.set_res(one, one, id);
    f.set_res(top, top, id);
    f.set_res(one, top, AbHom::scalar(z, 2));
    f.set_ind(one, one, id);
    f.set_ind(top, top, id);
    f.set_ind(top, one, id);
    for (int x = 0; x < 2; ++x)
        for (int h : {one, top}) f.set_con(x, h, id);
    return f;
}

DescentResult check_galois_descent(const RicFunctor& f, int h, int u) {
    const SubgroupSystem& sys = f.system();
    const Subgroup& hs = sys.sub(h);
    const Subgroup& us = sys.sub(u);
    if (!sys.in_res(h, u) || !us.is_normal_in(hs))
        throw std::invalid_argument("Galois descent needs U normal in H with U in the restriction set");
    const FgAbGroup& vu = f.value(u);
    AbHom id = AbHom::identity(vu);
    for (int x : us.elements())
        if (!(f.con(x, u) == id))
            throw std::invalid_argument("con does not induce an H/U-action on " + sys.label(u) + " (element " +
                                        std::to_string(x) + ")");
    std::vector<AbHom> maps;
    for (int x : generating_set(hs)) maps.push_back(f.con(x, u) - id);
    SubgroupData fixed = common_kernel(vu, maps);
    DescentResult out;
    out.fixed = fixed.group;
    Preimage pre(fixed.embedding);
    const AbHom& res = f.res(u, h);
    std::vector<Vec> imgs;
    for (int k = 0; k < res.domain().ngens(); ++k) {
        auto y = pre(res.image_of_gen(k));
        if (!y) {
            out.witness = "res of generator " + std::to_string(k) + " is not H-invariant";
            return out;
        }
        imgs.push_back(*y);
    }
    AbHom into = AbHom::from_images(res.domain(), fixed.group, imgs);
    if (!is_injective(into)) out.witness = "res_{U,H} not injective at " + sys.label(h) + " > " + sys.label(u);
    else if (!is_surjective(into)) out.witness = "res_{U,H} not onto the fixed points at " + sys.label(h) + " > " + sys.label(u);
    out.descent = out.witness.empty();
    return out;
}

std::vector<int> normal_basis(const SubgroupSystem& sys) {
    std::vector<int> out;
    Subgroup whole = Subgroup::whole(sys.group());
    for (int h : sys.base())
        if (sys.sub(h).is_normal_in(whole)) out.push_back(h);
    return out;
}

namespace {

int basis_minimum(const SubgroupSystem& sys, const std::vector<int>& basis) {
    if (basis.empty()) throw InvalidDescentBasis("empty descent basis");
    Subgroup whole = Subgroup::whole(sys.group());
    for (int n : basis) {
        if (n < 0 || n >= sys.lattice()->size() || !sys.in_base(n))
            throw InvalidDescentBasis("basis member outside the system base");
        if (!sys.sub(n).is_normal_in(whole)) throw InvalidDescentBasis(sys.label(n) + " is not normal");
    }
    for (int n : basis) {
        bool below_all = true;
        for (int m : basis) below_all = below_all && sys.lattice()->leq(n, m);
        if (below_all) return n;
    }
    throw InvalidDescentBasis("basis is not a filter basis (no minimum)");
}

}  // namespace

Colimit functor_colimit(const RicFunctor& f, const std::vector<int>& basis) {
    const SubgroupSystem& sys = f.system();
    int n0 = basis_minimum(sys, basis);
    std::vector<std::pair<int, Mat>> imgs;
    for (int x = 0; x < sys.group()->order(); ++x) imgs.emplace_back(x, f.con(x, n0).matrix());
    return {GModule(sys.group(), f.value(n0), imgs, "colimit of " + f.name), n0};
}

namespace {

void require_cofinal(const SubgroupSystem& sys, int n0) {
    for (int h : sys.base())
        if (!sys.in_res(h, n0))
            throw InvalidDescentBasis("basis minimum " + sys.label(n0) + " is not in the restriction set of " +
                                      sys.label(h));
}

// eta(Phi): Phi -> (Phi*)_* with validity, isomorphy and the identity eps(Phi*) o eta(Phi)* = id
void build_eta(const RicFunctor& f, const Colimit& col, AdjunctionResult& out) {
    const SubgroupSystem& sys = f.system();
    FixedPointFunctor back = fixed_point_functor(col.module, f.system_ptr());
    Verdict defined;
    for (int h : sys.base()) {
        const AbHom& res = f.res(col.minimum, h);
        Preimage pre(back.embedding.at(h));
        std::vector<Vec> imgs;
        for (int k = 0; k < res.domain().ngens(); ++k) {
            auto y = pre(res.image_of_gen(k));
            if (!y) {
                defined.fail("res image not invariant at " + sys.label(h));
                break;
            }
            imgs.push_back(*y);
        }
        if (static_cast<int>(imgs.size()) != res.domain().ngens()) continue;
        out.eta.components.emplace(h, AbHom::from_images(res.domain(), back.functor.value(h), imgs));
    }
    defined.into(out.eta_report, "defined");
    if (!defined.pass()) return;
    out.eta_report.merge(validate_morphism(f, back.functor, out.eta));
    Verdict iso;
    for (const auto& [h, m] : out.eta.components) {
        if (!is_injective(m)) iso.fail("eta not injective at " + sys.label(h));
        else if (!is_surjective(m)) iso.fail("eta not surjective at " + sys.label(h));
    }
    iso.into(out.eta_report, "isomorphism");
    // eta(Phi)* is the N0-component; eps(Phi*) embeds the N0-fixed points
    AbHom composite = back.embedding.at(col.minimum) * out.eta.components.at(col.minimum);
    out.identities.add("eps(Phi*) o eta(Phi)* = id", composite == AbHom::identity(f.value(col.minimum)));
}

}  // namespace

AdjunctionResult adjunction_for_module(const GModule& a, std::shared_ptr<const SubgroupSystem> sys,
                                       const std::vector<int>& basis) {
    FixedPointFunctor fp = fixed_point_functor(a, sys);
    Colimit col = functor_colimit(fp.functor, basis);
    require_cofinal(*sys, col.minimum);
    AdjunctionResult out;
    out.epsilon = fp.embedding.at(col.minimum);
    out.epsilon_iso = is_isomorphism(out.epsilon);
    build_eta(fp.functor, col, out);
    if (out.eta.components.size() != sys->base().size()) return out;
    // eps(A)_*: ((A_*)*)_* -> A_* at H is the inclusion (A^N0)^H -> A^H
    FixedPointFunctor back = fixed_point_functor(col.module, sys);
    Verdict v;
    for (int h : sys->base()) {
        Preimage pre(fp.embedding.at(h));
        const AbHom& inner = back.embedding.at(h);
        std::vector<Vec> imgs;
        bool ok = true;
        for (int k = 0; k < inner.domain().ngens() && ok; ++k) {
            auto y = pre(out.epsilon(inner.image_of_gen(k)));
            if (!y) ok = false;
            else imgs.push_back(*y);
        }
        if (!ok) {
            v.fail("eps(A)_* undefined at " + sys->label(h));
            continue;
        }
        AbHom eps_h = AbHom::from_images(inner.domain(), fp.functor.value(h), imgs);
        if (!(eps_h * out.eta.components.at(h) == AbHom::identity(fp.functor.value(h))))
            v.fail(sys->label(h));
    }
    v.into(out.identities, "eps(A)_* o eta(A_*) = id");
    return out;
}

AdjunctionResult adjunction_for_functor(const RicFunctor& f, const std::vector<int>& basis) {
    Colimit col = functor_colimit(f, basis);
    require_cofinal(f.system(), col.minimum);
    AdjunctionResult out;
    FixedPointFunctor back = fixed_point_functor(col.module, f.system_ptr());
    out.epsilon = back.embedding.at(col.minimum);
    out.epsilon_iso = is_isomorphism(out.epsilon);
    build_eta(f, col, out);
    return out;
}

}  // namespace cfe
