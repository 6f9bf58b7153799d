#include "cftengine/functor.hpp"

namespace cfe {

std::vector<int> RicDomain::base() const {
    std::vector<int> b;
    for (int x = 0; x < size; ++x)
        if (in_base[x]) b.push_back(x);
    return b;
}

DomainPtr RicDomain::of(const SubgroupSystem& sys) {
    auto d = std::make_shared<RicDomain>();
    const auto& lat = *sys.lattice();
    d->group = sys.group();
    d->size = lat.size();
    d->group_order = sys.group()->order();
    d->in_base.assign(d->size, 0);
    d->res.resize(d->size);
    d->ind.resize(d->size);
    d->labels.resize(d->size);
    for (int x = 0; x < d->size; ++x) {
        d->in_base[x] = sys.in_base(x) ? 1 : 0;
        d->res[x] = sys.res_set(x);
        d->ind[x] = sys.ind_set(x);
        d->labels[x] = sys.label(x);
    }
    d->conj.resize(static_cast<size_t>(d->group_order) * d->size);
    for (int g = 0; g < d->group_order; ++g)
        for (int x = 0; x < d->size; ++x) d->conj[static_cast<size_t>(g) * d->size + x] = lat.conj(g, x);
    return d;
}

RicFunctor::RicFunctor(DomainPtr dom, std::shared_ptr<const SubgroupSystem> sys)
    : dom_(std::move(dom)), sys_(std::move(sys)) {
    values_.resize(dom_->size);
    con_.resize(static_cast<size_t>(dom_->group_order) * dom_->size);
}

const SubgroupSystem& RicFunctor::system() const {
    if (!sys_) throw std::logic_error("functor is not defined on a subgroup system");
    return *sys_;
}

void RicFunctor::set_value(int x, FgAbGroup a) {
    if (!dom_->in_base.at(x)) throw std::invalid_argument("value outside the base: " + dom_->labels[x]);
    values_[x] = std::move(a);
}

void RicFunctor::set_res(int y, int x, AbHom f) {
    if (!dom_->res.at(x).count(y)) throw std::invalid_argument("restriction not allowed by the domain");
    res_.insert_or_assign({y, x}, std::move(f));
}

void RicFunctor::set_ind(int x, int y, AbHom f) {
    if (!dom_->ind.at(x).count(y)) throw std::invalid_argument("induction not allowed by the domain");
    ind_.insert_or_assign({x, y}, std::move(f));
}

void RicFunctor::set_con(int g, int x, AbHom f) {
    if (!dom_->in_base.at(x)) throw std::invalid_argument("conjugation outside the base");
    con_.at(static_cast<size_t>(g) * dom_->size + x) = std::move(f);
}

const FgAbGroup& RicFunctor::value(int x) const {
    const auto& v = values_.at(x);
    if (!v) throw std::out_of_range("missing value at " + dom_->labels.at(x));
    return *v;
}

const AbHom& RicFunctor::res(int y, int x) const {
    auto it = res_.find({y, x});
    if (it == res_.end()) throw std::out_of_range("missing res " + dom_->labels.at(y) + " <- " + dom_->labels.at(x));
    return it->second;
}

const AbHom& RicFunctor::ind(int x, int y) const {
    auto it = ind_.find({x, y});
    if (it == ind_.end()) throw std::out_of_range("missing ind " + dom_->labels.at(x) + " <- " + dom_->labels.at(y));
    return it->second;
}

const AbHom& RicFunctor::con(int g, int x) const {
    const auto& c = con_.at(static_cast<size_t>(g) * dom_->size + x);
    if (!c) throw std::out_of_range("missing con g=" + std::to_string(g) + " at " + dom_->labels.at(x));
    return *c;
}

Report RicFunctor::check_complete() const {
    Report r;
    Verdict v;
    const RicDomain& d = *dom_;
    for (int x : d.base()) {
        if (!values_[x]) { v.fail("value " + d.labels[x]); continue; }
        for (int y : d.res[x]) {
            auto it = res_.find({y, x});
            if (it == res_.end() || !values_[y]) { v.fail("res " + d.labels[y] + " <- " + d.labels[x]); continue; }
            if (!(it->second.domain() == *values_[x]) || !(it->second.codomain() == *values_[y]))
                v.fail("res shape " + d.labels[y] + " <- " + d.labels[x]);
        }
        for (int y : d.ind[x]) {
            auto it = ind_.find({x, y});
            if (it == ind_.end() || !values_[y]) { v.fail("ind " + d.labels[x] + " <- " + d.labels[y]); continue; }
            if (!(it->second.domain() == *values_[y]) || !(it->second.codomain() == *values_[x]))
                v.fail("ind shape " + d.labels[x] + " <- " + d.labels[y]);
        }
        for (int g = 0; g < d.group_order; ++g) {
            const auto& c = con_[static_cast<size_t>(g) * d.size + x];
            int gx = d.act(g, x);
            if (!c || !values_[gx]) { v.fail("con g=" + std::to_string(g) + " " + d.labels[x]); continue; }
            if (!(c->domain() == *values_[x]) || !(c->codomain() == *values_[gx]))
                v.fail("con shape g=" + std::to_string(g) + " " + d.labels[x]);
        }
    }
    v.into(r, "complete");
    return r;
}

Report validate_ric_functor(const RicFunctor& f) {
    Report r = f.check_complete();
    if (!r.ok()) return r;
    const RicDomain& d = *f.domain();
    Verdict triv, trans_res, trans_ind, trans_con, eq_res, eq_ind;
    std::vector<int> base = d.base();
    for (int x : base) {
        AbHom id = AbHom::identity(f.value(x));
        if (!(f.res(x, x) == id)) triv.fail("res at " + d.labels[x]);
        if (!(f.ind(x, x) == id)) triv.fail("ind at " + d.labels[x]);
        if (!(f.con(0, x) == id)) triv.fail("con_e at " + d.labels[x]);
        for (int y : d.res[x])
            for (int z : d.res[y])
                if (!(f.res(z, y) * f.res(y, x) == f.res(z, x)))
                    trans_res.fail(d.labels[x] + " > " + d.labels[y] + " > " + d.labels[z]);
        for (int y : d.ind[x])
            for (int z : d.ind[y])
                if (!(f.ind(x, y) * f.ind(y, z) == f.ind(x, z)))
                    trans_ind.fail(d.labels[x] + " > " + d.labels[y] + " > " + d.labels[z]);
        for (int g = 0; g < d.group_order; ++g) {
            int gx = d.act(g, x);
            const AbHom& cg = f.con(g, x);
            for (int y : d.res[x])
                if (!(f.con(g, y) * f.res(y, x) == f.res(d.act(g, y), gx) * cg))
                    eq_res.fail("g=" + std::to_string(g) + " " + d.labels[x] + " > " + d.labels[y]);
            for (int y : d.ind[x])
                if (!(cg * f.ind(x, y) == f.ind(gx, d.act(g, y)) * f.con(g, y)))
                    eq_ind.fail("g=" + std::to_string(g) + " " + d.labels[x] + " > " + d.labels[y]);
        }
    }
    for (int x : base)
        for (int g = 0; g < d.group_order; ++g) {
            int gx = d.act(g, x);
            for (int g2 = 0; g2 < d.group_order; ++g2)
                if (!(f.con(g2, gx) * f.con(g, x) == f.con(d.group->mul(g2, g), x))) {
                    trans_con.fail("g'=" + std::to_string(g2) + " g=" + std::to_string(g) + " " + d.labels[x]);
                    break;
                }
        }
    triv.into(r, "triviality");
    trans_res.into(r, "transitivity_res");
    trans_ind.into(r, "transitivity_ind");
    trans_con.into(r, "transitivity_con");
    eq_res.into(r, "equivariance_res");
    eq_ind.into(r, "equivariance_ind");
    return r;
}

Report validate_morphism(const RicFunctor& s, const RicFunctor& t, const FunctorMorphism& m) {
    Report r;
    const RicDomain& d = *s.domain();
    Verdict shape, res_sq, ind_sq, con_sq;
    std::vector<int> base = d.base();
    for (int x : base) {
        auto it = m.components.find(x);
        if (it == m.components.end()) { shape.fail("missing component " + d.labels[x]); continue; }
        if (!(it->second.domain() == s.value(x)) || !(it->second.codomain() == t.value(x)))
            shape.fail("component shape " + d.labels[x]);
    }
    shape.into(r, "components");
    if (!shape.pass()) return r;
    for (int x : base) {
        const AbHom& mx = m.components.at(x);
        for (int y : d.res[x])
            if (!(m.components.at(y) * s.res(y, x) == t.res(y, x) * mx))
                res_sq.fail(d.labels[x] + " > " + d.labels[y]);
        for (int y : d.ind[x])
            if (!(mx * s.ind(x, y) == t.ind(x, y) * m.components.at(y)))
                ind_sq.fail(d.labels[x] + " > " + d.labels[y]);
        for (int g = 0; g < d.group_order; ++g)
            if (!(m.components.at(d.act(g, x)) * s.con(g, x) == t.con(g, x) * mx))
                con_sq.fail("g=" + std::to_string(g) + " " + d.labels[x]);
    }
    res_sq.into(r, "res_square");
    ind_sq.into(r, "ind_square");
    con_sq.into(r, "con_square");
    return r;
}

Report morphism_isomorphism(const FunctorMorphism& m) {
    Report r;
    Verdict inj, surj;
    for (const auto& [x, f] : m.components) {
        if (!is_injective(f)) inj.fail("component " + std::to_string(x));
        if (!is_surjective(f)) surj.fail("component " + std::to_string(x));
    }
    inj.into(r, "injective");
    surj.into(r, "surjective");
    return r;
}

QuotientFunctor quotient_functor(const RicFunctor& f, const std::map<int, std::vector<Vec>>& sub) {
    const RicDomain& d = *f.domain();
    QuotientFunctor q{RicFunctor(f.domain(), f.system_ptr()), {}};
    q.functor.name = f.name + "/sub";
    std::map<int, SubgroupTest> tests;
    for (int x : d.base()) {
        auto it = sub.find(x);
        if (it == sub.end()) throw NotSubfunctor("no subgroup given at " + d.labels[x]);
        tests.emplace(x, SubgroupTest(f.value(x), it->second));
        q.quotients.emplace(x, quotient(f.value(x), it->second));
        q.functor.set_value(x, q.quotients.at(x).group);
    }
    auto descend = [&](const AbHom& m, int from, int to, const std::string& what) {
        for (const Vec& s : sub.at(from))
            if (!tests.at(to).contains(m(s))) throw NotSubfunctor(what + " leaves the subfunctor");
        const QuotientData& qa = q.quotients.at(from);
        const QuotientData& qb = q.quotients.at(to);
        return AbHom(qa.group, qb.group, (qb.projection * m).matrix() * qa.lift);
    };
    for (int x : d.base()) {
        for (int y : d.res[x]) q.functor.set_res(y, x, descend(f.res(y, x), x, y, "res " + d.labels[y] + " <- " + d.labels[x]));
        for (int y : d.ind[x]) q.functor.set_ind(x, y, descend(f.ind(x, y), y, x, "ind " + d.labels[x] + " <- " + d.labels[y]));
        for (int g = 0; g < d.group_order; ++g)
            q.functor.set_con(g, x, descend(f.con(g, x), x, d.act(g, x), "con g=" + std::to_string(g) + " " + d.labels[x]));
    }
    return q;
}

}  // namespace cfe
