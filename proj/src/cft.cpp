#include "cftengine/cft.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace cfe {

namespace {

std::vector<Vec> concat(std::vector<Vec> a, const std::vector<Vec>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

bool is_cyclic_quotient(const Subgroup& h, const Subgroup& u) {
    for (int x : h.elements())
        if (Subgroup::generated(h.group(), {x}).join(u) == h) return true;
    return false;
}

bool is_prime(Int n) {
    if (n < 2) return false;
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

bool is_prime_power(Int n) { return n >= 2 && prime_divisors(n).size() == 1; }

// restriction of f: A -> B to subgroups given by embeddings, as a map between their coordinates
AbHom restrict_between(const AbHom& f, const SubgroupData& from, const SubgroupData& to, bool& ok) {
    Preimage pre(to.embedding);
    std::vector<Vec> imgs;
    ok = true;
    for (int k = 0; k < from.group.ngens(); ++k) {
        auto y = pre(f(from.embedding.image_of_gen(k)));
        if (!y) {
            ok = false;
            return AbHom::zero(from.group, to.group);
        }
        imgs.push_back(*y);
    }
    return AbHom::from_images(from.group, to.group, imgs);
}

// exactness of X -a-> Y -b-> Z at Y
bool exact_at(const AbHom& a, const AbHom& b) {
    return subgroup_eq(a.codomain(), hom_columns(a), hom_columns(hom_kernel(b).embedding));
}

}  // namespace

Spectrum::Spectrum(std::shared_ptr<const SubgroupSystem> flat, std::vector<SpectrumPair> pairs)
    : flat_(std::move(flat)), pairs_(std::move(pairs)) {
    const SubgroupSystem& s = *flat_;
    const auto& lat = *s.lattice();
    for (int p = 0; p < size(); ++p) {
        auto [h, u] = pairs_[p];
        if (!s.in_base(h) || !s.in_base(u)) throw std::invalid_argument("spectrum pair outside the base");
        if (!lat.leq(u, h) || !lat.normal_in(u, h)) throw std::invalid_argument("spectrum needs U normal in H");
        if (!s.in_ind(h, u)) throw std::invalid_argument("spectrum needs U admissible for induction into H");
        if (!index_.emplace(std::make_pair(h, u), p).second) throw std::invalid_argument("repeated spectrum pair");
    }
    for (int h : s.base())
        if (index_of(h, h) < 0) throw std::invalid_argument("spectrum misses (H, H) for H=" + s.label(h));
    auto d = std::make_shared<RicDomain>();
    d->group = s.group();
    d->size = size();
    d->group_order = s.group()->order();
    d->in_base.assign(size(), 1);
    d->res.resize(size());
    d->ind.resize(size());
    d->conj.resize(static_cast<size_t>(d->group_order) * size());
    for (int p = 0; p < size(); ++p) {
        auto [h, u] = pairs_[p];
        d->labels.push_back(label(p));
        for (int i : s.res_set(h)) {
            int q = index_of(i, u);
            if (q >= 0) d->res[p].insert(q);
        }
        for (int i : s.ind_set(h))
            for (int v : s.ind_set(u)) {
                int q = index_of(i, v);
                if (q >= 0) d->ind[p].insert(q);
            }
        for (int g = 0; g < d->group_order; ++g) {
            int q = index_of(lat.conj(g, h), lat.conj(g, u));
            if (q < 0) throw std::invalid_argument("spectrum is not closed under conjugation at " + label(p));
            d->conj[static_cast<size_t>(g) * size() + p] = q;
        }
    }
    dom_ = d;
}

Spectrum Spectrum::all_normal(std::shared_ptr<const SubgroupSystem> flat) {
    std::vector<SpectrumPair> pairs;
    const auto& lat = *flat->lattice();
    for (int h : flat->base())
        for (int u : flat->ind_set(h))
            if (flat->in_base(u) && lat.normal_in(u, h)) pairs.push_back({h, u});
    return Spectrum(std::move(flat), std::move(pairs));
}

Spectrum Spectrum::unramified(std::shared_ptr<const SubgroupSystem> flat, const RamificationDatum& d) {
    if (flat->group() != d.group()) throw std::invalid_argument("datum and system live on different groups");
    std::vector<SpectrumPair> pairs;
    const auto& lat = *flat->lattice();
    for (int h : flat->base()) {
        Subgroup ih = d.inertia(flat->sub(h));
        for (int u : flat->ind_set(h))
            if (flat->in_base(u) && lat.normal_in(u, h) && d.inertia(flat->sub(u)) == ih) pairs.push_back({h, u});
    }
    return Spectrum(std::move(flat), std::move(pairs));
}

int Spectrum::index_of(int h, int u) const {
    auto it = index_.find({h, u});
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> Spectrum::extensions(int h) const {
    std::vector<int> out;
    for (const auto& pr : pairs_)
        if (pr.h == h) out.push_back(pr.u);
    return out;
}

std::string Spectrum::label(int p) const {
    return "(" + flat_->label(pairs_.at(p).h) + ", " + flat_->label(pairs_.at(p).u) + ")";
}

Report Spectrum::coherence() const {
    const SubgroupSystem& s = *flat_;
    const auto& lat = *s.lattice();
    Report r;
    Verdict ext, meet_join;
    for (int p = 0; p < size(); ++p) {
        auto [h, u] = pairs_[p];
        for (int n : s.ind_set(h)) {
            if (!s.in_base(n) || !lat.leq(u, n) || !lat.normal_in(n, h)) continue;
            if (index_of(h, n) < 0 || index_of(n, u) < 0)
                ext.fail(label(p) + " through " + s.label(n));
        }
    }
    for (int h : s.base()) {
        std::vector<int> ext_h = extensions(h);
        for (int a : ext_h)
            for (int b : ext_h) {
                if (b <= a) continue;
                int meet = lat.intersect(a, b);
                int join = lat.id_of(lat[a].join(lat[b]));
                if (s.in_base(meet) && index_of(h, meet) < 0)
                    meet_join.fail("meet of " + s.label(a) + ", " + s.label(b) + " in " + s.label(h));
                if (s.in_base(join) && index_of(h, join) < 0)
                    meet_join.fail("join of " + s.label(a) + ", " + s.label(b) + " in " + s.label(h));
            }
    }
    ext.into(r, "extension_closed");
    meet_join.into(r, "lattice_closed");
    return r;
}

RicFunctor lift_to_spectrum(const RicFunctor& c, const Spectrum& sp) {
    RicFunctor f(sp.domain(), sp.flat_ptr());
    f.name = c.name + "^E";
    const RicDomain& d = *sp.domain();
    for (int p = 0; p < sp.size(); ++p) f.set_value(p, c.value(sp.pair(p).h));
    for (int p = 0; p < sp.size(); ++p) {
        int h = sp.pair(p).h;
        for (int q : d.res[p]) f.set_res(q, p, c.res(sp.pair(q).h, h));
        for (int q : d.ind[p]) f.set_ind(p, q, c.ind(h, sp.pair(q).h));
        for (int g = 0; g < d.group_order; ++g) f.set_con(g, p, c.con(g, h));
    }
    return f;
}

TautologicalCft tautological_cft(const Spectrum& sp, const AbelianizationSystem& r) {
    const SubgroupSystem& s = sp.flat();
    const FiniteGroup& g = *s.group();
    const RicDomain& d = *sp.domain();
    TautologicalCft out{RicFunctor(sp.domain(), sp.flat_ptr()), {}};
    out.functor.name = "tautological";
    auto kernel_of = [&](int h, int u) { return s.sub(u).join(r.r(h)); };
    for (int p = 0; p < sp.size(); ++p) {
        auto [h, u] = sp.pair(p);
        out.quotients.emplace(p, AbelianQuotient(s.sub(h), kernel_of(h, u)));
        out.functor.set_value(p, out.quotients.at(p).group());
    }
    for (int p = 0; p < sp.size(); ++p) {
        auto [h, u] = sp.pair(p);
        const AbelianQuotient& qp = out.quotients.at(p);
        int ng = qp.group().ngens();
        for (int q : d.res[p]) {
            int i = sp.pair(q).h;
            const AbelianQuotient& qq = out.quotients.at(q);
            TransferMap ver(s.sub(h), s.sub(i), kernel_of(i, u), kernel_of(h, u));
            std::vector<Vec> imgs;
            for (int k = 0; k < ng; ++k) imgs.push_back(qq(ver(qp.lift_gen(k))));
            out.functor.set_res(q, p, AbHom::from_images(qp.group(), qq.group(), imgs));
        }
        for (int q : d.ind[p]) {
            const AbelianQuotient& qq = out.quotients.at(q);
            std::vector<Vec> imgs;
            for (int k = 0; k < qq.group().ngens(); ++k) imgs.push_back(qp(qq.lift_gen(k)));
            out.functor.set_ind(p, q, AbHom::from_images(qq.group(), qp.group(), imgs));
        }
        for (int x = 0; x < g.order(); ++x) {
            const AbelianQuotient& qx = out.quotients.at(d.act(x, p));
            std::vector<Vec> imgs;
            for (int k = 0; k < ng; ++k) imgs.push_back(qx(g.conj(x, qp.lift_gen(k))));
            out.functor.set_con(x, p, AbHom::from_images(qp.group(), qx.group(), imgs));
        }
    }
    return out;
}

QuotientFunctor induction_representation(const RicFunctor& c, const Spectrum& sp) {
    if (!sp.flat().is_mackey()) throw NotMackeyCover("the flat system is not a Mackey system");
    RicFunctor lifted = lift_to_spectrum(c, sp);
    std::map<int, std::vector<Vec>> sub;
    for (int p = 0; p < sp.size(); ++p) sub[p] = hom_columns(c.ind(sp.pair(p).h, sp.pair(p).u));
    QuotientFunctor q = quotient_functor(lifted, sub);
    q.functor.name = c.name + "/ind";
    return q;
}

QuotientData tate_h0(const RicFunctor& c, int h, int u) { return quotient(c.value(h), hom_columns(c.ind(h, u))); }

FgAbGroup tate_hminus1(const RicFunctor& c, int h, int u) {
    const Subgroup& hs = c.system().sub(h);
    const FgAbGroup& cu = c.value(u);
    SubgroupData k = hom_kernel(c.ind(h, u));
    Preimage pre(k.embedding);
    std::vector<Vec> aug;
    for (int x : hs.elements()) {
        AbHom diff = c.con(x, u) - AbHom::identity(cu);
        for (int j = 0; j < cu.ngens(); ++j) {
            auto y = pre(diff.image_of_gen(j));
            if (!y) throw std::logic_error("augmentation leaves the kernel of ind; C is not stable");
            aug.push_back(*y);
        }
    }
    return quotient(k.group, aug).group;
}

bool satisfies_class_field_axiom(const RicFunctor& c, int h, int u) {
    auto order = tate_h0(c, h, u).group.order();
    return order && *order == c.system().sub(u).index_in(c.system().sub(h)) && satisfies_hilbert90(c, h, u);
}

bool satisfies_hilbert90(const RicFunctor& c, int h, int u) { return tate_hminus1(c, h, u).is_trivial(); }

Report check_class_field_axiom(const RicFunctor& c, const Spectrum& sp) {
    Report r;
    Verdict v;
    for (int p = 0; p < sp.size(); ++p) {
        auto [h, u] = sp.pair(p);
        if (h != u && !satisfies_class_field_axiom(c, h, u)) v.fail(sp.label(p));
    }
    v.into(r, "class_field_axiom");
    return r;
}

Report check_hilbert90(const RicFunctor& c, const Spectrum& sp) {
    Report r;
    Verdict v;
    for (int p = 0; p < sp.size(); ++p) {
        auto [h, u] = sp.pair(p);
        if (h != u && !satisfies_hilbert90(c, h, u)) v.fail(sp.label(p));
    }
    v.into(r, "hilbert90");
    return r;
}

AbelianSignature signature(const FgAbGroup& a) {
    if (!a.is_finite()) throw std::invalid_argument("signature of an infinite group");
    AbelianSignature s;
    s.order = *a.order();
    for (Int n = 2; n <= s.order; ++n) {
        if (s.order % n) continue;
        Int count = 1;
        for (Int f : a.invariant_factors()) count *= gcd_int(n, f);
        s.torsion[n] = count;
    }
    return s;
}

namespace {

// order and n-torsion counts of X / S for finite subgroups S <= X of an ambient group
AbelianSignature coset_signature(const FgAbGroup& amb, const std::vector<Vec>& x, const std::set<Vec>& s) {
    AbelianSignature sig;
    sig.order = static_cast<Int>(x.size()) / static_cast<Int>(s.size());
    for (Int n = 2; n <= sig.order; ++n) {
        if (sig.order % n) continue;
        Int hits = 0;
        for (const Vec& e : x)
            if (s.count(amb.scale(n, e))) ++hits;
        sig.torsion[n] = hits / static_cast<Int>(s.size());
    }
    return sig;
}

bool small_enough(const FgAbGroup& a, Int limit) { return a.is_finite() && *a.order() <= limit; }

}  // namespace

std::optional<AbelianSignature> brute_tate_h0(const RicFunctor& c, int h, int u, Int limit) {
    const FgAbGroup& ch = c.value(h);
    const FgAbGroup& cu = c.value(u);
    if (!small_enough(ch, limit) || !small_enough(cu, limit)) return std::nullopt;
    const AbHom& ind = c.ind(h, u);
    std::set<Vec> image;
    for (const Vec& x : cu.elements()) image.insert(ind(x));
    return coset_signature(ch, ch.elements(), image);
}

std::optional<AbelianSignature> brute_tate_hminus1(const RicFunctor& c, int h, int u, Int limit) {
    const FgAbGroup& ch = c.value(h);
    const FgAbGroup& cu = c.value(u);
    if (!small_enough(ch, limit) || !small_enough(cu, limit)) return std::nullopt;
    const AbHom& ind = c.ind(h, u);
    std::vector<Vec> all = cu.elements();
    std::vector<Vec> kernel;
    for (const Vec& x : all)
        if (ch.is_zero(ind(x))) kernel.push_back(x);
    std::set<Vec> gens;
    for (int g : c.system().sub(h).elements())
        for (const Vec& x : all) gens.insert(cu.sub(c.con(g, u)(x), x));
    // grow the generated subgroup one cyclic piece at a time
    std::set<Vec> span{cu.zero()};
    for (const Vec& s : gens) {
        if (span.count(s)) continue;
        std::set<Vec> grown = span;
        Vec step = s;
        while (!span.count(step)) {
            for (const Vec& a : span) grown.insert(cu.add(a, step));
            step = cu.add(step, s);
        }
        span = std::move(grown);
    }
    return coset_signature(cu, kernel, span);
}

CyclicTate cyclic_module_tate(const GModule& a, const Subgroup& h, const Subgroup& u) {
    if (!h.contains(u) || !u.is_normal_in(h)) throw std::invalid_argument("cyclic_module_tate needs U normal in H");
    const GroupPtr& g = a.group();
    const FgAbGroup& m = a.module();
    AbHom id = AbHom::identity(m);
    int sigma = -1;
    for (int x : h.elements())
        if (Subgroup::generated(g, {x}).join(u) == h) { sigma = x; break; }
    if (sigma < 0) throw std::invalid_argument("H/U is not cyclic");
    std::vector<AbHom> maps;
    for (int x : u.elements()) maps.push_back(a.act(x) - id);
    SubgroupData fixed = common_kernel(m, maps);
    Preimage pre(fixed.embedding);
    std::vector<int> reps;
    std::vector<char> seen(g->order(), 0);
    for (int x : h.elements()) {
        if (seen[x]) continue;
        reps.push_back(x);
        for (int y : u.elements()) seen[g->mul(x, y)] = 1;
    }
    auto on_fixed = [&](const std::function<Vec(const Vec&)>& f) {
        std::vector<Vec> imgs;
        for (int k = 0; k < fixed.group.ngens(); ++k) {
            auto y = pre(f(fixed.embedding.image_of_gen(k)));
            if (!y) throw std::logic_error("map leaves the U-fixed points");
            imgs.push_back(*y);
        }
        return AbHom::from_images(fixed.group, fixed.group, imgs);
    };
    AbHom diff = on_fixed([&](const Vec& x) { return m.sub(a.act(sigma)(x), x); });
    AbHom norm = on_fixed([&](const Vec& x) {
        Vec s = m.zero();
        for (int r : reps) s = m.add(s, a.act(r)(x));
        return s;
    });
    auto kernel_mod_image = [](const AbHom& k_of, const AbHom& im_of) {
        SubgroupData k = hom_kernel(k_of);
        Preimage kp(k.embedding);
        std::vector<Vec> rel;
        for (const Vec& y : hom_columns(im_of)) {
            auto z = kp(y);
            if (!z) throw std::logic_error("image not inside kernel");
            rel.push_back(*z);
        }
        return quotient(k.group, rel).group;
    };
    return {kernel_mod_image(diff, norm), kernel_mod_image(norm, diff)};
}

Report validate_valuation(const RicFunctor& c, const ValuationFamily& v, const RamificationDatum& d) {
    const SubgroupSystem& s = c.system();
    Report r;
    bool cyclic = v.omega.ngens() == 1;
    r.add("omega", cyclic, cyclic ? "" : "Omega = " + v.omega.str() + " is not cyclic");
    Verdict shape, res_ok, ind_ok, con_ok, gen_ok;
    for (int h : s.base()) {
        auto it = v.components.find(h);
        if (it == v.components.end()) shape.fail("missing component at " + s.label(h));
        else if (!(it->second.domain() == c.value(h)) || !(it->second.codomain() == v.omega))
            shape.fail("component shape at " + s.label(h));
    }
    shape.into(r, "components");
    if (!cyclic || !shape.pass()) return r;
    Vec omega = v.omega.gen(0);
    for (int h : s.base()) {
        const AbHom& vh = v.components.at(h);
        const Subgroup& hs = s.sub(h);
        for (int i : s.res_set(h)) {
            Int e = d.degrees(hs, s.sub(i)).first;
            if (!(v.components.at(i) * c.res(i, h) == vh.scaled(e))) res_ok.fail(s.label(h) + " > " + s.label(i));
        }
        for (int i : s.ind_set(h)) {
            Int f = d.degrees(hs, s.sub(i)).second;
            if (!(vh * c.ind(h, i) == v.components.at(i).scaled(f))) ind_ok.fail(s.label(h) + " > " + s.label(i));
        }
        for (int x = 0; x < s.group()->order(); ++x)
            if (!(v.components.at(s.lattice()->conj(x, h)) * c.con(x, h) == vh))
                con_ok.fail("g=" + std::to_string(x) + " H=" + s.label(h));
        if (!Preimage(vh).contains(omega)) gen_ok.fail("H=" + s.label(h));
    }
    res_ok.into(r, "res_compatibility");
    ind_ok.into(r, "ind_compatibility");
    con_ok.into(r, "con_invariance");
    gen_ok.into(r, "generator");
    return r;
}

ValuationFamily induce_valuation_family(const RicFunctor& c, const RamificationDatum& d, const AbHom& v_top) {
    const SubgroupSystem& s = c.system();
    FgAbGroup z = FgAbGroup::integers();
    if (!(v_top.codomain() == z)) throw std::invalid_argument("induced valuations need Omega = Z");
    int top = s.lattice()->whole();
    if (!s.in_base(top)) throw std::invalid_argument("induced valuations need G in the base");
    if (!(v_top.domain() == c.value(top))) throw std::invalid_argument("v does not start at C(G)");
    ValuationFamily out{z, {}};
    for (int h : s.base()) {
        if (!s.in_ind(top, h)) throw std::invalid_argument("H=" + s.label(h) + " is not admissible for induction into G");
        AbHom w = v_top * c.ind(top, h);
        Int g = 0;
        for (Int e : w.matrix().a) g = gcd_int(g, e);
        Int f = d.residue_index(s.sub(h));
        if (g != f)
            throw ImageMismatch("image of v o ind at H=" + s.label(h) + " is " + std::to_string(g) + "Z, expected " +
                                std::to_string(f) + "Z");
        Mat m = w.matrix();
        for (Int& e : m.a) e /= f;
        out.components.emplace(h, AbHom(c.value(h), z, m));
    }
    return out;
}

Report validate_urfnd(const RicFunctor& c, const ValuationFamily& v, const RamificationDatum& d) {
    Report r;
    r.merge(validate_valuation(c, v, d), "valuation.");
    const Check* shape = r.find("valuation.components");
    if (!r.find("valuation.omega")->pass || !shape || !shape->pass) return r;
    const SubgroupSystem& s = c.system();
    Spectrum sp = Spectrum::unramified(c.system_ptr(), d);
    Vec omega = v.omega.gen(0);
    Verdict index_ok, kernel_ok, tate_ok;
    for (int p = 0; p < sp.size(); ++p) {
        auto [h, u] = sp.pair(p);
        if (h == u) continue;
        Int n = s.sub(u).index_in(s.sub(h));
        const AbHom& vh = v.components.at(h);
        const AbHom& vu = v.components.at(u);
        // Im v_H / [H:U] Im v_U is cyclic of order [H:U] generated by omega
        SubgroupData im = hom_image(vh);
        Preimage pre(im.embedding);
        std::vector<Vec> rel;
        bool inside = true;
        for (const Vec& y : hom_columns(vu)) {
            auto z = pre(v.omega.scale(n, y));
            if (z) rel.push_back(*z);
            else inside = false;
        }
        QuotientData q = quotient(im.group, rel);
        auto w = pre(omega);
        auto order = q.group.order();
        if (!inside || !w || !order || *order != n || q.group.element_order(q.projection(*w)) != n)
            index_ok.fail(sp.label(p));
        // ind maps ker v_U onto ker v_H
        SubgroupData ku = hom_kernel(vu);
        SubgroupData kh = hom_kernel(vh);
        std::vector<Vec> imgs;
        for (const Vec& y : hom_columns(ku.embedding)) imgs.push_back(c.ind(h, u)(y));
        if (!subgroup_eq(c.value(h), imgs, hom_columns(kh.embedding))) kernel_ok.fail(sp.label(p));
        auto t = tate_h0(c, h, u).group.order();
        if (!t || *t > n) tate_ok.fail(sp.label(p));
    }
    index_ok.into(r, "value_index");
    kernel_ok.into(r, "kernel_induction");
    tate_ok.into(r, "tate_bound");
    return r;
}

FndValidation validate_fnd(const RicFunctor& c, const ValuationFamily& v, const RamificationDatum& d) {
    FndValidation out;
    out.required = validate_urfnd(c, v, d);
    const SubgroupSystem& s = c.system();
    const auto& lat = *s.lattice();
    bool have_v = out.required.find("valuation.components") && out.required.find("valuation.components")->pass &&
                  out.required.find("valuation.omega")->pass;
    Verdict kernel_exact, cfa, exact;
    for (int u : s.base()) {
        const Subgroup& us = s.sub(u);
        Subgroup iu = d.inertia(us);
        for (int w : s.ind_set(u)) {
            if (w == u || !s.in_base(w) || !s.in_res(u, w) || !lat.normal_in(w, u)) continue;
            const Subgroup& ws = s.sub(w);
            if (!(d.inertia(ws) == iu)) continue;
            int phi = d.frobenius_element(us, ws);
            std::string where = "(" + s.label(u) + ", " + s.label(w) + ")";
            const AbHom& res = c.res(w, u);
            AbHom sigma = c.con(phi, w) - AbHom::identity(c.value(w));
            const AbHom& ind = c.ind(u, w);
            if (have_v) {
                SubgroupData ku = hom_kernel(v.components.at(u));
                SubgroupData kw = hom_kernel(v.components.at(w));
                bool ok1, ok2, ok3;
                AbHom r1 = restrict_between(res, ku, kw, ok1);
                AbHom s1 = restrict_between(sigma, kw, kw, ok2);
                AbHom n1 = restrict_between(ind, kw, ku, ok3);
                if (!(ok1 && ok2 && ok3)) kernel_exact.fail(where + ": maps leave the valuation kernels");
                else if (!is_injective(r1)) kernel_exact.fail(where + ": res not injective");
                else if (!exact_at(r1, s1)) kernel_exact.fail(where + ": image of res != ker(con_phi - 1)");
                else if (!exact_at(s1, n1)) kernel_exact.fail(where + ": image of con_phi - 1 != ker(ind)");
                else if (!is_surjective(n1)) kernel_exact.fail(where + ": ind not surjective");
            }
            auto order = tate_h0(c, u, w).group.order();
            if (!order || *order != ws.index_in(us)) cfa.fail(where);
            if (!is_injective(res)) exact.fail(where + ": res not injective");
            else if (!exact_at(res, sigma)) exact.fail(where + ": image of res != ker(con_phi - 1)");
            else if (!exact_at(sigma, ind)) exact.fail(where + ": image of con_phi - 1 != ker(ind)");
        }
    }
    if (have_v) kernel_exact.into(out.required, "kernel_exactness");
    cfa.into(out.fesenko, "class_field_axiom");
    exact.into(out.fesenko, "exactness");
    return out;
}

ReciprocityContext::ReciprocityContext(RicFunctor c, ValuationFamily v, RamificationDatum d)
    : c_(std::move(c)),
      v_(std::move(v)),
      d_(std::move(d)),
      sp_(Spectrum::all_normal(c_.system_ptr())),
      taut_(tautological_cft(sp_, AbelianizationSystem::commutators(c_.system()))),
      h0_(induction_representation(c_, sp_)) {
    if (c_.system().group() != d_.group()) throw std::invalid_argument("functor and datum live on different groups");
}

const Report& ReciprocityContext::urfnd() const {
    if (!urfnd_) urfnd_ = validate_urfnd(c_, v_, d_);
    return *urfnd_;
}

const FndValidation& ReciprocityContext::validation() const {
    if (!fnd_) fnd_ = validate_fnd(c_, v_, d_);
    return *fnd_;
}

Vec ReciprocityContext::prime_element(int h) const {
    auto it = v_.components.find(h);
    if (it == v_.components.end()) throw NotValidated("no valuation at " + c_.system().label(h));
    auto x = Preimage(it->second)(v_.omega.gen(0));
    if (!x) throw NotValidated("no prime element at " + c_.system().label(h));
    return *x;
}

AbHom ReciprocityContext::table_map(int p, const std::vector<Vec>& gen_values, ReciprocityTable& t) const {
    t.pair = p;
    t.h = sp_.pair(p).h;
    t.u = sp_.pair(p).u;
    t.source = taut_.quotients.at(p).group();
    t.target = h0_.quotients.at(p).group;
    try {
        return AbHom::from_images(t.source, t.target, gen_values);
    } catch (const std::invalid_argument&) {
        t.well_defined = false;
        t.witness = "values do not respect the relations of " + t.source.str();
        return AbHom::zero(t.source, t.target);
    }
}

ReciprocityTable ReciprocityContext::unramified_upsilon(int h, int u) const {
    if (!urfnd().ok()) {
        const Check* f = urfnd().first_failure();
        throw NotUrFnd(f->name + " fails: " + f->witness);
    }
    int p = sp_.index_of(h, u);
    if (p < 0) throw std::invalid_argument("pair outside the spectrum");
    const SubgroupSystem& s = c_.system();
    const FiniteGroup& g = *s.group();
    int phi = d_.frobenius_element(s.sub(h), s.sub(u));
    Int n = s.sub(u).index_in(s.sub(h));
    const AbelianQuotient& src = taut_.quotients.at(p);
    const QuotientData& q = h0_.quotients.at(p);
    Vec pi = q.projection(prime_element(h));
    std::vector<Vec> values;
    for (int i = 0; i < src.group().ngens(); ++i) {
        Vec target = src.group().gen(i);
        Int k = 0;
        while (k < n && src(g.pow(phi, k)) != target) ++k;
        if (k == n) throw std::logic_error("H/U is not generated by the Frobenius element");
        values.push_back(q.group.scale(k, pi));
    }
    ReciprocityTable t;
    t.map = table_map(p, values, t);
    t.is_iso = t.well_defined && is_isomorphism(t.map);
    t.lift_independent = t.multiplicative = t.well_defined;
    t.prime_independent = true;
    for (const Vec& y : hom_columns(hom_kernel(v_.components.at(h)).embedding))
        if (!q.group.is_zero(q.projection(y))) t.prime_independent = false;
    t.matches_unramified = true;
    return t;
}

UpsilonValue ReciprocityContext::upsilon_tilde(int x, int h, int u) const {
    const SubgroupSystem& s = c_.system();
    int p = sp_.index_of(h, u);
    if (p < 0) throw std::invalid_argument("pair outside the spectrum");
    FrobeniusGroup fg = d_.frobenius_group(x, s.sub(h), s.sub(u));
    int sid = s.lattice()->find(fg.sigma);
    if (sid < 0 || !s.in_base(sid) || !s.in_ind(h, sid))
        throw DepthInsufficient("Frobenius group of h=" + std::to_string(x) + " lies outside the system");
    Int cofactor = p_parts(fg.mult, d_.primes()).second;
    const QuotientData& q = h0_.quotients.at(p);
    const AbHom& ind = c_.ind(h, sid);
    UpsilonValue out;
    out.sigma = sid;
    out.mult = fg.mult;
    out.value = q.group.scale(cofactor, q.projection(ind(prime_element(sid))));
    out.prime_independent = true;
    for (const Vec& y : hom_columns(hom_kernel(v_.components.at(sid)).embedding))
        if (!q.group.is_zero(q.group.scale(cofactor, q.projection(ind(y))))) out.prime_independent = false;
    return out;
}

ReciprocityTable ReciprocityContext::upsilon(int h, int u, bool force) const {
    if (!force && !validation().ok()) {
        const Check* f = validation().required.first_failure();
        throw NotValidated("reciprocity refused: " + f->name + " fails (" + f->witness + ")");
    }
    int p = sp_.index_of(h, u);
    if (p < 0) throw std::invalid_argument("pair outside the spectrum");
    const SubgroupSystem& s = c_.system();
    const Subgroup& hs = s.sub(h);
    const FiniteGroup& g = *s.group();
    const AbelianQuotient& src = taut_.quotients.at(p);
    const FgAbGroup& tgt = h0_.quotients.at(p).group;
    ReciprocityTable t;
    std::map<int, UpsilonValue> vals;
    for (int x : hs.elements()) {
        if (!d_.is_frobenius(hs, x)) continue;
        try {
            vals.emplace(x, upsilon_tilde(x, h, u));
        } catch (const DepthInsufficient&) {
            ++t.lifts_skipped;
        }
    }
    t.lifts_checked = static_cast<int>(vals.size());
    // extend the values at the usable lifts additively over (H/U)^ab; breadth first from 0, so a
    // generator with a lift of its own takes that lift's value, and conflicts surface in the
    // lift-independence check below
    const FgAbGroup& sg = src.group();
    std::map<Vec, Vec> spanned{{sg.reduce(Vec(sg.ngens(), 0)), tgt.reduce(Vec(tgt.ngens(), 0))}};
    std::vector<Vec> frontier{spanned.begin()->first};
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const Vec& a : frontier)
            for (const auto& [x, val] : vals) {
                Vec b = sg.add(a, src(x));
                if (spanned.count(b)) continue;
                spanned.emplace(b, tgt.add(spanned.at(a), val.value));
                next.push_back(b);
            }
        frontier = std::move(next);
    }
    std::vector<Vec> values;
    for (int i = 0; i < sg.ngens(); ++i) {
        auto it = spanned.find(sg.reduce(sg.gen(i)));
        if (it == spanned.end())
            throw NoLiftInModel("usable Frobenius lifts do not reach generator " + std::to_string(i) + " at " +
                                sp_.label(p));
        values.push_back(it->second);
    }
    t.map = table_map(p, values, t);
    t.is_iso = t.well_defined && is_isomorphism(t.map);
    t.lift_independent = t.well_defined;
    t.multiplicative = true;
    t.prime_independent = true;
    for (const auto& [x, val] : vals) {
        if (!val.prime_independent) t.prime_independent = false;
        if (t.well_defined && t.map(src(x)) != val.value) {
            if (t.lift_independent) t.witness = "lift h=" + std::to_string(x) + " disagrees";
            t.lift_independent = false;
        }
        for (const auto& [y, wal] : vals) {
            auto xy = vals.find(g.mul(x, y));
            if (xy != vals.end() && xy->second.value != tgt.add(val.value, wal.value)) {
                if (t.multiplicative && t.witness.empty())
                    t.witness = "h1=" + std::to_string(x) + " h2=" + std::to_string(y) + " not multiplicative";
                t.multiplicative = false;
            }
        }
    }
    if (d_.inertia(s.sub(u)) == d_.inertia(hs) && urfnd().ok())
        t.matches_unramified = unramified_upsilon(h, u).map == t.map;
    return t;
}

UpsilonMorphism ReciprocityContext::upsilon_morphism(bool force) const {
    UpsilonMorphism out;
    Verdict defined, well, lifts, mult, primes, unram;
    for (int p = 0; p < sp_.size(); ++p) {
        auto [h, u] = sp_.pair(p);
        try {
            ReciprocityTable t = upsilon(h, u, force);
            if (!t.well_defined) well.fail(sp_.label(p));
            if (!t.lift_independent) lifts.fail(sp_.label(p) + ": " + t.witness);
            if (!t.multiplicative) mult.fail(sp_.label(p) + ": " + t.witness);
            if (!t.prime_independent) primes.fail(sp_.label(p));
            if (t.matches_unramified && !*t.matches_unramified) unram.fail(sp_.label(p));
            out.morphism.components.emplace(p, t.map);
            out.tables.push_back(std::move(t));
        } catch (const NoLiftInModel& e) {
            defined.fail(e.what());
            out.morphism.components.emplace(
                p, AbHom::zero(taut_.quotients.at(p).group(), h0_.quotients.at(p).group));
        }
    }
    defined.into(out.report, "defined");
    well.into(out.report, "well_defined");
    lifts.into(out.report, "lift_independent");
    mult.into(out.report, "multiplicative");
    primes.into(out.report, "prime_independent");
    unram.into(out.report, "matches_unramified");
    out.report.merge(validate_morphism(taut_.functor, h0_.functor, out.morphism), "morphism.");
    return out;
}

std::vector<int> r_lattice(const SubgroupSystem& sys, int h, const Subgroup& r) {
    std::vector<int> out;
    const auto& lat = *sys.lattice();
    for (int u : sys.ind_set(h))
        if (sys.in_base(u) && lat.normal_in(u, h) && lat[u].contains(r)) out.push_back(u);
    return out;
}

NormAssignment norm_assignment(const RicFunctor& c, int h, const std::vector<int>& extensions) {
    NormAssignment a{h, c.value(h), {}};
    for (int u : extensions) a.norms[u] = hom_columns(c.ind(h, u));
    return a;
}

Report lattice_property_check(const SubgroupSystem& sys, const NormAssignment& a) {
    const auto& lat = *sys.lattice();
    Report r;
    Verdict mono, prod, meet, inj;
    auto pair_label = [&](int x, int y) { return "(" + sys.label(x) + ", " + sys.label(y) + ")"; };
    for (const auto& [u1, n1] : a.norms)
        for (const auto& [u2, n2] : a.norms) {
            if (u1 != u2 && lat.leq(u1, u2) && !subgroup_leq(a.value, n1, n2)) mono.fail(pair_label(u1, u2));
            if (u2 <= u1) continue;
            int join = lat.id_of(lat[u1].join(lat[u2]));
            auto j = a.norms.find(join);
            if (j != a.norms.end() && !subgroup_eq(a.value, j->second, concat(n1, n2))) prod.fail(pair_label(u1, u2));
            auto m = a.norms.find(lat.intersect(u1, u2));
            if (m != a.norms.end() && !subgroup_eq(a.value, m->second, intersect(a.value, n1, n2)))
                meet.fail(pair_label(u1, u2));
            if (subgroup_eq(a.value, n1, n2)) inj.fail(pair_label(u1, u2));
        }
    mono.into(r, "monotone");
    prod.into(r, "product");
    meet.into(r, "intersection");
    inj.into(r, "injective");
    return r;
}

ReducedVerdict reduced_verification(const Spectrum& sp, const RicFunctor& source, const RicFunctor& target,
                                    const FunctorMorphism& theta, const AbelianizationSystem& r, ReductionMode mode,
                                    const RicFunctor* c) {
    const SubgroupSystem& s = sp.flat();
    ReducedVerdict out;
    Report morph = validate_morphism(source, target, theta);
    const Check* bad = morph.first_failure();
    out.hypotheses.add("morphism", bad == nullptr, bad ? bad->name + ": " + bad->witness : "");
    out.hypotheses.merge(sp.coherence(), "coherence.");
    Verdict cfa, reduced, full;
    auto iso_at = [&](int p) {
        auto it = theta.components.find(p);
        return it != theta.components.end() && is_isomorphism(it->second);
    };
    for (int p = 0; p < sp.size(); ++p) {
        auto [h, u] = sp.pair(p);
        const Subgroup& hs = s.sub(h);
        const Subgroup& us = s.sub(u);
        if (h == u || !us.contains(r.r(h))) continue;
        Int n = us.index_in(hs);
        bool small = (mode == ReductionMode::Prime ? is_prime(n) : is_prime_power(n)) && is_cyclic_quotient(hs, us);
        if (small) {
            auto order = target.value(p).order();
            if (!order || *order != n || (c && !satisfies_hilbert90(*c, h, u))) cfa.fail(sp.label(p));
            if (!iso_at(p)) reduced.fail(sp.label(p));
        }
        if (!iso_at(p)) full.fail(sp.label(p));
    }
    cfa.into(out.hypotheses, "class_field_axiom");
    reduced.into(out.reduced, mode == ReductionMode::Prime ? "prime_pairs_iso" : "prime_power_pairs_iso");
    full.into(out.full, "all_pairs_iso");
    out.consistent = !(out.hypotheses.ok() && out.reduced.ok() && !out.full.ok());
    return out;
}

}  // namespace cfe
