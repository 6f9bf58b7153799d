#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cftengine/cft.hpp"
#include "support.hpp"

using namespace cfe;
using cfe::test::full_system;
using cfe::test::gen;
using cfe::test::lattice_id;
using cfe::test::perm_element;

namespace {

using SystemPtr = std::shared_ptr<const SubgroupSystem>;

RicFunctor trivial_z(const GroupPtr& g, SystemPtr sys) {
    return fixed_point_functor(GModule::trivial(g, FgAbGroup::integers()), std::move(sys)).functor;
}

ValuationFamily identity_valuation(const RicFunctor& c) {
    ValuationFamily v{FgAbGroup::integers(), {}};
    for (int h : c.system().base()) v.components.emplace(h, AbHom::identity(c.value(h)));
    return v;
}

// C2xC2 with d the first projection, on the subgroups containing the inertia group <(0,1)>
struct V4Fixture {
    RamificationDatum d{catalog_group("C2xC2"), 2, {0, 1, 0, 1}};
    SystemPtr sys;
    V4Fixture() {
        Subgroup inertia = d.inertia(Subgroup::whole(d.group()));
        sys = std::make_shared<const SubgroupSystem>(SubgroupSystem::filtered(
            make_lattice(d.group()), [&](const Subgroup& s) { return s.contains(inertia); }));
    }
};

ReciprocityContext cyclic_context(int n) {
    GroupPtr g = cyclic_group(n);
    auto sys = full_system(g);
    RicFunctor c = trivial_z(g, sys);
    return ReciprocityContext(c, identity_valuation(c), RamificationDatum::injective_cyclic(g));
}

}  // namespace

TEST_CASE("spectrum of normal pairs") {
    GroupPtr s3 = symmetric_group(3);
    auto sys = full_system(s3);
    Spectrum sp = Spectrum::all_normal(sys);
    // S3: 3 pairs, A3: 2, each order-2 subgroup: 2, trivial: 1
    CHECK(sp.size() == 12);
    CHECK(sp.coherence().ok());
    int top = sys->lattice()->whole();
    int a3 = lattice_id(*sys, gen(s3, {perm_element(s3, {1, 2, 0})}));
    int p = sp.index_of(top, a3);
    REQUIRE(p >= 0);
    CHECK(sp.domain()->res[p].count(sp.index_of(a3, a3)) == 1);
    CHECK(sp.index_of(top, lattice_id(*sys, gen(s3, {perm_element(s3, {1, 0, 2})}))) == -1);
    CHECK_THROWS_AS(Spectrum(sys, {{top, top}}), std::invalid_argument);

    // sign character: the unramified pairs over S3 are those with U containing A3
    for (const RamificationDatum& d : RamificationDatum::all_surjections(s3)) {
        if (d.modulus() != 2) continue;
        Spectrum ur = Spectrum::unramified(sys, d);
        CHECK(ur.index_of(top, a3) >= 0);
        CHECK(ur.index_of(top, 0) == -1);
        CHECK(ur.coherence().ok());
    }
}

TEST_CASE("tautological CFT") {
    GroupPtr s3 = symmetric_group(3);
    auto sys = full_system(s3);
    Spectrum sp = Spectrum::all_normal(sys);
    AbelianizationSystem rs = AbelianizationSystem::commutators(*sys);
    TautologicalCft t = tautological_cft(sp, rs);
    CHECK(validate_ric_functor(t.functor).ok());
    int top = sys->lattice()->whole();
    int a3 = lattice_id(*sys, gen(s3, {perm_element(s3, {1, 2, 0})}));
    CHECK(t.functor.value(sp.index_of(top, a3)) == FgAbGroup::cyclic(2));
    CHECK(t.functor.value(sp.index_of(top, top)).is_trivial());
    CHECK(t.functor.value(sp.index_of(top, 0)) == FgAbGroup::cyclic(2));

    // agrees with pi_R lifted to the spectrum modulo the norm subgroups
    AbelianizationFunctor pi = abelianization_functor(rs);
    RicFunctor lifted = lift_to_spectrum(pi.functor, sp);
    std::map<int, std::vector<Vec>> norms;
    for (int p = 0; p < sp.size(); ++p) norms[p] = hom_columns(pi.functor.ind(sp.pair(p).h, sp.pair(p).u));
    QuotientFunctor q = quotient_functor(lifted, norms);
    for (int p = 0; p < sp.size(); ++p) CHECK(q.functor.value(p) == t.functor.value(p));

    GroupPtr c4 = cyclic_group(4);
    auto sys4 = full_system(c4);
    Spectrum sp4 = Spectrum::all_normal(sys4);
    TautologicalCft t4 = tautological_cft(sp4, AbelianizationSystem::commutators(*sys4));
    int w = sys4->lattice()->whole();
    CHECK(t4.functor.value(sp4.index_of(w, lattice_id(*sys4, gen(c4, {2})))) == FgAbGroup::cyclic(2));
    CHECK(t4.functor.value(sp4.index_of(w, 0)) == FgAbGroup::cyclic(4));
    CHECK(validate_ric_functor(t4.functor).ok());
}

TEST_CASE("induction representation") {
    GroupPtr c6 = cyclic_group(6);
    auto sys = full_system(c6);
    Spectrum sp = Spectrum::all_normal(sys);
    QuotientFunctor q = induction_representation(trivial_z(c6, sys), sp);
    CHECK(validate_ric_functor(q.functor).ok());
    for (int p = 0; p < sp.size(); ++p) {
        Int n = sys->sub(sp.pair(p).u).index_in(sys->sub(sp.pair(p).h));
        CHECK(q.functor.value(p) == FgAbGroup::cyclic(n == 1 ? 1 : n));
    }

    for (const char* name : {"S3", "D4", "Q8"}) {
        GroupPtr g = catalog_group(name);
        auto s = full_system(g);
        Spectrum spg = Spectrum::all_normal(s);
        AbelianizationSystem rs = AbelianizationSystem::commutators(*s);
        QuotientFunctor h0 = induction_representation(abelianization_functor(rs).functor, spg);
        TautologicalCft t = tautological_cft(spg, rs);
        for (int p = 0; p < spg.size(); ++p) CHECK(h0.functor.value(p) == t.functor.value(p));
    }
}

TEST_CASE("Tate groups examples") {
    GroupPtr c2 = cyclic_group(2);
    auto sys = full_system(c2);
    int top = sys->lattice()->whole();
    RicFunctor z = trivial_z(c2, sys);
    CHECK(tate_h0(z, top, 0).group == FgAbGroup::cyclic(2));
    CHECK(tate_hminus1(z, top, 0).is_trivial());
    CHECK(satisfies_class_field_axiom(z, top, 0));

    RicFunctor neg = fixed_point_functor(GModule::negation(c2), sys).functor;
    CHECK(tate_h0(neg, top, 0).group.is_trivial());
    CHECK(tate_hminus1(neg, top, 0) == FgAbGroup::cyclic(2));
    CHECK_FALSE(satisfies_hilbert90(neg, top, 0));
    CHECK_FALSE(satisfies_class_field_axiom(neg, top, 0));
    CHECK_FALSE(check_hilbert90(neg, Spectrum::all_normal(sys)).ok());
    CHECK(check_class_field_axiom(z, Spectrum::all_normal(sys)).ok());

    CyclicTate ct = cyclic_module_tate(GModule::negation(c2), Subgroup::whole(c2), Subgroup::trivial(c2));
    CHECK(ct.h0.is_trivial());
    CHECK(ct.hminus1 == FgAbGroup::cyclic(2));
}

TEST_CASE("Tate groups against enumeration and the cyclic module formulas") {
    std::mt19937_64 rng(5);
    int compared = 0;
    for (const char* name : {"C4", "C6", "S3", "C2xC2", "D4", "Q8", "A4"}) {
        GroupPtr g = catalog_group(name);
        auto sys = full_system(g);
        const auto& lat = *sys->lattice();
        std::vector<GModule> modules{GModule::permutation(g, Subgroup::trivial(g), 2),
                                     GModule::permutation(g, Subgroup::trivial(g), 3)};
        for (int k = 0; k < 3; ++k) modules.push_back(GModule::random(g, lat, rng));
        for (const GModule& a : modules) {
            RicFunctor c = fixed_point_functor(a, sys).functor;
            for (int h = 0; h < lat.size(); ++h)
                for (int u = 0; u < lat.size(); ++u) {
                    if (!lat.leq(u, h) || !lat.normal_in(u, h)) continue;
                    QuotientData t0 = tate_h0(c, h, u);
                    FgAbGroup t1 = tate_hminus1(c, h, u);
                    auto b0 = brute_tate_h0(c, h, u);
                    auto b1 = brute_tate_hminus1(c, h, u);
                    if (b0 && b1) {
                        CHECK(signature(t0.group) == *b0);
                        CHECK(signature(t1) == *b1);
                        ++compared;
                    }
                    bool cyclic = false;
                    for (int x : lat[h].elements())
                        if (Subgroup::generated(g, {x}).join(lat[u]) == lat[h]) cyclic = true;
                    if (!cyclic) continue;
                    CyclicTate ct = cyclic_module_tate(a, lat[h], lat[u]);
                    CHECK(ct.h0 == t0.group);
                    CHECK(ct.hminus1 == t1);
                }
        }
    }
    CHECK(compared > 100);
}

TEST_CASE("Tate oracle on the abelianization functor") {
    for (const char* name : {"S3", "D4", "Q8", "C4xC2"}) {
        GroupPtr g = catalog_group(name);
        auto sys = full_system(g);
        RicFunctor pi = abelianization_functor(AbelianizationSystem::commutators(*sys)).functor;
        const auto& lat = *sys->lattice();
        for (int h = 0; h < lat.size(); ++h)
            for (int u = 0; u < lat.size(); ++u) {
                if (!lat.leq(u, h) || !lat.normal_in(u, h)) continue;
                CHECK(signature(tate_h0(pi, h, u).group) == *brute_tate_h0(pi, h, u));
                CHECK(signature(tate_hminus1(pi, h, u)) == *brute_tate_hminus1(pi, h, u));
            }
    }
}

TEST_CASE("valuation families") {
    GroupPtr c4 = cyclic_group(4);
    auto sys = full_system(c4);
    RicFunctor z = trivial_z(c4, sys);
    RamificationDatum d = RamificationDatum::injective_cyclic(c4);
    CHECK(validate_valuation(z, identity_valuation(z), d).ok());

    ValuationFamily zero{FgAbGroup::integers(), {}};
    for (int h : sys->base()) zero.components.emplace(h, AbHom::zero(z.value(h), FgAbGroup::integers()));
    Report zr = validate_valuation(z, zero, d);
    CHECK_FALSE(zr.find("generator")->pass);

    // C2xC2 with a totally ramified edge: v_U = e v_H leaves omega outside Im v_U
    RamificationDatum v4(catalog_group("C2xC2"), 2, {0, 1, 0, 1});
    auto sys4 = full_system(v4.group());
    RicFunctor z4 = trivial_z(v4.group(), sys4);
    ValuationFamily scaled{FgAbGroup::integers(), {}};
    Subgroup top_inertia = v4.inertia(Subgroup::whole(v4.group()));
    for (int h : sys4->base()) {
        Int e = top_inertia.order() / v4.inertia(sys4->sub(h)).order();
        scaled.components.emplace(h, AbHom::scalar(FgAbGroup::integers(), e));
    }
    Report vr = validate_valuation(z4, scaled, v4);
    CHECK(vr.find("res_compatibility")->pass);
    CHECK(vr.find("ind_compatibility")->pass);
    CHECK_FALSE(vr.find("generator")->pass);
    CHECK_FALSE(vr.find("generator")->witness.empty());
    CHECK_THROWS_AS(induce_valuation_family(z4, v4, AbHom::identity(FgAbGroup::integers())), ImageMismatch);

    ValuationFamily induced = induce_valuation_family(z, d, AbHom::identity(FgAbGroup::integers()));
    for (int h : sys->base()) CHECK(induced.components.at(h) == AbHom::identity(FgAbGroup::integers()));
    CHECK_THROWS_AS(induce_valuation_family(z, d, AbHom(FgAbGroup::integers(), FgAbGroup::cyclic(4), Mat::identity(1))),
                    std::invalid_argument);
}

TEST_CASE("unramified conditions") {
    GroupPtr c2 = cyclic_group(2);
    auto sys = full_system(c2);
    RicFunctor z = trivial_z(c2, sys);
    RamificationDatum d = RamificationDatum::injective_cyclic(c2);
    CHECK(validate_urfnd(z, identity_valuation(z), d).ok());

    V4Fixture f;
    RicFunctor z4 = trivial_z(f.d.group(), f.sys);
    CHECK(validate_urfnd(z4, identity_valuation(z4), f.d).ok());

    // v reduced mod 4: ind = x2 does not map 4Z onto 4Z
    ValuationFamily mod4{FgAbGroup::cyclic(4), {}};
    for (int h : sys->base()) mod4.components.emplace(h, AbHom(FgAbGroup::integers(), FgAbGroup::cyclic(4), Mat::identity(1)));
    Report r = validate_urfnd(z, mod4, d);
    CHECK(r.find("valuation.generator")->pass);
    CHECK(r.find("value_index")->pass);
    CHECK_FALSE(r.find("kernel_induction")->pass);
    CHECK(r.find("tate_bound")->pass);
}

TEST_CASE("unramified reciprocity tables") {
    ReciprocityContext c2 = cyclic_context(2);
    const auto& lat2 = *c2.functor().system().lattice();
    ReciprocityTable t2 = c2.unramified_upsilon(lat2.whole(), 0);
    CHECK(t2.source == FgAbGroup::cyclic(2));
    CHECK(t2.target == FgAbGroup::cyclic(2));
    CHECK(t2.is_iso);
    CHECK(t2.prime_independent);

    ReciprocityContext c4 = cyclic_context(4);
    const auto& sys4 = c4.functor().system();
    int sq = lattice_id(sys4, gen(sys4.group(), {2}));
    ReciprocityTable t4 = c4.unramified_upsilon(sys4.lattice()->whole(), sq);
    CHECK(t4.source == FgAbGroup::cyclic(2));
    CHECK(t4.target == FgAbGroup::cyclic(2));
    CHECK(t4.is_iso);

    // the mod-4 valuation is refused
    GroupPtr g = cyclic_group(2);
    auto sys = full_system(g);
    RicFunctor z = trivial_z(g, sys);
    ValuationFamily mod4{FgAbGroup::cyclic(4), {}};
    for (int h : sys->base()) mod4.components.emplace(h, AbHom(FgAbGroup::integers(), FgAbGroup::cyclic(4), Mat::identity(1)));
    ReciprocityContext bad(z, mod4, RamificationDatum::injective_cyclic(g));
    CHECK_THROWS_AS(bad.unramified_upsilon(sys->lattice()->whole(), 0), NotUrFnd);
}

TEST_CASE("FND validation") {
    for (int n : {1, 2, 3, 4, 6, 8}) {
        ReciprocityContext ctx = cyclic_context(n);
        CHECK(ctx.validation().ok());
        CHECK(ctx.validation().fesenko.ok());
    }
    V4Fixture f;
    RicFunctor z4 = trivial_z(f.d.group(), f.sys);
    CHECK(validate_fnd(z4, identity_valuation(z4), f.d).ok());

    // negation module: C(C2) = 0 and C(1) = Z, with v_1 = 0
    GroupPtr c2 = cyclic_group(2);
    auto sys = full_system(c2);
    RicFunctor neg = fixed_point_functor(GModule::negation(c2), sys).functor;
    ValuationFamily v{FgAbGroup::integers(), {}};
    for (int h : sys->base()) v.components.emplace(h, AbHom::zero(neg.value(h), FgAbGroup::integers()));
    FndValidation fv = validate_fnd(neg, v, RamificationDatum::injective_cyclic(c2));
    CHECK_FALSE(fv.ok());
    CHECK_FALSE(fv.required.find("kernel_exactness")->pass);
    CHECK_FALSE(fv.fesenko.find("exactness")->pass);

    ReciprocityContext ctx(neg, v, RamificationDatum::injective_cyclic(c2));
    CHECK_THROWS_AS(ctx.upsilon(sys->lattice()->whole(), 0), NotValidated);
}

TEST_CASE("reciprocity from Frobenius lifts") {
    ReciprocityContext c4 = cyclic_context(4);
    const auto& sys = c4.functor().system();
    int top = sys.lattice()->whole();
    int sq = lattice_id(sys, gen(sys.group(), {2}));
    // h in U gives the identity coset
    UpsilonValue id = c4.upsilon_tilde(2, top, sq);
    CHECK(c4.h0().quotients.at(c4.spectrum().index_of(top, sq)).group.is_zero(id.value));
    UpsilonValue g3 = c4.upsilon_tilde(3, top, sq);
    CHECK(g3.mult == 3);
    CHECK(g3.value == Vec{1});

    for (int n : {2, 3, 4, 5, 6, 8, 9, 12}) {
        CAPTURE(n);
        ReciprocityContext ctx = cyclic_context(n);
        UpsilonMorphism m = ctx.upsilon_morphism();
        CHECK(m.report.ok());
        for (const auto& t : m.tables) {
            CHECK(t.is_iso);
            CHECK(t.matches_unramified == true);
        }
    }
    V4Fixture f;
    RicFunctor z4 = trivial_z(f.d.group(), f.sys);
    ReciprocityContext v4(z4, identity_valuation(z4), f.d);
    UpsilonMorphism m = v4.upsilon_morphism();
    CHECK(m.report.ok());
    for (const auto& t : m.tables) CHECK(t.is_iso);
}

TEST_CASE("lattice properties") {
    GroupPtr d4 = catalog_group("D4");
    auto sys = full_system(d4);
    AbelianizationSystem rs = AbelianizationSystem::commutators(*sys);
    RicFunctor pi = abelianization_functor(rs).functor;
    int top = sys->lattice()->whole();
    std::vector<int> ext = r_lattice(*sys, top, rs.r(top));
    CHECK(ext.size() == 5);
    NormAssignment a = norm_assignment(pi, top, ext);
    CHECK(lattice_property_check(*sys, a).ok());

    GroupPtr c12 = cyclic_group(12);
    auto sys12 = full_system(c12);
    RicFunctor z = trivial_z(c12, sys12);
    int top12 = sys12->lattice()->whole();
    NormAssignment b = norm_assignment(z, top12, r_lattice(*sys12, top12, Subgroup::trivial(c12)));
    CHECK(b.norms.size() == 6);
    CHECK(lattice_property_check(*sys12, b).ok());

    // swap the norm subgroups of two extensions
    auto it = b.norms.begin();
    auto jt = std::next(it, 2);
    std::swap(it->second, jt->second);
    Report r = lattice_property_check(*sys12, b);
    CHECK_FALSE(r.ok());
    CHECK(r.first_failure()->witness.find("(") == 0);
}

TEST_CASE("reduced verification") {
    ReciprocityContext ctx = cyclic_context(4);
    UpsilonMorphism m = ctx.upsilon_morphism();
    const Spectrum& sp = ctx.spectrum();
    AbelianizationSystem rs = AbelianizationSystem::commutators(ctx.functor().system());
    const RicFunctor& src = ctx.tautological().functor;
    const RicFunctor& tgt = ctx.h0().functor;
    for (ReductionMode mode : {ReductionMode::Prime, ReductionMode::PrimePower}) {
        ReducedVerdict v = reduced_verification(sp, src, tgt, m.morphism, rs, mode, &ctx.functor());
        CHECK(v.hypotheses.ok());
        CHECK(v.reduced.ok());
        CHECK(v.full.ok());
        CHECK(v.consistent);
    }
    const auto& sys = ctx.functor().system();
    int top = sys.lattice()->whole();

    // a corruption at the composite pair (C4, 1) breaks the morphism
    FunctorMorphism bad = m.morphism;
    int p = sp.index_of(top, 0);
    bad.components[p] = AbHom::zero(src.value(p), tgt.value(p));
    ReducedVerdict v = reduced_verification(sp, src, tgt, bad, rs, ReductionMode::Prime, &ctx.functor());
    CHECK_FALSE(v.hypotheses.find("morphism")->pass);
    CHECK(v.reduced.ok());
    CHECK_FALSE(v.full.ok());
    CHECK(v.consistent);

    // at a prime pair the reduced check sees it
    FunctorMorphism bad2 = m.morphism;
    int q = sp.index_of(top, lattice_id(sys, gen(sys.group(), {2})));
    bad2.components[q] = AbHom::zero(src.value(q), tgt.value(q));
    ReducedVerdict v2 = reduced_verification(sp, src, tgt, bad2, rs, ReductionMode::Prime, &ctx.functor());
    CHECK_FALSE(v2.reduced.ok());
    CHECK(v2.consistent);
}

TEST_CASE("reciprocity extended from the usable lifts") {
    // C6 with d(x) = -x: on C3 = <2> the class of 2 has no usable lift (d_H(2) = 2 but the Frobenius
    // group is all of C3), while the class of 4 is Frobenius with multiplier 1
    GroupPtr c6 = cyclic_group(6);
    auto sys = full_system(c6);
    RicFunctor c = trivial_z(c6, sys);
    RamificationDatum d(c6, 6, {0, 5, 4, 3, 2, 1});
    ReciprocityContext ctx(c, identity_valuation(c), d);
    REQUIRE(ctx.validation().ok());
    int c3 = lattice_id(*sys, gen(c6, {2}));
    ReciprocityTable t = ctx.upsilon(c3, 0);
    CHECK(t.lifts_checked == 1);
    CHECK(t.lifts_skipped == 1);
    const AbelianQuotient& src = ctx.tautological().quotients.at(ctx.spectrum().index_of(c3, 0));
    CHECK(t.map(src(4)) == Vec{1});
    CHECK(t.map(src(2)) == Vec{2});
    CHECK(t.is_iso);
    CHECK(t.matches_unramified == true);
    CHECK(ctx.upsilon_morphism().report.ok());
}
