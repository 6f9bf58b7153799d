// One line per acceptance criterion; exit status 1 when any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "cftengine/catalog.hpp"
#include "cftengine/scenario.hpp"

using namespace cfe;

namespace {

using SystemPtr = std::shared_ptr<const SubgroupSystem>;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// counts plus the first failure
struct Tally {
    long checked = 0;
    long failed = 0;
    std::string first;

    void check(bool ok, const std::string& where) {
        ++checked;
        if (!ok) {
            if (failed++ == 0) first = where;
        }
    }
    void report(const Report& r, const std::string& where) {
        for (const Check& c : r.checks) check(c.pass, where + ": " + c.name + (c.witness.empty() ? "" : " " + c.witness));
    }
    Outcome outcome(const std::string& extra = "") const {
        std::ostringstream os;
        os << checked << " checks";
        if (!extra.empty()) os << ", " << extra;
        if (failed) os << ", " << failed << " failed, first: " << first;
        return {failed == 0 && checked > 0, os.str()};
    }
};

SystemPtr full_system(const GroupPtr& g) {
    return std::make_shared<const SubgroupSystem>(SubgroupSystem::full(make_lattice(g)));
}

RicFunctor trivial_z(const GroupPtr& g, SystemPtr sys) {
    return fixed_point_functor(GModule::trivial(g, FgAbGroup::integers()), std::move(sys)).functor;
}

ValuationFamily identity_valuation(const RicFunctor& c) {
    ValuationFamily v{FgAbGroup::integers(), {}};
    for (int h : c.system().base()) v.components.emplace(h, AbHom::identity(c.value(h)));
    return v;
}

// the three random modules per catalog group shared by criteria 2, 3 and 6
const std::vector<std::vector<GModule>>& catalog_modules() {
    static const std::vector<std::vector<GModule>> mods = [] {
        std::vector<std::vector<GModule>> out;
        std::mt19937_64 rng(2024);
        for (const auto& g : catalog()) {
            SubgroupLattice lat(g);
            std::vector<GModule> ms;
            for (int k = 0; k < 3; ++k) ms.push_back(GModule::random(g, lat, rng));
            out.push_back(std::move(ms));
        }
        return out;
    }();
    return mods;
}

Outcome transfer_laws() {
    Tally t;
    std::mt19937_64 rng(1);
    for (const auto& g : catalog()) {
        SubgroupLattice lat(g);
        Subgroup w = Subgroup::whole(g);
        Subgroup rg = w.commutator_subgroup();
        std::map<int, TransferMap> from_top;
        for (int id = 0; id < lat.size(); ++id) {
            const Subgroup& h = lat[id];
            if (h.index_in(w) > 8) continue;
            Subgroup rh = h.commutator_subgroup();
            TransferMap ver(w, h, rh, rg);
            from_top.emplace(id, ver);
            std::string where = g->name() + " -> " + std::to_string(id);
            for (int trial = 0; trial < 5; ++trial) {
                Transversal tr = random_right_transversal(w, h, rng);
                bool same = true;
                for (int x = 0; x < g->order(); ++x) same = same && ver.with_transversal(tr, x) == ver(x);
                t.check(same, where + " transversal");
            }
            bool mult = true, lambda = true;
            for (int x = 0; x < g->order(); ++x) {
                auto reps = double_coset_reps(w, h, Subgroup::generated(g, {x}));
                lambda = lambda && transfer_via_lambda(w, h, rh, x, reps) == ver(x);
                for (int y = 0; y < g->order(); ++y)
                    mult = mult && ver(g->mul(x, y)) == coset_rep(rh, g->mul(ver(x), ver(y)));
            }
            t.check(mult, where + " multiplicative");
            t.check(lambda, where + " lambda");
        }
        // G > H > K with [G:K] <= 8
        for (const auto& [hid, vgh] : from_top)
            for (const auto& [kid, vgk] : from_top) {
                const Subgroup& h = lat[hid];
                const Subgroup& k = lat[kid];
                if (hid == kid || !h.contains(k)) continue;
                TransferMap vhk(h, k, k.commutator_subgroup(), h.commutator_subgroup());
                bool ok = true;
                for (int x = 0; x < g->order(); ++x) ok = ok && vgk(x) == vhk(vgh(x));
                t.check(ok, g->name() + " chain " + std::to_string(hid) + " > " + std::to_string(kid));
            }
    }
    return t.outcome();
}

Outcome mackey_suite() {
    Tally t;
    long functors = 0;
    const auto& cat = catalog();
    for (size_t gi = 0; gi < cat.size(); ++gi) {
        const GroupPtr& g = cat[gi];
        auto sys = full_system(g);
        auto run = [&](const RicFunctor& f, const std::string& name) {
            std::string where = g->name() + " " + name;
            t.report(validate_ric_functor(f), where);
            t.report(check_stability(f), where);
            t.report(check_mackey_formula(f), where);
            t.report(check_cohomological(f), where);
            ++functors;
        };
        run(abelianization_functor(AbelianizationSystem::commutators(*sys)).functor, "pi");
        for (const GModule& m : catalog_modules()[gi]) run(fixed_point_functor(m, sys).functor, m.name());
    }
    return t.outcome(std::to_string(functors) + " functors");
}

Outcome adjunction() {
    Tally t;
    const auto& cat = catalog();
    for (size_t gi = 0; gi < cat.size(); ++gi) {
        const GroupPtr& g = cat[gi];
        auto sys = full_system(g);
        std::vector<int> basis = normal_basis(*sys);
        std::vector<GModule> mods{GModule::trivial(g, FgAbGroup::integers())};
        for (const GModule& m : catalog_modules()[gi]) mods.push_back(m);
        for (const GModule& m : mods) {
            AdjunctionResult r = adjunction_for_module(m, sys, basis);
            std::string where = g->name() + " " + m.name();
            t.check(r.epsilon_iso, where + " epsilon");
            t.report(r.eta_report, where + " eta");
            t.report(r.identities, where + " identities");
        }
    }
    RicFunctor nd = non_descent_functor();
    AdjunctionResult r = adjunction_for_functor(nd, normal_basis(nd.system()));
    const Check* iso = r.eta_report.find("isomorphism");
    bool witnessed = iso && !iso->pass && !iso->witness.empty();
    t.check(witnessed, "non-descent functor: eta did not fail with a witness");
    return t.outcome(witnessed ? "non-descent witness: " + iso->witness : "");
}

Outcome degree_laws() {
    Tally t;
    long data = 0;
    for (const auto& g : catalog()) {
        SubgroupLattice lat(g);
        const auto& subs = lat.all();
        for (const RamificationDatum& d : RamificationDatum::all_surjections(g)) {
            ++data;
            std::vector<Subgroup> inertia;
            for (const Subgroup& h : subs) inertia.push_back(d.inertia(h));
            bool ok = true;
            std::string where;
            for (size_t hi = 0; hi < subs.size() && ok; ++hi)
                for (size_t ki = 0; ki < subs.size() && ok; ++ki) {
                    const Subgroup& h = subs[hi];
                    const Subgroup& k = subs[ki];
                    if (!h.contains(k)) continue;
                    auto [e, f] = d.degrees(h, k);
                    where = g->name() + " " + std::to_string(hi) + " > " + std::to_string(ki);
                    ok = ok && e * f == k.index_in(h);
                    ok = ok && d.is_unramified(h, k) == k.contains(inertia[hi]);
                    ok = ok && d.is_totally_ramified(h, k) == (k.join(inertia[hi]) == h);
                    for (const Subgroup& l : subs) {
                        if (!ok || !k.contains(l)) continue;
                        auto [e2, f2] = d.degrees(k, l);
                        auto [e3, f3] = d.degrees(h, l);
                        ok = e3 == e * e2 && f3 == f * f2;
                    }
                }
            t.check(ok, where);
        }
    }
    return t.outcome(std::to_string(data) + " data");
}

Outcome frobenius_law() {
    Tally t;
    long shallow = 0;
    for (const auto& g : catalog()) {
        SubgroupLattice lat(g);
        for (const RamificationDatum& d : RamificationDatum::all_surjections(g))
            for (const Subgroup& h : lat.all()) {
                if (d.d_h_modulus(h) == 1) continue;
                for (const Subgroup& u : lat.all()) {
                    if (!h.contains(u)) continue;
                    for (int x : h.elements()) {
                        if (!d.is_frobenius(h, x)) continue;
                        try {
                            FrobeniusGroup fg = d.frobenius_group(x, h, u, true);
                            if (!fg.axioms.ok()) continue;
                            std::string where = g->name() + " x=" + std::to_string(x);
                            t.check(fg.unique == true, where + " uniqueness");
                            t.check(fg.product_set, where + " product set");
                        } catch (const DepthInsufficient&) {
                            ++shallow;
                        }
                    }
                }
            }
    }
    return t.outcome(std::to_string(shallow) + " too shallow for the model");
}

Outcome tate_oracle() {
    Tally t;
    long skipped = 0;
    const auto& cat = catalog();
    for (size_t gi = 0; gi < cat.size(); ++gi) {
        const GroupPtr& g = cat[gi];
        auto sys = full_system(g);
        std::vector<std::pair<std::string, RicFunctor>> fs;
        fs.emplace_back("pi", abelianization_functor(AbelianizationSystem::commutators(*sys)).functor);
        for (const GModule& m : catalog_modules()[gi]) fs.emplace_back(m.name(), fixed_point_functor(m, sys).functor);
        const SubgroupLattice& lat = *sys->lattice();
        for (const auto& [name, f] : fs)
            for (int h = 0; h < lat.size(); ++h)
                for (int u = 0; u < lat.size(); ++u) {
                    if (h == u || !lat.leq(u, h) || !lat.normal_in(u, h)) continue;
                    auto b0 = brute_tate_h0(f, h, u);
                    auto b1 = brute_tate_hminus1(f, h, u);
                    if (!b0 || !b1) {
                        ++skipped;
                        continue;
                    }
                    std::string where = g->name() + " " + name + " (" + std::to_string(h) + "," + std::to_string(u) + ")";
                    t.check(*b0 == signature(tate_h0(f, h, u).group), where + " H0");
                    t.check(*b1 == signature(tate_hminus1(f, h, u)), where + " H-1");
                }
    }
    return t.outcome(std::to_string(skipped) + " pairs with infinite or large values skipped");
}

struct Fixture {
    std::string name;
    ReciprocityContext ctx;
};

std::vector<Fixture> unramified_fixtures() {
    std::vector<Fixture> out;
    for (int n = 1; n <= 16; ++n) {
        GroupPtr g = cyclic_group(n);
        RicFunctor c = trivial_z(g, full_system(g));
        out.push_back({"C" + std::to_string(n), ReciprocityContext(c, identity_valuation(c), RamificationDatum::injective_cyclic(g))});
    }
    RamificationDatum d(catalog_group("C2xC2"), 2, {0, 1, 0, 1});
    Subgroup inertia = d.inertia(Subgroup::whole(d.group()));
    auto sys = std::make_shared<const SubgroupSystem>(
        SubgroupSystem::filtered(make_lattice(d.group()), [&](const Subgroup& s) { return s.contains(inertia); }));
    RicFunctor c = trivial_z(d.group(), sys);
    out.push_back({"C2xC2/projection", ReciprocityContext(c, identity_valuation(c), d)});
    return out;
}

Outcome unramified_reciprocity() {
    Tally t;
    long pairs = 0;
    for (const Fixture& f : unramified_fixtures()) {
        const ReciprocityContext& ctx = f.ctx;
        t.report(ctx.urfnd(), f.name + " urFND");
        Spectrum ur = Spectrum::unramified(ctx.functor().system_ptr(), ctx.datum());
        FunctorMorphism m;
        for (const SpectrumPair& p : ur.pairs()) {
            ReciprocityTable tab = ctx.unramified_upsilon(p.h, p.u);
            std::string where = f.name + " " + ur.label(ur.index_of(p.h, p.u));
            t.check(tab.is_iso, where + " iso");
            t.check(tab.prime_independent, where + " prime independence");
            m.components.emplace(ctx.spectrum().index_of(p.h, p.u), tab.map);
            ++pairs;
        }
        // naturality: the tables assemble into a morphism on the full normal spectrum
        if (static_cast<int>(m.components.size()) == ctx.spectrum().size())
            t.report(validate_morphism(ctx.tautological().functor, ctx.h0().functor, m), f.name + " naturality");
        else
            t.check(false, f.name + " has ramified pairs");
    }
    return t.outcome(std::to_string(pairs) + " unramified pairs");
}

// every datum on cyclic groups and C2xC2 with trivial Z and v = id, kept when FND validation passes
std::vector<Fixture> fnd_fixtures(long& candidates) {
    std::vector<Fixture> out;
    candidates = 0;
    auto consider = [&](const std::string& name, ReciprocityContext ctx) {
        ++candidates;
        if (ctx.validation().ok()) out.push_back({name, std::move(ctx)});
    };
    for (int n = 1; n <= 16; ++n) {
        GroupPtr g = cyclic_group(n);
        RicFunctor c = trivial_z(g, full_system(g));
        for (const RamificationDatum& d : RamificationDatum::all_surjections(g))
            consider("C" + std::to_string(n) + " mod " + std::to_string(d.modulus()),
                     ReciprocityContext(c, identity_valuation(c), d));
    }
    for (Fixture& f : unramified_fixtures())
        if (f.name == "C2xC2/projection") consider(f.name, std::move(f.ctx));
    // the negation module never validates
    GroupPtr c2 = cyclic_group(2);
    auto sys = full_system(c2);
    RicFunctor neg = fixed_point_functor(GModule::negation(c2), sys).functor;
    ValuationFamily zero{FgAbGroup::integers(), {}};
    for (int h : sys->base()) zero.components.emplace(h, AbHom::zero(neg.value(h), FgAbGroup::integers()));
    consider("C2 negation", ReciprocityContext(neg, zero, RamificationDatum::injective_cyclic(c2)));
    return out;
}

Outcome full_reciprocity() {
    Tally t;
    long candidates = 0, tables = 0;
    std::vector<Fixture> fs = fnd_fixtures(candidates);
    for (const Fixture& f : fs) {
        try {
            UpsilonMorphism m = f.ctx.upsilon_morphism();
            t.report(m.report, f.name);
            for (const ReciprocityTable& tab : m.tables) {
                std::string where = f.name + " " + f.ctx.spectrum().label(tab.pair);
                t.check(tab.lift_independent, where + " lift independence");
                t.check(tab.multiplicative, where + " multiplicative");
                t.check(tab.matches_unramified != false, where + " unramified agreement");
                ++tables;
            }
        } catch (const std::exception& e) {
            t.check(false, f.name + ": " + e.what());
        }
    }
    std::ostringstream os;
    os << fs.size() << " of " << candidates << " scenarios pass FND, " << tables << " tables";
    return t.outcome(os.str());
}

Outcome reduction_consistency() {
    Tally t;
    long candidates = 0, by_hypotheses = 0, by_full = 0;
    std::vector<Fixture> fs = fnd_fixtures(candidates);
    struct Prepared {
        const Fixture* f;
        UpsilonMorphism m;
        AbelianizationSystem rs;
    };
    std::vector<Prepared> prep;
    for (const Fixture& f : fs)
        prep.push_back({&f, f.ctx.upsilon_morphism(), AbelianizationSystem::commutators(f.ctx.functor().system())});
    auto verdict = [](const Prepared& p, const FunctorMorphism& theta, ReductionMode mode) {
        const ReciprocityContext& ctx = p.f->ctx;
        return reduced_verification(ctx.spectrum(), ctx.tautological().functor, ctx.h0().functor, theta, p.rs, mode,
                                    &ctx.functor());
    };
    for (const Prepared& p : prep)
        for (ReductionMode mode : {ReductionMode::Prime, ReductionMode::PrimePower}) {
            ReducedVerdict v = verdict(p, p.m.morphism, mode);
            t.check(v.consistent, p.f->name + " unmutated");
        }
    std::mt19937_64 rng(99);
    int mutations = 0;
    while (mutations < 100) {
        const Prepared& p = prep[std::uniform_int_distribution<size_t>(0, prep.size() - 1)(rng)];
        std::vector<int> nontrivial;
        for (const auto& [pair, f] : p.m.morphism.components)
            if (f.domain().ngens() > 0) nontrivial.push_back(pair);
        if (nontrivial.empty()) continue;
        int pair = nontrivial[std::uniform_int_distribution<size_t>(0, nontrivial.size() - 1)(rng)];
        FunctorMorphism bad = p.m.morphism;
        const AbHom& f = bad.components.at(pair);
        int col = std::uniform_int_distribution<int>(0, f.domain().ngens() - 1)(rng);
        std::vector<Vec> images;
        for (int j = 0; j < f.domain().ngens(); ++j)
            images.push_back(j == col ? Vec(f.codomain().ngens(), 0) : f.image_of_gen(j));
        bad.components[pair] = AbHom::from_images(f.domain(), f.codomain(), images);
        ReductionMode mode = mutations % 2 ? ReductionMode::PrimePower : ReductionMode::Prime;
        ReducedVerdict v = verdict(p, bad, mode);
        std::string where = p.f->name + " mutation " + std::to_string(mutations) + " at " +
                            p.f->ctx.spectrum().label(pair);
        t.check(v.consistent, where + " inconsistent");
        bool hyp = !v.hypotheses.ok(), full = !v.full.ok();
        t.check(hyp || full, where + " not caught");
        by_hypotheses += hyp;
        by_full += full;
        ++mutations;
    }
    std::ostringstream os;
    os << fs.size() << " fixtures, 100 mutations, caught by hypotheses " << by_hypotheses << ", by full check " << by_full;
    return t.outcome(os.str());
}

Outcome lattice_properties() {
    Tally t;
    long assignments = 0;
    for (const auto& g : catalog()) {
        auto sys = full_system(g);
        AbelianizationSystem rs = AbelianizationSystem::commutators(*sys);
        RicFunctor pi = abelianization_functor(rs).functor;
        for (int h : sys->base()) {
            NormAssignment a = norm_assignment(pi, h, r_lattice(*sys, h, rs.r(h)));
            t.report(lattice_property_check(*sys, a), g->name() + " pi at " + sys->label(h));
            ++assignments;
        }
    }
    for (int n = 1; n <= 16; ++n) {
        GroupPtr g = cyclic_group(n);
        auto sys = full_system(g);
        RicFunctor z = trivial_z(g, sys);
        for (int h : sys->base()) {
            NormAssignment a = norm_assignment(z, h, r_lattice(*sys, h, Subgroup::trivial(g)));
            t.report(lattice_property_check(*sys, a), g->name() + " trivial Z at " + sys->label(h));
            ++assignments;
        }
    }
    return t.outcome(std::to_string(assignments) + " norm assignments");
}

Outcome hrv_roundtrips() {
    Tally t;
    long samples = 0, skipped = 0;
    std::mt19937_64 rng(11);
    for (Int p : {2, 3})
        for (int n = 1; n <= 3; ++n) {
            FieldPtr f = make_field(p, n, Vec(n, -6), Vec(n, 6));
            std::string where = "F" + std::to_string(p) + " rank " + std::to_string(n);
            SampleReport rt = stack_roundtrip(f, 1000, rng);
            t.report(rt.report, where + " roundtrip");
            SampleReport ax = valuation_axiom_sampler(Valuation::standard(f), 1000, rng);
            t.report(ax.report, where + " axioms");
            samples += rt.samples + ax.samples;
            skipped += rt.skipped + ax.skipped;
            Valuation v = Valuation::standard(f);
            for (int i = 0; i < n; ++i) {
                Vec e(n, 0);
                e[i] = 1;
                t.check(v(LaurentElement::variable(f, i)) == RloVec(e), where + " v(T" + std::to_string(i + 1) + ")");
            }
        }
    return t.outcome(std::to_string(samples) + " samples, " + std::to_string(skipped) + " skipped");
}

Outcome determinism(const std::string& fixtures) {
    Tally t;
    struct Run {
        const char* file;
        ScenarioResult (*fn)(const Json&, const ScenarioOptions&);
        ScenarioOptions opt;
    };
    std::vector<Run> runs{{"c2.json", run_cft_scenario, {}},
                          {"c4.json", run_cft_scenario, {0, true}},
                          {"v4_projection.json", run_cft_scenario, {}},
                          {"negation.json", run_cft_scenario, {}},
                          {"s3_group.json", run_group_report, {7, false}},
                          {"s3_mackey.json", run_mackey_check, {3, false}},
                          {"hrv_f2.json", run_hrv_eval, {5, false}},
                          {"hrv_wrong_uniformizer.json", run_hrv_eval, {5, false}}};
    for (const Run& r : runs) {
        Json input = load_json_file(fixtures + "/" + r.file);
        std::string a = render_json(r.fn(input, r.opt).report) + render_text(r.fn(input, r.opt).report);
        std::string b = render_json(r.fn(input, r.opt).report) + render_text(r.fn(input, r.opt).report);
        t.check(a == b, r.file);
    }
    return t.outcome();
}

}  // namespace

int main(int argc, char** argv) {
    std::string fixtures = argc > 1 ? argv[1] : "fixtures";
    struct Criterion {
        int id;
        const char* name;
        double limit;  // seconds, 0 for none
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria{
        {1, "transfer laws", 60, transfer_laws},
        {2, "Mackey and cohomological suite", 120, mackey_suite},
        {3, "adjunction and descent", 0, adjunction},
        {4, "ramification degree laws", 0, degree_laws},
        {5, "Frobenius group law", 0, frobenius_law},
        {6, "Tate oracle equivalence", 0, tate_oracle},
        {7, "unramified reciprocity", 10, unramified_reciprocity},
        {8, "full reciprocity properties", 0, full_reciprocity},
        {9, "reduction consistency", 0, reduction_consistency},
        {10, "lattice properties", 0, lattice_properties},
        {11, "valuation roundtrips", 30, hrv_roundtrips},
        {12, "deterministic reports", 0, [&] { return determinism(fixtures); }},
    };
    bool all = true;
    for (const Criterion& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = c.limit == 0 || secs < c.limit;
        bool pass = o.pass && in_time;
        all = all && pass;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2fs%s", secs, in_time ? "" : " over the time limit");
        std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << " " << c.name << ": " << o.detail
                  << " (" << timing << ")" << std::endl;
    }
    return all ? 0 : 1;
}
