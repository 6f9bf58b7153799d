#include "cftengine/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cftengine/catalog.hpp"

namespace cfe {

namespace {

const Json& req(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw InputError(where + " must be an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError("missing required key '" + key + "' in " + where);
    return *it;
}

template <class T>
T get_or(const Json& j, const std::string& key, T fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : it->get<T>();
}

Json vec_json(const Vec& v) { return Json(v); }

Json hom_json(const AbHom& f) {
    Json cols = Json::array();
    for (int j = 0; j < f.domain().ngens(); ++j) cols.push_back(vec_json(f.image_of_gen(j)));
    return cols;
}

// parse errors raised by the library constructors are input errors
template <class F>
auto parsing(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const Json::exception& e) {
        throw InputError(where + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(where + ": " + e.what());
    }
}

void collect(Json& checks, bool& pass, const Report& r, const std::string& prefix = "") {
    for (const Check& c : r.checks) {
        checks.push_back({{"name", prefix + c.name}, {"status", c.pass ? "pass" : "fail"}, {"witness", c.witness}});
        pass = pass && c.pass;
    }
}

std::shared_ptr<const SubgroupSystem> full_system_of(const GroupPtr& g) {
    return std::make_shared<const SubgroupSystem>(SubgroupSystem::full(make_lattice(g)));
}

FgAbGroup parse_abelian(const Json& j, const std::string& where) {
    int free_rank = get_or<int>(j, "free_rank", 0);
    std::vector<Int> torsion = get_or<std::vector<Int>>(j, "torsion", {});
    return parsing(where, [&] { return FgAbGroup(free_rank, torsion); });
}

Json finish(Json report, bool pass) {
    report["status"] = pass ? "pass" : "fail";
    return report;
}

}  // namespace

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_json_text(ss.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

GroupPtr parse_group(const Json& j) {
    return parsing("group", [&]() -> GroupPtr {
        if (j.is_string()) return catalog_group(j.get<std::string>());
        if (!j.is_object()) throw InputError("group must be a catalog name or an object");
        if (j.contains("catalog")) return catalog_group(j["catalog"].get<std::string>());
        if (j.contains("cyclic")) return cyclic_group(j["cyclic"].get<int>());
        std::string name = get_or<std::string>(j, "name", "");
        if (j.contains("permutations")) {
            const Json& p = j["permutations"];
            return FiniteGroup::from_permutations(req(p, "degree", "permutations").get<int>(),
                                                  req(p, "generators", "permutations").get<std::vector<std::vector<int>>>(),
                                                  name);
        }
        if (j.contains("table")) return FiniteGroup::from_table(j["table"].get<std::vector<std::vector<int>>>(), name);
        throw InputError("group needs one of 'catalog', 'cyclic', 'permutations', 'table'");
    });
}

int parse_element(const GroupPtr& g, const Json& j) {
    if (j.is_number_integer()) {
        int x = j.get<int>();
        if (x < 0 || x >= g->order()) throw InputError("element " + std::to_string(x) + " out of range");
        return x;
    }
    if (j.is_array()) {
        auto perm = j.get<std::vector<int>>();
        const auto& ps = g->permutations();
        auto it = std::find(ps.begin(), ps.end(), perm);
        if (it == ps.end()) throw InputError("permutation " + j.dump() + " is not in the group");
        return static_cast<int>(it - ps.begin());
    }
    throw InputError("element must be an index or a permutation");
}

Subgroup parse_subgroup(const GroupPtr& g, const Json& j) {
    std::vector<int> gens;
    for (const Json& x : req(j, "generators", "subgroup")) gens.push_back(parse_element(g, x));
    return Subgroup::generated(g, gens);
}

GModule parse_module(const GroupPtr& g, const Json& j) {
    return parsing("module", [&]() -> GModule {
        if (j.is_string()) {
            std::string s = j.get<std::string>();
            if (s == "trivial_z") return GModule::trivial(g, FgAbGroup::integers());
            if (s == "negation") return GModule::negation(g);
            throw InputError("unknown module '" + s + "'");
        }
        std::string kind = req(j, "kind", "module").get<std::string>();
        if (kind == "trivial") return GModule::trivial(g, parse_abelian(j, "module"));
        if (kind == "permutation") {
            Subgroup h = parse_subgroup(g, req(j, "subgroup", "module"));
            return GModule::permutation(g, h, get_or<Int>(j, "modulus", 0));
        }
        if (kind == "explicit") {
            FgAbGroup a = parse_abelian(j, "module");
            std::vector<std::pair<int, Mat>> images;
            for (const Json& act : req(j, "action", "module"))
                images.emplace_back(parse_element(g, req(act, "element", "action")),
                                    Mat::from_rows(req(act, "matrix", "action").get<std::vector<Vec>>(), a.ngens()));
            return GModule(g, a, images, get_or<std::string>(j, "name", ""));
        }
        throw InputError("unknown module kind '" + kind + "'");
    });
}

FieldPtr parse_field(const Json& j) {
    return parsing("field", [&] {
        Int p = req(j, "p", "field").get<Int>();
        int rank = req(j, "rank", "field").get<int>();
        Vec lo(rank, -8), hi(rank, 8);
        if (j.contains("window")) {
            lo = req(j["window"], "lo", "window").get<Vec>();
            hi = req(j["window"], "hi", "window").get<Vec>();
        }
        return make_field(p, rank, lo, hi);
    });
}

LaurentElement parse_element_support(const FieldPtr& f, const Json& support) {
    return parsing("support", [&] {
        std::vector<std::pair<Vec, Int>> terms;
        for (const Json& t : support) terms.emplace_back(req(t, "exp", "term").get<Vec>(), req(t, "coeff", "term").get<Int>());
        try {
            return LaurentElement(f, terms);
        } catch (const WindowOverflow& e) {
            throw InputError(e.what());
        }
    });
}

Json report_json(const Report& r) {
    Json checks = Json::array();
    bool pass = true;
    collect(checks, pass, r);
    return checks;
}

Json element_json(const LaurentElement& x) {
    Json support = Json::array();
    for (const auto& [e, c] : x.terms()) support.push_back({{"exp", e.c}, {"coeff", c}});
    const LaurentField& f = *x.field();
    return {{"p", f.p()}, {"rank", f.rank()}, {"window", {{"lo", f.lo()}, {"hi", f.hi()}}}, {"support", support},
            {"exact", x.exact()}};
}

ScenarioResult run_group_report(const Json& input, const ScenarioOptions& opt) {
    GroupPtr g = parse_group(req(input, "group", "input"));
    auto sys = full_system_of(g);
    const SubgroupLattice& lat = *sys->lattice();
    Subgroup whole = Subgroup::whole(g);

    std::vector<int> targets;
    if (input.contains("subgroups")) {
        for (const Json& s : input["subgroups"]) targets.push_back(lat.id_of(parsing("subgroup", [&] { return parse_subgroup(g, s); })));
    } else {
        for (int id = 0; id < lat.size(); ++id) targets.push_back(id);
    }

    Json report;
    report["kind"] = "group";
    report["group"] = {{"name", g->name()}, {"order", g->order()}, {"abelian", g->is_abelian()}};
    AbelianQuotient ab = abelianization(whole);
    report["abelianization"] = ab.group().str();

    std::map<int, int> by_order;
    int normal = 0;
    for (int id = 0; id < lat.size(); ++id) {
        ++by_order[lat[id].order()];
        if (lat[id].is_normal_in(whole)) ++normal;
    }
    Json orders = Json::array();
    for (auto [o, n] : by_order) orders.push_back({{"order", o}, {"count", n}});
    report["lattice"] = {{"subgroups", lat.size()}, {"normal", normal}, {"orders", orders}};

    std::mt19937_64 rng(opt.seed);
    Json checks = Json::array(), tables = Json::array();
    bool pass = true;
    Subgroup r_whole = ab.kernel();
    for (int id : targets) {
        const Subgroup& h = lat[id];
        AbelianQuotient abh = abelianization(h);
        TransferMap ver(whole, h, abh.kernel(), r_whole);
        Json rows = Json::array();
        for (int i = 0; i < ab.group().ngens(); ++i) {
            int x = ab.lift_gen(i);
            rows.push_back({{"generator", x}, {"image", abh(ver(x))}});
        }
        tables.push_back({{"subgroup", sys->label(id)}, {"index", g->order() / h.order()}, {"target", abh.group().str()},
                          {"table", rows}});

        Verdict mult, indep, lambda;
        for (int a = 0; a < g->order(); ++a)
            for (int b = 0; b < g->order(); ++b)
                if (ver(g->mul(a, b)) != coset_rep(abh.kernel(), h.group()->mul(ver(a), ver(b))))
                    mult.fail("(" + std::to_string(a) + "," + std::to_string(b) + ")");
        for (int trial = 0; trial < 3; ++trial) {
            Transversal t = random_right_transversal(whole, h, rng);
            for (int x = 0; x < g->order(); ++x)
                if (ver.with_transversal(t, x) != ver(x)) indep.fail("element " + std::to_string(x));
        }
        for (int x = 0; x < g->order(); ++x) {
            std::vector<int> reps = double_coset_reps(whole, h, Subgroup::generated(g, {x}));
            if (abh(transfer_via_lambda(whole, h, abh.kernel(), x, reps)) != abh(ver(x)))
                lambda.fail("element " + std::to_string(x));
        }
        std::string tag = "transfer." + sys->label(id) + ".";
        Report r;
        mult.into(r, tag + "multiplicative");
        indep.into(r, tag + "transversal_independent");
        lambda.into(r, tag + "matches_lambda_formula");
        collect(checks, pass, r);
    }
    report["transfers"] = tables;
    report["checks"] = checks;
    return {finish(report, pass), pass};
}

ScenarioResult run_mackey_check(const Json& input, const ScenarioOptions& opt) {
    GroupPtr g = parse_group(req(input, "group", "input"));
    auto sys = full_system_of(g);
    std::mt19937_64 rng(opt.seed);

    std::vector<GModule> modules;
    Json specs = input.contains("modules") ? input["modules"] : Json::array({"trivial_z"});
    for (const Json& m : specs) {
        if (m.is_object() && m.value("kind", "") == "random") {
            int count = get_or<int>(m, "count", 3);
            for (int k = 0; k < count; ++k) modules.push_back(GModule::random(g, *sys->lattice(), rng));
        } else {
            modules.push_back(parse_module(g, m));
        }
    }

    Json report, checks = Json::array(), functors = Json::array();
    report["kind"] = "mackey";
    report["group"] = g->name();
    bool pass = true;
    auto run_functor = [&](const RicFunctor& f, const std::string& tag) {
        collect(checks, pass, validate_ric_functor(f), tag + "ric.");
        collect(checks, pass, check_stability(f), tag + "stability.");
        collect(checks, pass, check_mackey_formula(f), tag + "mackey_formula.");
        collect(checks, pass, check_cohomological(f), tag + "cohomological.");
    };
    if (get_or<bool>(input, "abelianization", true)) {
        AbelianizationSystem rs = AbelianizationSystem::commutators(*sys);
        run_functor(abelianization_functor(rs).functor, "abelianization.");
        functors.push_back("abelianization");
    }
    std::vector<int> basis = normal_basis(*sys);
    for (size_t k = 0; k < modules.size(); ++k) {
        const GModule& m = modules[k];
        std::string tag = "module" + std::to_string(k) + ".";
        FixedPointFunctor fp = fixed_point_functor(m, sys);
        run_functor(fp.functor, tag);
        collect(checks, pass, check_fixed_point_ind_independence(m, fp, rng), tag + "ind_independence.");
        AdjunctionResult adj = adjunction_for_module(m, sys, basis);
        Report eps;
        eps.add("epsilon_iso", adj.epsilon_iso);
        collect(checks, pass, eps, tag + "adjunction.");
        collect(checks, pass, adj.eta_report, tag + "adjunction.eta.");
        collect(checks, pass, adj.identities, tag + "adjunction.identities.");
        functors.push_back({{"module", m.name()}, {"value", m.module().str()}});
    }
    report["functors"] = functors;
    report["checks"] = checks;
    return {finish(report, pass), pass};
}

namespace {

struct CftScenario {
    GroupPtr group;
    std::shared_ptr<const SubgroupSystem> sys;
    std::optional<RamificationDatum> datum;
    RicFunctor functor;
    Json valuation;
    ReductionMode mode = ReductionMode::Prime;
};

CftScenario parse_cft(const Json& input) {
    CftScenario s;
    s.group = parse_group(req(input, "group", "input"));
    const Json& ram = req(input, "ramification", "input");
    s.datum = parsing("ramification", [&] {
        if (get_or<bool>(ram, "injective_cyclic", false)) return RamificationDatum::injective_cyclic(s.group);
        std::set<Int> primes;
        if (ram.contains("primes")) primes = ram["primes"].get<std::set<Int>>();
        return RamificationDatum(s.group, req(ram, "modulus", "ramification").get<Int>(),
                                 req(ram, "images", "ramification").get<std::vector<Int>>(), primes);
    });
    std::string system = get_or<std::string>(input, "system", "full");
    LatticePtr lat = make_lattice(s.group);
    if (system == "full") {
        s.sys = std::make_shared<const SubgroupSystem>(SubgroupSystem::full(lat));
    } else if (system == "containing_inertia") {
        Subgroup inertia = s.datum->inertia(Subgroup::whole(s.group));
        s.sys = std::make_shared<const SubgroupSystem>(
            SubgroupSystem::filtered(lat, [&](const Subgroup& h) { return h.contains(inertia); }));
    } else {
        throw InputError("unknown system '" + system + "'");
    }
    const Json& fn = req(input, "functor", "input");
    GModule m = parse_module(s.group, req(fn, "fixed_points", "functor"));
    s.functor = parsing("functor", [&] { return fixed_point_functor(m, s.sys).functor; });
    s.valuation = req(input, "valuation", "input");
    req(s.valuation, "omega", "valuation");
    req(s.valuation, "components", "valuation");
    std::string mode = get_or<std::string>(input, "reduction", "prime");
    if (mode == "prime_power") s.mode = ReductionMode::PrimePower;
    else if (mode != "prime") throw InputError("unknown reduction mode '" + mode + "'");
    return s;
}

ValuationFamily build_valuation(const CftScenario& s) {
    const Json& j = s.valuation;
    FgAbGroup omega = FgAbGroup::cyclic(get_or<Int>(j["omega"], "modulus", 0));
    const Json& comp = j["components"];
    ValuationFamily v{omega, {}};
    if (comp.is_string()) {
        std::string kind = comp.get<std::string>();
        for (int h : s.sys->base()) {
            const FgAbGroup& a = s.functor.value(h);
            if (kind == "zero") {
                v.components.emplace(h, AbHom::zero(a, omega));
            } else if (kind == "identity") {
                if (!(a == omega)) throw InputError("identity valuation needs C(H) = Omega at " + s.sys->label(h));
                v.components.emplace(h, AbHom::identity(a));
            } else {
                throw InputError("unknown valuation components '" + kind + "'");
            }
        }
        return v;
    }
    auto images = req(comp, "induce_from_top", "components").get<std::vector<Vec>>();
    int top = s.sys->lattice()->whole();
    AbHom vtop = parsing("valuation", [&] { return AbHom::from_images(s.functor.value(top), omega, images); });
    return induce_valuation_family(s.functor, *s.datum, vtop);
}

Json table_json(const Spectrum& sp, const ReciprocityTable& t) {
    Json j = {{"pair", sp.label(t.pair)},
              {"source", t.source.str()},
              {"target", t.target.str()},
              {"images", hom_json(t.map)},
              {"well_defined", t.well_defined},
              {"is_iso", t.is_iso},
              {"lift_independent", t.lift_independent},
              {"prime_independent", t.prime_independent},
              {"multiplicative", t.multiplicative},
              {"lifts_checked", t.lifts_checked},
              {"lifts_skipped", t.lifts_skipped}};
    j["matches_unramified"] = t.matches_unramified ? Json(*t.matches_unramified) : Json(nullptr);
    if (!t.witness.empty()) j["witness"] = t.witness;
    return j;
}

}  // namespace

ScenarioResult run_cft_scenario(const Json& input, const ScenarioOptions& opt) {
    CftScenario s = parse_cft(input);
    Json report, checks = Json::array(), info = Json::array();
    report["kind"] = "cft";
    report["group"] = s.group->name();
    bool pass = true, info_pass = true;

    ValuationFamily v;
    try {
        v = build_valuation(s);
    } catch (const ImageMismatch& e) {
        Report r;
        r.add("valuation.induce", false, e.what());
        collect(checks, pass, r);
        report["checks"] = checks;
        return {finish(report, false), false};
    }

    ReciprocityContext ctx(s.functor, v, *s.datum);
    const Spectrum& sp = ctx.spectrum();
    report["spectrum"] = {{"pairs", sp.size()}};
    collect(checks, pass, ctx.urfnd(), "urfnd.");
    const FndValidation& fnd = ctx.validation();
    collect(checks, pass, fnd.required, "fnd.");
    collect(info, info_pass, fnd.fesenko, "fesenko.");

    if (!fnd.ok()) {
        report["upsilon"] = "skipped: the data did not pass FND validation";
    } else {
        UpsilonMorphism m = ctx.upsilon_morphism();
        collect(checks, pass, m.report, "upsilon.");
        Json tables = Json::array();
        for (const ReciprocityTable& t : m.tables) tables.push_back(table_json(sp, t));
        report["tables"] = tables;

        AbelianizationSystem rs = AbelianizationSystem::commutators(*s.sys);
        ReducedVerdict rv = reduced_verification(sp, ctx.tautological().functor, ctx.h0().functor, m.morphism, rs,
                                                 s.mode, &ctx.functor());
        collect(checks, pass, rv.hypotheses, "reduction.hypotheses.");
        collect(checks, pass, rv.reduced, "reduction.reduced.");
        collect(checks, pass, rv.full, "reduction.full.");
        Report cons;
        cons.add("consistent", rv.consistent);
        collect(checks, pass, cons, "reduction.");
    }

    if (opt.certify) {
        Verdict h0, hm1;
        int compared = 0, skipped = 0;
        for (const SpectrumPair& p : sp.pairs()) {
            if (p.h == p.u) continue;
            auto b0 = brute_tate_h0(s.functor, p.h, p.u);
            auto b1 = brute_tate_hminus1(s.functor, p.h, p.u);
            if (!b0 || !b1) {
                ++skipped;
                continue;
            }
            ++compared;
            std::string w = s.sys->label(p.h) + "/" + s.sys->label(p.u);
            if (*b0 != signature(tate_h0(s.functor, p.h, p.u).group)) h0.fail(w);
            if (*b1 != signature(tate_hminus1(s.functor, p.h, p.u))) hm1.fail(w);
        }
        Report r;
        h0.into(r, "tate_oracle.h0");
        hm1.into(r, "tate_oracle.hminus1");
        collect(checks, pass, r, "certify.");
        report["certify"] = {{"compared", compared}, {"skipped", skipped}};
        collect(info, info_pass, check_class_field_axiom(s.functor, sp), "class_field_axiom.");
        collect(info, info_pass, check_hilbert90(s.functor, sp), "hilbert90.");
    }
    report["checks"] = checks;
    report["informational"] = info;
    return {finish(report, pass), pass};
}

ScenarioResult run_hrv_eval(const Json& input, const ScenarioOptions& opt) {
    FieldPtr f = parse_field(input);
    std::vector<std::pair<std::string, LaurentElement>> elements;
    if (input.contains("support")) elements.emplace_back("x", parse_element_support(f, input["support"]));
    if (input.contains("elements"))
        for (const Json& e : input["elements"])
            elements.emplace_back(req(e, "name", "element").get<std::string>(),
                                  parse_element_support(f, req(e, "support", "element")));
    Json tasks = input.value("tasks", Json::object());
    std::vector<int> projections = get_or<std::vector<int>>(tasks, "project", {});
    for (int r : projections)
        if (r < 0 || r > f->rank()) throw InputError("projection rank " + std::to_string(r) + " out of range");
    std::optional<LaurentElement> uniformizer;
    if (tasks.contains("roundtrip") && tasks["roundtrip"].contains("uniformizer"))
        uniformizer = parse_element_support(f, tasks["roundtrip"]["uniformizer"]);

    std::mt19937_64 rng(opt.seed);
    Valuation v = Valuation::standard(f);
    Json report, checks = Json::array(), values = Json::array();
    report["kind"] = "hrv";
    report["field"] = {{"p", f->p()}, {"rank", f->rank()}, {"window", {{"lo", f->lo()}, {"hi", f->hi()}}}};
    bool pass = true;

    Report valued;
    for (const auto& [name, x] : elements) {
        Json e = {{"name", name}, {"element", x.str()}};
        try {
            e["value"] = v(x).c;
            Json proj = Json::object();
            for (int r : projections) proj[std::to_string(r)] = v.project(r)(x).c;
            if (!projections.empty()) e["projections"] = proj;
            valued.add("value." + name, true);
        } catch (const ZeroValuation& err) {
            e["error"] = std::string("ZeroValuation: ") + err.what();
            valued.add("value." + name, false, e["error"].get<std::string>());
        }
        values.push_back(e);
    }
    collect(checks, pass, valued);
    report["elements"] = values;

    if (tasks.contains("roundtrip")) {
        int samples = get_or<int>(tasks["roundtrip"], "samples", 1000);
        SampleReport s = stack_roundtrip(f, samples, rng, uniformizer);
        collect(checks, pass, s.report, "roundtrip.");
        report["roundtrip"] = {{"samples", s.samples}, {"skipped", s.skipped}, {"pass", s.report.ok()}};
    }
    if (tasks.contains("axioms")) {
        int samples = get_or<int>(tasks["axioms"], "samples", 1000);
        SampleReport s = valuation_axiom_sampler(v, samples, rng);
        collect(checks, pass, s.report, "axioms.");
        report["axioms"] = {{"samples", s.samples}, {"skipped", s.skipped}, {"pass", s.report.ok()}};
    }
    report["checks"] = checks;
    return {finish(report, pass), pass};
}

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

std::string render_text(const Json& report) {
    std::ostringstream out;
    size_t width = 0;
    for (const char* key : {"checks", "informational"})
        if (report.contains(key))
            for (const Json& c : report[key]) width = std::max(width, c["name"].get<std::string>().size());
    for (auto it = report.begin(); it != report.end(); ++it) {
        if (it.key() == "checks" || it.key() == "informational") continue;
        out << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
    }
    for (const char* key : {"checks", "informational"}) {
        if (!report.contains(key) || report[key].empty()) continue;
        out << key << ":\n";
        for (const Json& c : report[key]) {
            std::string name = c["name"].get<std::string>();
            out << "  " << name << std::string(width - name.size() + 2, ' ') << c["status"].get<std::string>();
            std::string w = c["witness"].get<std::string>();
            if (!w.empty()) out << "  " << w;
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace cfe
