#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "cftengine/catalog.hpp"
#include "support.hpp"

using namespace cfe;
using cfe::test::gen;
using cfe::test::perm_element;

TEST_CASE("catalog") {
    const auto& cat = catalog();
    CHECK(cat.size() == 43);
    std::map<int, int> per_order;
    for (const auto& g : cat) per_order[g->order()]++;
    // numbers of groups of order 1..16 (plus S4 at 24)
    std::map<int, int> expected{{1, 1}, {2, 1},  {3, 1},  {4, 2},  {5, 1},  {6, 2},  {7, 1},  {8, 5}, {9, 2},
                                {10, 2}, {11, 1}, {12, 5}, {13, 1}, {14, 2}, {15, 1}, {16, 14}, {24, 1}};
    CHECK(per_order == expected);
    for (const auto& g : cat) {
        CAPTURE(g->name());
        auto t = g->table();
        for (int a = 0; a < g->order(); ++a)
            for (int b = 0; b < g->order(); ++b)
                for (int c = 0; c < g->order(); c += 3) CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
    }
    CHECK_THROWS(catalog_group("nope"));
}

TEST_CASE("tables are validated") {
    // Z/3 with a broken entry
    std::vector<std::vector<int>> t{{0, 1, 2}, {1, 2, 0}, {2, 0, 0}};
    CHECK_THROWS(FiniteGroup::from_table(t));
}

TEST_CASE("right transversal examples") {
    GroupPtr s3 = symmetric_group(3);
    Subgroup a3 = gen(s3, {perm_element(s3, {1, 2, 0})});
    Transversal t = right_transversal(Subgroup::whole(s3), a3);
    CHECK(t.reps.size() == 2);
    CHECK(t.reps[0] == 0);
    CHECK(is_transversal(Subgroup::whole(s3), a3, t.reps, Side::Right));

    GroupPtr c4 = cyclic_group(4);
    Transversal t4 = right_transversal(Subgroup::whole(c4), gen(c4, {2}));
    CHECK(t4.reps == std::vector<int>{0, 1});

    Transversal tw = right_transversal(Subgroup::whole(s3), Subgroup::whole(s3));
    CHECK(tw.reps == std::vector<int>{0});
}

TEST_CASE("t_remover and t_permutation on C4") {
    GroupPtr c4 = cyclic_group(4);
    Subgroup h = gen(c4, {2});
    Transversal t = transversal_from_reps(Subgroup::whole(c4), h, {0, 1});
    CHECK(t_remover(t, 3) == 2);
    for (int x : h.elements()) CHECK(t_remover(t, x) == x);
    for (int r : t.reps) CHECK(t_remover(t, r) == 0);
    CHECK(t_permutation(t, 1) == std::vector<int>{1, 0});
    CHECK(t_permutation(t, 0) == std::vector<int>{0, 1});
}

TEST_CASE("kappa/sigma law and composition order, exhaustively") {
    for (const auto& g : catalog()) {
        if (g->order() > 16) continue;
        CAPTURE(g->name());
        SubgroupLattice lat(g);
        Subgroup whole = Subgroup::whole(g);
        std::mt19937_64 rng(g->order());
        for (const Subgroup& h : lat.all()) {
            Transversal t = random_right_transversal(whole, h, rng);
            REQUIRE(is_transversal(whole, h, t.reps, Side::Right));
            // partition law
            std::vector<int> hit(g->order(), 0);
            for (int r : t.reps)
                for (int x : h.elements()) hit[g->mul(x, r)]++;
            CHECK(std::all_of(hit.begin(), hit.end(), [](int c) { return c == 1; }));
            for (int x = 0; x < g->order(); ++x) {
                auto sx = t_permutation(t, x);
                for (size_t i = 0; i < t.reps.size(); ++i) {
                    int tg = g->mul(t.reps[i], x);
                    CHECK(h.contains(t_remover(t, tg)));
                    CHECK(tg == g->mul(t_remover(t, tg), t.reps[sx[i]]));
                }
                for (int y = 0; y < g->order(); y += 2) {
                    auto sy = t_permutation(t, y);
                    auto sxy = t_permutation(t, g->mul(x, y));
                    for (size_t i = 0; i < t.reps.size(); ++i) CHECK(sxy[i] == sy[sx[i]]);
                }
            }
        }
    }
}

TEST_CASE("double cosets") {
    GroupPtr s3 = symmetric_group(3);
    Subgroup u = gen(s3, {perm_element(s3, {1, 0, 2})});
    CHECK(double_coset_reps(Subgroup::whole(s3), u, u).size() == 2);
    CHECK(double_coset_reps(Subgroup::whole(s3), Subgroup::whole(s3), u) == std::vector<int>{0});

    GroupPtr c6 = catalog_group("C6xC2");
    SubgroupLattice lat(c6);
    for (const Subgroup& a : lat.all())
        for (const Subgroup& b : lat.all()) {
            auto r = double_coset_reps(Subgroup::whole(c6), a, b);
            CHECK(static_cast<int>(r.size()) == a.join(b).index_in(Subgroup::whole(c6)));
        }
    CHECK_FALSE(is_double_coset_reps(Subgroup::whole(s3), u, u, {0}));
}

TEST_CASE("double coset lift") {
    GroupPtr s3 = symmetric_group(3);
    Subgroup whole = Subgroup::whole(s3);
    Subgroup a3 = gen(s3, {perm_element(s3, {1, 2, 0})});
    Subgroup v = gen(s3, {perm_element(s3, {1, 0, 2})});
    auto r = double_coset_reps(whole, a3, v);
    REQUIRE(r == std::vector<int>{0});
    Transversal t = lift_double_coset_transversal(whole, a3, v, r, {v.elements()});
    CHECK(t.reps.size() == 2);

    GroupPtr c4 = cyclic_group(4);
    Transversal t4 = lift_double_coset_transversal(Subgroup::whole(c4), gen(c4, {2}), Subgroup::whole(c4), {0}, {{0, 1}});
    CHECK(t4.reps.size() == 2);

    Transversal te = lift_double_coset_transversal(whole, whole, v, {0}, {{0}});
    CHECK(te.reps == std::vector<int>{0});
    CHECK_THROWS_AS(lift_double_coset_transversal(whole, a3, v, {0, 1}, {{0}, {0}}), InvalidReps);

    // exhaustive: lifts always pass the validator
    for (const char* name : {"S3", "D4", "Q8", "A4", "D6"}) {
        GroupPtr g = catalog_group(name);
        SubgroupLattice lat(g);
        Subgroup w = Subgroup::whole(g);
        for (const Subgroup& uu : lat.all())
            for (const Subgroup& vv : lat.all()) {
                auto rr = double_coset_reps(w, uu, vv);
                std::vector<std::vector<int>> trs;
                for (int rho : rr) trs.push_back(right_transversal(vv, uu.conjugate(g->inv(rho)).intersect(vv)).reps);
                Transversal lt = lift_double_coset_transversal(w, uu, vv, rr, trs);
                CHECK(is_transversal(w, uu, lt.reps, Side::Right));
            }
    }
}

TEST_CASE("normal core") {
    GroupPtr s3 = symmetric_group(3);
    Subgroup a3 = gen(s3, {perm_element(s3, {1, 2, 0})});
    Subgroup u = gen(s3, {perm_element(s3, {1, 0, 2})});
    CHECK(normal_core(a3) == a3);
    CHECK(normal_core(u) == Subgroup::trivial(s3));
    CHECK(normal_core(Subgroup::whole(s3)) == Subgroup::whole(s3));
    for (const auto& g : catalog()) {
        SubgroupLattice lat(g);
        for (const Subgroup& h : lat.all()) {
            Subgroup c = normal_core(h);
            CHECK(c.is_normal_in(Subgroup::whole(g)));
            CHECK(h.contains(c));
            Subgroup inter = Subgroup::whole(g);
            for (int x = 0; x < g->order(); ++x) inter = inter.intersect(h.conjugate(x));
            CHECK(inter == c);
        }
    }
}

TEST_CASE("abelianization") {
    CHECK(abelianization(Subgroup::whole(symmetric_group(3))).group() == FgAbGroup::cyclic(2));
    CHECK(abelianization(Subgroup::whole(catalog_group("Q8"))).group() == FgAbGroup(0, {2, 2}));
    CHECK(abelianization(Subgroup::whole(catalog_group("C4xC2"))).group() == FgAbGroup(0, {2, 4}));
    for (const auto& g : catalog()) {
        AbelianQuotient q = abelianization(Subgroup::whole(g));
        CHECK(*q.group().order() * q.kernel().order() == g->order());
        for (int a = 0; a < g->order(); ++a) {
            for (int b = 0; b < g->order(); ++b) {
                CHECK(q(g->commutator(a, b)) == q.group().zero());
                CHECK(q(g->mul(a, b)) == q.group().add(q(a), q(b)));
            }
        }
        for (int i = 0; i < q.group().ngens(); ++i) CHECK(q(q.lift_gen(i)) == q.group().gen(i));
    }
}

TEST_CASE("subgroup lattice") {
    GroupPtr s4 = symmetric_group(4);
    SubgroupLattice lat(s4);
    CHECK(lat.size() == 30);
    CHECK(lat[lat.trivial()].order() == 1);
    CHECK(lat[lat.whole()].order() == 24);
    for (int id = 0; id < lat.size(); ++id)
        for (int x = 0; x < 24; ++x) CHECK(lat[lat.conj(x, id)] == lat[id].conjugate(x));
}
