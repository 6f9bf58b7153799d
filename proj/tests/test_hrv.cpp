#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cftengine/hrv.hpp"

using namespace cfe;

namespace {

FieldPtr field(Int p, int n, Int bound = 6) { return make_field(p, n, Vec(n, -bound), Vec(n, bound)); }

LaurentElement var(const FieldPtr& f, int i) { return LaurentElement::variable(f, i); }
LaurentElement one(const FieldPtr& f) { return LaurentElement::constant(f, 1); }

}  // namespace

TEST_CASE("rlo order") {
    CHECK(RloVec({1, 0}) < RloVec({0, 1}));
    CHECK(RloVec({5, -1}) < RloVec({-5, 0}));
    CHECK(rlo_compare(RloVec({2, 3}), RloVec({2, 3})) == 0);
    CHECK(rlo_compare(RloVec({0, 1}), RloVec({1, 0})) == 1);
    CHECK_THROWS_AS((void)(RloVec({1}) < RloVec({1, 0})), std::invalid_argument);

    // translation invariance and monotone projections on a box
    std::vector<RloVec> box;
    for (Int a = -2; a <= 2; ++a)
        for (Int b = -2; b <= 2; ++b)
            for (Int c = -1; c <= 1; ++c) box.push_back(RloVec({a, b, c}));
    for (const auto& x : box)
        for (const auto& y : box) {
            for (const auto& z : box)
                if (x < y) REQUIRE(x + z < y + z);
            if (x <= y)
                for (int r = 0; r <= 3; ++r) REQUIRE(project_value(x, r) <= project_value(y, r));
        }
    CHECK(project_value(RloVec({1, 0}), 1) == RloVec({0}));
    CHECK(project_value(RloVec({4, 5}), 2) == RloVec({4, 5}));
    CHECK(project_value(RloVec({4, 5}), 0) == RloVec(Vec{}));
}

TEST_CASE("window placement") {
    LaurentField f(2, 2, {-1, -1}, {1, 1});
    CHECK(f.place({0, 0}) == LaurentField::Place::Keep);
    CHECK(f.place({5, 0}) == LaurentField::Place::Drop);
    CHECK(f.place({-5, 2}) == LaurentField::Place::Drop);
    CHECK_THROWS_AS(f.place({0, -2}), WindowOverflow);
    CHECK_THROWS_AS(f.place({-2, 0}), WindowOverflow);
    CHECK_THROWS_AS(LaurentField(4, 1, {0}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(LaurentField(2, 1, {1}, {0}), std::invalid_argument);
    CHECK(f.residue()->rank() == 1);
    CHECK(f.residue()->residue()->rank() == 0);
}

TEST_CASE("field arithmetic") {
    FieldPtr f = field(2, 2);
    LaurentElement t1 = var(f, 0), t2 = var(f, 1);
    CHECK(t1 * t1.inverse() == one(f));
    CHECK((t1 * t1.inverse()).exact());
    LaurentElement u = one(f) - t2;
    LaurentElement ui = u.inverse();
    CHECK_FALSE(ui.exact());
    CHECK(u * ui == one(f));
    LaurentElement x = t1 + t2 * t1.pow(-3);
    CHECK((x + (-x)).is_zero());
    CHECK(x - x == LaurentElement(f));
    CHECK(t1.pow(3) * t1.pow(-3) == one(f));
    CHECK_THROWS_AS(LaurentElement(f).inverse(), ZeroInverse);

    FieldPtr g = field(3, 1, 8);
    LaurentElement y = LaurentElement(g, {{{-1}, 2}, {{0}, 1}, {{3}, 2}});
    LaurentElement yi = y.inverse();
    LaurentElement prod = y * yi;
    CHECK(prod.leading().first == RloVec({0}));
    CHECK(prod.leading().second == 1);
    // every surviving error term is far to the right
    for (const auto& [e, c] : prod.terms())
        if (e != RloVec({0})) CHECK(e.c[0] >= 7);
}

TEST_CASE("standard valuation") {
    FieldPtr f = field(2, 2);
    Valuation v = Valuation::standard(f);
    CHECK(v(var(f, 0) + var(f, 1)) == RloVec({1, 0}));
    for (int n = 1; n <= 3; ++n) {
        FieldPtr fn = field(2, n);
        Vec e(n, 0);
        e[n - 1] = 1;
        CHECK(Valuation::standard(fn)(var(fn, n - 1)) == RloVec(e));
        CHECK(Valuation::standard(fn)(one(fn) + var(fn, 0)) == RloVec(Vec(n, 0)));
    }
    CHECK_THROWS_AS(v(LaurentElement(f)), ZeroValuation);
    CHECK(v.project(2)(var(f, 1) * var(f, 0)) == RloVec({1, 1}));
    CHECK(v.project(1)(var(f, 0)) == RloVec({0}));
    CHECK(Valuation::outer_order(f)(var(f, 0).pow(-2) * var(f, 1)) == RloVec({1}));

    // surjectivity: every value in the box is attained by a monomial
    for (Int a = -3; a <= 3; ++a)
        for (Int b = -3; b <= 3; ++b)
            CHECK(v(LaurentElement::monomial(f, {a, b})) == RloVec({a, b}));
}

TEST_CASE("residue maps") {
    FieldPtr f = field(3, 2);
    LaurentElement x = LaurentElement(f, {{{1, 0}, 2}, {{-1, 0}, 1}, {{0, 2}, 1}});
    LaurentElement q = residue_map(x);
    CHECK(q == LaurentElement(f->residue(), {{{1}, 2}, {{-1}, 1}}));
    CHECK(lift_from_residue(f, q) + LaurentElement::monomial(f, {0, 2}) == x);
    CHECK_THROWS_AS(residue_map(var(f, 1).inverse()), NotUnit);
    FieldPtr g = field(2, 1);
    CHECK(residue_map(one(g) + var(g, 0)).field()->rank() == 0);
}

TEST_CASE("pushforward") {
    FieldPtr f = field(2, 2);
    Valuation v = Valuation::standard(f), w = Valuation::outer_order(f);
    FieldPtr k = f->residue();
    Valuation pushed = pushforward_valuation(v, w);
    CHECK(pushed(var(k, 0)) == RloVec({1}));
    CHECK(pushed(one(k)) == RloVec({0}));
    // representatives differing by a factor in 1 + m give the same value
    LaurentElement rep = var(f, 0), rep2 = var(f, 0) * (one(f) + var(f, 1));
    CHECK(residue_map(rep) == residue_map(rep2));
    CHECK(pushforward_value(v, w, rep) == pushforward_value(v, w, rep2));
    CHECK_THROWS_AS(pushforward_value(v, w, var(f, 1)), NotUnit);

    // a valuation whose last coordinate disagrees with w is rejected
    Valuation swapped(f, 2, [](const LaurentElement& x) {
        RloVec s = x.leading().first;
        return RloVec({s.c[1], s.c[0]});
    }, "swapped");
    CHECK_THROWS_AS(pushforward_valuation(swapped, w), NotFiner);
}

TEST_CASE("pullback") {
    FieldPtr f1 = field(2, 1);
    Valuation w1 = Valuation::outer_order(f1);
    Valuation trivial0 = Valuation::standard(f1->residue());
    Valuation back = pullback_valuation(trivial0, w1, var(f1, 0));
    LaurentElement x = LaurentElement(f1, {{{-2}, 1}, {{3}, 1}});
    CHECK(back(x) == RloVec({-2}));
    CHECK(back(var(f1, 0)) == w1(var(f1, 0)));

    FieldPtr f = field(2, 2);
    Valuation w = Valuation::outer_order(f);
    Valuation u = Valuation::standard(f->residue());
    Valuation pulled = pullback_valuation(u, w, var(f, 1));
    CHECK(pulled(var(f, 0) + var(f, 1)) == RloVec({1, 0}));
    CHECK(pulled(var(f, 1)) == RloVec({0, 1}));
    CHECK_THROWS_AS(pullback_valuation(u, w, var(f, 1).pow(2)), NotUniformizer);
    CHECK_THROWS_AS(pullback_valuation(u, w, var(f, 0)), NotUniformizer);
}

TEST_CASE("stack roundtrip") {
    std::mt19937_64 rng(7);
    FieldPtr f = field(3, 2, 4);
    SampleReport ok = stack_roundtrip(f, 1000, rng);
    CHECK(ok.report.ok());
    CHECK(ok.samples + ok.skipped == 4000);
    CHECK(ok.report.checks.size() == 4);

    FieldPtr f3 = field(2, 3, 4);
    CHECK(stack_roundtrip(f3, 200, rng).report.ok());

    // T1*T2 is a uniformizer for the outer order but pulls back the wrong valuation
    LaurentElement wrong = var(f, 0) * var(f, 1);
    SampleReport bad = stack_roundtrip(f, 200, rng, wrong);
    CHECK_FALSE(bad.report.ok());
    const Check* c = bad.report.find("level2.push_then_pull");
    REQUIRE(c != nullptr);
    CHECK_FALSE(c->pass);
    CHECK(bad.report.find("level1.push_then_pull")->pass);
}

TEST_CASE("valuation axioms") {
    std::mt19937_64 rng(11);
    for (Int p : {2, 3})
        for (int n = 1; n <= 3; ++n) {
            FieldPtr f = field(p, n, 6);
            SampleReport s = valuation_axiom_sampler(Valuation::standard(f), 300, rng);
            CHECK(s.report.ok());
            CHECK(s.samples > 250);
            CHECK(valuation_axiom_sampler(Valuation::standard(f).project(1), 100, rng).report.ok());
        }
}
