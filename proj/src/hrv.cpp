#include "cftengine/hrv.hpp"

#include <sstream>

namespace cfe {

namespace {

Int mod_p(Int x, Int p) { return mod_floor(x, p); }

Int inv_mod_p(Int a, Int p) {
    Int r = 1, b = mod_p(a, p), e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

using Terms = std::map<RloVec, Int>;

void add_term(Terms& t, const RloVec& e, Int c, Int p) {
    Int& slot = t[e];
    slot = mod_p(slot + c, p);
    if (slot == 0) t.erase(e);
}

// product placed against the window of `win`; dropped is set when a term falls off the top
Terms mul_terms(const Terms& a, const Terms& b, const LaurentField& win, bool& dropped) {
    Terms out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            RloVec e = ea + eb;
            if (win.place(e.c) == LaurentField::Place::Drop) {
                dropped = true;
                continue;
            }
            add_term(out, e, ca * cb, win.p());
        }
    return out;
}

bool is_prime_number(Int p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Int window_points(const LaurentField& f) {
    Int n = 1;
    for (int i = 0; i < f.rank(); ++i) n = checked_mul(n, f.hi()[i] - f.lo()[i] + 1);
    return n;
}

RloVec drop_last(const RloVec& v) { return RloVec(Vec(v.c.begin(), v.c.end() - 1)); }

}  // namespace

std::strong_ordering RloVec::operator<=>(const RloVec& o) const {
    if (c.size() != o.c.size()) throw std::invalid_argument("comparing vectors of different rank");
    for (size_t i = c.size(); i-- > 0;)
        if (c[i] != o.c[i]) return c[i] <=> o.c[i];
    return std::strong_ordering::equal;
}

RloVec RloVec::operator+(const RloVec& o) const {
    if (c.size() != o.c.size()) throw std::invalid_argument("adding vectors of different rank");
    Vec r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = checked_add(c[i], o.c[i]);
    return RloVec(r);
}

RloVec RloVec::operator-(const RloVec& o) const {
    if (c.size() != o.c.size()) throw std::invalid_argument("subtracting vectors of different rank");
    Vec r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = checked_add(c[i], -o.c[i]);
    return RloVec(r);
}

std::string RloVec::str() const {
    std::string s = "(";
    for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

int rlo_compare(const RloVec& a, const RloVec& b) {
    auto o = a <=> b;
    return o < 0 ? -1 : (o > 0 ? 1 : 0);
}

RloVec project_value(const RloVec& v, int r) {
    if (r < 0 || r > v.size()) throw std::invalid_argument("projection rank out of range");
    return RloVec(Vec(v.c.end() - r, v.c.end()));
}

LaurentField::LaurentField(Int p, int rank, Vec lo, Vec hi) : p_(p), rank_(rank), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (!is_prime_number(p_)) throw std::invalid_argument("characteristic must be prime");
    if (rank_ < 0) throw std::invalid_argument("rank must be nonnegative");
    if (static_cast<int>(lo_.size()) != rank_ || static_cast<int>(hi_.size()) != rank_)
        throw std::invalid_argument("window bounds must have one entry per variable");
    for (int i = 0; i < rank_; ++i)
        if (lo_[i] > hi_[i]) throw std::invalid_argument("empty window in variable " + std::to_string(i + 1));
}

LaurentField::Place LaurentField::place(const Vec& e) const {
    if (static_cast<int>(e.size()) != rank_) throw std::invalid_argument("exponent of the wrong rank");
    for (int i = rank_ - 1; i >= 0; --i) {
        if (e[i] > hi_[i]) return Place::Drop;
        if (e[i] < lo_[i]) throw WindowOverflow("exponent " + RloVec(e).str() + " below the window");
    }
    return Place::Keep;
}

bool LaurentField::in_window(const Vec& e) const {
    if (static_cast<int>(e.size()) != rank_) return false;
    for (int i = 0; i < rank_; ++i)
        if (e[i] < lo_[i] || e[i] > hi_[i]) return false;
    return true;
}

FieldPtr LaurentField::residue() const {
    if (rank_ == 0) throw std::invalid_argument("the prime field has no residue field");
    return std::make_shared<const LaurentField>(p_, rank_ - 1, Vec(lo_.begin(), lo_.end() - 1),
                                                Vec(hi_.begin(), hi_.end() - 1));
}

FieldPtr make_field(Int p, int rank, Vec lo, Vec hi) {
    return std::make_shared<const LaurentField>(p, rank, std::move(lo), std::move(hi));
}

LaurentElement::LaurentElement(FieldPtr f) : f_(std::move(f)) {}

LaurentElement::LaurentElement(FieldPtr f, const std::vector<std::pair<Vec, Int>>& terms, bool exact)
    : f_(std::move(f)), exact_(exact) {
    for (const auto& [e, c] : terms) {
        if (!f_->in_window(e)) throw WindowOverflow("term " + RloVec(e).str() + " outside the window");
        add_term(terms_, RloVec(e), c, f_->p());
    }
}

LaurentElement LaurentElement::monomial(FieldPtr f, Vec exp, Int coeff) {
    return LaurentElement(std::move(f), {{std::move(exp), coeff}});
}

LaurentElement LaurentElement::constant(FieldPtr f, Int c) {
    int n = f->rank();
    return monomial(std::move(f), Vec(n, 0), c);
}

LaurentElement LaurentElement::variable(FieldPtr f, int i) {
    if (i < 0 || i >= f->rank()) throw std::invalid_argument("no such variable");
    Vec e(f->rank(), 0);
    e[i] = 1;
    return monomial(std::move(f), e);
}

std::pair<RloVec, Int> LaurentElement::leading() const {
    if (is_zero()) throw ZeroValuation("zero has no leading term");
    return *terms_.begin();
}

void LaurentElement::check_same(const LaurentElement& o) const {
    if (!(*f_ == *o.f_)) throw std::invalid_argument("elements of different fields");
}

LaurentElement LaurentElement::operator+(const LaurentElement& o) const {
    check_same(o);
    LaurentElement r(f_);
    r.terms_ = terms_;
    for (const auto& [e, c] : o.terms_) add_term(r.terms_, e, c, f_->p());
    r.exact_ = exact_ && o.exact_;
    return r;
}

LaurentElement LaurentElement::operator-() const {
    LaurentElement r(f_);
    for (const auto& [e, c] : terms_) r.terms_[e] = mod_p(-c, f_->p());
    r.exact_ = exact_;
    return r;
}

LaurentElement LaurentElement::operator-(const LaurentElement& o) const { return *this + (-o); }

LaurentElement LaurentElement::operator*(const LaurentElement& o) const {
    check_same(o);
    LaurentElement r(f_);
    bool dropped = false;
    r.terms_ = mul_terms(terms_, o.terms_, *f_, dropped);
    r.exact_ = exact_ && o.exact_ && !dropped;
    return r;
}

LaurentElement LaurentElement::inverse() const {
    if (is_zero()) throw ZeroInverse("zero is not invertible");
    auto [mu, a] = leading();
    Int p = f_->p();
    Int ainv = inv_mod_p(a, p);
    // x = a T^mu (1 + z); the geometric series in z is placed so that its terms land in the
    // window after the final shift by -mu
    Vec rlo(f_->rank()), rhi(f_->rank());
    for (int i = 0; i < f_->rank(); ++i) {
        rlo[i] = f_->lo()[i] + mu.c[i];
        rhi[i] = f_->hi()[i] + mu.c[i];
    }
    LaurentField rel(p, f_->rank(), rlo, rhi);
    RloVec zero(Vec(f_->rank(), 0));
    if (rel.place(zero.c) == LaurentField::Place::Drop)
        throw WindowOverflow("leading term of the inverse lies above the window");
    Terms negz;
    for (const auto& [e, c] : terms_)
        if (e != mu) negz[e - mu] = mod_p(-c * ainv, p);
    Terms power{{zero, 1}}, sum{{zero, 1}};
    bool dropped = false;
    Int bound = window_points(*f_) + 2;
    for (Int k = 0; !negz.empty(); ++k) {
        if (k > bound) throw std::logic_error("geometric series did not terminate");
        power = mul_terms(power, negz, rel, dropped);
        if (power.empty()) break;
        for (const auto& [e, c] : power) add_term(sum, e, c, p);
    }
    LaurentElement r(f_);
    for (const auto& [e, c] : sum) r.terms_[e - mu] = c * ainv % p;
    r.exact_ = exact_ && !dropped;
    return r;
}

LaurentElement LaurentElement::pow(Int k) const {
    if (k < 0) return inverse().pow(-k);
    LaurentElement r = constant(f_, 1), b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

std::string LaurentElement::str() const {
    if (is_zero()) return "0";
    std::ostringstream s;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        s << (first ? "" : " + ") << c << "*T^" << e.str();
        first = false;
    }
    return s.str();
}

LaurentElement random_element(const FieldPtr& f, std::mt19937_64& rng, int max_terms) {
    std::uniform_int_distribution<int> count(1, std::max(1, max_terms));
    std::uniform_int_distribution<Int> coeff(1, f->p() - 1);
    while (true) {
        std::vector<std::pair<Vec, Int>> terms;
        int n = f->rank() == 0 ? 1 : count(rng);
        for (int k = 0; k < n; ++k) {
            Vec e(f->rank());
            for (int i = 0; i < f->rank(); ++i) {
                std::uniform_int_distribution<Int> ex(f->lo()[i] / 2, f->hi()[i] / 2);
                e[i] = ex(rng);
            }
            terms.emplace_back(e, coeff(rng));
        }
        LaurentElement x(f, terms);
        if (!x.is_zero()) return x;
    }
}

LaurentElement residue_map(const LaurentElement& x) {
    const FieldPtr& f = x.field();
    if (f->rank() == 0) throw std::invalid_argument("the prime field has no residue map");
    FieldPtr k = f->residue();
    std::vector<std::pair<Vec, Int>> terms;
    for (const auto& [e, c] : x.terms()) {
        if (e.c.back() < 0) throw NotUnit("element has negative outer order");
        if (e.c.back() == 0) terms.emplace_back(drop_last(e).c, c);
    }
    return LaurentElement(k, terms, x.exact());
}

LaurentElement lift_from_residue(const FieldPtr& f, const LaurentElement& y) {
    if (!(*y.field() == *f->residue())) throw std::invalid_argument("element does not live in the residue field");
    std::vector<std::pair<Vec, Int>> terms;
    for (const auto& [e, c] : y.terms()) {
        Vec v = e.c;
        v.push_back(0);
        terms.emplace_back(v, c);
    }
    return LaurentElement(f, terms, y.exact());
}

Valuation::Valuation(FieldPtr f, int rank, Fn fn, std::string name)
    : f_(std::move(f)), rank_(rank), fn_(std::move(fn)), name_(std::move(name)) {}

Valuation Valuation::standard(FieldPtr f) {
    int n = f->rank();
    return Valuation(std::move(f), n, [](const LaurentElement& x) { return x.leading().first; }, "standard");
}

Valuation Valuation::outer_order(FieldPtr f) {
    if (f->rank() == 0) throw std::invalid_argument("the prime field has no outer order");
    return Valuation(std::move(f), 1, [](const LaurentElement& x) { return RloVec({x.leading().first.c.back()}); },
                     "outer order");
}

RloVec Valuation::operator()(const LaurentElement& x) const {
    if (!(*x.field() == *f_)) throw std::invalid_argument("element of a different field");
    if (x.is_zero()) throw ZeroValuation("valuation of zero");
    return fn_(x);
}

Valuation Valuation::project(int r) const {
    if (r < 0 || r > rank_) throw std::invalid_argument("projection rank out of range");
    Valuation base = *this;
    return Valuation(f_, r, [base, r](const LaurentElement& x) { return project_value(base(x), r); },
                     name_ + "^(" + std::to_string(r) + ")");
}

RloVec rank_n_valuation(const LaurentElement& x) { return Valuation::standard(x.field())(x); }

RloVec pushforward_value(const Valuation& v, const Valuation& w, const LaurentElement& x) {
    if (w(x) != RloVec({0})) throw NotUnit("representative is not a unit for " + w.name());
    return drop_last(v(x));
}

Valuation pushforward_valuation(const Valuation& v, const Valuation& w) {
    if (!(*v.field() == *w.field())) throw std::invalid_argument("valuations on different fields");
    if (w.rank() != 1) throw std::invalid_argument("pushforward along a rank-1 valuation only");
    if (v.rank() < 1) throw NotFiner(v.name() + " has rank 0");
    const FieldPtr& f = v.field();
    // w must be the coarsest component of v; probed on the parameters and their pairwise sums
    std::vector<LaurentElement> probes{LaurentElement::constant(f, 1)};
    for (int i = 0; i < f->rank(); ++i) {
        probes.push_back(LaurentElement::variable(f, i));
        for (int j = 0; j < i; ++j) probes.push_back(LaurentElement::variable(f, i) + LaurentElement::variable(f, j));
    }
    for (const LaurentElement& x : probes)
        if (RloVec({v(x).c.back()}) != w(x)) throw NotFiner(v.name() + " is not finer than " + w.name() + " at " + x.str());
    FieldPtr k = f->residue();
    return Valuation(k, v.rank() - 1,
                     [v, w, f](const LaurentElement& y) { return pushforward_value(v, w, lift_from_residue(f, y)); },
                     "push(" + v.name() + ")");
}

Valuation pullback_valuation(const Valuation& v, const Valuation& w, const LaurentElement& t) {
    const FieldPtr& f = w.field();
    if (w.rank() != 1) throw std::invalid_argument("pullback along a rank-1 valuation only");
    if (f->rank() == 0 || !(*v.field() == *f->residue()))
        throw std::invalid_argument("valuation does not live on the residue field of " + w.name());
    if (t.is_zero() || w(t) != RloVec({1})) throw NotUniformizer(t.str() + " is not a uniformizer for " + w.name());
    LaurentElement tinv = t.inverse();
    return Valuation(
        f, v.rank() + 1,
        [v, w, t, tinv](const LaurentElement& x) {
            Int k = w(x).c[0];
            LaurentElement y = x * (k >= 0 ? tinv.pow(k) : t.pow(-k));
            Vec out = v(residue_map(y)).c;
            out.push_back(k);
            return RloVec(out);
        },
        "pull(" + v.name() + ")");
}

SampleReport stack_roundtrip(const FieldPtr& f, int samples, std::mt19937_64& rng,
                             const std::optional<LaurentElement>& uniformizer) {
    SampleReport out;
    FieldPtr level = f;
    for (int r = f->rank(); r >= 1; --r, level = level->residue()) {
        std::string tag = "level" + std::to_string(r) + ".";
        Valuation v = Valuation::standard(level);
        Valuation w = Valuation::outer_order(level);
        LaurentElement t = (r == f->rank() && uniformizer) ? *uniformizer : LaurentElement::variable(level, r - 1);
        Verdict pp, pl;
        try {
            Valuation back = pullback_valuation(pushforward_valuation(v, w), w, t);
            for (int s = 0; s < samples; ++s) {
                LaurentElement x = random_element(level, rng);
                try {
                    if (back(x) != v(x)) pp.fail("x = " + x.str() + ": " + back(x).str() + " vs " + v(x).str());
                    ++out.samples;
                } catch (const WindowOverflow&) {
                    ++out.skipped;
                }
            }
        } catch (const std::invalid_argument& e) {
            pp.fail(e.what());
        }
        try {
            FieldPtr k = level->residue();
            Valuation u = Valuation::standard(k);
            Valuation pushed = pushforward_valuation(pullback_valuation(u, w, t), w);
            for (int s = 0; s < samples; ++s) {
                LaurentElement y = random_element(k, rng);
                try {
                    if (pushed(y) != u(y)) pl.fail("y = " + y.str() + ": " + pushed(y).str() + " vs " + u(y).str());
                    ++out.samples;
                } catch (const WindowOverflow&) {
                    ++out.skipped;
                }
            }
        } catch (const std::invalid_argument& e) {
            pl.fail(e.what());
        }
        pp.into(out.report, tag + "push_then_pull");
        pl.into(out.report, tag + "pull_then_push");
    }
    return out;
}

SampleReport valuation_axiom_sampler(const Valuation& v, int samples, std::mt19937_64& rng) {
    SampleReport out;
    const FieldPtr& f = v.field();
    RloVec zero(Vec(v.rank(), 0));
    Verdict mult, ultra, equality, inverse;
    for (int s = 0; s < samples; ++s) {
        LaurentElement x = random_element(f, rng), y = random_element(f, rng);
        try {
            LaurentElement xy = x * y;
            if (!xy.exact()) {
                ++out.skipped;
                continue;
            }
            RloVec vx = v(x), vy = v(y);
            if (v(xy) != vx + vy) mult.fail("x = " + x.str() + ", y = " + y.str());
            LaurentElement sum = x + y;
            if (!sum.is_zero()) {
                RloVec vs = v(sum), m = std::min(vx, vy);
                if (vs < m) ultra.fail("x = " + x.str() + ", y = " + y.str());
                if (vx != vy && vs != m) equality.fail("x = " + x.str() + ", y = " + y.str());
            }
            if (s % 10 == 0) {
                LaurentElement prod = x * x.inverse();
                if (v(prod) != zero) inverse.fail("x = " + x.str());
            }
            ++out.samples;
        } catch (const WindowOverflow&) {
            ++out.skipped;
        }
    }
    mult.into(out.report, "multiplicative");
    ultra.into(out.report, "ultrametric");
    equality.into(out.report, "equality_case");
    inverse.into(out.report, "inverse");
    return out;
}

}  // namespace cfe
