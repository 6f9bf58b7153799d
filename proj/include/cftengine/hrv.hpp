#pragma once

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "cftengine/abelian.hpp"
#include "cftengine/report.hpp"

namespace cfe {

struct ZeroInverse : std::domain_error {
    using std::domain_error::domain_error;
};
struct ZeroValuation : std::domain_error {
    using std::domain_error::domain_error;
};
// a term below the lower window bound would be needed
struct WindowOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotFiner : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotUnit : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotUniformizer : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Z^n ordered reverse lexicographically: the last coordinate is compared first.
struct RloVec {
    Vec c;

    RloVec() = default;
    explicit RloVec(Vec v) : c(std::move(v)) {}

    int size() const { return static_cast<int>(c.size()); }
    std::strong_ordering operator<=>(const RloVec& o) const;
    bool operator==(const RloVec& o) const = default;
    RloVec operator+(const RloVec& o) const;
    RloVec operator-(const RloVec& o) const;
    std::string str() const;
};

int rlo_compare(const RloVec& a, const RloVec& b);
// the last r coordinates
RloVec project_value(const RloVec& v, int r);

// F_p((T_1))...((T_n)) with T_1 innermost, truncated to a box of exponents.
class LaurentField {
public:
    LaurentField(Int p, int rank, Vec lo, Vec hi);

    Int p() const { return p_; }
    int rank() const { return rank_; }
    const Vec& lo() const { return lo_; }
    const Vec& hi() const { return hi_; }

    enum class Place { Keep, Drop };
    // Drop when a coordinate exceeds its upper bound before (reading outermost first) one falls
    // below its lower bound; throws WindowOverflow in the latter case.
    Place place(const Vec& e) const;
    bool in_window(const Vec& e) const;
    // the residue field of the outermost order: drop T_n
    std::shared_ptr<const LaurentField> residue() const;

    bool operator==(const LaurentField& o) const = default;

private:
    Int p_;
    int rank_;
    Vec lo_;
    Vec hi_;
};

using FieldPtr = std::shared_ptr<const LaurentField>;

FieldPtr make_field(Int p, int rank, Vec lo, Vec hi);

// Sparse series with support in the window. exact is false once a product or inverse lost terms.
class LaurentElement {
public:
    explicit LaurentElement(FieldPtr f);
    LaurentElement(FieldPtr f, const std::vector<std::pair<Vec, Int>>& terms, bool exact = true);

    static LaurentElement monomial(FieldPtr f, Vec exp, Int coeff = 1);
    static LaurentElement constant(FieldPtr f, Int c);
    // T_{i+1}
    static LaurentElement variable(FieldPtr f, int i);

    const FieldPtr& field() const { return f_; }
    const std::map<RloVec, Int>& terms() const { return terms_; }
    bool exact() const { return exact_; }
    bool is_zero() const { return terms_.empty(); }
    // RLO-minimal support point and its coefficient
    std::pair<RloVec, Int> leading() const;

    LaurentElement operator+(const LaurentElement& o) const;
    LaurentElement operator-(const LaurentElement& o) const;
    LaurentElement operator-() const;
    LaurentElement operator*(const LaurentElement& o) const;
    LaurentElement inverse() const;
    LaurentElement pow(Int k) const;
    // same terms, ignoring the precision flag
    bool operator==(const LaurentElement& o) const { return terms_ == o.terms_; }

    std::string str() const;

private:
    void check_same(const LaurentElement& o) const;

    FieldPtr f_;
    std::map<RloVec, Int> terms_;
    bool exact_ = true;
};

LaurentElement random_element(const FieldPtr& f, std::mt19937_64& rng, int max_terms = 6);

// coefficients at outermost exponent 0 (x must have nonnegative outer order)
LaurentElement residue_map(const LaurentElement& x);
// embedding of a residue element at outer exponent 0
LaurentElement lift_from_residue(const FieldPtr& f, const LaurentElement& y);

// A valuation of some rank on a truncated field, realized as a function on elements.
class Valuation {
public:
    using Fn = std::function<RloVec(const LaurentElement&)>;
    Valuation(FieldPtr f, int rank, Fn fn, std::string name);

    // RLO-minimal support point
    static Valuation standard(FieldPtr f);
    // order in the outermost variable
    static Valuation outer_order(FieldPtr f);

    const FieldPtr& field() const { return f_; }
    int rank() const { return rank_; }
    const std::string& name() const { return name_; }
    // throws ZeroValuation on 0
    RloVec operator()(const LaurentElement& x) const;
    Valuation project(int r) const;

private:
    FieldPtr f_;
    int rank_;
    Fn fn_;
    std::string name_;
};

RloVec rank_n_valuation(const LaurentElement& x);

// value of a w-unit representative under v, with the last coordinate dropped
RloVec pushforward_value(const Valuation& v, const Valuation& w, const LaurentElement& x);
// valuation on the residue field of w induced by v
Valuation pushforward_valuation(const Valuation& v, const Valuation& w);
// (v o w)_t(x) = (v(q(x t^-w(x))), w(x))
Valuation pullback_valuation(const Valuation& v, const Valuation& w, const LaurentElement& t);

struct SampleReport {
    Report report;
    int samples = 0;
    int skipped = 0;
};

// push then pull and pull then push at every level of the tower F_p((T_1))...((T_r)), r <= n.
// A uniformizer override replaces T_n at the top level.
SampleReport stack_roundtrip(const FieldPtr& f, int samples, std::mt19937_64& rng,
                             const std::optional<LaurentElement>& uniformizer = std::nullopt);

// multiplicativity, ultrametric law, equality case, v(x x^-1) = 0
SampleReport valuation_axiom_sampler(const Valuation& v, int samples, std::mt19937_64& rng);

}  // namespace cfe
