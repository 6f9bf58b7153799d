#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfe {

using Int = std::int64_t;
using Vec = std::vector<Int>;

struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    static Mat identity(int n);
    static Mat from_rows(const std::vector<Vec>& rows, int cols = -1);
    static Mat from_cols(const std::vector<Vec>& cols, int rows);

    Int& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    Int operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    Vec col(int j) const;
    Vec row(int i) const;
    std::vector<Vec> to_rows() const;
    bool operator==(const Mat& o) const = default;
};

Mat operator*(const Mat& x, const Mat& y);
Vec operator*(const Mat& x, const Vec& v);
Mat hconcat(const Mat& x, const Mat& y);

Int checked_mul(Int x, Int y);
Int checked_add(Int x, Int y);
Int mod_floor(Int x, Int m);
Int gcd_int(Int x, Int y);

// left * m * right = diag, with factors[i] the i-th diagonal entry (divisibility chain,
// trailing zeros), left_inv the inverse of left.
struct SmithResult {
    Mat left;
    Mat left_inv;
    Mat right;
    Mat diag;
    std::vector<Int> factors;
    int rank = 0;
};

SmithResult smith_decompose(const Mat& m);

class FgAbGroup {
public:
    FgAbGroup() = default;
    FgAbGroup(int free_rank, std::vector<Int> invariant_factors);

    static FgAbGroup trivial() { return {}; }
    static FgAbGroup integers() { return FgAbGroup(1, {}); }
    static FgAbGroup cyclic(Int n);  // n == 0 gives Z

    int free_rank() const { return free_rank_; }
    const std::vector<Int>& invariant_factors() const { return factors_; }
    int ngens() const { return static_cast<int>(factors_.size()) + free_rank_; }
    int torsion_count() const { return static_cast<int>(factors_.size()); }
    // 0 for a free coordinate
    Int modulus(int i) const { return i < torsion_count() ? factors_[i] : 0; }

    bool is_finite() const { return free_rank_ == 0; }
    bool is_trivial() const { return ngens() == 0; }
    // nullopt means infinite
    std::optional<Int> order() const;
    Int exponent() const;

    Vec zero() const { return Vec(ngens(), 0); }
    Vec gen(int i) const;
    Vec reduce(Vec v) const;
    Vec add(const Vec& x, const Vec& y) const;
    Vec sub(const Vec& x, const Vec& y) const;
    Vec neg(const Vec& x) const;
    Vec scale(Int k, const Vec& x) const;
    bool is_zero(const Vec& x) const;
    // 0 for elements of infinite order
    Int element_order(const Vec& x) const;
    std::vector<Vec> elements() const;  // finite groups only

    std::string str() const;
    bool operator==(const FgAbGroup& o) const = default;

private:
    int free_rank_ = 0;
    std::vector<Int> factors_;
};

// Matrix acts on canonical generators: column j is the image of generator j.
class AbHom {
public:
    AbHom() = default;
    AbHom(FgAbGroup domain, FgAbGroup codomain, Mat matrix);

    static AbHom identity(const FgAbGroup& a);
    static AbHom zero(const FgAbGroup& a, const FgAbGroup& b);
    static AbHom scalar(const FgAbGroup& a, Int k);
    static AbHom from_images(const FgAbGroup& a, const FgAbGroup& b, const std::vector<Vec>& images);

    const FgAbGroup& domain() const { return dom_; }
    const FgAbGroup& codomain() const { return cod_; }
    const Mat& matrix() const { return m_; }

    Vec operator()(const Vec& x) const;
    Vec image_of_gen(int j) const { return m_.col(j); }
    bool is_zero() const;
    bool operator==(const AbHom& o) const = default;

    AbHom operator+(const AbHom& o) const;
    AbHom operator-(const AbHom& o) const;
    AbHom scaled(Int k) const;

private:
    FgAbGroup dom_;
    FgAbGroup cod_;
    Mat m_;
};

// g ∘ f
AbHom operator*(const AbHom& g, const AbHom& f);

// Z^n / colspan(relations) in normal form; to: Z^n -> group coordinates,
// lift: group generators -> Z^n.
struct Presented {
    FgAbGroup group;
    Mat to;
    Mat lift;
};
Presented present(int n, const Mat& relations);

// Normal form of an abelian group given by n generators and relation vectors.
Presented present(int n, const std::vector<Vec>& relations);

struct SubgroupData {
    FgAbGroup group;
    AbHom embedding;
};

struct QuotientData {
    FgAbGroup group;
    AbHom projection;
    Mat lift;  // section on quotient generators
};

QuotientData quotient(const FgAbGroup& a, const std::vector<Vec>& gens);
SubgroupData subgroup(const FgAbGroup& a, const std::vector<Vec>& gens);
SubgroupData hom_kernel(const AbHom& h);
// common kernel of several maps out of the same group
SubgroupData common_kernel(const FgAbGroup& a, const std::vector<AbHom>& maps);
SubgroupData hom_image(const AbHom& h);
QuotientData hom_cokernel(const AbHom& h);

std::vector<Vec> hom_columns(const AbHom& h);
std::vector<Vec> intersect(const FgAbGroup& a, const std::vector<Vec>& s, const std::vector<Vec>& t);
bool subgroup_leq(const FgAbGroup& a, const std::vector<Vec>& s, const std::vector<Vec>& t);
bool subgroup_eq(const FgAbGroup& a, const std::vector<Vec>& s, const std::vector<Vec>& t);

bool is_injective(const AbHom& h);
bool is_surjective(const AbHom& h);
bool is_isomorphism(const AbHom& h);

// Map A/S -> B/T induced by f; throws std::domain_error if f(S) is not inside T.
AbHom induced_on_quotients(const AbHom& f, const QuotientData& qa, const QuotientData& qb);

// Reusable solver for h(y) = x.
class Preimage {
public:
    explicit Preimage(const AbHom& h);
    std::optional<Vec> operator()(const Vec& x) const;
    bool contains(const Vec& x) const { return (*this)(x).has_value(); }

private:
    FgAbGroup dom_;
    FgAbGroup cod_;
    SmithResult snf_;
    int nd_ = 0;
};

// Membership test for the subgroup generated by gens.
class SubgroupTest {
public:
    SubgroupTest(const FgAbGroup& a, const std::vector<Vec>& gens);
    bool contains(const Vec& x) const { return pre_.contains(x); }
    std::optional<Vec> coefficients(const Vec& x) const { return pre_(x); }

private:
    Preimage pre_;
};

}  // namespace cfe
