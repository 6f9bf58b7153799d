#include "cftengine/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cfe {

Int checked_mul(Int x, Int y) {
    Int r;
    if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("integer overflow in multiplication");
    return r;
}

Int checked_add(Int x, Int y) {
    Int r;
    if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("integer overflow in addition");
    return r;
}

Int mod_floor(Int x, Int m) {
    Int r = x % m;
    return r < 0 ? r + m : r;
}

Int gcd_int(Int x, Int y) { return std::gcd(x, y); }

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, int cols) {
    int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    Mat m(static_cast<int>(rows.size()), c);
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cols, int rows) {
    Mat m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols; ++j) {
        if (static_cast<int>(cols[j].size()) != rows) throw std::invalid_argument("column length mismatch");
        for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Vec Mat::col(int j) const {
    Vec v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Mat::row(int i) const {
    return Vec(a.begin() + static_cast<long>(i) * cols, a.begin() + static_cast<long>(i + 1) * cols);
}

std::vector<Vec> Mat::to_rows() const {
    std::vector<Vec> out;
    for (int i = 0; i < rows; ++i) out.push_back(row(i));
    return out;
}

Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            Int v = x(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                if (y(k, j) != 0) r(i, j) = checked_add(r(i, j), checked_mul(v, y(k, j)));
        }
    return r;
}

Vec operator*(const Mat& x, const Vec& v) {
    if (x.cols != static_cast<int>(v.size())) throw std::invalid_argument("matrix-vector shape mismatch");
    Vec r(x.rows, 0);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j)
            if (v[j] != 0 && x(i, j) != 0) r[i] = checked_add(r[i], checked_mul(x(i, j), v[j]));
    return r;
}

Mat hconcat(const Mat& x, const Mat& y) {
    if (x.rows != y.rows) throw std::invalid_argument("hconcat row mismatch");
    Mat r(x.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) r(i, j) = x(i, j);
        for (int j = 0; j < y.cols; ++j) r(i, x.cols + j) = y(i, j);
    }
    return r;
}

namespace {

struct SmithWork {
    Mat a, l, li, q;

    void row_addmul(int dst, int src, Int k) {
        if (k == 0) return;
        for (int j = 0; j < a.cols; ++j) a(dst, j) = checked_add(a(dst, j), checked_mul(k, a(src, j)));
        for (int j = 0; j < l.cols; ++j) l(dst, j) = checked_add(l(dst, j), checked_mul(k, l(src, j)));
        for (int i = 0; i < li.rows; ++i) li(i, src) = checked_add(li(i, src), -checked_mul(k, li(i, dst)));
    }
    void row_swap(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < a.cols; ++c) std::swap(a(i, c), a(j, c));
        for (int c = 0; c < l.cols; ++c) std::swap(l(i, c), l(j, c));
        for (int r = 0; r < li.rows; ++r) std::swap(li(r, i), li(r, j));
    }
    void row_neg(int i) {
        for (int c = 0; c < a.cols; ++c) a(i, c) = -a(i, c);
        for (int c = 0; c < l.cols; ++c) l(i, c) = -l(i, c);
        for (int r = 0; r < li.rows; ++r) li(r, i) = -li(r, i);
    }
    void col_addmul(int dst, int src, Int k) {
        if (k == 0) return;
        for (int i = 0; i < a.rows; ++i) a(i, dst) = checked_add(a(i, dst), checked_mul(k, a(i, src)));
        for (int i = 0; i < q.rows; ++i) q(i, dst) = checked_add(q(i, dst), checked_mul(k, q(i, src)));
    }
    void col_swap(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < a.rows; ++r) std::swap(a(r, i), a(r, j));
        for (int r = 0; r < q.rows; ++r) std::swap(q(r, i), q(r, j));
    }
};

}  // namespace

SmithResult smith_decompose(const Mat& m) {
    SmithWork w{m, Mat::identity(m.rows), Mat::identity(m.rows), Mat::identity(m.cols)};
    Mat& a = w.a;
    int n = std::min(m.rows, m.cols);
    int t = 0;
    for (; t < n; ++t) {
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < a.rows; ++i)
            for (int j = t; j < a.cols; ++j) {
                Int v = a(i, j) < 0 ? -a(i, j) : a(i, j);
                if (v != 0 && (best == 0 || v < best)) { best = v; pi = i; pj = j; }
            }
        if (pi < 0) break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        for (;;) {
            bool changed = false;
            for (int i = t + 1; i < a.rows; ++i) {
                if (a(i, t) == 0) continue;
                w.row_addmul(i, t, -(a(i, t) / a(t, t)));
                if (a(i, t) != 0) { w.row_swap(t, i); changed = true; }
            }
            for (int j = t + 1; j < a.cols; ++j) {
                if (a(t, j) == 0) continue;
                w.col_addmul(j, t, -(a(t, j) / a(t, t)));
                if (a(t, j) != 0) { w.col_swap(t, j); changed = true; }
            }
            if (changed) continue;
            int bad = -1;
            for (int i = t + 1; i < a.rows && bad < 0; ++i)
                for (int j = t + 1; j < a.cols; ++j)
                    if (a(i, j) % a(t, t) != 0) { bad = i; break; }
            if (bad < 0) break;
            w.row_addmul(t, bad, 1);
        }
        if (a(t, t) < 0) w.row_neg(t);
    }
    SmithResult r;
    r.rank = t;
    r.factors.assign(n, 0);
    for (int i = 0; i < t; ++i) r.factors[i] = a(i, i);
    r.left = std::move(w.l);
    r.left_inv = std::move(w.li);
    r.right = std::move(w.q);
    r.diag = std::move(w.a);
    return r;
}

FgAbGroup::FgAbGroup(int free_rank, std::vector<Int> invariant_factors)
    : free_rank_(free_rank), factors_(std::move(invariant_factors)) {
    if (free_rank_ < 0) throw std::invalid_argument("negative free rank");
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2) throw std::invalid_argument("invariant factors must be >= 2");
        if (i > 0 && factors_[i] % factors_[i - 1] != 0)
            throw std::invalid_argument("invariant factors must form a divisibility chain");
    }
}

FgAbGroup FgAbGroup::cyclic(Int n) {
    if (n < 0) n = -n;
    if (n == 0) return integers();
    if (n == 1) return trivial();
    return FgAbGroup(0, {n});
}

std::optional<Int> FgAbGroup::order() const {
    if (free_rank_ > 0) return std::nullopt;
    Int o = 1;
    for (Int f : factors_) o = checked_mul(o, f);
    return o;
}

Int FgAbGroup::exponent() const {
    if (free_rank_ > 0) return 0;
    return factors_.empty() ? 1 : factors_.back();
}

Vec FgAbGroup::gen(int i) const {
    Vec v = zero();
    v.at(i) = 1;
    return v;
}

Vec FgAbGroup::reduce(Vec v) const {
    if (static_cast<int>(v.size()) != ngens()) throw std::invalid_argument("element has wrong length for group " + str());
    for (int i = 0; i < torsion_count(); ++i) v[i] = mod_floor(v[i], factors_[i]);
    return v;
}

Vec FgAbGroup::add(const Vec& x, const Vec& y) const {
    Vec r(ngens());
    for (int i = 0; i < ngens(); ++i) r[i] = checked_add(x.at(i), y.at(i));
    return reduce(std::move(r));
}

Vec FgAbGroup::sub(const Vec& x, const Vec& y) const { return add(x, neg(y)); }

Vec FgAbGroup::neg(const Vec& x) const {
    Vec r(x);
    for (auto& e : r) e = -e;
    return reduce(std::move(r));
}

Vec FgAbGroup::scale(Int k, const Vec& x) const {
    Vec r(x);
    for (int i = 0; i < ngens(); ++i) {
        Int v = i < torsion_count() ? mod_floor(x[i], factors_[i]) : x[i];
        r[i] = checked_mul(k, v);
    }
    return reduce(std::move(r));
}

bool FgAbGroup::is_zero(const Vec& x) const {
    Vec r = reduce(x);
    return std::all_of(r.begin(), r.end(), [](Int e) { return e == 0; });
}

Int FgAbGroup::element_order(const Vec& x) const {
    Vec r = reduce(x);
    Int o = 1;
    for (int i = 0; i < ngens(); ++i) {
        if (r[i] == 0) continue;
        if (i >= torsion_count()) return 0;
        Int f = factors_[i];
        o = std::lcm(o, f / std::gcd(r[i], f));
    }
    return o;
}

std::vector<Vec> FgAbGroup::elements() const {
    if (!is_finite()) throw std::domain_error("cannot enumerate an infinite group");
    std::vector<Vec> out;
    Vec cur = zero();
    for (;;) {
        out.push_back(cur);
        int i = 0;
        for (; i < torsion_count(); ++i) {
            if (++cur[i] < factors_[i]) break;
            cur[i] = 0;
        }
        if (i == torsion_count()) break;
    }
    return out;
}

std::string FgAbGroup::str() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (Int f : factors_) {
        os << (first ? "" : " + ") << "Z/" << f;
        first = false;
    }
    if (free_rank_ > 0) {
        os << (first ? "" : " + ") << "Z";
        if (free_rank_ > 1) os << "^" << free_rank_;
    }
    return os.str();
}

AbHom::AbHom(FgAbGroup domain, FgAbGroup codomain, Mat matrix)
    : dom_(std::move(domain)), cod_(std::move(codomain)), m_(std::move(matrix)) {
    if (m_.rows != cod_.ngens() || m_.cols != dom_.ngens())
        throw std::invalid_argument("hom matrix shape does not match domain/codomain");
    for (int i = 0; i < cod_.torsion_count(); ++i)
        for (int j = 0; j < m_.cols; ++j) m_(i, j) = mod_floor(m_(i, j), cod_.modulus(i));
    for (int j = 0; j < dom_.torsion_count(); ++j) {
        Int f = dom_.modulus(j);
        if (!cod_.is_zero(cod_.scale(f, m_.col(j))))
            throw std::invalid_argument("hom matrix does not respect torsion of generator " + std::to_string(j));
    }
}

AbHom AbHom::identity(const FgAbGroup& a) { return AbHom(a, a, Mat::identity(a.ngens())); }

AbHom AbHom::zero(const FgAbGroup& a, const FgAbGroup& b) { return AbHom(a, b, Mat(b.ngens(), a.ngens())); }

AbHom AbHom::scalar(const FgAbGroup& a, Int k) {
    Mat m = Mat::identity(a.ngens());
    for (auto& e : m.a) e = checked_mul(e, k);
    return AbHom(a, a, m);
}

AbHom AbHom::from_images(const FgAbGroup& a, const FgAbGroup& b, const std::vector<Vec>& images) {
    if (static_cast<int>(images.size()) != a.ngens()) throw std::invalid_argument("wrong number of generator images");
    return AbHom(a, b, Mat::from_cols(images, b.ngens()));
}

Vec AbHom::operator()(const Vec& x) const { return cod_.reduce(m_ * dom_.reduce(x)); }

bool AbHom::is_zero() const {
    return std::all_of(m_.a.begin(), m_.a.end(), [](Int e) { return e == 0; });
}

AbHom AbHom::operator+(const AbHom& o) const {
    if (!(dom_ == o.dom_ && cod_ == o.cod_)) throw std::invalid_argument("adding homs with different shapes");
    Mat m = m_;
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = checked_add(m.a[i], o.m_.a[i]);
    return AbHom(dom_, cod_, m);
}

AbHom AbHom::operator-(const AbHom& o) const { return *this + o.scaled(-1); }

AbHom AbHom::scaled(Int k) const {
    Mat m = m_;
    for (auto& e : m.a) e = checked_mul(e, k);
    return AbHom(dom_, cod_, m);
}

AbHom operator*(const AbHom& g, const AbHom& f) {
    if (!(f.codomain() == g.domain())) throw std::invalid_argument("composing homs with mismatched groups");
    return AbHom(f.domain(), g.codomain(), g.matrix() * f.matrix());
}

Presented present(int n, const Mat& rel) {
    if (rel.rows != n) throw std::invalid_argument("relation matrix has wrong row count");
    SmithResult s = smith_decompose(rel);
    std::vector<Int> d(n, 0);
    for (int i = 0; i < s.rank; ++i) d[i] = s.factors[i];
    std::vector<int> keep;
    std::vector<Int> tors;
    int free = 0;
    for (int i = 0; i < n; ++i) {
        if (d[i] == 1) continue;
        keep.push_back(i);
        if (d[i] == 0) ++free; else tors.push_back(d[i]);
    }
    Presented p;
    p.group = FgAbGroup(free, tors);
    p.to = Mat(static_cast<int>(keep.size()), n);
    p.lift = Mat(n, static_cast<int>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k) {
        int i = keep[k];
        for (int j = 0; j < n; ++j) {
            Int v = s.left(i, j);
            p.to(static_cast<int>(k), j) = d[i] > 1 ? mod_floor(v, d[i]) : v;
            p.lift(j, static_cast<int>(k)) = s.left_inv(j, i);
        }
    }
    return p;
}

Presented present(int n, const std::vector<Vec>& relations) {
    return present(n, Mat::from_cols(relations, n));
}

namespace {

// Columns f_i e_i for the torsion coordinates of a.
Mat torsion_relations(const FgAbGroup& a) {
    Mat d(a.ngens(), a.torsion_count());
    for (int i = 0; i < a.torsion_count(); ++i) d(i, i) = a.modulus(i);
    return d;
}

std::vector<Vec> integer_kernel(const Mat& m) {
    SmithResult s = smith_decompose(m);
    std::vector<Vec> out;
    for (int j = s.rank; j < m.cols; ++j) out.push_back(s.right.col(j));
    return out;
}

}  // namespace

QuotientData quotient(const FgAbGroup& a, const std::vector<Vec>& gens) {
    Mat rel = hconcat(torsion_relations(a), Mat::from_cols(gens, a.ngens()));
    Presented p = present(a.ngens(), rel);
    return {p.group, AbHom(a, p.group, p.to), p.lift};
}

SubgroupData subgroup(const FgAbGroup& a, const std::vector<Vec>& gens) {
    int k = static_cast<int>(gens.size());
    Mat s = Mat::from_cols(gens, a.ngens());
    std::vector<Vec> rels;
    for (const Vec& z : integer_kernel(hconcat(s, torsion_relations(a)))) rels.emplace_back(z.begin(), z.begin() + k);
    Presented p = present(k, Mat::from_cols(rels, k));
    return {p.group, AbHom(p.group, a, s * p.lift)};
}

std::vector<Vec> hom_columns(const AbHom& h) {
    std::vector<Vec> cols;
    for (int j = 0; j < h.domain().ngens(); ++j) cols.push_back(h.image_of_gen(j));
    return cols;
}

SubgroupData hom_kernel(const AbHom& h) {
    int n = h.domain().ngens();
    std::vector<Vec> gens;
    for (const Vec& z : integer_kernel(hconcat(h.matrix(), torsion_relations(h.codomain()))))
        gens.push_back(h.domain().reduce(Vec(z.begin(), z.begin() + n)));
    return subgroup(h.domain(), gens);
}

SubgroupData common_kernel(const FgAbGroup& a, const std::vector<AbHom>& maps) {
    int n = a.ngens();
    int rows = 0, cols = n;
    for (const AbHom& f : maps) {
        if (!(f.domain() == a)) throw std::invalid_argument("common_kernel: domain mismatch");
        rows += f.codomain().ngens();
        cols += f.codomain().torsion_count();
    }
    Mat m(rows, cols);
    int r0 = 0, c0 = n;
    for (const AbHom& f : maps) {
        const FgAbGroup& b = f.codomain();
        for (int i = 0; i < b.ngens(); ++i) {
            for (int j = 0; j < n; ++j) m(r0 + i, j) = f.matrix()(i, j);
            if (i < b.torsion_count()) m(r0 + i, c0 + i) = b.modulus(i);
        }
        r0 += b.ngens();
        c0 += b.torsion_count();
    }
    std::vector<Vec> gens;
    if (rows == 0) {
        for (int j = 0; j < n; ++j) gens.push_back(a.gen(j));
    } else {
        for (const Vec& z : integer_kernel(m)) gens.push_back(a.reduce(Vec(z.begin(), z.begin() + n)));
    }
    return subgroup(a, gens);
}

SubgroupData hom_image(const AbHom& h) { return subgroup(h.codomain(), hom_columns(h)); }

QuotientData hom_cokernel(const AbHom& h) { return quotient(h.codomain(), hom_columns(h)); }

std::vector<Vec> intersect(const FgAbGroup& a, const std::vector<Vec>& s, const std::vector<Vec>& t) {
    std::vector<Vec> negt;
    for (const Vec& v : t) negt.push_back(a.neg(v));
    Mat m = hconcat(hconcat(Mat::from_cols(s, a.ngens()), Mat::from_cols(negt, a.ngens())), torsion_relations(a));
    std::vector<Vec> out;
    for (const Vec& z : integer_kernel(m)) {
        Vec x = a.zero();
        for (size_t j = 0; j < s.size(); ++j) x = a.add(x, a.scale(z[j], s[j]));
        if (!a.is_zero(x)) out.push_back(x);
    }
    return out;
}

bool subgroup_leq(const FgAbGroup& a, const std::vector<Vec>& s, const std::vector<Vec>& t) {
    SubgroupTest test(a, t);
    return std::all_of(s.begin(), s.end(), [&](const Vec& x) { return test.contains(x); });
}

bool subgroup_eq(const FgAbGroup& a, const std::vector<Vec>& s, const std::vector<Vec>& t) {
    return subgroup_leq(a, s, t) && subgroup_leq(a, t, s);
}

bool is_injective(const AbHom& h) { return hom_kernel(h).group.is_trivial(); }
bool is_surjective(const AbHom& h) { return hom_cokernel(h).group.is_trivial(); }
bool is_isomorphism(const AbHom& h) { return is_injective(h) && is_surjective(h); }

AbHom induced_on_quotients(const AbHom& f, const QuotientData& qa, const QuotientData& qb) {
    AbHom through = qb.projection * f;
    SubgroupData ker = hom_kernel(qa.projection);
    if (!(through * ker.embedding).is_zero())
        throw std::domain_error("map does not descend to the quotients");
    return AbHom(qa.group, qb.group, through.matrix() * qa.lift);
}

Preimage::Preimage(const AbHom& h) : dom_(h.domain()), cod_(h.codomain()), nd_(h.domain().ngens()) {
    snf_ = smith_decompose(hconcat(h.matrix(), torsion_relations(h.codomain())));
}

std::optional<Vec> Preimage::operator()(const Vec& x) const {
    Vec y = snf_.left * cod_.reduce(x);
    Vec w(snf_.right.rows, 0);
    for (int i = 0; i < static_cast<int>(y.size()); ++i) {
        if (i < snf_.rank) {
            if (y[i] % snf_.factors[i] != 0) return std::nullopt;
            w[i] = y[i] / snf_.factors[i];
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    Vec z = snf_.right * w;
    return dom_.reduce(Vec(z.begin(), z.begin() + nd_));
}

SubgroupTest::SubgroupTest(const FgAbGroup& a, const std::vector<Vec>& gens)
    : pre_(AbHom(FgAbGroup(static_cast<int>(gens.size()), {}), a, Mat::from_cols(gens, a.ngens()))) {}

}  // namespace cfe
