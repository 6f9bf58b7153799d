#include "cftengine/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace cfe {

namespace {

void fail_table(const std::string& what) { throw std::invalid_argument("invalid Cayley table: " + what); }

}  // namespace

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<int>>& table, std::string name) {
    int n = static_cast<int>(table.size());
    if (n == 0) fail_table("empty");
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->n_ = n;
    g->name_ = std::move(name);
    g->table_.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table[a].size()) != n) fail_table("row " + std::to_string(a) + " has wrong length");
        for (int b = 0; b < n; ++b) {
            int v = table[a][b];
            if (v < 0 || v >= n) fail_table("entry out of range at (" + std::to_string(a) + "," + std::to_string(b) + ")");
            g->table_[static_cast<size_t>(a) * n + b] = v;
        }
    }
    for (int a = 0; a < n; ++a)
        if (g->mul(0, a) != a || g->mul(a, 0) != a) fail_table("element 0 is not the identity (witness " + std::to_string(a) + ")");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int ab = g->mul(a, b);
            for (int c = 0; c < n; ++c)
                if (g->mul(ab, c) != g->mul(a, g->mul(b, c)))
                    fail_table("associativity fails for (" + std::to_string(a) + "," + std::to_string(b) + "," +
                               std::to_string(c) + ")");
        }
    g->inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (g->mul(a, b) == 0 && g->mul(b, a) == 0) { g->inv_[a] = b; break; }
        if (g->inv_[a] < 0) fail_table("element " + std::to_string(a) + " has no inverse");
    }
    g->finish();
    return g;
}

GroupPtr FiniteGroup::from_permutations(int degree, const std::vector<std::vector<int>>& gens, std::string name) {
    using Perm = std::vector<int>;
    for (const Perm& p : gens) {
        if (static_cast<int>(p.size()) != degree) throw std::invalid_argument("permutation generator has wrong degree");
        std::vector<char> seen(degree, 0);
        for (int x : p) {
            if (x < 0 || x >= degree || seen[x]) throw std::invalid_argument("generator is not a permutation");
            seen[x] = 1;
        }
    }
    auto compose = [&](const Perm& a, const Perm& b) {  // apply a then b
        Perm r(degree);
        for (int i = 0; i < degree; ++i) r[i] = b[a[i]];
        return r;
    };
    Perm id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Perm> elems{id};
    std::map<Perm, int> index{{id, 0}};
    for (size_t i = 0; i < elems.size(); ++i)
        for (const Perm& s : gens) {
            Perm p = compose(elems[i], s);
            if (!index.count(p)) {
                index[p] = static_cast<int>(elems.size());
                elems.push_back(p);
                if (elems.size() > 4096) throw std::invalid_argument("permutation group too large for dense tables");
            }
        }
    int n = static_cast<int>(elems.size());
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->n_ = n;
    g->name_ = std::move(name);
    g->table_.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g->table_[static_cast<size_t>(a) * n + b] = index.at(compose(elems[a], elems[b]));
    g->inv_.assign(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g->mul(a, b) == 0) { g->inv_[a] = b; break; }
    g->perms_ = elems;
    g->finish();
    return g;
}

void FiniteGroup::finish() {
    // greedy generating set: smallest element outside the span so far
    std::vector<char> in(n_, 0);
    in[0] = 1;
    std::vector<int> span{0};
    for (int x = 1; x < n_; ++x) {
        if (in[x]) continue;
        gens_.push_back(x);
        std::deque<int> todo(span.begin(), span.end());
        while (!todo.empty()) {
            int y = todo.front();
            todo.pop_front();
            for (int s : gens_) {
                int z = mul(y, s);
                if (!in[z]) { in[z] = 1; span.push_back(z); todo.push_back(z); }
            }
        }
    }
}

int FiniteGroup::pow(int x, Int k) const {
    int o = element_order(x);
    k = mod_floor(k, o);
    int r = 0;
    for (Int i = 0; i < k; ++i) r = mul(r, x);
    return r;
}

int FiniteGroup::element_order(int x) const {
    int o = 1;
    for (int y = x; y != 0; y = mul(y, x)) ++o;
    return o;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
    std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) t[a][b] = mul(a, b);
    return t;
}

Subgroup::Subgroup(GroupPtr g, std::vector<int> elements) : g_(std::move(g)), elems_(std::move(elements)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    mask_.assign(g_->order(), 0);
    for (int x : elems_) {
        if (x < 0 || x >= g_->order()) throw std::invalid_argument("subgroup element out of range");
        mask_[x] = 1;
    }
    if (elems_.empty() || elems_[0] != 0) throw std::invalid_argument("subgroup must contain the identity");
    for (int a : elems_) {
        if (!mask_[g_->inv(a)]) throw std::invalid_argument("subgroup not closed under inverses");
        for (int b : elems_)
            if (!mask_[g_->mul(a, b)]) throw std::invalid_argument("subgroup not closed under products");
    }
}

Subgroup Subgroup::generated(GroupPtr g, const std::vector<int>& gens) {
    std::vector<char> in(g->order(), 0);
    std::vector<int> elems{0};
    in[0] = 1;
    for (size_t i = 0; i < elems.size(); ++i)
        for (int s : gens) {
            if (s < 0 || s >= g->order()) throw std::invalid_argument("generator out of range");
            int z = g->mul(elems[i], s);
            if (!in[z]) { in[z] = 1; elems.push_back(z); }
        }
    Subgroup h;
    h.g_ = std::move(g);
    std::sort(elems.begin(), elems.end());
    h.elems_ = std::move(elems);
    h.mask_ = std::move(in);
    return h;
}

Subgroup Subgroup::whole(GroupPtr g) {
    std::vector<int> all(g->order());
    std::iota(all.begin(), all.end(), 0);
    Subgroup h;
    h.mask_.assign(g->order(), 1);
    h.elems_ = std::move(all);
    h.g_ = std::move(g);
    return h;
}

Subgroup Subgroup::trivial(GroupPtr g) { return generated(std::move(g), {}); }

bool Subgroup::contains(const Subgroup& o) const {
    if (g_ != o.g_) throw std::invalid_argument("subgroups belong to different groups");
    return std::all_of(o.elems_.begin(), o.elems_.end(), [&](int x) { return mask_[x] != 0; });
}

int Subgroup::index_in(const Subgroup& over) const {
    if (!over.contains(*this)) throw std::invalid_argument("index of a non-subgroup");
    return over.order() / order();
}

Subgroup Subgroup::conjugate(int g) const {
    std::vector<int> e;
    e.reserve(elems_.size());
    for (int x : elems_) e.push_back(g_->conj(g, x));
    std::sort(e.begin(), e.end());
    Subgroup h;
    h.g_ = g_;
    h.mask_.assign(g_->order(), 0);
    for (int x : e) h.mask_[x] = 1;
    h.elems_ = std::move(e);
    return h;
}

Subgroup Subgroup::intersect(const Subgroup& o) const {
    if (g_ != o.g_) throw std::invalid_argument("subgroups belong to different groups");
    Subgroup h;
    h.g_ = g_;
    h.mask_.assign(g_->order(), 0);
    for (int x : elems_)
        if (o.mask_[x]) { h.elems_.push_back(x); h.mask_[x] = 1; }
    return h;
}

Subgroup Subgroup::join(const Subgroup& o) const {
    std::vector<int> gens = elems_;
    gens.insert(gens.end(), o.elems_.begin(), o.elems_.end());
    return generated(g_, gens);
}

bool Subgroup::is_normal_in(const Subgroup& over) const {
    if (!over.contains(*this)) return false;
    for (int g : over.elements())
        for (int x : elems_)
            if (!mask_[g_->conj(g, x)]) return false;
    return true;
}

Subgroup Subgroup::commutator_subgroup() const {
    std::vector<int> gens;
    for (int a : elems_)
        for (int b : elems_) gens.push_back(g_->commutator(a, b));
    return generated(g_, gens);
}

bool Subgroup::operator==(const Subgroup& o) const {
    if (g_ != o.g_) throw std::invalid_argument("comparing subgroups of different groups");
    return elems_ == o.elems_;
}

Subgroup normal_core(const Subgroup& over, const Subgroup& h) {
    Subgroup core = h;
    for (int g : over.elements()) core = core.intersect(h.conjugate(g));
    return core;
}

Subgroup normal_core(const Subgroup& h) { return normal_core(Subgroup::whole(h.group()), h); }

namespace {

// coset id of every ambient element for H x (right) or x H (left); ids by first appearance
std::vector<int> coset_partition(const Subgroup& ambient, const Subgroup& h, Side side, int& count) {
    const auto& g = ambient.group();
    if (!ambient.contains(h)) throw std::invalid_argument("transversal of a non-subgroup");
    std::vector<int> id(g->order(), -1);
    count = 0;
    for (int x : ambient.elements()) {
        if (id[x] >= 0) continue;
        for (int y : h.elements()) id[side == Side::Right ? g->mul(y, x) : g->mul(x, y)] = count;
        ++count;
    }
    return id;
}

}  // namespace

bool Transversal::unitary() const { return std::find(reps.begin(), reps.end(), 0) != reps.end(); }

bool is_transversal(const Subgroup& ambient, const Subgroup& h, const std::vector<int>& reps, Side side) {
    int count = 0;
    std::vector<int> id = coset_partition(ambient, h, side, count);
    if (static_cast<int>(reps.size()) != count) return false;
    std::vector<char> hit(count, 0);
    for (int r : reps) {
        if (r < 0 || r >= ambient.group()->order() || !ambient.contains(r) || hit[id[r]]) return false;
        hit[id[r]] = 1;
    }
    return true;
}

Transversal transversal_from_reps(const Subgroup& ambient, const Subgroup& h, std::vector<int> reps, Side side) {
    if (!is_transversal(ambient, h, reps, side)) throw InvalidReps("representatives do not form a transversal");
    int count = 0;
    std::vector<int> id = coset_partition(ambient, h, side, count);
    std::vector<int> pos(count, -1);
    for (size_t i = 0; i < reps.size(); ++i) pos[id[reps[i]]] = static_cast<int>(i);
    Transversal t{ambient, h, side, std::move(reps), {}};
    t.coset_index.assign(ambient.group()->order(), -1);
    for (int x : ambient.elements()) t.coset_index[x] = pos[id[x]];
    return t;
}

namespace {

Transversal canonical_transversal(const Subgroup& ambient, const Subgroup& h, Side side) {
    int count = 0;
    std::vector<int> id = coset_partition(ambient, h, side, count);
    std::vector<int> reps(count, -1);
    for (int x : ambient.elements())
        if (reps[id[x]] < 0) reps[id[x]] = x;  // ambient elements are ascending
    return transversal_from_reps(ambient, h, reps, side);
}

}  // namespace

Transversal right_transversal(const Subgroup& ambient, const Subgroup& h) {
    return canonical_transversal(ambient, h, Side::Right);
}

Transversal left_transversal(const Subgroup& ambient, const Subgroup& h) {
    return canonical_transversal(ambient, h, Side::Left);
}

Transversal random_right_transversal(const Subgroup& ambient, const Subgroup& h, std::mt19937_64& rng, bool unitary) {
    int count = 0;
    std::vector<int> id = coset_partition(ambient, h, Side::Right, count);
    std::vector<std::vector<int>> cosets(count);
    for (int x : ambient.elements()) cosets[id[x]].push_back(x);
    std::vector<int> reps;
    for (auto& c : cosets) {
        if (unitary && c[0] == 0) { reps.push_back(0); continue; }
        std::uniform_int_distribution<size_t> pick(0, c.size() - 1);
        reps.push_back(c[pick(rng)]);
    }
    std::shuffle(reps.begin(), reps.end(), rng);
    return transversal_from_reps(ambient, h, reps, Side::Right);
}

int t_remover(const Transversal& t, int g) {
    const auto& grp = t.ambient.group();
    int rep = t.rep_of(g);
    return t.side == Side::Right ? grp->mul(g, grp->inv(rep)) : grp->mul(grp->inv(rep), g);
}

std::vector<int> t_permutation(const Transversal& t, int g) {
    const auto& grp = t.ambient.group();
    std::vector<int> sigma(t.reps.size());
    for (size_t i = 0; i < t.reps.size(); ++i) {
        int x = t.side == Side::Right ? grp->mul(t.reps[i], g) : grp->mul(g, t.reps[i]);
        sigma[i] = t.coset_index.at(x);
    }
    return sigma;
}

std::vector<int> double_coset_reps(const Subgroup& ambient, const Subgroup& u, const Subgroup& v) {
    const auto& g = ambient.group();
    std::vector<char> seen(g->order(), 0);
    std::vector<int> reps;
    for (int x : ambient.elements()) {
        if (seen[x]) continue;
        reps.push_back(x);
        for (int a : u.elements())
            for (int b : v.elements()) seen[g->mul(g->mul(a, x), b)] = 1;
    }
    return reps;
}

bool is_double_coset_reps(const Subgroup& ambient, const Subgroup& u, const Subgroup& v, const std::vector<int>& r) {
    const auto& g = ambient.group();
    std::vector<char> seen(g->order(), 0);
    size_t covered = 0;
    for (int x : r) {
        if (x < 0 || x >= g->order() || !ambient.contains(x) || seen[x]) return false;
        for (int a : u.elements())
            for (int b : v.elements()) {
                int y = g->mul(g->mul(a, x), b);
                if (!seen[y]) { seen[y] = 1; ++covered; }
            }
    }
    return covered == ambient.elements().size();
}

Transversal lift_double_coset_transversal(const Subgroup& ambient, const Subgroup& u, const Subgroup& v,
                                          const std::vector<int>& r, const std::vector<std::vector<int>>& tr) {
    if (!is_double_coset_reps(ambient, u, v, r)) throw InvalidReps("not a set of double coset representatives");
    if (tr.size() != r.size()) throw InvalidReps("one transversal per representative required");
    const auto& g = ambient.group();
    std::vector<int> reps;
    for (size_t k = 0; k < r.size(); ++k) {
        Subgroup w = u.conjugate(g->inv(r[k])).intersect(v);
        if (!is_transversal(v, w, tr[k], Side::Right)) throw InvalidReps("per-representative transversal invalid");
        for (int t : tr[k]) reps.push_back(g->mul(r[k], t));
    }
    return transversal_from_reps(ambient, u, reps, Side::Right);
}

AbelianQuotient::AbelianQuotient(const Subgroup& h, const Subgroup& r) : h_(h), r_(r) {
    const auto& g = h.group();
    if (!r.is_normal_in(h)) throw std::invalid_argument("kernel is not a normal subgroup");
    for (int a : h.elements())
        for (int b : h.elements())
            if (!r.contains(g->commutator(a, b))) throw std::invalid_argument("quotient is not abelian");
    // cosets of r, identified by their minimal element
    std::vector<int> coset(g->order(), -1);
    for (int x : h.elements()) {
        if (coset[x] >= 0) continue;
        for (int y : r.elements()) coset[g->mul(x, y)] = x;
    }
    // incremental polycyclic presentation over chosen generators
    std::vector<int> chosen;
    std::map<int, Vec> span{{0, Vec{}}};
    std::vector<Vec> rels;
    auto pad = [](Vec v, size_t n) { v.resize(n, 0); return v; };
    for (int x : h.elements()) {
        if (coset[x] != x || span.count(x)) continue;
        size_t j = chosen.size();
        chosen.push_back(x);
        int k = 1;
        int p = x;
        while (!span.count(coset[p])) { p = g->mul(p, x); ++k; }
        Vec rel = pad(span.at(coset[p]), j + 1);
        for (auto& e : rel) e = -e;
        rel[j] = k;
        rels.push_back(rel);
        std::map<int, Vec> next;
        for (const auto& [c, v] : span) {
            int y = c;
            for (int i = 0; i < k; ++i) {
                Vec w = pad(v, j + 1);
                w[j] = i;
                next.emplace(coset[y], w);
                y = g->mul(y, x);
            }
        }
        span = std::move(next);
    }
    int n = static_cast<int>(chosen.size());
    for (auto& rel : rels) rel = pad(rel, n);
    Presented p = present(n, rels);
    group_ = p.group;
    coords_.assign(g->order(), Vec{});
    for (int x : h.elements()) coords_[x] = group_.reduce(p.to * pad(span.at(coset[x]), n));
    for (int i = 0; i < group_.ngens(); ++i) {
        int e = 0;
        for (int j = 0; j < n; ++j) e = g->mul(e, g->pow(chosen[j], p.lift(j, i)));
        gen_lift_.push_back(e);
    }
}

int AbelianQuotient::lift(const Vec& v) const {
    const auto& g = h_.group();
    Vec w = group_.reduce(v);
    int e = 0;
    for (int i = 0; i < group_.ngens(); ++i) e = g->mul(e, g->pow(gen_lift_[i], w[i]));
    return e;
}

AbelianQuotient abelianization(const Subgroup& h) { return AbelianQuotient(h, h.commutator_subgroup()); }

SubgroupLattice::SubgroupLattice(GroupPtr g) : g_(std::move(g)) {
    std::set<std::vector<int>> found;
    std::vector<Subgroup> cyclic;
    for (int x = 0; x < g_->order(); ++x) {
        Subgroup c = Subgroup::generated(g_, {x});
        if (found.insert(c.elements()).second) cyclic.push_back(c);
    }
    std::vector<Subgroup> all = cyclic;
    for (size_t i = 0; i < all.size(); ++i)
        for (const Subgroup& c : cyclic) {
            if (all[i].contains(c)) continue;
            Subgroup j = all[i].join(c);
            if (found.insert(j.elements()).second) all.push_back(j);
        }
    std::sort(all.begin(), all.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elements() < b.elements();
    });
    subs_ = std::move(all);
    for (int i = 0; i < size(); ++i) ids_[subs_[i].elements()] = i;
    conj_.assign(static_cast<size_t>(g_->order()) * subs_.size(), -1);
    for (int x = 0; x < g_->order(); ++x)
        for (int i = 0; i < size(); ++i) conj_[static_cast<size_t>(x) * subs_.size() + i] = id_of(subs_[i].conjugate(x));
}

int SubgroupLattice::find(const Subgroup& s) const {
    auto it = ids_.find(s.elements());
    return it == ids_.end() ? -1 : it->second;
}

int SubgroupLattice::id_of(const Subgroup& s) const {
    int i = find(s);
    if (i < 0) throw std::invalid_argument("not a subgroup of this lattice");
    return i;
}

int SubgroupLattice::intersect(int a, int b) const { return id_of(subs_.at(a).intersect(subs_.at(b))); }

bool SubgroupLattice::normal_in(int a, int b) const {
    if (!leq(a, b)) return false;
    for (int g : subs_[b].elements())
        if (conj(g, a) != a) return false;
    return true;
}

}  // namespace cfe
