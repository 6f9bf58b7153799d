#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "cftengine/abelian.hpp"

namespace cfe {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Dense Cayley-table group; element 0 is the identity.
class FiniteGroup {
public:
    static GroupPtr from_table(const std::vector<std::vector<int>>& table, std::string name = "");
    static GroupPtr from_permutations(int degree, const std::vector<std::vector<int>>& gens, std::string name = "");

    int order() const { return n_; }
    int mul(int a, int b) const { return table_[static_cast<size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    // g x g^-1
    int conj(int g, int x) const { return mul(mul(g, x), inv_[g]); }
    int pow(int x, Int k) const;
    int element_order(int x) const;
    int commutator(int a, int b) const { return mul(mul(inv_[a], inv_[b]), mul(a, b)); }

    const std::string& name() const { return name_; }
    const std::vector<int>& generators() const { return gens_; }
    bool is_abelian() const;
    std::vector<std::vector<int>> table() const;
    // permutation images when the group came from permutation generators
    const std::vector<std::vector<int>>& permutations() const { return perms_; }

private:
    FiniteGroup() = default;
    void finish();

    int n_ = 0;
    std::vector<int> table_;
    std::vector<int> inv_;
    std::vector<int> gens_;
    std::vector<std::vector<int>> perms_;
    std::string name_;
};

class Subgroup {
public:
    Subgroup() = default;
    // elements must already form a subgroup; validated
    Subgroup(GroupPtr g, std::vector<int> elements);

    static Subgroup generated(GroupPtr g, const std::vector<int>& gens);
    static Subgroup whole(GroupPtr g);
    static Subgroup trivial(GroupPtr g);

    const GroupPtr& group() const { return g_; }
    const std::vector<int>& elements() const { return elems_; }
    int order() const { return static_cast<int>(elems_.size()); }
    bool contains(int x) const { return mask_[x] != 0; }
    bool contains(const Subgroup& o) const;
    int index_in(const Subgroup& over) const;

    Subgroup conjugate(int g) const;  // g H g^-1
    Subgroup intersect(const Subgroup& o) const;
    Subgroup join(const Subgroup& o) const;
    bool is_normal_in(const Subgroup& over) const;
    Subgroup commutator_subgroup() const;

    bool operator==(const Subgroup& o) const;
    bool operator<(const Subgroup& o) const { return elems_ < o.elems_; }

private:
    GroupPtr g_;
    std::vector<int> elems_;
    std::vector<char> mask_;
};

// Normal core of h inside over: largest subgroup of h normal in over.
Subgroup normal_core(const Subgroup& over, const Subgroup& h);
Subgroup normal_core(const Subgroup& h);

enum class Side { Right, Left };

// Right transversal: the ambient is the disjoint union of H t; left: of t H.
struct Transversal {
    Subgroup ambient;
    Subgroup sub;
    Side side = Side::Right;
    std::vector<int> reps;
    std::vector<int> coset_index;  // element of ambient -> position in reps, -1 outside

    int rep_of(int g) const { return reps[coset_index.at(g)]; }
    bool unitary() const;
};

Transversal right_transversal(const Subgroup& ambient, const Subgroup& h);
Transversal left_transversal(const Subgroup& ambient, const Subgroup& h);
Transversal random_right_transversal(const Subgroup& ambient, const Subgroup& h, std::mt19937_64& rng,
                                     bool unitary = false);
Transversal transversal_from_reps(const Subgroup& ambient, const Subgroup& h, std::vector<int> reps,
                                  Side side = Side::Right);  // throws InvalidReps
bool is_transversal(const Subgroup& ambient, const Subgroup& h, const std::vector<int>& reps, Side side);

struct InvalidReps : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// g = t_remover(g) * t for the unique rep t (right transversals)
int t_remover(const Transversal& t, int g);
// sigma[i] = position of the rep of H reps[i] g
std::vector<int> t_permutation(const Transversal& t, int g);

std::vector<int> double_coset_reps(const Subgroup& ambient, const Subgroup& u, const Subgroup& v);
bool is_double_coset_reps(const Subgroup& ambient, const Subgroup& u, const Subgroup& v, const std::vector<int>& r);
// {rho * t}: per rho, tr[rho] is a right transversal of (rho^-1 U rho) ∩ V in V
Transversal lift_double_coset_transversal(const Subgroup& ambient, const Subgroup& u, const Subgroup& v,
                                          const std::vector<int>& r, const std::vector<std::vector<int>>& tr);

// h/r for r normal in h with abelian quotient, with coordinates for every element of h.
class AbelianQuotient {
public:
    AbelianQuotient(const Subgroup& h, const Subgroup& r);

    const FgAbGroup& group() const { return group_; }
    const Subgroup& sub() const { return h_; }
    const Subgroup& kernel() const { return r_; }
    Vec operator()(int x) const { return coords_.at(x); }
    int lift(const Vec& v) const;
    int lift_gen(int i) const { return gen_lift_.at(i); }

private:
    Subgroup h_;
    Subgroup r_;
    FgAbGroup group_;
    std::vector<Vec> coords_;
    std::vector<int> gen_lift_;
};

AbelianQuotient abelianization(const Subgroup& h);

// All subgroups of a group with a conjugation table; ids sorted by (order, elements).
class SubgroupLattice {
public:
    explicit SubgroupLattice(GroupPtr g);

    const GroupPtr& group() const { return g_; }
    int size() const { return static_cast<int>(subs_.size()); }
    const Subgroup& operator[](int id) const { return subs_.at(id); }
    const std::vector<Subgroup>& all() const { return subs_; }
    int id_of(const Subgroup& s) const;
    int find(const Subgroup& s) const;  // -1 when absent
    int conj(int g, int id) const { return conj_[static_cast<size_t>(g) * subs_.size() + id]; }
    int whole() const { return size() - 1; }
    int trivial() const { return 0; }
    int intersect(int a, int b) const;
    bool leq(int a, int b) const { return subs_[b].contains(subs_[a]); }
    bool normal_in(int a, int b) const;

private:
    GroupPtr g_;
    std::vector<Subgroup> subs_;
    std::map<std::vector<int>, int> ids_;
    std::vector<int> conj_;
};

}  // namespace cfe
