#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "cftengine/group.hpp"
#include "cftengine/report.hpp"

namespace cfe {

// The finite model is too shallow to represent the requested object faithfully.
struct DepthInsufficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InertiaTrivialHorizon : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoLiftInModel : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotUnramified : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<Int> prime_divisors(Int n);
// (P(n), P'(n))
std::pair<Int, Int> p_parts(Int n, const std::set<Int>& primes);

struct PowerSubgroup {
    Int generator;  // n * omega in Z/m
    Int index;      // [Z/m : n Z/m]
};
PowerSubgroup power_subgroup(Int m, Int n);

class SupernaturalNumber {
public:
    SupernaturalNumber() = default;
    explicit SupernaturalNumber(Int n);
    static SupernaturalNumber infinite_power(Int p);

    SupernaturalNumber operator*(const SupernaturalNumber& o) const;
    bool divides(const SupernaturalNumber& o) const;
    bool is_finite() const { return infinite_.empty(); }
    const std::map<Int, Int>& finite_exponents() const { return exps_; }
    const std::set<Int>& infinite_primes() const { return infinite_; }
    std::string str() const;
    bool operator==(const SupernaturalNumber& o) const = default;

private:
    std::map<Int, Int> exps_;
    std::set<Int> infinite_;
};

struct FrobeniusGroup {
    Subgroup sigma;
    Int mult = 0;
    Report axioms;
    bool product_set = false;  // sigma equals the set <h> * I_U
    std::optional<bool> unique;
};

// Surjection d: G -> Z/m with omega = 1.
class RamificationDatum {
public:
    RamificationDatum(GroupPtr g, Int modulus, std::vector<Int> images, std::set<Int> primes = {});

    // every surjection G -> Z/m for every m dividing the exponent of G^ab
    static std::vector<RamificationDatum> all_surjections(const GroupPtr& g);
    // cyclic G with d an isomorphism onto Z/|G|
    static RamificationDatum injective_cyclic(const GroupPtr& g);

    const GroupPtr& group() const { return g_; }
    Int modulus() const { return m_; }
    Int d(int x) const { return d_.at(x); }
    const std::vector<Int>& images() const { return d_; }
    const std::set<Int>& primes() const { return primes_; }

    Subgroup kernel() const;
    Subgroup inertia(const Subgroup& h) const;
    // f_H = [Z/m : d(H)]
    Int residue_index(const Subgroup& h) const;
    // (e_{H|K}, f_{H|K})
    std::pair<Int, Int> degrees(const Subgroup& h, const Subgroup& k) const;
    bool is_unramified(const Subgroup& h, const Subgroup& k) const;
    bool is_totally_ramified(const Subgroup& h, const Subgroup& k) const;

    Int d_h_modulus(const Subgroup& h) const { return m_ / residue_index(h); }
    // d_H(x) in Z/(m/f_H); throws InertiaTrivialHorizon when m/f_H = 1
    Int d_h(const Subgroup& h, int x) const;
    bool is_frobenius(const Subgroup& h, int x) const;

    // canonical representative of phi_{H|U} in H/U
    int frobenius_element(const Subgroup& h, const Subgroup& u) const;
    FrobeniusGroup frobenius_group(int x, const Subgroup& h, const Subgroup& u, bool certify = false) const;
    std::vector<int> frobenius_lifts(const Subgroup& h, const Subgroup& u, int target) const;

private:
    GroupPtr g_;
    Int m_;
    std::vector<Int> d_;
    std::set<Int> primes_;
    mutable std::shared_ptr<const SubgroupLattice> lat_;  // built on demand for uniqueness certificates
};

}  // namespace cfe
