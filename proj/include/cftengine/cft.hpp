#pragma once

#include <map>
#include <optional>

#include "cftengine/mackey.hpp"

namespace cfe {

struct NotMackeyCover : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ImageMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotUrFnd : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// reciprocity requested on data that did not pass validation
struct NotValidated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpectrumPair {
    int h;
    int u;
    bool operator==(const SpectrumPair& o) const = default;
};

// Pairs (H, U) with U normal in H, over a flat subgroup system. res keeps U and shrinks H to an
// intermediate I; ind goes from (I, V) to (H, U) when I <= H and V <= U.
class Spectrum {
public:
    Spectrum(std::shared_ptr<const SubgroupSystem> flat, std::vector<SpectrumPair> pairs);

    // U ranges over base members normal in H and admissible for induction into H
    static Spectrum all_normal(std::shared_ptr<const SubgroupSystem> flat);
    // same, restricted to U with I_U = I_H
    static Spectrum unramified(std::shared_ptr<const SubgroupSystem> flat, const RamificationDatum& d);

    const SubgroupSystem& flat() const { return *flat_; }
    const std::shared_ptr<const SubgroupSystem>& flat_ptr() const { return flat_; }
    int size() const { return static_cast<int>(pairs_.size()); }
    const std::vector<SpectrumPair>& pairs() const { return pairs_; }
    const SpectrumPair& pair(int p) const { return pairs_.at(p); }
    int index_of(int h, int u) const;  // -1 when absent
    std::vector<int> extensions(int h) const;
    const DomainPtr& domain() const { return dom_; }
    std::string label(int p) const;

    // extension closure (intermediate normal subgroups) and lattice closure (meets and joins)
    Report coherence() const;

private:
    std::shared_ptr<const SubgroupSystem> flat_;
    std::vector<SpectrumPair> pairs_;
    std::map<std::pair<int, int>, int> index_;
    DomainPtr dom_;
};

// C^E(H, U) = C(H)
RicFunctor lift_to_spectrum(const RicFunctor& c, const Spectrum& sp);

// (H, U) -> H / U R(H) with transfer as restriction
struct TautologicalCft {
    RicFunctor functor;
    std::map<int, AbelianQuotient> quotients;
};
TautologicalCft tautological_cft(const Spectrum& sp, const AbelianizationSystem& r);

// (H, U) -> C(H) / ind_{H,U} C(U)
QuotientFunctor induction_representation(const RicFunctor& c, const Spectrum& sp);

QuotientData tate_h0(const RicFunctor& c, int h, int u);
// ker(ind_{H,U}) modulo the augmentation submodule of C(U)
FgAbGroup tate_hminus1(const RicFunctor& c, int h, int u);
bool satisfies_class_field_axiom(const RicFunctor& c, int h, int u);
bool satisfies_hilbert90(const RicFunctor& c, int h, int u);
// over every pair of the spectrum with U != H
Report check_class_field_axiom(const RicFunctor& c, const Spectrum& sp);
Report check_hilbert90(const RicFunctor& c, const Spectrum& sp);

// Order together with the number of n-torsion elements for each n dividing the order;
// determines a finite abelian group up to isomorphism.
struct AbelianSignature {
    Int order = 1;
    std::map<Int, Int> torsion;
    bool operator==(const AbelianSignature& o) const = default;
};
AbelianSignature signature(const FgAbGroup& a);
// element enumeration; nullopt when a value group is infinite or larger than limit
std::optional<AbelianSignature> brute_tate_h0(const RicFunctor& c, int h, int u, Int limit = 10000);
std::optional<AbelianSignature> brute_tate_hminus1(const RicFunctor& c, int h, int u, Int limit = 10000);

// Tate groups of the H/U-module A^U for cyclic H/U, straight from the module
struct CyclicTate {
    FgAbGroup h0;
    FgAbGroup hminus1;
};
CyclicTate cyclic_module_tate(const GModule& a, const Subgroup& h, const Subgroup& u);

// Components v_H: C(H) -> Omega with Omega = Z or Z/m and distinguished generator 1.
struct ValuationFamily {
    FgAbGroup omega;
    std::map<int, AbHom> components;
};
Report validate_valuation(const RicFunctor& c, const ValuationFamily& v, const RamificationDatum& d);
// v_H = v o ind_{G,H} / f_H; Omega = Z only
ValuationFamily induce_valuation_family(const RicFunctor& c, const RamificationDatum& d, const AbHom& v_top);

// unramified pairs: value index, induction onto valuation kernels, Tate bound
Report validate_urfnd(const RicFunctor& c, const ValuationFamily& v, const RamificationDatum& d);

struct FndValidation {
    Report required;  // valuation, unramified conditions, kernel exactness
    Report fesenko;   // sufficient conditions on the whole functor, informational
    bool ok() const { return required.ok(); }
};
FndValidation validate_fnd(const RicFunctor& c, const ValuationFamily& v, const RamificationDatum& d);

struct ReciprocityTable {
    int pair = -1;
    int h = -1;
    int u = -1;
    FgAbGroup source;  // (H/U)^ab
    FgAbGroup target;  // C(H) / ind C(U)
    AbHom map;
    bool well_defined = true;
    bool is_iso = false;
    bool lift_independent = false;
    bool prime_independent = false;
    bool multiplicative = false;
    std::optional<bool> matches_unramified;
    int lifts_checked = 0;
    int lifts_skipped = 0;
    std::string witness;
};

struct UpsilonValue {
    Vec value;  // in target coordinates
    int sigma = -1;
    Int mult = 0;
    bool prime_independent = false;
};

struct UpsilonMorphism {
    FunctorMorphism morphism;
    std::vector<ReciprocityTable> tables;
    Report report;
};

// A functor with valuation and ramification datum, and the reciprocity maps built from them.
class ReciprocityContext {
public:
    ReciprocityContext(RicFunctor c, ValuationFamily v, RamificationDatum d);

    const RicFunctor& functor() const { return c_; }
    const ValuationFamily& valuation() const { return v_; }
    const RamificationDatum& datum() const { return d_; }
    const Spectrum& spectrum() const { return sp_; }
    const TautologicalCft& tautological() const { return taut_; }
    const QuotientFunctor& h0() const { return h0_; }

    const Report& urfnd() const;
    const FndValidation& validation() const;

    ReciprocityTable unramified_upsilon(int h, int u) const;
    UpsilonValue upsilon_tilde(int x, int h, int u) const;
    ReciprocityTable upsilon(int h, int u, bool force = false) const;
    // tables over every pair, assembled into a morphism from the tautological CFT to C(H)/ind C(U)
    UpsilonMorphism upsilon_morphism(bool force = false) const;

private:
    Vec prime_element(int h) const;
    AbHom table_map(int p, const std::vector<Vec>& gen_values, ReciprocityTable& t) const;

    RicFunctor c_;
    ValuationFamily v_;
    RamificationDatum d_;
    Spectrum sp_;
    TautologicalCft taut_;
    QuotientFunctor h0_;
    mutable std::optional<Report> urfnd_;
    mutable std::optional<FndValidation> fnd_;
};

// Norm subgroups Phi(U) of C(H) for U ranging over some extensions of H.
struct NormAssignment {
    int h = -1;
    FgAbGroup value;
    std::map<int, std::vector<Vec>> norms;
};
// U with R <= U normal in H, U admissible for induction into H
std::vector<int> r_lattice(const SubgroupSystem& sys, int h, const Subgroup& r);
NormAssignment norm_assignment(const RicFunctor& c, int h, const std::vector<int>& extensions);
// monotone, joins to sums, meets to intersections, injective
Report lattice_property_check(const SubgroupSystem& sys, const NormAssignment& a);

enum class ReductionMode { Prime, PrimePower };

struct ReducedVerdict {
    Report hypotheses;
    Report reduced;
    Report full;
    bool consistent = true;  // never reduced and hypotheses passing while the full check fails
};
// Isomorphy of theta on pairs with U >= R(H): the reduced check only looks at pairs with H/U
// cyclic of prime (power) order. When c is given, Hilbert 90 joins the class field hypothesis.
ReducedVerdict reduced_verification(const Spectrum& sp, const RicFunctor& source, const RicFunctor& target,
                                    const FunctorMorphism& theta, const AbelianizationSystem& r, ReductionMode mode,
                                    const RicFunctor* c = nullptr);

}  // namespace cfe
