#include "cftengine/ramification.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cfe {

std::vector<Int> prime_divisors(Int n) {
    if (n < 1) throw std::invalid_argument("prime_divisors needs n >= 1");
    std::vector<Int> out;
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

std::pair<Int, Int> p_parts(Int n, const std::set<Int>& primes) {
    if (n < 1) throw std::invalid_argument("p_parts needs n >= 1");
    Int inside = 1;
    Int rest = n;
    for (Int p : prime_divisors(n))
        if (primes.count(p))
            while (rest % p == 0) { rest /= p; inside *= p; }
    return {inside, rest};
}

PowerSubgroup power_subgroup(Int m, Int n) {
    if (m < 1) throw std::invalid_argument("power_subgroup needs m >= 1");
    return {mod_floor(n, m), gcd_int(mod_floor(n, m), m)};
}

SupernaturalNumber::SupernaturalNumber(Int n) {
    if (n < 1) throw std::invalid_argument("supernatural numbers are positive");
    for (Int p : prime_divisors(n)) {
        Int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        exps_[p] = e;
    }
}

SupernaturalNumber SupernaturalNumber::infinite_power(Int p) {
    if (prime_divisors(p) != std::vector<Int>{p}) throw std::invalid_argument("infinite_power needs a prime");
    SupernaturalNumber s;
    s.infinite_.insert(p);
    return s;
}

SupernaturalNumber SupernaturalNumber::operator*(const SupernaturalNumber& o) const {
    SupernaturalNumber r;
    r.infinite_ = infinite_;
    r.infinite_.insert(o.infinite_.begin(), o.infinite_.end());
    for (const auto* s : {this, &o})
        for (auto [p, e] : s->exps_)
            if (!r.infinite_.count(p)) r.exps_[p] += e;
    return r;
}

bool SupernaturalNumber::divides(const SupernaturalNumber& o) const {
    for (Int p : infinite_)
        if (!o.infinite_.count(p)) return false;
    for (auto [p, e] : exps_) {
        if (o.infinite_.count(p)) continue;
        auto it = o.exps_.find(p);
        if (it == o.exps_.end() || it->second < e) return false;
    }
    return true;
}

std::string SupernaturalNumber::str() const {
    std::set<Int> primes = infinite_;
    for (auto [p, e] : exps_) primes.insert(p);
    if (primes.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (Int p : primes) {
        os << (first ? "" : "*") << p;
        first = false;
        if (infinite_.count(p)) os << "^inf";
        else if (exps_.at(p) > 1) os << "^" << exps_.at(p);
    }
    return os.str();
}

RamificationDatum::RamificationDatum(GroupPtr g, Int modulus, std::vector<Int> images, std::set<Int> primes)
    : g_(std::move(g)), m_(modulus), d_(std::move(images)), primes_(std::move(primes)) {
    if (m_ < 1) throw std::invalid_argument("ramification modulus must be positive");
    int n = g_->order();
    if (static_cast<int>(d_.size()) != n) throw std::invalid_argument("d needs one image per group element");
    for (Int& v : d_) v = mod_floor(v, m_);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (mod_floor(d_[a] + d_[b], m_) != d_[g_->mul(a, b)])
                throw std::invalid_argument("d is not a homomorphism at (" + std::to_string(a) + "," +
                                            std::to_string(b) + ")");
    Int gg = m_;
    for (Int v : d_) gg = gcd_int(gg, v);
    if (gg != 1) throw std::invalid_argument("d is not surjective onto Z/" + std::to_string(m_));
    std::set<Int> needed;
    for (Int p : prime_divisors(n)) needed.insert(p);
    for (Int p : prime_divisors(m_)) needed.insert(p);
    if (primes_.empty()) primes_ = needed;
    for (Int p : needed)
        if (!primes_.count(p)) throw std::invalid_argument("prime set misses " + std::to_string(p));
    for (Int p : primes_)
        if (prime_divisors(p) != std::vector<Int>{p}) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

std::vector<RamificationDatum> RamificationDatum::all_surjections(const GroupPtr& g) {
    AbelianQuotient ab = abelianization(Subgroup::whole(g));
    const FgAbGroup& a = ab.group();
    Int e = a.is_trivial() ? 1 : a.exponent();
    std::vector<RamificationDatum> out;
    for (Int m = 1; m <= e; ++m) {
        if (e % m) continue;
        int k = a.ngens();
        // admissible images of each generator: f_i * a_i = 0 mod m
        std::vector<std::vector<Int>> choices(k);
        for (int i = 0; i < k; ++i)
            for (Int v = 0; v < m; ++v)
                if (mod_floor(a.modulus(i) * v, m) == 0) choices[i].push_back(v);
        std::vector<size_t> idx(k, 0);
        while (true) {
            Int gg = m;
            for (int i = 0; i < k; ++i) gg = gcd_int(gg, choices[i][idx[i]]);
            if (gg == 1) {
                std::vector<Int> d(g->order());
                for (int x = 0; x < g->order(); ++x) {
                    Vec c = ab(x);
                    Int s = 0;
                    for (int i = 0; i < k; ++i) s += c[i] * choices[i][idx[i]];
                    d[x] = mod_floor(s, m);
                }
                out.emplace_back(g, m, d);
            }
            int pos = 0;
            while (pos < k && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
            if (pos == k) break;
        }
    }
    return out;
}

RamificationDatum RamificationDatum::injective_cyclic(const GroupPtr& g) {
    int n = g->order();
    for (int x = 0; x < n; ++x)
        if (g->element_order(x) == n) {
            std::vector<Int> d(n);
            for (int k = 0; k < n; ++k) d[g->pow(x, k)] = k;
            return RamificationDatum(g, n, d);
        }
    throw std::invalid_argument(g->name() + " is not cyclic");
}

Subgroup RamificationDatum::kernel() const {
    std::vector<int> els;
    for (int x = 0; x < g_->order(); ++x)
        if (d_[x] == 0) els.push_back(x);
    return Subgroup(g_, els);
}

Subgroup RamificationDatum::inertia(const Subgroup& h) const {
    std::vector<int> els;
    for (int x : h.elements())
        if (d_[x] == 0) els.push_back(x);
    return Subgroup(g_, els);
}

Int RamificationDatum::residue_index(const Subgroup& h) const {
    Int gg = m_;
    for (int x : h.elements()) gg = gcd_int(gg, d_[x]);
    return gg;
}

std::pair<Int, Int> RamificationDatum::degrees(const Subgroup& h, const Subgroup& k) const {
    if (!h.contains(k)) throw std::invalid_argument("degrees need K <= H");
    Int e = inertia(h).order() / inertia(k).order();
    Int f = residue_index(k) / residue_index(h);
    return {e, f};
}

bool RamificationDatum::is_unramified(const Subgroup& h, const Subgroup& k) const { return degrees(h, k).first == 1; }

bool RamificationDatum::is_totally_ramified(const Subgroup& h, const Subgroup& k) const {
    return degrees(h, k).second == 1;
}

Int RamificationDatum::d_h(const Subgroup& h, int x) const {
    if (!h.contains(x)) throw std::invalid_argument("d_H evaluated outside H");
    Int f = residue_index(h);
    Int horizon = m_ / f;
    if (horizon == 1) throw InertiaTrivialHorizon("d_H has trivial codomain: m / f_H = 1");
    return (d_[x] / f) % horizon;
}

bool RamificationDatum::is_frobenius(const Subgroup& h, int x) const {
    if (d_h_modulus(h) == 1) return false;
    return d_h(h, x) != 0;
}

int RamificationDatum::frobenius_element(const Subgroup& h, const Subgroup& u) const {
    if (!h.contains(u) || !u.is_normal_in(h)) throw std::invalid_argument("frobenius_element needs U normal in H");
    if (!(inertia(u) == inertia(h))) throw NotUnramified("U is ramified in H");
    if (u.order() == h.order()) return 0;
    for (int x : h.elements())
        if (d_h(h, x) == 1) {
            int best = x;
            for (int y : u.elements()) best = std::min(best, g_->mul(x, y));
            return best;
        }
    throw std::logic_error("d_H is not surjective");
}

FrobeniusGroup RamificationDatum::frobenius_group(int x, const Subgroup& h, const Subgroup& u, bool certify) const {
    if (!h.contains(x) || !h.contains(u)) throw std::invalid_argument("frobenius_group needs h in H and U <= H");
    Int k = d_h(h, x);
    if (k == 0) throw std::invalid_argument("d_H(h) = 0: not a Frobenius candidate");
    FrobeniusGroup fg;
    fg.mult = k;
    Subgroup iu = inertia(u);
    Subgroup cyc = Subgroup::generated(g_, {x});
    fg.sigma = cyc.join(iu);
    std::set<int> prod;
    for (int a : cyc.elements())
        for (int b : iu.elements()) prod.insert(g_->mul(a, b));
    fg.product_set = static_cast<int>(prod.size()) == fg.sigma.order();
    Int p_part = p_parts(k, primes_).first;
    Int f_sigma = degrees(h, fg.sigma).second;
    fg.axioms.add("contains_h", fg.sigma.contains(x));
    fg.axioms.add("residue_degree", f_sigma == p_part,
                  f_sigma == p_part ? "" : "f=" + std::to_string(f_sigma) + " P(mult)=" + std::to_string(p_part));
    fg.axioms.add("inertia", inertia(fg.sigma) == iu);
    if (!fg.axioms.ok())
        throw DepthInsufficient("Frobenius group axiom " + fg.axioms.first_failure()->name + " fails for h=" +
                                std::to_string(x) + " (mult " + std::to_string(k) + ")");
    if (certify) {
        if (!lat_) lat_ = std::make_shared<const SubgroupLattice>(g_);
        int count = 0;
        for (const Subgroup& s : lat_->all()) {
            if (!h.contains(s) || !s.contains(x)) continue;
            if (degrees(h, s).second == p_part && inertia(s) == iu) ++count;
        }
        fg.unique = count == 1;
    }
    return fg;
}

std::vector<int> RamificationDatum::frobenius_lifts(const Subgroup& h, const Subgroup& u, int target) const {
    if (!h.contains(target) || !h.contains(u)) throw std::invalid_argument("frobenius_lifts needs target in H, U <= H");
    std::vector<int> out;
    for (int y : u.elements()) {
        int z = g_->mul(target, y);
        if (is_frobenius(h, z)) out.push_back(z);
    }
    std::sort(out.begin(), out.end());
    if (out.empty()) throw NoLiftInModel("coset of " + std::to_string(target) + " has no Frobenius lift in the model");
    return out;
}

}  // namespace cfe
