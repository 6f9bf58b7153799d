#include "cftengine/catalog.hpp"

#include <numeric>

namespace cfe {

GroupPtr metacyclic_group(int m, int n, int r, int s, std::string name) {
    Int rn = 1;
    for (int i = 0; i < n; ++i) rn = rn * r % m;
    if (rn != 1 % m || (static_cast<Int>(r) * s - s) % m != 0)
        throw std::invalid_argument("inconsistent metacyclic parameters");
    std::vector<Int> rpow(n, 1);
    for (int j = 1; j < n; ++j) rpow[j] = rpow[j - 1] * r % m;
    int order = m * n;
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int x = 0; x < order; ++x)
        for (int y = 0; y < order; ++y) {
            int i = x % m, j = x / m, k = y % m, l = y / m;
            Int a = i + rpow[j] * k;
            int b = j + l;
            if (b >= n) { b -= n; a += s; }
            t[x][y] = static_cast<int>(mod_floor(a, m)) + m * b;
        }
    return FiniteGroup::from_table(t, std::move(name));
}

GroupPtr cyclic_group(int n) { return metacyclic_group(n, 1, 1, 0, "C" + std::to_string(n)); }

GroupPtr dihedral_group(int n) { return metacyclic_group(n, 2, n - 1, 0, "D" + std::to_string(n)); }

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, std::string name) {
    int na = a->order(), nb = b->order();
    std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
    for (int x = 0; x < na * nb; ++x)
        for (int y = 0; y < na * nb; ++y) t[x][y] = a->mul(x % na, y % na) + na * b->mul(x / na, y / na);
    if (name.empty()) name = a->name() + "x" + b->name();
    return FiniteGroup::from_table(t, std::move(name));
}

GroupPtr semidirect_c2(const GroupPtr& n, const std::vector<int>& phi, std::string name) {
    int k = n->order();
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
            if (phi.at(n->mul(x, y)) != n->mul(phi[x], phi[y])) throw std::invalid_argument("not an automorphism");
    for (int x = 0; x < k; ++x)
        if (phi[phi[x]] != x) throw std::invalid_argument("automorphism is not an involution");
    std::vector<std::vector<int>> t(2 * k, std::vector<int>(2 * k));
    for (int x = 0; x < 2 * k; ++x)
        for (int y = 0; y < 2 * k; ++y) {
            int a = x % k, b = x / k, c = y % k, d = y / k;
            t[x][y] = n->mul(a, b ? phi[c] : c) + k * ((b + d) % 2);
        }
    return FiniteGroup::from_table(t, std::move(name));
}

GroupPtr symmetric_group(int n) {
    std::vector<int> cycle(n), swap(n);
    std::iota(cycle.begin(), cycle.end(), 1);
    cycle[n - 1] = 0;
    std::iota(swap.begin(), swap.end(), 0);
    if (n > 1) std::swap(swap[0], swap[1]);
    return FiniteGroup::from_permutations(n, {cycle, swap}, "S" + std::to_string(n));
}

GroupPtr alternating_group(int n) {
    std::vector<std::vector<int>> gens;
    for (int i = 2; i < n; ++i) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        p[0] = 1; p[1] = i; p[i] = 0;  // 3-cycle (0 1 i)
        gens.push_back(p);
    }
    return FiniteGroup::from_permutations(n, gens, "A" + std::to_string(n));
}

namespace {

std::vector<GroupPtr> build_catalog() {
    std::vector<GroupPtr> c;
    auto C = [](int n) { return cyclic_group(n); };
    auto X = [](const GroupPtr& a, const GroupPtr& b, const std::string& name) { return direct_product(a, b, name); };
    c.push_back(C(1));
    c.push_back(C(2));
    c.push_back(C(3));
    c.push_back(C(4));
    c.push_back(X(C(2), C(2), "C2xC2"));
    c.push_back(C(5));
    c.push_back(C(6));
    c.push_back(symmetric_group(3));
    c.push_back(C(7));
    c.push_back(C(8));
    c.push_back(X(C(4), C(2), "C4xC2"));
    GroupPtr c222 = X(X(C(2), C(2), "C2xC2"), C(2), "C2xC2xC2");
    c.push_back(c222);
    GroupPtr d4 = dihedral_group(4);
    c.push_back(d4);
    GroupPtr q8 = metacyclic_group(4, 2, 3, 2, "Q8");
    c.push_back(q8);
    c.push_back(C(9));
    c.push_back(X(C(3), C(3), "C3xC3"));
    c.push_back(C(10));
    c.push_back(dihedral_group(5));
    c.push_back(C(11));
    c.push_back(C(12));
    c.push_back(X(C(6), C(2), "C6xC2"));
    c.push_back(alternating_group(4));
    c.push_back(dihedral_group(6));
    c.push_back(metacyclic_group(6, 2, 5, 3, "Dic3"));
    c.push_back(C(13));
    c.push_back(C(14));
    c.push_back(dihedral_group(7));
    c.push_back(C(15));
    c.push_back(C(16));
    c.push_back(X(C(4), C(4), "C4xC4"));
    {
        // C4xC2 = <a> x <b>, index a^i b^j = i + 4j; involution a -> ab, b -> b
        GroupPtr n = X(C(4), C(2), "C4xC2");
        std::vector<int> phi(8);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 2; ++j) phi[i + 4 * j] = i + 4 * ((j + i) % 2);
        c.push_back(semidirect_c2(n, phi, "C4xC2:C2"));
    }
    c.push_back(metacyclic_group(4, 4, 3, 0, "C4:C4"));
    c.push_back(X(C(8), C(2), "C8xC2"));
    c.push_back(metacyclic_group(8, 2, 5, 0, "M16"));
    c.push_back(dihedral_group(8));
    c.push_back(metacyclic_group(8, 2, 3, 0, "QD16"));
    c.push_back(metacyclic_group(8, 2, 7, 4, "Q16"));
    c.push_back(X(X(C(4), C(2), "C4xC2"), C(2), "C4xC2xC2"));
    c.push_back(X(d4, C(2), "D4xC2"));
    c.push_back(X(q8, C(2), "Q8xC2"));
    {
        // central product C4oD4: involution fixing a, b -> a^2 b
        GroupPtr n = X(C(4), C(2), "C4xC2");
        std::vector<int> phi(8);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 2; ++j) phi[i + 4 * j] = (i + 2 * j) % 4 + 4 * j;
        c.push_back(semidirect_c2(n, phi, "C4oD4"));
    }
    c.push_back(X(c222, C(2), "C2^4"));
    c.push_back(symmetric_group(4));
    return c;
}

}  // namespace

const std::vector<GroupPtr>& catalog() {
    static const std::vector<GroupPtr> groups = build_catalog();
    return groups;
}

GroupPtr catalog_group(const std::string& name) {
    for (const auto& g : catalog())
        if (g->name() == name) return g;
    if (name == "C1") return catalog()[0];
    throw std::invalid_argument("unknown catalog group: " + name);
}

}  // namespace cfe
