#pragma once

// Group constructors behind the CLI preset names, plus an abstract
// multiplication-table group used for outer automorphism groups.

#include <sstream>

#include "group.hpp"

namespace fuslim {

inline GroupPtr symmetric_group(int n) {
    check_arg(n >= 1, "symmetric(n): n >= 1");
    if (n == 1) return group_from_generators(1, {});
    std::vector<Perm> gens;
    std::vector<int> cyc(n);
    for (int i = 0; i < n; ++i) cyc[i] = i;
    gens.push_back(perm_from_cycles(n, {cyc}));
    gens.push_back(perm_from_cycles(n, {{0, 1}}));
    return group_from_generators(n, gens);
}

inline GroupPtr alternating_group(int n) {
    check_arg(n >= 3, "alternating(n): n >= 3");
    std::vector<Perm> gens;
    for (int i = 2; i < n; ++i) gens.push_back(perm_from_cycles(n, {{0, 1, i}}));
    return group_from_generators(n, gens);
}

// Dihedral group of the given order 2n acting on n points.
inline GroupPtr dihedral_group(int order) {
    check_arg(order >= 4 && order % 2 == 0, "dihedral(2n): even order >= 4");
    int n = order / 2;
    std::vector<int> rot(n), refl(n);
    for (int i = 0; i < n; ++i) {
        rot[i] = (i + 1) % n;
        refl[i] = (n - i) % n;
    }
    return group_from_generators(n, {Perm::from_ints(rot), Perm::from_ints(refl)});
}

inline GroupPtr cyclic_group(int n) {
    check_arg(n >= 1, "cyclic(n): n >= 1");
    if (n == 1) return group_from_generators(1, {});
    std::vector<int> rot(n);
    for (int i = 0; i < n; ++i) rot[i] = (i + 1) % n;
    return group_from_generators(n, {Perm::from_ints(rot)});
}

// (Z/p)^k acting on k blocks of p points.
inline GroupPtr elementary_abelian_group(int p, int k) {
    check_arg(is_prime(p) && k >= 1, "elementary_abelian(p,k): p prime, k >= 1");
    int deg = p * k;
    std::vector<Perm> gens;
    for (int b = 0; b < k; ++b) {
        std::vector<int> img(deg);
        for (int i = 0; i < deg; ++i) img[i] = i;
        for (int i = 0; i < p; ++i) img[b * p + i] = b * p + (i + 1) % p;
        gens.push_back(Perm::from_ints(img));
    }
    return group_from_generators(deg, gens);
}

// Upper unitriangular 3x3 matrices over F_p acting on F_p^3: the extraspecial
// group of order p^3 and exponent p (p odd).
inline GroupPtr extraspecial_exponent_p(int p) {
    check_arg(p == 3 || p == 5, "extraspecial_exponent_p: p in {3,5}");
    int deg = p * p * p;
    auto vec_index = [&](int x, int y, int z) { return (x * p + y) * p + z; };
    // generators: I + E12 and I + E23
    auto act = [&](int a12, int a23, int a13) {
        std::vector<int> img(deg);
        for (int x = 0; x < p; ++x)
            for (int y = 0; y < p; ++y)
                for (int z = 0; z < p; ++z) {
                    int nx = (x + a12 * y + a13 * z) % p;
                    int ny = (y + a23 * z) % p;
                    img[vec_index(x, y, z)] = vec_index(nx, ny, z);
                }
        return Perm::from_ints(img);
    };
    return group_from_generators(deg, {act(1, 0, 0), act(0, 1, 0)});
}

inline GroupPtr quaternion8() {
    // regular representation built from the abstract table of Q8
    // elements: 1, -1, i, -i, j, -j, k, -k
    auto idx = [](int sign, int axis) { return axis * 2 + (sign < 0 ? 1 : 0); };
    struct Q { int sign, axis; };  // axis: 0=1, 1=i, 2=j, 3=k
    auto mul = [&](Q a, Q b) -> Q {
        static const int tab[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
        return Q{a.sign * b.sign * sgn[a.axis][b.axis], tab[a.axis][b.axis]};
    };
    std::vector<Q> elems;
    for (int axis = 0; axis < 4; ++axis)
        for (int sign : {+1, -1}) elems.push_back(Q{sign, axis});
    std::vector<Perm> gens;
    for (Q gq : {Q{+1, 1}, Q{+1, 2}}) {
        std::vector<int> img(8);
        for (const Q& x : elems) {
            Q y = mul(gq, x);
            img[idx(x.sign, x.axis)] = idx(y.sign, y.axis);
        }
        gens.push_back(Perm::from_ints(img));
    }
    auto g = group_from_generators(8, gens);
    check_invariant(g->size() == 8, "quaternion8: wrong order");
    return g;
}

// External direct product acting on the disjoint union of the point sets.
inline GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
    int deg = a->degree() + b->degree();
    std::vector<Perm> gens;
    for (const auto& g : a->generators()) {
        std::vector<int> img(deg);
        for (int i = 0; i < a->degree(); ++i) img[i] = g(i);
        for (int i = 0; i < b->degree(); ++i) img[a->degree() + i] = a->degree() + i;
        gens.push_back(Perm::from_ints(img));
    }
    for (const auto& g : b->generators()) {
        std::vector<int> img(deg);
        for (int i = 0; i < a->degree(); ++i) img[i] = i;
        for (int i = 0; i < b->degree(); ++i) img[a->degree() + i] = a->degree() + g(i);
        gens.push_back(Perm::from_ints(img));
    }
    return group_from_generators(deg, gens, kDefaultGroupCap);
}

// Parses "preset:symmetric:4", "preset:elementary_abelian:2:3", ...
inline GroupPtr group_from_preset(const std::string& name) {
    std::vector<std::string> parts;
    std::stringstream ss(name);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    check_arg(!parts.empty(), "empty preset name");
    size_t k = (parts[0] == "preset") ? 1 : 0;
    check_arg(k < parts.size(), "malformed preset name: " + name);
    const std::string& kind = parts[k];
    auto arg = [&](size_t i) -> int {
        check_arg(k + i < parts.size(), "preset " + kind + ": missing argument");
        return std::stoi(parts[k + i]);
    };
    if (kind == "symmetric") return symmetric_group(arg(1));
    if (kind == "alternating") return alternating_group(arg(1));
    if (kind == "dihedral") return dihedral_group(arg(1));
    if (kind == "cyclic") return cyclic_group(arg(1));
    if (kind == "elementary_abelian") return elementary_abelian_group(arg(1), arg(2));
    if (kind == "extraspecial_exponent_p") return extraspecial_exponent_p(arg(1));
    if (kind == "quaternion8") return quaternion8();
    throw ArgumentError("unknown preset: " + name);
}

// An abstract finite group given by its multiplication table; used for
// automorphism and outer automorphism groups. Interface mirrors the parts of
// FiniteGroup the generic algorithms need.
class TableGroup {
public:
    explicit TableGroup(std::vector<std::vector<int>> table) : tab_(std::move(table)) {
        int n = int(tab_.size());
        // identity must be index 0
        for (int j = 0; j < n; ++j)
            check_arg(tab_[0][j] == j && tab_[j][0] == j, "TableGroup: index 0 is not the identity");
        inv_.assign(n, -1);
        orders_.assign(n, 0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j)
                if (tab_[i][j] == 0) { inv_[i] = j; break; }
            check_arg(inv_[i] >= 0, "TableGroup: missing inverse");
            int x = i, o = 1;
            while (x != 0) { x = tab_[x][i]; ++o; }
            orders_[i] = o;
        }
    }

    int size() const { return int(tab_.size()); }
    int mul(int i, int j) const { return tab_[i][j]; }
    int inv(int i) const { return inv_[i]; }
    int id() const { return 0; }
    int element_order(int i) const { return orders_[i]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }

private:
    std::vector<std::vector<int>> tab_;
    std::vector<int> inv_;
    std::vector<int> orders_;
};

// Subgroup closure / enumeration working over any group-like type (FiniteGroup
// or TableGroup).
template <class G>
Bitset closure_in(const G& g, std::vector<int> seed) {
    Bitset mask(g.size());
    mask.set(g.id());
    std::vector<int> frontier{g.id()};
    for (int s : seed)
        if (!mask.test(s)) {
            mask.set(s);
            frontier.push_back(s);
        }
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int s : seed) {
                for (int y : {g.mul(s, x), g.mul(x, s)})
                    if (!mask.test(y)) {
                        mask.set(y);
                        next.push_back(y);
                    }
            }
        frontier = std::move(next);
    }
    return mask;
}

template <class G>
std::vector<Bitset> enumerate_subgroup_masks(const G& g) {
    std::set<Bitset> seen;
    Bitset triv(g.size());
    triv.set(g.id());
    seen.insert(triv);
    std::vector<Bitset> frontier{triv};
    while (!frontier.empty()) {
        std::vector<Bitset> next;
        for (const auto& h : frontier) {
            std::vector<int> hm = h.members();
            for (int x = 0; x < g.size(); ++x) {
                if (h.test(x)) continue;
                std::vector<int> seed = hm;
                seed.push_back(x);
                Bitset k = closure_in(g, std::move(seed));
                if (seen.insert(k).second) next.push_back(std::move(k));
            }
        }
        frontier = std::move(next);
    }
    return std::vector<Bitset>(seen.begin(), seen.end());
}

// Largest normal p-subgroup O_p(G) of a table group: intersection of the
// conjugates of one Sylow p-subgroup.
template <class G>
Bitset table_sylow_mask(const G& g, int p) {
    int target = 1;
    {
        int n = g.size();
        while (n % p == 0) { n /= p; target *= p; }
    }
    Bitset cur(g.size());
    cur.set(g.id());
    int cur_order = 1;
    while (cur_order < target) {
        // normalizer of cur
        std::vector<int> curm = cur.members();
        bool extended = false;
        for (int x = 0; x < g.size() && !extended; ++x) {
            if (cur.test(x)) continue;
            int o = g.element_order(x);
            bool ppow = true;
            while (o > 1) {
                if (o % p) { ppow = false; break; }
                o /= p;
            }
            if (!ppow) continue;
            bool normalizes = true;
            for (int a : curm)
                if (!cur.test(g.conj(x, a))) { normalizes = false; break; }
            if (!normalizes) continue;
            std::vector<int> seed = curm;
            seed.push_back(x);
            cur = closure_in(g, std::move(seed));
            cur_order = cur.count();
            extended = true;
        }
        check_invariant(extended, "table_sylow_mask: stuck");
    }
    return cur;
}

template <class G>
Bitset o_p_subgroup(const G& g, int p) {
    if (g.size() % p != 0) {
        Bitset t(g.size());
        t.set(g.id());
        return t;
    }
    Bitset syl = table_sylow_mask(g, p);
    Bitset acc = syl;
    for (int x = 0; x < g.size(); ++x) {
        Bitset conj(g.size());
        for (int a : syl.members()) conj.set(g.conj(x, a));
        acc = acc & conj;
    }
    return acc;
}

// Does G contain a strongly p-embedded subgroup? Search over subgroups H with
// Q <= H < G for a fixed Sylow p-subgroup Q; conjugating both Q and H shows
// one fixed Q suffices.
template <class G>
bool has_strongly_p_embedded(const G& g, int p) {
    if (g.size() % p != 0) return false;
    Bitset q = table_sylow_mask(g, p);
    std::vector<int> qm = q.members();
    std::vector<Bitset> subs = enumerate_subgroup_masks(g);
    for (const auto& h : subs) {
        if (!q.is_subset_of(h)) continue;
        if (h.count() == g.size()) continue;  // strongly p-embedded subgroups are proper
        bool ok = true;
        for (int x = 0; x < g.size() && ok; ++x) {
            if (h.test(x)) continue;
            for (int a : qm) {
                if (a == g.id()) continue;
                if (h.test(g.conj(x, a))) { ok = false; break; }
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace fuslim
