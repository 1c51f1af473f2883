#pragma once

// Finite permutation groups with fully enumerated, canonically sorted element
// lists, subgroup handles as bitmasks over the ambient element list, and the
// usual companions: subgroup enumeration, normalizer / centralizer / Sylow,
// automorphism groups and small presets. Everything is immutable after
// construction, so values can be shared freely.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "common.hpp"
#include "perm.hpp"

namespace fuslim {

inline constexpr int kDefaultGroupCap = 10000;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
public:
    // Closure of the generators under composition. Elements end up sorted
    // lexicographically on image sequences; the identity is always index 0.
    static GroupPtr from_generators(int degree, std::vector<Perm> gens,
                                    int size_cap = kDefaultGroupCap) {
        for (const auto& g : gens)
            check_arg(g.degree() == degree, "group_from_generators: degree mismatch");
        std::set<Perm> elems;
        elems.insert(Perm(degree));
        std::vector<Perm> frontier(elems.begin(), elems.end());
        while (!frontier.empty()) {
            std::vector<Perm> next;
            for (const auto& x : frontier) {
                for (const auto& g : gens) {
                    Perm y = g * x;
                    if (elems.insert(y).second) {
                        if (int(elems.size()) > size_cap)
                            throw CapacityError("group size cap exceeded (cap " +
                                                std::to_string(size_cap) + ")");
                        next.push_back(std::move(y));
                    }
                }
            }
            frontier = std::move(next);
        }
        auto g = std::make_shared<FiniteGroup>(Private{});
        g->degree_ = degree;
        g->elements_.assign(elems.begin(), elems.end());
        g->generators_ = std::move(gens);
        g->finish();
        return g;
    }

    static GroupPtr from_elements(int degree, std::vector<Perm> elems,
                                  std::vector<Perm> gens = {}) {
        auto g = std::make_shared<FiniteGroup>(Private{});
        g->degree_ = degree;
        std::sort(elems.begin(), elems.end());
        g->elements_ = std::move(elems);
        g->generators_ = gens.empty() ? g->small_generating_set() : std::move(gens);
        g->finish();
        return g;
    }

    struct Private { };  // tag to keep constructors out of the public surface
    explicit FiniteGroup(Private) {}

    int degree() const { return degree_; }
    int size() const { return int(elements_.size()); }
    const std::vector<Perm>& elements() const { return elements_; }
    const std::vector<Perm>& generators() const { return generators_; }
    const Perm& element(int i) const { return elements_[i]; }

    int index_of(const Perm& p) const {
        auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
        check_arg(it != elements_.end() && *it == p, "element not in group");
        return int(it - elements_.begin());
    }
    bool contains(const Perm& p) const {
        auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
        return it != elements_.end() && *it == p;
    }

    int mul(int i, int j) const {
        if (!mul_table_.empty()) return mul_table_[size_t(i) * size() + j];
        return index_of(elements_[i] * elements_[j]);
    }
    int inv(int i) const { return inv_[i]; }
    int id() const { return 0; }

    int element_order(int i) const { return orders_[i]; }

    // gxg^{-1} as element indices
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }

    bool operator==(const FiniteGroup& o) const {
        return degree_ == o.degree_ && elements_ == o.elements_;
    }

private:
    std::vector<Perm> small_generating_set() const {
        std::vector<Perm> gens;
        std::set<Perm> have;
        have.insert(Perm(degree_));
        for (const auto& e : elements_) {
            if (have.count(e)) continue;
            gens.push_back(e);
            // close
            std::vector<Perm> frontier(have.begin(), have.end());
            while (!frontier.empty()) {
                std::vector<Perm> next;
                for (const auto& x : frontier)
                    for (const auto& g : gens) {
                        Perm y = g * x;
                        if (have.insert(y).second) next.push_back(std::move(y));
                    }
                frontier = std::move(next);
            }
            if (int(have.size()) == int(elements_.size())) break;
        }
        return gens;
    }

    void finish() {
        check_invariant(!elements_.empty() && elements_[0].is_identity(),
                        "FiniteGroup: identity must be present and lex-minimal");
        int n = size();
        inv_.resize(n);
        orders_.resize(n);
        for (int i = 0; i < n; ++i) {
            inv_[i] = index_of(elements_[i].inverse());
            orders_[i] = elements_[i].order();
        }
        if (size_t(n) * n <= size_t(4) << 20) {
            mul_table_.resize(size_t(n) * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    mul_table_[size_t(i) * n + j] =
                        int32_t(index_of(elements_[i] * elements_[j]));
        }
    }

    int degree_ = 0;
    std::vector<Perm> elements_;
    std::vector<Perm> generators_;
    std::vector<int> inv_;
    std::vector<int> orders_;
    std::vector<int32_t> mul_table_;
};

inline GroupPtr group_from_generators(int degree, const std::vector<Perm>& gens,
                                      int size_cap = kDefaultGroupCap) {
    return FiniteGroup::from_generators(degree, gens, size_cap);
}

// A subgroup of an ambient FiniteGroup, identified by its member mask.
class Subgroup {
public:
    Subgroup() = default;
    Subgroup(GroupPtr ambient, Bitset mask)
        : g_(std::move(ambient)), mask_(std::move(mask)) {
        check_arg(mask_.size() == g_->size(), "Subgroup: mask length mismatch");
        members_ = mask_.members();
        pos_.assign(g_->size(), -1);
        for (size_t k = 0; k < members_.size(); ++k) pos_[members_[k]] = int(k);
        check_arg(is_subgroup(), "Subgroup: member set is not a subgroup");
    }

    static Subgroup full(GroupPtr ambient) {
        Bitset m(ambient->size());
        for (int i = 0; i < ambient->size(); ++i) m.set(i);
        return Subgroup(std::move(ambient), std::move(m));
    }

    static Subgroup from_members(GroupPtr ambient, const std::vector<int>& members) {
        Bitset m(ambient->size());
        for (int i : members) m.set(i);
        return Subgroup(std::move(ambient), std::move(m));
    }

    const GroupPtr& ambient() const { return g_; }
    const Bitset& mask() const { return mask_; }
    int order() const { return int(members_.size()); }
    const std::vector<int>& members() const { return members_; }
    bool contains(int elem) const { return mask_.test(elem); }
    // position of an ambient element inside the sorted member list, -1 if absent
    int member_pos(int elem) const { return pos_[elem]; }
    int member(int k) const { return members_[k]; }

    bool is_subset_of(const Subgroup& o) const {
        check_arg(same_ambient(o), "Subgroup: ambient mismatch");
        return mask_.is_subset_of(o.mask_);
    }
    bool same_ambient(const Subgroup& o) const { return g_.get() == o.g_.get(); }

    bool operator==(const Subgroup& o) const {
        return g_.get() == o.g_.get() && mask_ == o.mask_;
    }
    bool operator!=(const Subgroup& o) const { return !(*this == o); }
    // canonical order: (order, member list)
    bool operator<(const Subgroup& o) const {
        if (order() != o.order()) return order() < o.order();
        return members_ < o.members_;
    }

    // The subgroup as a standalone group (same degree / permutations).
    GroupPtr materialize() const {
        std::vector<Perm> elems;
        elems.reserve(members_.size());
        for (int i : members_) elems.push_back(g_->element(i));
        return FiniteGroup::from_elements(g_->degree(), std::move(elems));
    }

private:
    bool is_subgroup() const {
        if (members_.empty() || members_[0] != g_->id()) return false;
        for (int a : members_) {
            if (!mask_.test(g_->inv(a))) return false;
            for (int b : members_)
                if (!mask_.test(g_->mul(a, b))) return false;
        }
        return true;
    }

    GroupPtr g_;
    Bitset mask_;
    std::vector<int> members_;
    std::vector<int> pos_;
};

// Closure of a set of element indices as a subgroup mask.
inline Bitset subgroup_closure(const FiniteGroup& g, std::vector<int> seed) {
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
                int y = g.mul(s, x);
                if (!mask.test(y)) {
                    mask.set(y);
                    next.push_back(y);
                }
                int z = g.mul(x, s);
                if (!mask.test(z)) {
                    mask.set(z);
                    next.push_back(z);
                }
            }
        frontier = std::move(next);
    }
    return mask;
}

// All subgroups, each exactly once, sorted by (order, member list). BFS over
// cyclic extensions <H, g>.
inline std::vector<Subgroup> enumerate_subgroups(const GroupPtr& g) {
    std::set<Bitset> seen;
    Bitset triv(g->size());
    triv.set(g->id());
    seen.insert(triv);
    std::vector<Bitset> frontier{triv};
    while (!frontier.empty()) {
        std::vector<Bitset> next;
        for (const auto& h : frontier) {
            std::vector<int> hm = h.members();
            for (int x = 0; x < g->size(); ++x) {
                if (h.test(x)) continue;
                std::vector<int> seed = hm;
                seed.push_back(x);
                Bitset k = subgroup_closure(*g, std::move(seed));
                if (seen.insert(k).second) next.push_back(std::move(k));
            }
        }
        frontier = std::move(next);
    }
    std::vector<Subgroup> out;
    out.reserve(seen.size());
    for (const auto& m : seen) out.emplace_back(g, m);
    std::sort(out.begin(), out.end());
    return out;
}

inline Subgroup normalizer(const Subgroup& big, const Subgroup& p) {
    check_arg(p.is_subset_of(big), "normalizer: P not contained in G");
    const FiniteGroup& g = *big.ambient();
    Bitset m(g.size());
    for (int x : big.members()) {
        bool ok = true;
        for (int a : p.members())
            if (!p.contains(g.conj(x, a))) { ok = false; break; }
        if (ok) m.set(x);
    }
    return Subgroup(big.ambient(), std::move(m));
}

inline Subgroup centralizer(const Subgroup& big, const Subgroup& p) {
    check_arg(p.is_subset_of(big), "centralizer: P not contained in G");
    const FiniteGroup& g = *big.ambient();
    Bitset m(g.size());
    for (int x : big.members()) {
        bool ok = true;
        for (int a : p.members())
            if (g.mul(x, a) != g.mul(a, x)) { ok = false; break; }
        if (ok) m.set(x);
    }
    return Subgroup(big.ambient(), std::move(m));
}

inline Subgroup center(const Subgroup& big) { return centralizer(big, big); }

// One Sylow p-subgroup, grown deterministically: repeatedly extend the
// current p-subgroup by the first p-power-order normalizing element.
inline Subgroup sylow(const Subgroup& big, int p) {
    check_arg(is_prime(p), "sylow: p must be prime");
    const FiniteGroup& g = *big.ambient();
    int target = 1;
    {
        int n = big.order();
        while (n % p == 0) { n /= p; target *= p; }
    }
    check_arg(target > 1, "sylow: p does not divide |G|");
    Bitset cur(g.size());
    cur.set(g.id());
    int cur_order = 1;
    while (cur_order < target) {
        Subgroup h(big.ambient(), cur);
        Subgroup n = normalizer(big, h);
        bool extended = false;
        for (int x : n.members()) {
            if (cur.test(x)) continue;
            int o = g.element_order(x);
            bool ppow = true;
            while (o > 1) {
                if (o % p) { ppow = false; break; }
                o /= p;
            }
            if (!ppow) continue;
            Bitset k = subgroup_closure(g, [&] {
                std::vector<int> s = cur.members();
                s.push_back(x);
                return s;
            }());
            cur = std::move(k);
            cur_order = cur.count();
            extended = true;
            break;
        }
        check_invariant(extended, "sylow: failed to extend p-subgroup");
    }
    return Subgroup(big.ambient(), std::move(cur));
}

inline Subgroup sylow(const GroupPtr& g, int p) { return sylow(Subgroup::full(g), p); }

inline bool is_p_group(const Subgroup& s, int p) {
    int n = s.order();
    while (n % p == 0) n /= p;
    return n == 1;
}

// Derived subgroup [H, H].
inline Subgroup derived_subgroup(const Subgroup& h) {
    const FiniteGroup& g = *h.ambient();
    std::vector<int> comms;
    for (int a : h.members())
        for (int b : h.members())
            comms.push_back(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
    return Subgroup(h.ambient(), subgroup_closure(g, std::move(comms)));
}

// All automorphisms of a group, as permutations of its element indices.
// DFS over images of a small generating set.
inline std::vector<std::vector<int>> automorphism_group(const FiniteGroup& g) {
    std::vector<int> gens;
    {
        Bitset have(g.size());
        have.set(g.id());
        for (int i = 0; i < g.size(); ++i) {
            if (have.test(i)) continue;
            gens.push_back(i);
            std::vector<int> seed;
            for (int k = 0; k < g.size(); ++k)
                if (have.test(k)) seed.push_back(k);
            seed.push_back(i);
            have = subgroup_closure(g, std::move(seed));
        }
    }
    std::vector<std::vector<int>> autos;
    std::vector<int> image(gens.size(), -1);

    // extend the partial generator assignment to a multiplicatively closed
    // partial map, or fail on a conflict
    auto try_build = [&](int upto) -> std::optional<std::vector<int>> {
        std::vector<int> mp(g.size(), -1);
        mp[g.id()] = g.id();
        std::vector<int> known{g.id()};
        for (int k = 0; k < upto; ++k) {
            if (mp[gens[k]] != -1) {
                if (mp[gens[k]] != image[k]) return std::nullopt;
            } else {
                mp[gens[k]] = image[k];
                known.push_back(gens[k]);
            }
        }
        bool changed = true;
        while (changed) {
            changed = false;
            size_t n = known.size();
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    int x = g.mul(known[i], known[j]);
                    int y = g.mul(mp[known[i]], mp[known[j]]);
                    if (mp[x] == -1) {
                        mp[x] = y;
                        known.push_back(x);
                        changed = true;
                    } else if (mp[x] != y) {
                        return std::nullopt;
                    }
                }
        }
        return mp;
    };

    std::vector<int> stackk;
    std::function<void(int)> dfs = [&](int k) {
        if (k == int(gens.size())) {
            auto mp = try_build(k);
            if (!mp) return;
            // full closure reached? injectivity check
            std::vector<char> seen(g.size(), 0);
            for (int v : *mp) {
                if (v < 0 || seen[v]) return;
                seen[v] = 1;
            }
            autos.push_back(std::move(*mp));
            return;
        }
        for (int cand = 0; cand < g.size(); ++cand) {
            if (g.element_order(cand) != g.element_order(gens[k])) continue;
            image[k] = cand;
            if (try_build(k + 1)) dfs(k + 1);
        }
        image[k] = -1;
    };
    dfs(0);
    std::sort(autos.begin(), autos.end());
    autos.erase(std::unique(autos.begin(), autos.end()), autos.end());
    return autos;
}

}  // namespace fuslim
