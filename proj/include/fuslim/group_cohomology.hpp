#pragma once

// Mod-p group cohomology via the normalized bar resolution. Cochains in
// degree j are functions on j-tuples of non-identity elements; a fixed basis
// of representative cocycles is cached per (subgroup, degree) so that all
// induced maps live in consistent coordinates.

#include <map>
#include <memory>

#include "fp.hpp"
#include "group.hpp"
#include "hom.hpp"

namespace fuslim {

struct CohomologyCaps {
    // largest degree allowed by |P|; exceeding is an error, never truncation
    int max_degree(int group_order, bool prime_power) const {
        if (override_cap > 0) return override_cap;
        if (!prime_power) return cap_composite;
        if (group_order <= 16) return 4;
        if (group_order <= 32) return 3;
        if (group_order <= 64) return 2;
        return 1;
    }
    int cap_composite = 2;           // e.g. the S4 stable-elements oracle
    int override_cap = 0;            // > 0 replaces the size table
    size_t max_matrix_cells = size_t(1) << 31;
};

class BarCohomology {
public:
    int p = 2, j = 0;
    Subgroup grp;
    std::vector<int> nonid;                    // ambient indices of non-identity members
    int dim = 0;
    std::vector<std::vector<uint8_t>> reps;    // representative normalized cocycles
    // expressor: coboundary spanning vectors added first, then the reps;
    // class coordinates of a cocycle are its coefficients on the reps
    std::unique_ptr<SpanSolver> expressor;
    int n_cob = 0;

    size_t tuples(int deg) const {
        size_t t = 1;
        for (int i = 0; i < deg; ++i) t *= nonid.size();
        return t;
    }

    // tuple encode/decode, little-endian base (n-1)
    std::vector<int> decode(size_t idx, int deg) const {
        std::vector<int> t(deg);
        for (int i = 0; i < deg; ++i) {
            t[i] = nonid[idx % nonid.size()];
            idx /= nonid.size();
        }
        return t;
    }
    size_t encode(const std::vector<int>& elems) const {
        size_t idx = 0;
        for (int i = int(elems.size()) - 1; i >= 0; --i) {
            int pos = -1;
            for (size_t k = 0; k < nonid.size(); ++k)
                if (nonid[k] == elems[i]) { pos = int(k); break; }
            check_invariant(pos >= 0, "bar: element not in group");
            idx = idx * nonid.size() + pos;
        }
        return idx;
    }

    // value of a normalized cochain on an arbitrary member tuple
    static int eval(const BarCohomology& h, const std::vector<uint8_t>& cochain,
                    const std::vector<int>& elems) {
        for (int e : elems)
            if (e == h.grp.ambient()->id()) return 0;
        return cochain[h.encode(elems)];
    }

    // the normalized bar differential d: C^deg -> C^{deg+1}
    FpMat differential(int deg) const {
        const FiniteGroup& g = *grp.ambient();
        size_t rows = tuples(deg + 1), cols = tuples(deg);
        FpMat d(p, int(rows), int(cols));
        for (size_t ri = 0; ri < rows; ++ri) {
            std::vector<int> t = decode(ri, deg + 1);
            // front face: drop g1 (coefficients are untwisted)
            {
                std::vector<int> f(t.begin() + 1, t.end());
                d.add_at(int(ri), int(encode(f)), 1);
            }
            int sign = 1;
            for (int i = 0; i + 1 < deg + 1; ++i) {
                sign = -sign;
                int prod = g.mul(t[i], t[i + 1]);
                if (prod == g.id()) continue;  // normalized: chain dies
                std::vector<int> f;
                f.reserve(deg);
                for (int k = 0; k < deg + 1; ++k) {
                    if (k == i) f.push_back(prod);
                    else if (k != i + 1) f.push_back(t[k]);
                }
                d.add_at(int(ri), int(encode(f)), sign < 0 ? p - 1 : 1);
            }
            sign = -sign;
            {
                std::vector<int> f(t.begin(), t.end() - 1);
                d.add_at(int(ri), int(encode(f)), sign < 0 ? p - 1 : 1);
            }
        }
        return d;
    }

    bool is_cocycle(const std::vector<uint8_t>& c) const {
        FpMat d = differential(j);
        auto img = d.apply(c);
        for (uint8_t v : img)
            if (v) return false;
        return true;
    }

    // class coordinates of a cocycle in the chosen basis
    std::vector<uint8_t> class_coords(const std::vector<uint8_t>& cocycle) const {
        auto c = expressor->coords(cocycle);
        check_invariant(c.has_value(), "class_coords: not a cocycle of this group/degree");
        std::vector<uint8_t> out(dim, 0);
        for (int i = 0; i < dim; ++i) out[i] = (*c)[n_cob + i];
        return out;
    }
};
using BarPtr = std::shared_ptr<const BarCohomology>;

class CohomologyCache {
public:
    explicit CohomologyCache(int p, CohomologyCaps caps = {}) : p_(p), caps_(caps) {}

    int p() const { return p_; }
    const CohomologyCaps& caps() const { return caps_; }

    BarPtr get(const Subgroup& grp, int j) {
        Key key{grp.ambient().get(), grp.mask(), j};
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        BarPtr built = build(grp, j);
        cache_.emplace(std::move(key), built);
        return built;
    }

private:
    struct Key {
        const FiniteGroup* g;
        Bitset mask;
        int j;
        bool operator<(const Key& o) const {
            if (g != o.g) return g < o.g;
            if (j != o.j) return j < o.j;
            return mask < o.mask;
        }
    };

    BarPtr build(const Subgroup& grp, int j) const {
        bool ppower = prime_power_base(grp.order()) != 0;
        int cap = caps_.max_degree(grp.order(), ppower);
        if (j > cap)
            throw CapacityError("group cohomology degree cap exceeded: |P| = " +
                                std::to_string(grp.order()) + " allows j <= " +
                                std::to_string(cap));
        auto h = std::make_shared<BarCohomology>();
        h->p = p_;
        h->j = j;
        h->grp = grp;
        for (int m : grp.members())
            if (m != grp.ambient()->id()) h->nonid.push_back(m);
        if (h->tuples(j) * std::max<size_t>(h->tuples(j + 1), 1) > caps_.max_matrix_cells)
            throw CapacityError("group cohomology matrix budget exceeded");

        size_t cj = h->tuples(j);
        std::vector<std::vector<uint8_t>> cocycle_basis;
        if (j == 0) {
            // d^0 kills constants (front and back faces cancel); H^0 = F_p
            cocycle_basis.push_back(std::vector<uint8_t>{1});
        } else {
            FpMat d = h->differential(j);
            cocycle_basis = d.kernel_basis();
        }
        // coboundaries: images of the unit cochains one degree down
        std::vector<std::vector<uint8_t>> cob;
        if (j >= 1) {
            FpMat dprev = h->differential(j - 1);
            size_t cprev = h->tuples(j - 1);
            for (size_t k = 0; k < cprev; ++k) {
                std::vector<uint8_t> e(cprev, 0);
                e[k] = 1;
                cob.push_back(dprev.apply(e));
            }
        }
        h->expressor = std::make_unique<SpanSolver>(p_, int(cj));
        for (const auto& v : cob) h->expressor->add(v);
        h->n_cob = int(cob.size());
        for (const auto& z : cocycle_basis) {
            SpanSolver probe = *h->expressor;
            if (probe.add(z)) {
                h->expressor->add(z);
                h->reps.push_back(z);
            } else {
                h->expressor->add(z);  // keep indices aligned with n_cob + reps
            }
        }
        // re-run: only reps should count; rebuild expressor with reps only
        h->expressor = std::make_unique<SpanSolver>(p_, int(cj));
        for (const auto& v : cob) h->expressor->add(v);
        h->n_cob = int(cob.size());
        for (const auto& z : h->reps) h->expressor->add(z);
        h->dim = int(h->reps.size());
        return h;
    }

    int p_;
    CohomologyCaps caps_;
    std::map<Key, BarPtr> cache_;
};

inline int group_cohomology_dim(CohomologyCache& cache, const Subgroup& grp, int j) {
    return cache.get(grp, j)->dim;
}

// Pullback phi^*: H^j(cod) -> H^j(dom) in the cached bases.
inline FpMat induced_cohomology_map(CohomologyCache& cache, const Hom& phi, int j) {
    BarPtr dom = cache.get(phi.dom(), j);
    BarPtr target = cache.get(phi.cod(), j);
    FpMat out(cache.p(), dom->dim, target->dim);
    size_t cj = dom->tuples(j);
    for (int b = 0; b < target->dim; ++b) {
        std::vector<uint8_t> pulled(cj, 0);
        for (size_t t = 0; t < cj; ++t) {
            std::vector<int> elems = dom->decode(t, j);
            for (int& e : elems) e = phi.apply(e);
            pulled[t] = uint8_t(BarCohomology::eval(*target, target->reps[b], elems));
        }
        check_invariant(dom->is_cocycle(pulled), "induced map: pullback is not a cocycle");
        auto coords = dom->class_coords(pulled);
        for (int r = 0; r < dom->dim; ++r)
            if (coords[r]) out.set(r, b, coords[r]);
    }
    return out;
}

// Cochain-level transfer along right coset representatives for H <= G, as a
// matrix H^j(H) -> H^j(G) in the cached bases. grp_g is the full subgroup of
// the ambient group realizing G.
inline FpMat transfer_map(CohomologyCache& cache, const Subgroup& G, const Subgroup& H, int j) {
    check_arg(H.is_subset_of(G), "transfer_map: H must be a subgroup of G");
    const FiniteGroup& g = *G.ambient();
    BarPtr bh = cache.get(H, j);
    BarPtr bg = cache.get(G, j);
    // canonical right-coset representatives: minimal element of each Hx
    std::vector<int> rep_of(g.size(), -1);
    std::vector<int> reps;
    for (int x : G.members()) {
        if (rep_of[x] >= 0) continue;
        reps.push_back(x);
        for (int h : H.members()) rep_of[g.mul(h, x)] = x;
    }
    FpMat out(cache.p(), bg->dim, bh->dim);
    size_t cjg = bg->tuples(j);
    for (int b = 0; b < bh->dim; ++b) {
        std::vector<uint8_t> tr(cjg, 0);
        for (size_t t = 0; t < cjg; ++t) {
            std::vector<int> gs = bg->decode(t, j);
            int acc = 0;
            for (int r : reps) {
                int cur = r;
                std::vector<int> hs(j);
                bool dead = false;
                for (int i = 0; i < j; ++i) {
                    int moved = g.mul(cur, gs[i]);
                    int nxt = rep_of[moved];
                    hs[i] = g.mul(moved, g.inv(nxt));
                    cur = nxt;
                    if (hs[i] == g.id()) dead = true;
                }
                if (!dead) acc += BarCohomology::eval(*bh, bh->reps[b], hs);
            }
            tr[t] = uint8_t(acc % cache.p());
        }
        check_invariant(bg->is_cocycle(tr), "transfer: image is not a cocycle");
        auto coords = bg->class_coords(tr);
        for (int r = 0; r < bg->dim; ++r)
            if (coords[r]) out.set(r, b, coords[r]);
    }
    return out;
}

// Restriction H^j(G) -> H^j(H) along the inclusion.
inline FpMat restriction_map(CohomologyCache& cache, const Subgroup& G, const Subgroup& H, int j) {
    return induced_cohomology_map(cache, inclusion_hom(H, G), j);
}

}  // namespace fuslim
