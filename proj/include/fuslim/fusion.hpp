#pragma once

// Fusion systems over a finite p-group with fully materialized homsets:
// hom[a][b] lists every morphism from object a to object b as an element map.
// All fusion systems participating in one computation share a single ambient
// permutation group and its subgroup lattice, so morphisms of different
// systems are directly comparable.

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hom.hpp"
#include "presets.hpp"

namespace fuslim {

inline constexpr size_t kDefaultHomCap = 2000000;

struct SubgroupLattice {
    GroupPtr group;
    std::vector<Subgroup> subgroups;     // canonical order
    std::map<Bitset, int> index;

    static std::shared_ptr<const SubgroupLattice> build(const GroupPtr& g) {
        auto lat = std::make_shared<SubgroupLattice>();
        lat->group = g;
        lat->subgroups = enumerate_subgroups(g);
        for (size_t i = 0; i < lat->subgroups.size(); ++i)
            lat->index[lat->subgroups[i].mask()] = int(i);
        return lat;
    }

    int index_of(const Bitset& mask) const {
        auto it = index.find(mask);
        check_arg(it != index.end(), "SubgroupLattice: unknown subgroup");
        return it->second;
    }
};
using LatticePtr = std::shared_ptr<const SubgroupLattice>;

class FusionSystem {
public:
    LatticePtr lattice;
    Subgroup S;            // the underlying p-group of the system
    int p = 0;
    std::vector<int> objects;                       // lattice indices, ascending
    std::vector<std::vector<std::vector<Hom>>> hom; // [a][b], sorted

    const GroupPtr& ambient() const { return lattice->group; }
    int nobj() const { return int(objects.size()); }
    const Subgroup& obj(int a) const { return lattice->subgroups[objects[a]]; }
    int top() const { return obj_index(S); }

    int obj_index(const Subgroup& sub) const {
        int li = lattice->index_of(sub.mask());
        auto it = std::lower_bound(objects.begin(), objects.end(), li);
        check_arg(it != objects.end() && *it == li,
                  "FusionSystem: subgroup is not an object (not contained in S?)");
        return int(it - objects.begin());
    }

    const std::vector<Hom>& homset(int a, int b) const { return hom[a][b]; }

    bool contains_hom(const Hom& h) const {
        int a = obj_index(h.dom());
        int b = obj_index(h.cod());
        const auto& hs = hom[a][b];
        return std::binary_search(hs.begin(), hs.end(), h);
    }

    size_t total_morphisms() const {
        size_t n = 0;
        for (const auto& row : hom)
            for (const auto& hs : row) n += hs.size();
        return n;
    }

    // F-conjugacy classes of objects (via restriction of morphisms to their
    // images); classes[i] lists object indices, ascending.
    std::vector<std::vector<int>> conjugacy_classes() const {
        std::vector<int> parent(nobj());
        for (int i = 0; i < nobj(); ++i) parent[i] = i;
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int a = 0; a < nobj(); ++a)
            for (int b = 0; b < nobj(); ++b)
                for (const Hom& h : hom[a][b]) {
                    int img = obj_index(h.image());
                    int ra = find(a), ri = find(img);
                    if (ra != ri) parent[std::max(ra, ri)] = std::min(ra, ri);
                }
        std::map<int, std::vector<int>> groups;
        for (int i = 0; i < nobj(); ++i) groups[find(i)].push_back(i);
        std::vector<std::vector<int>> classes;
        for (auto& kv : groups) classes.push_back(std::move(kv.second));
        return classes;
    }

    std::vector<int> class_of(int a) const {
        for (const auto& cls : conjugacy_classes())
            if (std::binary_search(cls.begin(), cls.end(), a)) return cls;
        throw InvariantViolation("class_of: object not found");
    }
};
using FusionPtr = std::shared_ptr<const FusionSystem>;

namespace detail {

// Closure of a seed set of morphisms under inner fusion, composition,
// inversion of isomorphisms and restriction-to-image. Inclusions are inner,
// so domain restriction and retargeting arise from composition.
inline FusionPtr fusion_closure(const LatticePtr& lat, const Subgroup& S,
                                const std::vector<Hom>& seeds, size_t hom_cap) {
    auto F = std::make_shared<FusionSystem>();
    F->lattice = lat;
    F->S = S;
    F->p = prime_power_base(S.order());
    check_arg(F->p != 0 && S.order() >= 1, "fusion system: S must be a p-group");
    for (size_t i = 0; i < lat->subgroups.size(); ++i)
        if (lat->subgroups[i].is_subset_of(S)) F->objects.push_back(int(i));

    int n = F->nobj();
    std::vector<std::vector<std::set<std::vector<uint16_t>>>> sets(
        n, std::vector<std::set<std::vector<uint16_t>>>(n));
    std::deque<std::tuple<int, int, std::vector<uint16_t>>> queue;
    size_t total = 0;

    auto push = [&](int a, int b, std::vector<uint16_t> map) {
        auto ins = sets[a][b].insert(std::move(map));
        if (!ins.second) return;
        if (++total > hom_cap)
            throw CapacityError("fusion homset cap exceeded (cap " +
                                std::to_string(hom_cap) + " morphisms)");
        queue.emplace_back(a, b, *ins.first);
    };

    const FiniteGroup& g = *lat->group;
    // inner fusion: conjugations by elements of S, targeted at the image
    for (int a = 0; a < n; ++a) {
        const Subgroup& P = F->obj(a);
        for (int s : S.members()) {
            std::vector<uint16_t> map(P.order());
            Bitset img(g.size());
            for (int k = 0; k < P.order(); ++k) {
                int y = g.conj(s, P.member(k));
                map[k] = uint16_t(y);
                img.set(y);
            }
            int b = F->obj_index(Subgroup(lat->group, img));
            push(a, b, std::move(map));
        }
        // inclusions into every overgroup
        for (int b = 0; b < n; ++b) {
            if (a == b || !P.is_subset_of(F->obj(b))) continue;
            std::vector<uint16_t> inc(P.order());
            for (int k = 0; k < P.order(); ++k) inc[k] = uint16_t(P.member(k));
            push(a, b, std::move(inc));
        }
    }
    for (const Hom& h : seeds) {
        check_arg(h.ambient().get() == lat->group.get(), "fusion seeds: ambient mismatch");
        check_arg(h.dom().is_subset_of(S) && h.cod().is_subset_of(S),
                  "fusion seeds: must run between subgroups of S");
        push(F->obj_index(h.dom()), F->obj_index(h.cod()), h.map());
    }

    auto image_object = [&](const std::vector<uint16_t>& map) {
        Bitset m(g.size());
        for (uint16_t v : map) m.set(v);
        return F->obj_index(Subgroup(lat->group, m));
    };

    while (!queue.empty()) {
        auto [a, b, map] = queue.front();
        queue.pop_front();
        const Subgroup& P = F->obj(a);
        const Subgroup& Q = F->obj(b);

        int im = image_object(map);
        if (im != b) push(a, im, map);
        if (im == b) {
            // isomorphism onto codomain: invert
            std::vector<uint16_t> inv(Q.order());
            for (int k = 0; k < P.order(); ++k)
                inv[Q.member_pos(map[k])] = uint16_t(P.member(k));
            push(b, a, std::move(inv));
        }
        // compose on the left: chi . map for chi: b -> c
        for (int c = 0; c < n; ++c) {
            for (const auto& chi : sets[b][c]) {
                std::vector<uint16_t> comp(P.order());
                for (int k = 0; k < P.order(); ++k)
                    comp[k] = chi[Q.member_pos(map[k])];
                push(a, c, std::move(comp));
            }
            // compose on the right: map . chi for chi: c -> a
            const Subgroup& R = F->obj(c);
            for (const auto& chi : sets[c][a]) {
                std::vector<uint16_t> comp(R.order());
                for (int k = 0; k < R.order(); ++k)
                    comp[k] = map[P.member_pos(chi[k])];
                push(c, b, std::move(comp));
            }
        }
    }

    F->hom.assign(n, std::vector<std::vector<Hom>>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto& out = F->hom[a][b];
            out.reserve(sets[a][b].size());
            for (const auto& m : sets[a][b])
                out.emplace_back(F->obj(a), F->obj(b), m, /*validate=*/false);
        }
    return F;
}

}  // namespace detail

inline FusionPtr generate(const LatticePtr& lat, const Subgroup& S,
                          const std::vector<Hom>& seeds, size_t hom_cap = kDefaultHomCap) {
    return detail::fusion_closure(lat, S, seeds, hom_cap);
}

// Fusion system on S realized by a group G containing S: morphisms are the
// conjugation maps c_g with g in G. The realizing group may live on the same
// points as the ambient lattice group, or the lattice can be freshly built.
inline FusionPtr realize_into(const LatticePtr& lat, const Subgroup& S, const GroupPtr& G) {
    check_arg(G->degree() == lat->group->degree(), "realize: degree mismatch");
    for (int m : S.members())
        check_arg(G->contains(lat->group->element(m)), "realize: S not contained in G");
    auto F = std::make_shared<FusionSystem>();
    F->lattice = lat;
    F->S = S;
    F->p = prime_power_base(S.order());
    check_arg(F->p != 0, "realize: S is not a p-group");
    for (size_t i = 0; i < lat->subgroups.size(); ++i)
        if (lat->subgroups[i].is_subset_of(S)) F->objects.push_back(int(i));
    int n = F->nobj();
    F->hom.assign(n, std::vector<std::vector<Hom>>(n));
    const FiniteGroup& amb = *lat->group;
    for (int a = 0; a < n; ++a) {
        const Subgroup& P = F->obj(a);
        std::vector<std::pair<std::vector<uint16_t>, Bitset>> conj_maps;
        for (int gi = 0; gi < G->size(); ++gi) {
            const Perm& gp = G->element(gi);
            Perm gpi = gp.inverse();
            std::vector<uint16_t> map(P.order());
            Bitset img(amb.size());
            bool inside = true;
            for (int k = 0; k < P.order(); ++k) {
                Perm y = gp * amb.element(P.member(k)) * gpi;
                if (!amb.contains(y)) { inside = false; break; }
                int yi = amb.index_of(y);
                if (!S.contains(yi)) { inside = false; break; }
                map[k] = uint16_t(yi);
                img.set(yi);
            }
            if (inside) conj_maps.emplace_back(std::move(map), std::move(img));
        }
        for (int b = 0; b < n; ++b) {
            const Subgroup& Q = F->obj(b);
            std::set<std::vector<uint16_t>> dedup;
            for (const auto& [map, img] : conj_maps)
                if (img.is_subset_of(Q.mask())) dedup.insert(map);
            auto& out = F->hom[a][b];
            for (const auto& m : dedup) out.emplace_back(P, Q, m, false);
        }
    }
    return F;
}

inline FusionPtr realize(const GroupPtr& G, const Subgroup& SinG) {
    GroupPtr amb = SinG.materialize();
    LatticePtr lat = SubgroupLattice::build(amb);
    return realize_into(lat, Subgroup::full(amb), G);
}

inline FusionPtr inner_fusion(const LatticePtr& lat, const Subgroup& S) {
    return generate(lat, S, {});
}

// A <= B homset-wise; on failure *witness (if given) receives a morphism of A
// missing from B.
inline bool fusion_subsystem_leq(const FusionSystem& A, const FusionSystem& B,
                                 Hom* witness = nullptr) {
    check_arg(A.lattice->group.get() == B.lattice->group.get(),
              "subsystem comparison: ambient mismatch");
    if (!A.S.is_subset_of(B.S)) return false;
    for (int a = 0; a < A.nobj(); ++a)
        for (int b = 0; b < A.nobj(); ++b)
            for (const Hom& h : A.hom[a][b])
                if (!B.contains_hom(h)) {
                    if (witness) *witness = h;
                    return false;
                }
    return true;
}

inline bool fusion_subsystem_eq(const FusionSystem& A, const FusionSystem& B) {
    return fusion_subsystem_leq(A, B) && fusion_subsystem_leq(B, A);
}

inline FusionPtr join(const FusionPtr& F1, const FusionPtr& F2,
                      size_t hom_cap = kDefaultHomCap) {
    check_arg(F1->lattice->group.get() == F2->lattice->group.get(),
              "join: ambient mismatch");
    check_arg(F2->S.is_subset_of(F1->S), "join: F2's group must sit inside F1's");
    std::vector<Hom> seeds;
    for (const auto& row : F1->hom)
        for (const auto& hs : row) seeds.insert(seeds.end(), hs.begin(), hs.end());
    for (const auto& row : F2->hom)
        for (const auto& hs : row) seeds.insert(seeds.end(), hs.begin(), hs.end());
    return generate(F1->lattice, F1->S, seeds, hom_cap);
}

// Homset-wise intersection, a fusion system over S' contained in both.
inline FusionPtr intersection_system(const FusionSystem& F1, const FusionSystem& F2,
                                     const Subgroup& Sprime) {
    check_arg(F1.lattice->group.get() == F2.lattice->group.get(),
              "intersection: ambient mismatch");
    check_arg(Sprime.is_subset_of(F1.S) && Sprime.is_subset_of(F2.S),
              "intersection: S' must sit inside both");
    auto F = std::make_shared<FusionSystem>();
    F->lattice = F1.lattice;
    F->S = Sprime;
    F->p = prime_power_base(Sprime.order());
    for (size_t i = 0; i < F->lattice->subgroups.size(); ++i)
        if (F->lattice->subgroups[i].is_subset_of(Sprime)) F->objects.push_back(int(i));
    int n = F->nobj();
    F->hom.assign(n, std::vector<std::vector<Hom>>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int a1 = F1.obj_index(F->obj(a)), b1 = F1.obj_index(F->obj(b));
            for (const Hom& h : F1.hom[a1][b1])
                if (F2.contains_hom(h)) F->hom[a][b].push_back(h);
        }
    return F;
}

// N_F(P): fusion system over N_S(P) whose morphisms extend to morphisms of F
// normalizing P (exhaustive extension search).
inline FusionPtr normalizer_subsystem(const FusionSystem& F, const Subgroup& P) {
    const FiniteGroup& g = *F.ambient();
    Subgroup N = normalizer(F.S, P);
    auto R = std::make_shared<FusionSystem>();
    R->lattice = F.lattice;
    R->S = N;
    R->p = F.p;
    for (size_t i = 0; i < F.lattice->subgroups.size(); ++i)
        if (F.lattice->subgroups[i].is_subset_of(N)) R->objects.push_back(int(i));
    int n = R->nobj();
    R->hom.assign(n, std::vector<std::vector<Hom>>(n));
    for (int a = 0; a < n; ++a) {
        const Subgroup& A = R->obj(a);
        std::vector<int> apm = A.members();
        std::vector<int> ap_seed = apm;
        for (int x : P.members()) ap_seed.push_back(x);
        Subgroup AP(F.lattice->group, subgroup_closure(g, ap_seed));
        int fa = F.obj_index(A), fap = F.obj_index(AP);
        for (int b = 0; b < n; ++b) {
            const Subgroup& B = R->obj(b);
            std::vector<int> bp_seed = B.members();
            for (int x : P.members()) bp_seed.push_back(x);
            Subgroup BP(F.lattice->group, subgroup_closure(g, bp_seed));
            int fb = F.obj_index(B), fbp = F.obj_index(BP);
            for (const Hom& h : F.hom[fa][fb]) {
                bool extendable = false;
                for (const Hom& hext : F.hom[fap][fbp]) {
                    // hext(P) = P and hext restricted to A equals h
                    bool ok = true;
                    for (int x : P.members())
                        if (!P.contains(hext.apply(x))) { ok = false; break; }
                    if (!ok) continue;
                    for (int k = 0; k < A.order(); ++k)
                        if (hext.apply(A.member(k)) != h.map()[k]) { ok = false; break; }
                    if (ok) { extendable = true; break; }
                }
                if (extendable) R->hom[a][b].push_back(h);
            }
        }
    }
    return R;
}

// ---------------------------------------------------------------------------
// Saturation (Sylow axiom + extension axiom, checked literally)

struct SaturationReport {
    bool saturated = true;
    std::string failed_axiom;     // "sylow" or "extension"
    std::string witness;          // human-readable description
    // extension-axiom witness data
    bool has_witness_hom = false;
    Hom witness_hom;
    std::vector<int> witness_nphi;  // ambient element indices of N_phi
};

inline std::string describe_subgroup(const Subgroup& s) {
    std::string out = "{order " + std::to_string(s.order()) + ": ";
    for (int m : s.members()) out += std::to_string(m) + " ";
    out += "}";
    return out;
}

inline SaturationReport is_saturated(const FusionSystem& F) {
    SaturationReport rep;
    const FiniteGroup& g = *F.ambient();
    int stop = F.top();

    // Sylow axiom: Aut_S(S) in Syl_p(Aut_F(S))
    {
        size_t aut_f = F.hom[stop][stop].size();
        std::set<std::vector<uint16_t>> inn;
        for (int s : F.S.members()) {
            std::vector<uint16_t> m(F.S.order());
            for (int k = 0; k < F.S.order(); ++k)
                m[k] = uint16_t(g.conj(s, F.S.member(k)));
            inn.insert(std::move(m));
        }
        size_t index = aut_f / inn.size();
        if (aut_f % inn.size() != 0 || index % F.p == 0) {
            rep.saturated = false;
            rep.failed_axiom = "sylow";
            rep.witness = "Aut_S(S) has index " + std::to_string(index) +
                          " in Aut_F(S), divisible by p";
            return rep;
        }
    }

    // fully-normalized predicate
    auto classes = F.conjugacy_classes();
    std::vector<int> ns_order(F.nobj());
    for (int a = 0; a < F.nobj(); ++a) ns_order[a] = normalizer(F.S, F.obj(a)).order();
    std::vector<char> fully_norm(F.nobj(), 0);
    for (const auto& cls : classes) {
        int mx = 0;
        for (int a : cls) mx = std::max(mx, ns_order[a]);
        for (int a : cls) fully_norm[a] = (ns_order[a] == mx);
    }

    // Extension axiom
    for (int a = 0; a < F.nobj(); ++a) {
        const Subgroup& P = F.obj(a);
        // Aut_S(-) data is cheap to recompute per image below
        for (const Hom& phi : F.hom[a][stop]) {
            Subgroup img = phi.image();
            int imgobj = F.obj_index(img);
            if (!fully_norm[imgobj]) continue;
            // N_phi = { y in N_S(P) : phi c_y phi^{-1} in Aut_S(phi P) }
            Subgroup NP = normalizer(F.S, P);
            Subgroup Nimg = normalizer(F.S, img);
            std::set<std::vector<uint16_t>> aut_s_img;
            for (int z : Nimg.members()) {
                std::vector<uint16_t> m(img.order());
                for (int k = 0; k < img.order(); ++k)
                    m[k] = uint16_t(g.conj(z, img.member(k)));
                aut_s_img.insert(std::move(m));
            }
            std::vector<int> nphi;
            for (int y : NP.members()) {
                std::vector<uint16_t> m(img.order());
                for (int k = 0; k < img.order(); ++k) {
                    // phi(c_y(phi^{-1}(x))) for x the k-th member of img
                    int x = img.member(k);
                    int pre = -1;
                    for (int kk = 0; kk < P.order(); ++kk)
                        if (phi.map()[kk] == x) { pre = P.member(kk); break; }
                    m[k] = uint16_t(phi.apply(g.conj(y, pre)));
                }
                if (aut_s_img.count(m)) nphi.push_back(y);
            }
            Subgroup Nphi(F.lattice->group, subgroup_closure(g, nphi));
            check_invariant(Nphi.order() == int(nphi.size()), "N_phi is not a subgroup");
            if (Nphi.order() == P.order()) continue;  // extension is phi itself
            int nobj_idx = F.obj_index(Nphi);
            bool found = false;
            for (const Hom& ext : F.hom[nobj_idx][stop]) {
                bool restricts = true;
                for (int k = 0; k < P.order(); ++k)
                    if (ext.apply(P.member(k)) != phi.map()[k]) { restricts = false; break; }
                if (restricts) { found = true; break; }
            }
            if (!found) {
                rep.saturated = false;
                rep.failed_axiom = "extension";
                rep.has_witness_hom = true;
                rep.witness_hom = phi;
                rep.witness_nphi = nphi;
                rep.witness = "no extension of phi: " + describe_subgroup(P) +
                              " -> S to N_phi of order " + std::to_string(nphi.size());
                return rep;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Subgroup classifiers (fully normalized / centric / radical / essential)

struct SubgroupReport {
    int object = -1;                // object index in the fusion system
    bool fully_normalized = false;
    bool centric = false;
    bool radical = false;
    bool centric_radical = false;
    bool essential_raw = false;     // Out_F(P) has a strongly p-embedded subgroup
    bool essential = false;         // essential_raw && centric (conventional flag)
    std::vector<int> conjugacy_class;
};

// Aut_F(P) as an abstract table group; element i is homset(a,a)[order[i]].
// Index 0 is the identity automorphism.
inline TableGroup aut_table(const FusionSystem& F, int a, std::vector<int>* order_out = nullptr) {
    const auto& auts = F.hom[a][a];
    int n = int(auts.size());
    const Subgroup& P = F.obj(a);
    // put the identity first, keep the rest in homset order
    std::vector<int> order;
    int idpos = -1;
    for (int i = 0; i < n; ++i)
        if (auts[i].is_identity_map()) { idpos = i; break; }
    check_invariant(idpos >= 0, "aut_table: identity automorphism missing");
    order.push_back(idpos);
    for (int i = 0; i < n; ++i)
        if (i != idpos) order.push_back(i);
    std::map<std::vector<uint16_t>, int> pos;
    for (int i = 0; i < n; ++i) pos[auts[order[i]].map()] = i;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // composition (i after j)
            std::vector<uint16_t> comp(P.order());
            for (int k = 0; k < P.order(); ++k)
                comp[k] = uint16_t(auts[order[i]].apply(auts[order[j]].map()[k]));
            auto it = pos.find(comp);
            check_invariant(it != pos.end(), "aut_table: not closed under composition");
            table[i][j] = it->second;
        }
    if (order_out) *order_out = order;
    return TableGroup(std::move(table));
}

// Indices (in aut_table order) of the inner automorphisms Aut_P(P).
inline Bitset inner_aut_mask(const FusionSystem& F, int a, const std::vector<int>& order) {
    const FiniteGroup& g = *F.ambient();
    const Subgroup& P = F.obj(a);
    const auto& auts = F.hom[a][a];
    std::map<std::vector<uint16_t>, int> pos;
    for (size_t i = 0; i < order.size(); ++i) pos[auts[order[i]].map()] = int(i);
    Bitset mask(int(auts.size()));
    for (int x : P.members()) {
        std::vector<uint16_t> m(P.order());
        for (int k = 0; k < P.order(); ++k) m[k] = uint16_t(g.conj(x, P.member(k)));
        auto it = pos.find(m);
        check_invariant(it != pos.end(), "inner automorphism missing from Aut_F(P)");
        mask.set(it->second);
    }
    return mask;
}

inline std::vector<SubgroupReport> classify(const FusionSystem& F) {
    std::vector<SubgroupReport> out(F.nobj());
    auto classes = F.conjugacy_classes();
    std::vector<int> ns_order(F.nobj()), cls_id(F.nobj());
    std::vector<Subgroup> cent(F.nobj(), Subgroup());
    for (int a = 0; a < F.nobj(); ++a) {
        ns_order[a] = normalizer(F.S, F.obj(a)).order();
        cent[a] = centralizer(F.S, F.obj(a));
    }
    for (size_t ci = 0; ci < classes.size(); ++ci) {
        int mx = 0;
        bool class_centric = true;
        for (int a : classes[ci]) {
            mx = std::max(mx, ns_order[a]);
            if (!cent[a].is_subset_of(F.obj(a))) class_centric = false;
        }
        for (int a : classes[ci]) {
            out[a].object = a;
            out[a].conjugacy_class = classes[ci];
            out[a].fully_normalized = (ns_order[a] == mx);
            out[a].centric = class_centric;
            cls_id[a] = int(ci);
        }
    }
    for (int a = 0; a < F.nobj(); ++a) {
        std::vector<int> order;
        TableGroup aut = aut_table(F, a, &order);
        Bitset inner = inner_aut_mask(F, a, order);
        Bitset op = o_p_subgroup(aut, F.p);
        out[a].radical = (op == inner);
        out[a].centric_radical = out[a].centric && out[a].radical;
        // Out_F(P) = Aut_F(P) / Inn(P) as a table group on cosets
        int n = aut.size();
        std::vector<int> coset_of(n, -1);
        std::vector<int> reps;
        for (int i = 0; i < n; ++i) {
            if (coset_of[i] >= 0) continue;
            int c = int(reps.size());
            reps.push_back(i);
            for (int j : inner.members()) coset_of[aut.mul(j, i)] = c;
            check_invariant(coset_of[i] == c, "Out_F(P): inner closure failed");
        }
        int m = int(reps.size());
        std::vector<std::vector<int>> qt(m, std::vector<int>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) qt[i][j] = coset_of[aut.mul(reps[i], reps[j])];
        TableGroup outg(std::move(qt));
        out[a].essential_raw = has_strongly_p_embedded(outg, F.p);
        out[a].essential = out[a].essential_raw && out[a].centric;
    }
    return out;
}

// F-centric subgroups as object indices.
inline std::vector<int> centric_objects(const FusionSystem& F) {
    std::vector<int> out;
    auto rep = classify(F);
    for (int a = 0; a < F.nobj(); ++a)
        if (rep[a].centric) out.push_back(a);
    return out;
}

inline std::vector<int> centric_radical_objects(const FusionSystem& F) {
    std::vector<int> out;
    auto rep = classify(F);
    for (int a = 0; a < F.nobj(); ++a)
        if (rep[a].centric_radical) out.push_back(a);
    return out;
}

// ---------------------------------------------------------------------------
// Intersection / normalizer matching (hypotheses behind the tree criteria)

struct IntersectionCheck {
    bool hypotheses_hold = true;
    std::vector<std::string> hypothesis_failures;
    bool inclusion_holds = false;    // N_H(P) inside N_F(P) /\ H
    bool homsets_match = true;       // on F-centric domains inside N_S(P)
    std::string discrepancy;
};

inline IntersectionCheck normalizer_intersection_check(const FusionPtr& F,
                                                       const FusionPtr& H,
                                                       const Subgroup& P) {
    IntersectionCheck out;
    if (!(H->S == F->S))
        out.hypothesis_failures.push_back("H and F must be fusion systems over the same S");
    if (!fusion_subsystem_leq(*H, *F))
        out.hypothesis_failures.push_back("H is not a subsystem of F");
    if (!is_saturated(*F).saturated)
        out.hypothesis_failures.push_back("F is not saturated");
    if (!is_saturated(*H).saturated)
        out.hypothesis_failures.push_back("H is not saturated");
    {
        auto rep = classify(*F);
        int a = F->obj_index(P);
        if (!rep[a].fully_normalized)
            out.hypothesis_failures.push_back("P is not fully F-normalized");
    }
    if (!out.hypothesis_failures.empty()) {
        out.hypotheses_hold = false;
        return out;
    }
    FusionPtr NFP = normalizer_subsystem(*F, P);
    FusionPtr NHP = normalizer_subsystem(*H, P);
    FusionPtr meet = intersection_system(*NFP, *H, NFP->S);
    out.inclusion_holds = fusion_subsystem_leq(*NHP, *meet);
    auto frep = classify(*F);
    for (int a = 0; a < meet->nobj() && out.homsets_match; ++a) {
        const Subgroup& A = meet->obj(a);
        if (!frep[F->obj_index(A)].centric) continue;
        for (int b = 0; b < meet->nobj(); ++b) {
            int na = NHP->obj_index(A), nb = NHP->obj_index(meet->obj(b));
            if (meet->hom[a][b].size() != NHP->hom[na][nb].size()) {
                out.homsets_match = false;
                out.discrepancy = "homsets differ at pair of orders (" +
                                  std::to_string(A.order()) + "," +
                                  std::to_string(meet->obj(b).order()) + ")";
                break;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// The two-vertex tree of fusion systems (Notation 2.10)

struct Triple {
    FusionPtr F1;   // over S
    FusionPtr F2;   // over S'
    FusionPtr Fe;   // over S', contained in F1 and F2
    FusionPtr F;    // the join <F1,F2>_S
    const Subgroup& Sprime() const { return F2->S; }
    const Subgroup& Stop() const { return F1->S; }
};

inline Triple make_triple(const FusionPtr& F1, const FusionPtr& F2, const FusionPtr& Fe,
                          size_t hom_cap = kDefaultHomCap) {
    check_arg(F2->S == Fe->S, "triple: F2 and Fe must share the underlying group");
    check_arg(F2->S.is_subset_of(F1->S), "triple: S' must sit inside S");
    check_arg(fusion_subsystem_leq(*Fe, *F1) && fusion_subsystem_leq(*Fe, *F2),
              "triple: Fe must be contained in F1 and F2");
    Triple t;
    t.F1 = F1;
    t.F2 = F2;
    t.Fe = Fe;
    t.F = join(F1, F2, hom_cap);
    return t;
}

// The pruning-shaped triple (H, N_F(P), N_H(P)).
inline Triple pruning_triple(const FusionPtr& F, const FusionPtr& H, const Subgroup& P,
                             size_t hom_cap = kDefaultHomCap) {
    FusionPtr F2 = normalizer_subsystem(*F, P);
    FusionPtr Fe = normalizer_subsystem(*H, P);
    return make_triple(H, F2, Fe, hom_cap);
}

// H_H(P): the subgroup of Aut_H(P) generated by automorphisms extending to
// isomorphisms between strictly larger subgroups.
inline std::vector<Hom> extendable_automorphism_group(const FusionSystem& H, const Subgroup& P) {
    int a = H.obj_index(P);
    std::set<std::vector<uint16_t>> gens;
    for (int r = 0; r < H.nobj(); ++r) {
        const Subgroup& R = H.obj(r);
        if (R.order() <= P.order() || !P.is_subset_of(R)) continue;
        for (int c = 0; c < H.nobj(); ++c)
            for (const Hom& h : H.hom[r][c]) {
                bool fixes = true;
                for (int x : P.members())
                    if (!P.contains(h.apply(x))) { fixes = false; break; }
                if (!fixes) continue;
                std::vector<uint16_t> m(P.order());
                for (int k = 0; k < P.order(); ++k) m[k] = uint16_t(h.apply(P.member(k)));
                gens.insert(std::move(m));
            }
    }
    // close inside Aut_H(P)
    const auto& auts = H.hom[a][a];
    std::map<std::vector<uint16_t>, int> pos;
    for (size_t i = 0; i < auts.size(); ++i) pos[auts[i].map()] = int(i);
    std::set<int> have;
    std::vector<int> frontier;
    for (const auto& m : gens) {
        auto it = pos.find(m);
        check_invariant(it != pos.end(), "H_H(P): extendable automorphism not in Aut_H(P)");
        if (have.insert(it->second).second) frontier.push_back(it->second);
    }
    // include identity
    for (size_t i = 0; i < auts.size(); ++i)
        if (auts[i].is_identity_map() && have.insert(int(i)).second) frontier.push_back(int(i));
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int i : frontier)
            for (int j : have) {
                for (auto [x, y] : {std::pair{i, j}, std::pair{j, i}}) {
                    std::vector<uint16_t> comp(P.order());
                    for (int k = 0; k < P.order(); ++k)
                        comp[k] = uint16_t(auts[x].apply(auts[y].map()[k]));
                    int idx = pos.at(comp);
                    if (have.insert(idx).second) next.push_back(idx);
                }
            }
        frontier = std::move(next);
    }
    std::vector<Hom> out;
    for (int i : have) out.push_back(auts[i]);
    std::sort(out.begin(), out.end());
    return out;
}

// p_+^{1+2}: extraspecial of order p^3 and exponent p (dihedral of order 8
// in the p = 2 convention).
inline bool is_extraspecial_p_plus(const Subgroup& P, int p) {
    if (P.order() != p * p * p) return false;
    Subgroup Z = center(P);
    if (Z.order() != p) return false;
    const FiniteGroup& g = *P.ambient();
    if (p == 2) {
        int invol = 0;
        for (int m : P.members())
            if (m != g.id() && g.element_order(m) == 2) ++invol;
        return invol == 5;  // dihedral type
    }
    for (int m : P.members())
        if (m != g.id() && g.element_order(m) != p) return false;
    return true;
}

}  // namespace fuslim
