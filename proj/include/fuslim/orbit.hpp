#pragma once

// Orbit categories O^C(F): objects the family members, morphisms the cosets
// Inn(Q)\Hom_F(P,Q) with lexicographically minimal representatives, plus a
// total composition table over representative pairs.

#include <memory>

#include "family.hpp"
#include "rep.hpp"

namespace fuslim {

class OrbitCategory {
public:
    FusionPtr F;
    std::vector<int> objects;  // F-object indices, ascending

    struct Mor {
        int src = -1, dst = -1;  // local object indices
        Hom rep;
        bool identity = false;
    };
    std::vector<Mor> mors;                            // grouped by (src, dst)
    std::vector<std::vector<std::vector<int>>> hom_ids;  // [a][b] -> global ids
    // comp[m2][m1]: id of (m2 . m1) when m1: a->b, m2: b->c; -1 otherwise
    std::vector<std::vector<int>> comp;

    int nobj() const { return int(objects.size()); }
    int nmor() const { return int(mors.size()); }
    const Subgroup& obj(int a) const { return F->obj(objects[a]); }
    int identity_id(int a) const { return id_of_[a]; }

    int local_index(const Subgroup& P) const {
        int fo = F->obj_index(P);
        auto it = std::lower_bound(objects.begin(), objects.end(), fo);
        check_arg(it != objects.end() && *it == fo, "OrbitCategory: subgroup not an object");
        return int(it - objects.begin());
    }

    // Inn(Q)-minimal representative map of a morphism P -> Q of F.
    std::vector<uint16_t> canonical_coset_map(const std::vector<uint16_t>& map, int b) const {
        const FiniteGroup& g = *F->ambient();
        const Subgroup& Q = obj(b);
        std::vector<uint16_t> best = map;
        std::vector<uint16_t> cand(map.size());
        for (int q : Q.members()) {
            for (size_t k = 0; k < map.size(); ++k)
                cand[k] = uint16_t(g.conj(q, map[k]));
            if (cand < best) best = cand;
        }
        return best;
    }

    int mor_id_of_map(int a, int b, const std::vector<uint16_t>& canonical) const {
        for (int id : hom_ids[a][b])
            if (mors[id].rep.map() == canonical) return id;
        throw InvariantViolation("OrbitCategory: unknown morphism representative");
    }

    int mor_id_of_hom(const Hom& h) const {
        int a = local_index(h.dom());
        int b = local_index(h.cod());
        return mor_id_of_map(a, b, canonical_coset_map(h.map(), b));
    }

    int compose(int m2, int m1) const {
        int r = comp[m2][m1];
        check_arg(r >= 0, "OrbitCategory::compose: morphisms not composable");
        return r;
    }

    static std::shared_ptr<const OrbitCategory> build(const SubgroupFamily& fam) {
        check_arg(fam.certified(), "build_orbit_category: family must be certified closed");
        auto O = std::make_shared<OrbitCategory>();
        O->F = fam.F;
        for (int a : fam.members) O->objects.push_back(a);
        int n = O->nobj();
        O->hom_ids.assign(n, std::vector<std::vector<int>>(n));
        O->id_of_.assign(n, -1);
        const FusionSystem& F = *O->F;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                std::set<std::vector<uint16_t>> reps;
                for (const Hom& h : F.hom[O->objects[a]][O->objects[b]])
                    reps.insert(O->canonical_coset_map(h.map(), b));
                for (const auto& m : reps) {
                    Mor mor;
                    mor.src = a;
                    mor.dst = b;
                    mor.rep = Hom(O->obj(a), O->obj(b), m, false);
                    mor.identity = (a == b) && mor.rep.is_identity_map();
                    if (mor.identity) O->id_of_[a] = int(O->mors.size());
                    O->hom_ids[a][b].push_back(int(O->mors.size()));
                    O->mors.push_back(std::move(mor));
                }
            }
        for (int a = 0; a < n; ++a)
            check_invariant(O->id_of_[a] >= 0, "OrbitCategory: identity missing");
        // composition table
        int m = O->nmor();
        O->comp.assign(m, std::vector<int>(m, -1));
        for (int m1 = 0; m1 < m; ++m1) {
            const Mor& f = O->mors[m1];
            const Subgroup& P = O->obj(f.src);
            for (int m2 = 0; m2 < m; ++m2) {
                const Mor& g = O->mors[m2];
                if (g.src != f.dst) continue;
                std::vector<uint16_t> cmap(P.order());
                for (int k = 0; k < P.order(); ++k) cmap[k] = uint16_t(g.rep.apply(f.rep.map()[k]));
                O->comp[m2][m1] = O->mor_id_of_map(f.src, g.dst, O->canonical_coset_map(cmap, g.dst));
            }
        }
        return O;
    }

private:
    std::vector<int> id_of_;
};
using OrbitPtr = std::shared_ptr<const OrbitCategory>;

inline OrbitPtr build_orbit_category(const SubgroupFamily& fam) {
    return OrbitCategory::build(fam);
}

inline OrbitPtr centric_orbit_category(const FusionPtr& F) {
    return build_orbit_category(centric_family(F));
}

// The functor O^C(H) -> O^C(F) induced by a subsystem inclusion H <= F:
// identity on objects (as subgroups), Inn-coset map on morphisms.
struct OrbitEmbedding {
    OrbitPtr sub;   // over H
    OrbitPtr big;   // over F
    std::vector<int> obj_map;  // sub-local -> big-local
    std::vector<int> mor_map;  // sub mor id -> big mor id
};

inline OrbitEmbedding build_orbit_embedding(const OrbitPtr& sub, const OrbitPtr& big) {
    check_arg(fusion_subsystem_leq(*sub->F, *big->F),
              "orbit embedding: source fusion system must be contained in the target");
    OrbitEmbedding e;
    e.sub = sub;
    e.big = big;
    e.obj_map.resize(sub->nobj());
    for (int a = 0; a < sub->nobj(); ++a) e.obj_map[a] = big->local_index(sub->obj(a));
    e.mor_map.resize(sub->nmor());
    for (int i = 0; i < sub->nmor(); ++i) {
        const auto& mor = sub->mors[i];
        int A = e.obj_map[mor.src], B = e.obj_map[mor.dst];
        e.mor_map[i] = big->mor_id_of_map(A, B, big->canonical_coset_map(mor.rep.map(), B));
    }
    // functoriality: composition commutes with the embedding
    for (int m1 = 0; m1 < sub->nmor(); ++m1)
        for (int m2 = 0; m2 < sub->nmor(); ++m2) {
            int c = sub->comp[m2][m1];
            if (c < 0) continue;
            check_invariant(big->comp[e.mor_map[m2]][e.mor_map[m1]] == e.mor_map[c],
                            "orbit embedding is not functorial");
        }
    return e;
}

}  // namespace fuslim
