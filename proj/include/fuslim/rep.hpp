#pragma once

// Rep_F(P,H) = Hom_F(P,S') modulo postcomposition with H-isomorphisms, with
// lexicographically minimal element maps as canonical class representatives.

#include "fusion.hpp"

namespace fuslim {

struct RepClass {
    Hom rep;  // canonical representative P -> S_H
    bool operator<(const RepClass& o) const { return rep.map() < o.rep.map(); }
    bool operator==(const RepClass& o) const { return rep.map() == o.rep.map(); }
};

// Canonical form of phi: P -> S' under the H-iso equivalence: the lex-least
// map theta . phi over theta in Hom_H(phi(P), S_H) (restricted to its image
// every such theta is an H-isomorphism onto it, and every H-isomorphism out
// of phi(P) arises this way).
inline std::vector<uint16_t> rep_canonical_map(const FusionSystem& H, const Hom& phi) {
    Subgroup X = phi.image();
    int hx = H.obj_index(X);
    int htop = H.top();
    std::vector<uint16_t> best;
    for (const Hom& theta : H.hom[hx][htop]) {
        std::vector<uint16_t> cand(phi.map().size());
        for (size_t k = 0; k < phi.map().size(); ++k)
            cand[k] = uint16_t(theta.apply(phi.map()[k]));
        if (best.empty() || cand < best) best = std::move(cand);
    }
    check_invariant(!best.empty(), "rep_canonical_map: empty H-homset from image");
    return best;
}

// Rep_F(P,H) for an object P of F and a fusion subsystem H over S' <= S.
inline std::vector<RepClass> rep_set(const FusionSystem& F, const Subgroup& P,
                                     const FusionSystem& H) {
    check_arg(F.lattice->group.get() == H.lattice->group.get(), "rep_set: ambient mismatch");
    int a = F.obj_index(P);
    int sprime = F.obj_index(H.S);
    std::set<std::vector<uint16_t>> canon;
    for (const Hom& phi : F.hom[a][sprime]) canon.insert(rep_canonical_map(H, phi));
    std::vector<RepClass> out;
    for (const auto& m : canon)
        out.push_back(RepClass{Hom(P, H.S, m, false)});
    return out;  // set iteration is already sorted
}

// Index of the class of phi inside a sorted rep set.
inline int rep_class_index(const FusionSystem& H, const std::vector<RepClass>& classes,
                           const Hom& phi) {
    std::vector<uint16_t> c = rep_canonical_map(H, phi);
    for (size_t i = 0; i < classes.size(); ++i)
        if (classes[i].rep.map() == c) return int(i);
    throw InvariantViolation("rep_class_index: class not found");
}

}  // namespace fuslim
