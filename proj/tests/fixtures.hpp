#pragma once

// Shared fixtures: the Sylow 2-subgroup of S4 with its realized fusion
// system, the A4 fixture on the Klein four, and named subgroups inside them.

#include "fuslim/fusion.hpp"
#include "fuslim/presets.hpp"

namespace fixtures {

using namespace fuslim;

struct D8InS4 {
    GroupPtr s4;
    GroupPtr amb;          // D8 materialized as its own group
    LatticePtr lat;
    FusionPtr F;           // realize(S4, D8)
    FusionPtr F1;          // realize(D8, D8), inner fusion
    int d8_obj, c4_obj, v_obj, vp_obj;   // object indices in F

    static const D8InS4& get() {
        static D8InS4 fx = build();
        return fx;
    }

private:
    static D8InS4 build() {
        D8InS4 fx;
        fx.s4 = symmetric_group(4);
        Subgroup syl = sylow(fx.s4, 2);
        fx.amb = syl.materialize();
        fx.lat = SubgroupLattice::build(fx.amb);
        fx.F = realize_into(fx.lat, Subgroup::full(fx.amb), fx.s4);
        fx.F1 = inner_fusion(fx.lat, Subgroup::full(fx.amb));
        fx.d8_obj = fx.F->obj_index(fx.F->S);
        fx.c4_obj = fx.v_obj = fx.vp_obj = -1;
        for (int a = 0; a < fx.F->nobj(); ++a) {
            const Subgroup& P = fx.F->obj(a);
            if (P.order() != 4) continue;
            bool cyclic = false, fixed_point_free = true;
            for (int m : P.members()) {
                if (fx.amb->element_order(m) == 4) cyclic = true;
                const Perm& perm = fx.amb->element(m);
                if (!perm.is_identity()) {
                    for (int pt = 0; pt < 4; ++pt)
                        if (perm(pt) == pt) fixed_point_free = false;
                }
            }
            if (cyclic) fx.c4_obj = a;
            else if (fixed_point_free) fx.v_obj = a;   // the normal Klein four
            else fx.vp_obj = a;
        }
        return fx;
    }
};

struct A4OnV {
    GroupPtr a4;
    GroupPtr amb;         // C2 x C2
    LatticePtr lat;
    FusionPtr F;          // realize(A4, V)
    FusionPtr F1;         // inner fusion of V

    static const A4OnV& get() {
        static A4OnV fx = build();
        return fx;
    }

private:
    static A4OnV build() {
        A4OnV fx;
        fx.a4 = alternating_group(4);
        Subgroup syl = sylow(fx.a4, 2);
        fx.amb = syl.materialize();
        fx.lat = SubgroupLattice::build(fx.amb);
        fx.F = realize_into(fx.lat, Subgroup::full(fx.amb), fx.a4);
        fx.F1 = inner_fusion(fx.lat, Subgroup::full(fx.amb));
        return fx;
    }
};

// C3 x C3 with an inversion seed on the first factor: the standard
// unsaturated fixture.
struct C3C3Inversion {
    GroupPtr amb;
    LatticePtr lat;
    FusionPtr F;
    Subgroup a_axis;

    static const C3C3Inversion& get() {
        static C3C3Inversion fx = build();
        return fx;
    }

private:
    static C3C3Inversion build() {
        C3C3Inversion fx;
        fx.amb = elementary_abelian_group(3, 2);
        fx.lat = SubgroupLattice::build(fx.amb);
        Subgroup full = Subgroup::full(fx.amb);
        // first C3 factor: moves points 0..2 only
        std::vector<int> mem{fx.amb->id()};
        for (int i = 0; i < fx.amb->size(); ++i) {
            const Perm& p = fx.amb->element(i);
            if (!p.is_identity() && p(3) == 3 && p(4) == 4 && p(5) == 5) mem.push_back(i);
        }
        fx.a_axis = Subgroup::from_members(fx.amb, mem);
        std::vector<uint16_t> invmap(fx.a_axis.order());
        for (int k = 0; k < fx.a_axis.order(); ++k)
            invmap[k] = uint16_t(fx.amb->inv(fx.a_axis.member(k)));
        Hom inversion(fx.a_axis, fx.a_axis, invmap);
        fx.F = generate(fx.lat, full, {inversion});
        return fx;
    }
};

}  // namespace fixtures
