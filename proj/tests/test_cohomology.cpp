#include "doctest.h"

#include "fixtures.hpp"
#include "fuslim/group_cohomology.hpp"

using namespace fuslim;
using fixtures::D8InS4;

TEST_SUITE("cohomology") {

TEST_CASE("H^j(C2; F2) has dimension 1 for j = 0..5") {
    auto c2 = cyclic_group(2);
    Subgroup full = Subgroup::full(c2);
    {
        // the default table caps tiny groups at degree 4
        CohomologyCache cache(2);
        for (int j = 0; j <= 4; ++j) CHECK(cache.get(full, j)->dim == 1);
        CHECK_THROWS_AS(cache.get(full, 5), CapacityError);
    }
    {
        // caps are configurable, never silently truncated
        CohomologyCaps caps;
        caps.override_cap = 6;
        CohomologyCache cache(2, caps);
        for (int j = 0; j <= 5; ++j) CHECK(cache.get(full, j)->dim == 1);
    }
}

TEST_CASE("H^*(C2xC2; F2) is polynomial on two generators") {
    auto v = elementary_abelian_group(2, 2);
    CohomologyCache cache(2);
    Subgroup full = Subgroup::full(v);
    for (int j = 0; j <= 4; ++j) CHECK(cache.get(full, j)->dim == j + 1);
}

TEST_CASE("H^*(D8; F2): dims 1, 2, 3, 4") {
    auto d8 = dihedral_group(8);
    CohomologyCache cache(2);
    Subgroup full = Subgroup::full(d8);
    CHECK(cache.get(full, 0)->dim == 1);
    CHECK(cache.get(full, 1)->dim == 2);
    CHECK(cache.get(full, 2)->dim == 3);
    CHECK(cache.get(full, 3)->dim == 4);
}

TEST_CASE("H^*(Q8; F2): dims 1, 2, 2, 1, 2") {
    auto q8 = quaternion8();
    CohomologyCache cache(2);
    Subgroup full = Subgroup::full(q8);
    CHECK(cache.get(full, 0)->dim == 1);
    CHECK(cache.get(full, 1)->dim == 2);
    CHECK(cache.get(full, 2)->dim == 2);
    CHECK(cache.get(full, 3)->dim == 1);
    CHECK(cache.get(full, 4)->dim == 1);  // period 4: H^4 is spanned by the periodicity class
}

TEST_CASE("H^*(C4; F2): dims all 1") {
    auto c4 = cyclic_group(4);
    CohomologyCache cache(2);
    Subgroup full = Subgroup::full(c4);
    for (int j = 0; j <= 4; ++j) CHECK(cache.get(full, j)->dim == 1);
}

TEST_CASE("odd primes: H^*(C3; F3) has dimension 1 in every degree") {
    auto c3 = cyclic_group(3);
    CohomologyCache cache(3);
    Subgroup full = Subgroup::full(c3);
    for (int j = 0; j <= 4; ++j) CHECK(cache.get(full, j)->dim == 1);
}

TEST_CASE("H^1 equals Hom(P^ab, F_p)") {
    CohomologyCache cache(2);
    // D8 abelianization C2 x C2: dim 2; Q8 same; C8: dim 1
    CHECK(cache.get(Subgroup::full(dihedral_group(8)), 1)->dim == 2);
    CHECK(cache.get(Subgroup::full(quaternion8()), 1)->dim == 2);
    CHECK(cache.get(Subgroup::full(cyclic_group(8)), 1)->dim == 1);
}

TEST_CASE("induced maps: identity and inner automorphisms act trivially") {
    const auto& fx = D8InS4::get();
    CohomologyCache cache(2);
    Subgroup full = fx.F->S;
    for (int j = 1; j <= 3; ++j) {
        Hom idh = conjugation_hom(fx.amb->id(), full, full);
        FpMat m = induced_cohomology_map(cache, idh, j);
        CHECK(m == FpMat::identity(2, cache.get(full, j)->dim));
        for (int s : full.members()) {
            Hom inner = conjugation_hom(s, full, full);
            CHECK(induced_cohomology_map(cache, inner, j) ==
                  FpMat::identity(2, cache.get(full, j)->dim));
        }
    }
}

TEST_CASE("induced maps are contravariantly functorial") {
    const auto& fx = D8InS4::get();
    CohomologyCache cache(2);
    // compose pairs of fusion morphisms and compare matrices, j <= 3
    const auto& F = *fx.F;
    for (int j = 1; j <= 3; ++j)
        for (int a : {fx.v_obj, fx.c4_obj})
            for (const Hom& phi : F.hom[a][fx.d8_obj])
                for (const Hom& psi : F.hom[fx.d8_obj][fx.d8_obj]) {
                    Hom comp = compose_hom(psi, phi);
                    FpMat lhs = induced_cohomology_map(cache, comp, j);
                    FpMat rhs =
                        induced_cohomology_map(cache, phi, j).mul(induced_cohomology_map(cache, psi, j));
                    CHECK(lhs == rhs);
                }
}

TEST_CASE("restriction H^1(D8) -> H^1(V) has rank 1") {
    // all homomorphisms D8 -> C2 kill the Frattini subgroup, which every
    // Klein four of D8 contains, so the two reflection classes restrict to
    // the same nonzero functional
    const auto& fx = D8InS4::get();
    CohomologyCache cache(2);
    const Subgroup& V = fx.F->obj(fx.v_obj);
    FpMat res = restriction_map(cache, fx.F->S, V, 1);
    CHECK(res.rows() == 2);
    CHECK(res.cols() == 2);
    CHECK(res.rank() == 1);
    // sanity: restriction to the cyclic C4 also has rank 1
    FpMat res2 = restriction_map(cache, fx.F->S, fx.F->obj(fx.c4_obj), 1);
    CHECK(res2.rank() == 1);
}

TEST_CASE("transfer: tr.Res = [G:H] id") {
    // (S4, D8): index 3, odd, so tr.Res is the identity over F2 for j <= 2
    auto s4 = symmetric_group(4);
    CohomologyCache cache(2);
    Subgroup s4full = Subgroup::full(s4);
    Subgroup d8 = sylow(s4, 2);
    for (int j = 0; j <= 2; ++j) {
        FpMat tr = transfer_map(cache, s4full, d8, j);
        FpMat res = restriction_map(cache, s4full, d8, j);
        FpMat comp = tr.mul(res);
        CHECK(comp == FpMat::identity(2, cache.get(s4full, j)->dim));
    }
    // (D8, V): index 2 = 0 mod 2
    auto d8g = dihedral_group(8);
    Subgroup d8full = Subgroup::full(d8g);
    Subgroup v = [&] {
        for (const auto& s : enumerate_subgroups(d8g))
            if (s.order() == 4 && !centralizer(d8full, s).is_subset_of(s))
                continue;
        for (const auto& s : enumerate_subgroups(d8g)) {
            if (s.order() != 4) continue;
            bool klein = true;
            for (int m : s.members())
                if (d8g->element_order(m) == 4) klein = false;
            if (klein) return s;
        }
        throw std::runtime_error("no klein");
    }();
    for (int j = 0; j <= 2; ++j) {
        FpMat tr = transfer_map(cache, d8full, v, j);
        FpMat res = restriction_map(cache, d8full, v, j);
        CHECK(tr.mul(res).is_zero());
    }
    // (C4, C2): index 2
    auto c4 = cyclic_group(4);
    Subgroup c4full = Subgroup::full(c4);
    Subgroup c2 = [&] {
        for (const auto& s : enumerate_subgroups(c4))
            if (s.order() == 2) return s;
        throw std::runtime_error("no c2");
    }();
    for (int j = 0; j <= 2; ++j) {
        FpMat tr = transfer_map(cache, c4full, c2, j);
        FpMat res = restriction_map(cache, c4full, c2, j);
        CHECK(tr.mul(res).is_zero());
    }
    // H = G: tr.Res = id
    FpMat tr = transfer_map(cache, d8full, d8full, 2);
    FpMat res = restriction_map(cache, d8full, d8full, 2);
    CHECK(tr.mul(res) == FpMat::identity(2, cache.get(d8full, 2)->dim));
}

TEST_CASE("odd-prime transfer: (S3, C3) at p = 3") {
    // index 2 is invertible mod 3, so tr.Res = 2 id is an isomorphism
    auto s3 = symmetric_group(3);
    CohomologyCache cache(3);
    Subgroup g = Subgroup::full(s3);
    Subgroup h = sylow(s3, 3);
    for (int j = 0; j <= 2; ++j) {
        FpMat tr = transfer_map(cache, g, h, j);
        FpMat res = restriction_map(cache, g, h, j);
        FpMat comp = tr.mul(res);
        FpMat expect = FpMat::identity(3, comp.rows());
        for (int i = 0; i < expect.rows(); ++i) expect.set(i, i, 2);
        CHECK(comp == expect);
    }
    // mod-3 cohomology of S3 vanishes in degrees 1 and 2
    CHECK(cache.get(g, 0)->dim == 1);
    CHECK(cache.get(g, 1)->dim == 0);
    CHECK(cache.get(g, 2)->dim == 0);
}

TEST_CASE("H^j(S4; F2) dims 1, 1, 2 for j <= 2") {
    auto s4 = symmetric_group(4);
    CohomologyCache cache(2);
    Subgroup full = Subgroup::full(s4);
    CHECK(cache.get(full, 0)->dim == 1);
    CHECK(cache.get(full, 1)->dim == 1);
    CHECK(cache.get(full, 2)->dim == 2);
    CHECK_THROWS_AS(cache.get(full, 3), CapacityError);
}

}  // TEST_SUITE
