#include "doctest.h"

#include <set>

#include "fuslim/fusion.hpp"
#include "fuslim/presets.hpp"

using namespace fuslim;

namespace {

// Exponential oracle: every subset containing the identity, tested for
// closure, on groups of order <= 16.
std::set<Bitset> subset_closure_oracle(const GroupPtr& g) {
    int n = g->size();
    REQUIRE(n <= 16);
    std::set<Bitset> subs;
    for (uint32_t mask = 1; mask < (uint32_t(1) << n); ++mask) {
        if (!(mask & 1)) continue;  // identity is index 0
        std::vector<int> mem;
        for (int i = 0; i < n; ++i)
            if (mask & (uint32_t(1) << i)) mem.push_back(i);
        bool closed = true;
        for (int a : mem) {
            if (!(mask & (uint32_t(1) << g->inv(a)))) { closed = false; break; }
            for (int b : mem)
                if (!(mask & (uint32_t(1) << g->mul(a, b)))) { closed = false; break; }
            if (!closed) break;
        }
        if (closed) {
            Bitset bs(n);
            for (int i : mem) bs.set(i);
            subs.insert(bs);
        }
    }
    return subs;
}

}  // namespace

TEST_SUITE("group") {

TEST_CASE("group_from_generators closure sizes") {
    auto s4 = group_from_generators(
        4, {perm_from_cycles(4, {{0, 1, 2, 3}}), perm_from_cycles(4, {{0, 1}})});
    CHECK(s4->size() == 24);

    auto triv = group_from_generators(1, {});
    CHECK(triv->size() == 1);

    auto klein = group_from_generators(
        4, {perm_from_cycles(4, {{0, 1}, {2, 3}}), perm_from_cycles(4, {{0, 2}, {1, 3}})});
    CHECK(klein->size() == 4);
}

TEST_CASE("size cap raises capacity error") {
    CHECK_THROWS_AS(group_from_generators(
                        5, {perm_from_cycles(5, {{0, 1, 2, 3, 4}}), perm_from_cycles(5, {{0, 1}})},
                        /*size_cap=*/100),
                    CapacityError);
}

TEST_CASE("regenerating from the full element list is idempotent") {
    auto d8 = dihedral_group(8);
    auto again = group_from_generators(d8->degree(), d8->elements());
    CHECK(*d8 == *again);
}

TEST_CASE("subgroup enumeration matches the exponential subset oracle") {
    for (auto g : {dihedral_group(8), quaternion8(), elementary_abelian_group(2, 3),
                   cyclic_group(12), direct_product(cyclic_group(4), cyclic_group(2))}) {
        auto subs = enumerate_subgroups(g);
        auto oracle = subset_closure_oracle(g);
        REQUIRE(subs.size() == oracle.size());
        for (const auto& s : subs) CHECK(oracle.count(s.mask()) == 1);
        CHECK(std::is_sorted(subs.begin(), subs.end()));
    }
}

TEST_CASE("subgroup counts: D8 has 10, C2 has 2, S4 has 30") {
    CHECK(enumerate_subgroups(dihedral_group(8)).size() == 10);
    CHECK(enumerate_subgroups(cyclic_group(2)).size() == 2);
    CHECK(enumerate_subgroups(symmetric_group(4)).size() == 30);
}

TEST_CASE("subgroup list closed under conjugation") {
    auto g = symmetric_group(4);
    auto subs = enumerate_subgroups(g);
    std::set<Bitset> all;
    for (const auto& s : subs) all.insert(s.mask());
    for (const auto& s : subs)
        for (int x = 0; x < g->size(); ++x) {
            Bitset c(g->size());
            for (int m : s.members()) c.set(g->conj(x, m));
            CHECK(all.count(c) == 1);
        }
}

TEST_CASE("normalizer, centralizer, center, sylow") {
    auto d8 = dihedral_group(8);
    Subgroup full = Subgroup::full(d8);
    Subgroup z = center(full);
    CHECK(z.order() == 2);
    CHECK(centralizer(full, z).order() == 8);  // center is central

    auto s4 = symmetric_group(4);
    Subgroup s4full = Subgroup::full(s4);
    // the normal Klein four
    std::vector<int> vmem;
    for (int i = 0; i < s4->size(); ++i) {
        const Perm& p = s4->element(i);
        if (p.is_identity() || (p.order() == 2 && p(0) != 0 && p(1) != 1 && p(2) != 2))
            vmem.push_back(i);
    }
    REQUIRE(vmem.size() == 4);
    Subgroup v = Subgroup::from_members(s4, vmem);
    CHECK(normalizer(s4full, v).order() == 24);

    Subgroup syl = sylow(s4, 2);
    CHECK(syl.order() == 8);
    CHECK_THROWS_AS(sylow(s4, 4), ArgumentError);

    // centralizer(G,P) <= normalizer(G,P) on every subgroup of D8
    for (const auto& p : enumerate_subgroups(d8))
        CHECK(centralizer(full, p).is_subset_of(normalizer(full, p)));
}

TEST_CASE("conjugation homs and composition") {
    auto s4 = symmetric_group(4);
    Subgroup full = Subgroup::full(s4);
    Subgroup d8 = sylow(s4, 2);
    // inclusion as conjugation by the identity
    Subgroup c4 = [&] {
        for (const auto& s : enumerate_subgroups(d8.materialize())) {
            if (s.order() != 4) continue;
            bool cyclic = false;
            for (int m : s.members())
                if (s.ambient()->element_order(m) == 4) cyclic = true;
            if (cyclic) {
                std::vector<int> mem;
                for (int m : s.members()) mem.push_back(s4->index_of(s.ambient()->element(m)));
                return Subgroup::from_members(s4, mem);
            }
        }
        throw std::runtime_error("no C4 in D8?");
    }();
    Hom inc = conjugation_hom(s4->id(), c4, d8);
    CHECK(inc.is_identity_map());

    // conjugating C4 <= D8 by a transposition in D8 inverts it
    int t = -1;
    for (int m : d8.members())
        if (s4->element_order(m) == 2 && !c4.contains(m)) { t = m; break; }
    REQUIRE(t >= 0);
    Hom ch = conjugation_hom(t, c4, d8);
    CHECK(ch.image() == c4);
    bool inverts = false;
    for (int m : c4.members())
        if (s4->element_order(m) == 4 && ch.apply(m) == s4->inv(m)) inverts = true;
    CHECK(inverts);

    // c_g . c_h = c_{gh} on random-ish pairs
    for (int gsel : {1, 5, 9})
        for (int hsel : {2, 3, 7}) {
            int g = d8.member(gsel % d8.order());
            int h = d8.member(hsel % d8.order());
            Subgroup z = center(Subgroup::full(d8.materialize()));
            (void)z;
            Hom cg = conjugation_hom(g, c4, d8);
            Hom chh = conjugation_hom(h, c4, d8);
            Hom lrs = compose_hom(cg, chh);
            Hom direct = conjugation_hom(s4->mul(g, h), c4, d8);
            CHECK(lrs == direct);
        }

    // containment error path
    Subgroup v = [&] {
        std::vector<int> vmem;
        for (int i = 0; i < s4->size(); ++i) {
            const Perm& p = s4->element(i);
            if (p.is_identity() || (p.order() == 2 && p(0) != 0 && p(1) != 1 && p(2) != 2))
                vmem.push_back(i);
        }
        return Subgroup::from_members(s4, vmem);
    }();
    bool threw = false;
    for (int g = 0; g < s4->size(); ++g) {
        try {
            conjugation_hom(g, c4, v);
        } catch (const ArgumentError&) {
            threw = true;
            break;
        }
    }
    CHECK(threw);
}

TEST_CASE("invert and restrict") {
    auto d8 = dihedral_group(8);
    Subgroup full = Subgroup::full(d8);
    Hom idmap = conjugation_hom(d8->id(), full, full);
    CHECK(invert_iso(idmap) == idmap);
    // restriction of conjugation is conjugation
    Subgroup z = center(full);
    int r = -1;
    for (int i = 0; i < d8->size(); ++i)
        if (d8->element_order(i) == 4) { r = i; break; }
    Hom cr = conjugation_hom(r, full, full);
    Hom crz = restrict_hom(cr, z);
    CHECK(crz == conjugation_hom(r, z, full));
}

TEST_CASE("presets") {
    CHECK(symmetric_group(3)->size() == 6);
    CHECK(alternating_group(4)->size() == 12);
    CHECK(alternating_group(5)->size() == 60);
    CHECK(dihedral_group(16)->size() == 16);
    CHECK(cyclic_group(9)->size() == 9);
    CHECK(elementary_abelian_group(3, 2)->size() == 9);
    CHECK(quaternion8()->size() == 8);
    auto es27 = extraspecial_exponent_p(3);
    CHECK(es27->size() == 27);
    CHECK(center(Subgroup::full(es27)).order() == 3);
    for (int i = 0; i < es27->size(); ++i)
        CHECK(es27->element_order(i) <= 3);
    auto es125 = extraspecial_exponent_p(5);
    CHECK(es125->size() == 125);
    CHECK(center(Subgroup::full(es125)).order() == 5);
    CHECK(group_from_preset("preset:dihedral:8")->size() == 8);
    CHECK_THROWS_AS(group_from_preset("preset:nonsense:1"), ArgumentError);
}

TEST_CASE("automorphism groups") {
    CHECK(automorphism_group(*dihedral_group(8)).size() == 8);
    CHECK(automorphism_group(*quaternion8()).size() == 24);
    CHECK(automorphism_group(*elementary_abelian_group(2, 3)).size() == 168);
    CHECK(automorphism_group(*cyclic_group(8)).size() == 4);
}

TEST_CASE("extraspecial recognition") {
    auto es = extraspecial_exponent_p(3);
    CHECK(is_extraspecial_p_plus(Subgroup::full(es), 3));
    CHECK(is_extraspecial_p_plus(Subgroup::full(dihedral_group(8)), 2));
    CHECK(!is_extraspecial_p_plus(Subgroup::full(quaternion8()), 2));
    CHECK(!is_extraspecial_p_plus(Subgroup::full(cyclic_group(27)), 3));
}

}  // TEST_SUITE
