#pragma once

// Injective group homomorphisms between subgroups of a common ambient group,
// stored as element maps: map[k] is the ambient index of the image of the
// k-th member of the domain. Two homs are equal iff their element maps are.

#include <algorithm>
#include <vector>

#include "group.hpp"

namespace fuslim {

class Hom {
public:
    Hom() = default;
    Hom(Subgroup dom, Subgroup cod, std::vector<uint16_t> map, bool validate = true)
        : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
        check_arg(dom_.same_ambient(cod_), "Hom: ambient mismatch");
        check_arg(int(map_.size()) == dom_.order(), "Hom: map length mismatch");
        if (validate) check_arg(is_valid(), "Hom: not an injective homomorphism into codomain");
    }

    const Subgroup& dom() const { return dom_; }
    const Subgroup& cod() const { return cod_; }
    const std::vector<uint16_t>& map() const { return map_; }
    const GroupPtr& ambient() const { return dom_.ambient(); }

    int apply(int ambient_elem) const {
        int k = dom_.member_pos(ambient_elem);
        check_arg(k >= 0, "Hom::apply: element outside domain");
        return map_[k];
    }

    bool is_identity_map() const {
        for (int k = 0; k < dom_.order(); ++k)
            if (map_[k] != dom_.member(k)) return false;
        return true;
    }

    // image as a subgroup mask
    Subgroup image() const {
        Bitset m(ambient()->size());
        for (uint16_t v : map_) m.set(v);
        return Subgroup(ambient(), std::move(m));
    }

    bool is_iso_onto_cod() const {
        if (dom_.order() != cod_.order()) return false;
        for (uint16_t v : map_)
            if (!cod_.contains(v)) return false;
        return true;  // injective by construction, equal orders
    }

    bool operator==(const Hom& o) const {
        return dom_ == o.dom_ && cod_ == o.cod_ && map_ == o.map_;
    }
    // within a fixed (dom, cod) homset this is lexicographic order on element maps
    bool operator<(const Hom& o) const {
        if (!(dom_ == o.dom_)) return dom_ < o.dom_;
        if (!(cod_ == o.cod_)) return cod_ < o.cod_;
        return map_ < o.map_;
    }

    bool is_valid() const {
        const FiniteGroup& g = *ambient();
        std::vector<char> seen(g.size(), 0);
        for (uint16_t v : map_) {
            if (!cod_.contains(v) || seen[v]) return false;
            seen[v] = 1;
        }
        for (int a : dom_.members())
            for (int b : dom_.members()) {
                int ab = g.mul(a, b);
                if (g.mul(apply(a), apply(b)) != apply(ab)) return false;
            }
        return true;
    }

private:
    Subgroup dom_, cod_;
    std::vector<uint16_t> map_;
};

// x |-> g x g^{-1} with domain P and the given codomain.
inline Hom conjugation_hom(int g_elem, const Subgroup& p, const Subgroup& target) {
    const FiniteGroup& g = *p.ambient();
    std::vector<uint16_t> map(p.order());
    for (int k = 0; k < p.order(); ++k) {
        int y = g.conj(g_elem, p.member(k));
        check_arg(target.contains(y), "conjugation_hom: image not contained in target");
        map[k] = uint16_t(y);
    }
    return Hom(p, target, std::move(map), false);
}

inline Hom inclusion_hom(const Subgroup& p, const Subgroup& q) {
    check_arg(p.is_subset_of(q), "inclusion_hom: P not contained in Q");
    std::vector<uint16_t> map(p.order());
    for (int k = 0; k < p.order(); ++k) map[k] = uint16_t(p.member(k));
    return Hom(p, q, std::move(map), false);
}

// f after g; requires image(g) inside dom(f).
inline Hom compose_hom(const Hom& f, const Hom& g) {
    check_arg(f.ambient().get() == g.ambient().get(), "compose_hom: ambient mismatch");
    std::vector<uint16_t> map(g.dom().order());
    for (int k = 0; k < g.dom().order(); ++k) {
        int mid = g.map()[k];
        check_arg(f.dom().contains(mid), "compose_hom: image(g) not contained in dom(f)");
        map[k] = uint16_t(f.apply(mid));
    }
    return Hom(g.dom(), f.cod(), std::move(map), false);
}

inline Hom restrict_hom(const Hom& f, const Subgroup& p, bool retarget_to_image = false) {
    check_arg(p.is_subset_of(f.dom()), "restrict_hom: P not contained in dom(f)");
    std::vector<uint16_t> map(p.order());
    for (int k = 0; k < p.order(); ++k) map[k] = uint16_t(f.apply(p.member(k)));
    if (retarget_to_image) {
        Bitset m(f.ambient()->size());
        for (uint16_t v : map) m.set(v);
        Subgroup img(f.ambient(), std::move(m));
        return Hom(p, img, std::move(map), false);
    }
    return Hom(p, f.cod(), std::move(map), false);
}

inline Hom restrict_to_image(const Hom& f) {
    return restrict_hom(f, f.dom(), /*retarget_to_image=*/true);
}

inline Hom invert_iso(const Hom& f) {
    check_arg(f.is_iso_onto_cod(), "invert_iso: hom is not an isomorphism onto its codomain");
    std::vector<uint16_t> map(f.cod().order());
    for (int k = 0; k < f.dom().order(); ++k) {
        int img = f.map()[k];
        map[f.cod().member_pos(img)] = uint16_t(f.dom().member(k));
    }
    return Hom(f.cod(), f.dom(), std::move(map), false);
}

}  // namespace fuslim
