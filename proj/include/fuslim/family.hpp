#pragma once

// Families of subgroups closed under F-conjugacy and taking overgroups,
// carried as sorted lists of F-object indices plus a closure certificate.

#include "fusion.hpp"

namespace fuslim {

struct SubgroupFamily {
    FusionPtr F;
    std::vector<int> members;  // F-object indices, ascending
    bool conjugacy_closed = false;
    bool overgroup_closed = false;

    bool certified() const { return conjugacy_closed && overgroup_closed; }
    bool contains(int obj) const {
        return std::binary_search(members.begin(), members.end(), obj);
    }
};

inline SubgroupFamily close_family(const FusionPtr& F, std::vector<int> seed) {
    std::set<int> mem(seed.begin(), seed.end());
    auto classes = F->conjugacy_classes();
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> cur(mem.begin(), mem.end());
        for (int a : cur) {
            for (const auto& cls : classes)
                if (std::binary_search(cls.begin(), cls.end(), a))
                    for (int b : cls)
                        if (mem.insert(b).second) changed = true;
            for (int b = 0; b < F->nobj(); ++b)
                if (F->obj(a).is_subset_of(F->obj(b)))
                    if (mem.insert(b).second) changed = true;
        }
    }
    SubgroupFamily fam;
    fam.F = F;
    fam.members.assign(mem.begin(), mem.end());
    fam.conjugacy_closed = fam.overgroup_closed = true;
    return fam;
}

// Certify an arbitrary member list; reports the first violation found.
inline SubgroupFamily certify_family(const FusionPtr& F, std::vector<int> members,
                                     std::string* violation = nullptr) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    SubgroupFamily fam;
    fam.F = F;
    fam.members = members;
    fam.conjugacy_closed = true;
    fam.overgroup_closed = true;
    auto classes = F->conjugacy_classes();
    for (int a : members) {
        for (const auto& cls : classes)
            if (std::binary_search(cls.begin(), cls.end(), a))
                for (int b : cls)
                    if (!fam.contains(b)) {
                        fam.conjugacy_closed = false;
                        if (violation)
                            *violation = "missing F-conjugate (object " + std::to_string(b) + ")";
                    }
        for (int b = 0; b < F->nobj(); ++b)
            if (F->obj(a).is_subset_of(F->obj(b)) && !fam.contains(b)) {
                fam.overgroup_closed = false;
                if (violation)
                    *violation = "missing overgroup (object " + std::to_string(b) + ")";
            }
    }
    return fam;
}

inline SubgroupFamily centric_family(const FusionPtr& F) {
    SubgroupFamily fam;
    fam.F = F;
    fam.members = centric_objects(*F);
    fam.conjugacy_closed = fam.overgroup_closed = true;  // overgroups of centrics are centric
    return fam;
}

inline SubgroupFamily centric_radical_closure_family(const FusionPtr& F) {
    return close_family(F, centric_radical_objects(*F));
}

// The family restricted to subgroups of S' (for the orbit category of a
// subsystem over S': same subgroup set, reindexed through H's object list).
inline std::vector<int> restrict_family_objects(const SubgroupFamily& fam,
                                                const FusionSystem& H) {
    std::vector<int> out;
    for (int a : fam.members) {
        const Subgroup& P = fam.F->obj(a);
        if (P.is_subset_of(H.S)) out.push_back(H.obj_index(P));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fuslim
