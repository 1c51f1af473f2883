#pragma once

// The bipartite graph Rep_F(P,Lambda) of a two-vertex tree of fusion systems:
// vertices Rep_F(P,F1) and Rep_F(P,F2), one edge per class in Rep_F(P,Fe),
// an edge [phi] joining [phi]_{F2} and [iota . phi]_{F1}. Its first homology
// is the value of the kernel functor C_{F,Lambda} = ker(f : CX1 -> CX0).

#include "functor.hpp"
#include "limits.hpp"

namespace fuslim {

struct RepGraph {
    std::vector<RepClass> verts_f1;
    std::vector<RepClass> verts_f2;
    struct Edge {
        RepClass cls;
        int v2 = -1;  // index into verts_f2
        int v1 = -1;  // index into verts_f1
    };
    std::vector<Edge> edges;

    int num_vertices() const { return int(verts_f1.size() + verts_f2.size()); }
    int num_edges() const { return int(edges.size()); }

    int components() const {
        int n = num_vertices();
        std::vector<int> parent(n);
        for (int i = 0; i < n; ++i) parent[i] = i;
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        int comps = n;
        for (const auto& e : edges) {
            int a = find(int(verts_f1.size()) + e.v2);
            int b = find(e.v1);
            if (a != b) {
                parent[a] = b;
                --comps;
            }
        }
        return comps;
    }

    int h1_dim() const { return num_edges() - num_vertices() + components(); }
    bool is_tree() const { return components() == 1 && h1_dim() == 0; }
};

inline RepGraph build_rep_graph(const Triple& T, const Subgroup& P) {
    RepGraph g;
    g.verts_f1 = rep_set(*T.F, P, *T.F1);
    g.verts_f2 = rep_set(*T.F, P, *T.F2);
    auto edge_classes = rep_set(*T.F, P, *T.Fe);
    for (const auto& cls : edge_classes) {
        RepGraph::Edge e;
        e.cls = cls;
        e.v2 = rep_class_index(*T.F2, g.verts_f2, cls.rep);
        Hom iota_phi(cls.rep.dom(), T.F1->S, cls.rep.map(), false);
        e.v1 = rep_class_index(*T.F1, g.verts_f1, iota_phi);
        g.edges.push_back(std::move(e));
    }
    return g;
}

// The graph morphism Rep_F(P,Lambda) -> Rep_F(Q,Lambda) induced by
// phi: Q -> P in F (the Rep construction is functorial).
struct RepGraphMap {
    std::vector<int> on_f1, on_f2, on_edges;
};

inline RepGraphMap graph_map(const Triple& T, const RepGraph& at_p, const RepGraph& at_q,
                             const Hom& phi) {
    RepGraphMap m;
    auto push_through = [&](const RepClass& cls, const FusionSystem& H,
                            const std::vector<RepClass>& target) {
        const Subgroup& Q = phi.dom();
        std::vector<uint16_t> comp(Q.order());
        for (int k = 0; k < Q.order(); ++k) comp[k] = uint16_t(cls.rep.apply(phi.apply(Q.member(k))));
        return rep_class_index(H, target, Hom(Q, cls.rep.cod(), comp, false));
    };
    for (const auto& c : at_p.verts_f1) m.on_f1.push_back(push_through(c, *T.F1, at_q.verts_f1));
    for (const auto& c : at_p.verts_f2) m.on_f2.push_back(push_through(c, *T.F2, at_q.verts_f2));
    for (const auto& e : at_p.edges) {
        std::vector<RepClass> ecls;
        for (const auto& qe : at_q.edges) ecls.push_back(qe.cls);
        m.on_edges.push_back(push_through(e.cls, *T.Fe, ecls));
    }
    // endpoints are respected
    for (size_t i = 0; i < at_p.edges.size(); ++i) {
        const auto& src = at_p.edges[i];
        const auto& dst = at_q.edges[m.on_edges[i]];
        check_invariant(dst.v2 == m.on_f2[src.v2] && dst.v1 == m.on_f1[src.v1],
                        "graph_map: endpoints not preserved");
    }
    return m;
}

// ---------------------------------------------------------------------------
// The chain complex CX1 -> CX0 of induced constant functors over O^C(F)

struct CXComplex {
    OrbitPtr O;              // over the join F, family C
    InducedFunctor cx1;      // constant induced from O^C(Fe)
    InducedFunctor cx0a;     // from O^C(F1)
    InducedFunctor cx0b;     // from O^C(F2)
    FunctorModule cx0;       // cx0a + cx0b
    NatTrans f;              // CX1 -> CX0
    FunctorModule ker;       // C_{F,Lambda}
    std::vector<FpMat> ker_incl;   // per object: columns a basis of ker f_P in CX1(P)
    FunctorModule coker;
    std::vector<std::shared_ptr<QuotientSpace>> coker_q;
};

// Orbit category of a subsystem H on the family restricted to subgroups of
// its underlying group.
inline OrbitPtr subsystem_orbit_category(const SubgroupFamily& fam, const FusionPtr& H) {
    std::string why;
    SubgroupFamily sub = certify_family(H, restrict_family_objects(fam, *H), &why);
    check_invariant(sub.certified(), "restricted family not closed: " + why);
    return build_orbit_category(sub);
}

inline CXComplex build_cx_complex(const Triple& T, const SubgroupFamily& fam, int p) {
    // the family may have been computed over an equal copy of the join; the
    // object indexing agrees because both share the ambient lattice and S
    check_arg(fam.F->lattice.get() == T.F->lattice.get() && fam.F->S == T.F->S,
              "build_cx_complex: family must live over the join's subgroups");
    SubgroupFamily fam_join = fam;
    fam_join.F = T.F;
    CXComplex out;
    out.O = build_orbit_category(fam_join);
    auto O1 = subsystem_orbit_category(fam, T.F1);
    auto O2 = subsystem_orbit_category(fam, T.F2);
    auto Oe = subsystem_orbit_category(fam, T.Fe);
    out.cx1 = induced_constant_functor(out.O, Oe, *T.Fe, p);
    out.cx0a = induced_constant_functor(out.O, O1, *T.F1, p);
    out.cx0b = induced_constant_functor(out.O, O2, *T.F2, p);

    int n = out.O->nobj();
    out.cx0.cat = out.O;
    out.cx0.p = p;
    out.cx0.dims.resize(n);
    for (int a = 0; a < n; ++a) out.cx0.dims[a] = out.cx0a.fun.dims[a] + out.cx0b.fun.dims[a];
    out.cx0.action.reserve(out.O->nmor());
    for (int i = 0; i < out.O->nmor(); ++i) {
        const auto& mor = out.O->mors[i];
        const FpMat& A = out.cx0a.fun.action[i];
        const FpMat& B = out.cx0b.fun.action[i];
        FpMat m(p, out.cx0.dims[mor.src], out.cx0.dims[mor.dst]);
        for (int r = 0; r < A.rows(); ++r)
            for (int c = 0; c < A.cols(); ++c)
                if (A.get(r, c)) m.set(r, c, A.get(r, c));
        int ro = out.cx0a.fun.dims[mor.src], co = out.cx0a.fun.dims[mor.dst];
        for (int r = 0; r < B.rows(); ++r)
            for (int c = 0; c < B.cols(); ++c)
                if (B.get(r, c)) m.set(ro + r, co + c, B.get(r, c));
        out.cx0.action.push_back(std::move(m));
    }
    verify_functor(out.cx0);

    // f([phi]_{Fe}) = (-[iota phi]_{F1}, [phi]_{F2})
    out.f.src = &out.cx1.fun;
    out.f.dst = &out.cx0;
    out.f.comp.reserve(n);
    for (int a = 0; a < n; ++a) {
        FpMat m(p, out.cx0.dims[a], out.cx1.fun.dims[a]);
        for (size_t e = 0; e < out.cx1.blocks[a].size(); ++e) {
            const Hom& phi = out.cx1.blocks[a][e].rep;
            Hom iota_phi(phi.dom(), T.F1->S, phi.map(), false);
            int i1 = rep_class_index(*T.F1, out.cx0a.blocks[a], iota_phi);
            int i2 = rep_class_index(*T.F2, out.cx0b.blocks[a], phi);
            m.add_at(out.cx0a.block_offset[a][i1], int(e), p - 1);
            m.add_at(out.cx0a.fun.dims[a] + out.cx0b.block_offset[a][i2], int(e), 1);
        }
        out.f.comp.push_back(std::move(m));
    }
    check_invariant(naturality_holds(out.f), "CX differential f is not natural");

    // kernel functor C_{F,Lambda}
    out.ker.cat = out.O;
    out.ker.p = p;
    out.ker.dims.resize(n);
    out.ker_incl.resize(n);
    std::vector<SpanSolver> ker_solver;
    for (int a = 0; a < n; ++a) {
        auto kb = out.f.comp[a].kernel_basis();
        out.ker.dims[a] = int(kb.size());
        out.ker_incl[a] = FpMat::from_columns(p, out.cx1.fun.dims[a], kb);
        SpanSolver s(p, out.cx1.fun.dims[a]);
        for (const auto& v : kb) s.add(v);
        ker_solver.push_back(std::move(s));
    }
    out.ker.action.reserve(out.O->nmor());
    for (int i = 0; i < out.O->nmor(); ++i) {
        const auto& mor = out.O->mors[i];
        FpMat m(p, out.ker.dims[mor.src], out.ker.dims[mor.dst]);
        for (int c = 0; c < out.ker.dims[mor.dst]; ++c) {
            std::vector<uint8_t> v(out.cx1.fun.dims[mor.dst], 0);
            for (int r = 0; r < out.ker_incl[mor.dst].rows(); ++r)
                v[r] = uint8_t(out.ker_incl[mor.dst].get(r, c));
            auto w = out.cx1.fun.action[i].apply(v);
            auto coords = ker_solver[mor.src].coords(w);
            check_invariant(coords.has_value(), "kernel functor: action leaves the kernel");
            for (int r = 0; r < out.ker.dims[mor.src]; ++r)
                if ((*coords)[r]) m.set(r, c, (*coords)[r]);
        }
        out.ker.action.push_back(std::move(m));
    }
    verify_functor(out.ker);
    // the kernel dimension at every object is the first Betti number of the
    // Rep graph there; check it against the union-find count
    for (int a = 0; a < n; ++a) {
        RepGraph g = build_rep_graph(T, out.O->obj(a));
        check_invariant(out.ker.dims[a] == g.h1_dim() &&
                            out.cx1.fun.dims[a] == g.num_edges() &&
                            out.cx0.dims[a] == g.num_vertices(),
                        "kernel functor dimension differs from graph homology");
    }

    // cokernel functor
    out.coker.cat = out.O;
    out.coker.p = p;
    out.coker.dims.resize(n);
    out.coker_q.resize(n);
    for (int a = 0; a < n; ++a) {
        std::vector<std::vector<uint8_t>> cols;
        for (int c = 0; c < out.f.comp[a].cols(); ++c) {
            std::vector<uint8_t> e(out.f.comp[a].cols(), 0);
            e[c] = 1;
            cols.push_back(out.f.comp[a].apply(e));
        }
        out.coker_q[a] = std::make_shared<QuotientSpace>(p, out.cx0.dims[a], cols);
        out.coker.dims[a] = out.coker_q[a]->dim();
    }
    out.coker.action.reserve(out.O->nmor());
    for (int i = 0; i < out.O->nmor(); ++i) {
        const auto& mor = out.O->mors[i];
        FpMat m(p, out.coker.dims[mor.src], out.coker.dims[mor.dst]);
        for (int c = 0; c < out.coker.dims[mor.dst]; ++c) {
            std::vector<uint8_t> e(out.coker.dims[mor.dst], 0);
            e[c] = 1;
            auto lifted = out.coker_q[mor.dst]->lift(e);
            auto moved = out.cx0.action[i].apply(lifted);
            auto proj = out.coker_q[mor.src]->project(moved);
            for (int r = 0; r < out.coker.dims[mor.src]; ++r)
                if (proj[r]) m.set(r, c, proj[r]);
        }
        out.coker.action.push_back(std::move(m));
    }
    verify_functor(out.coker);
    return out;
}

// C_{F,Lambda} alone.
inline FunctorModule c_functor(const Triple& T, const SubgroupFamily& fam, int p) {
    return build_cx_complex(T, fam, p).ker;
}

inline bool coker_is_constant_line(const CXComplex& cx) {
    for (int d : cx.coker.dims)
        if (d != 1) return false;
    for (const auto& m : cx.coker.action)
        if (!(m == FpMat::identity(cx.coker.p, 1))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Tree criteria (sufficient conditions for Rep_F(P,Lambda) to be a tree)

struct TreeCriteriaVerdict {
    bool base_hypothesis = false;   // Hom_{Fe}(Q,S') = Hom_{F1}(Q,S') /\ Hom_{F2}(Q,S')
    bool condition1 = false;        // Hom_F(P,S') = Hom_H(P,S') for H = F1 or F2
    bool condition2 = false;        // Aut_F(P) = Aut_{F2}(P) plus the Fe/F2 clause
    bool criteria_apply = false;    // base /\ (condition1 \/ condition2)
    bool graph_is_tree = false;     // direct check, always computed
};

inline TreeCriteriaVerdict tree_criteria_check(const Triple& T, const Subgroup& P) {
    TreeCriteriaVerdict v;
    const FusionSystem& F = *T.F;
    const Subgroup Sp = T.Sprime();
    int sp_f = F.obj_index(Sp);

    auto homs_to_sprime = [&](const FusionSystem& H, const Subgroup& Q) {
        std::set<std::vector<uint16_t>> out;
        if (!Q.is_subset_of(H.S)) return out;
        if (!Sp.is_subset_of(H.S)) return out;
        for (const Hom& h : H.hom[H.obj_index(Q)][H.obj_index(Sp)]) out.insert(h.map());
        return out;
    };

    // base hypothesis over the whole F-class of P
    v.base_hypothesis = true;
    for (int q : F.class_of(F.obj_index(P))) {
        const Subgroup& Q = F.obj(q);
        auto he = homs_to_sprime(*T.Fe, Q);
        auto h1 = homs_to_sprime(*T.F1, Q);
        auto h2 = homs_to_sprime(*T.F2, Q);
        std::set<std::vector<uint16_t>> meet;
        for (const auto& m : h1)
            if (h2.count(m)) meet.insert(m);
        if (he != meet) { v.base_hypothesis = false; break; }
    }

    // condition (1)
    {
        auto hf = homs_to_sprime(F, P);
        v.condition1 = (hf == homs_to_sprime(*T.F1, P)) || (hf == homs_to_sprime(*T.F2, P));
    }

    // condition (2)
    if (P.is_subset_of(Sp)) {
        int pf = F.obj_index(P);
        int p2 = T.F2->obj_index(P);
        bool aut_match = F.hom[pf][pf].size() == T.F2->hom[p2][p2].size();
        if (aut_match) {
            for (const Hom& h : T.F2->hom[p2][p2])
                if (!F.contains_hom(Hom(P, P, h.map(), false))) { aut_match = false; break; }
        }
        bool clause = true;
        if (aut_match) {
            for (int q : F.class_of(pf)) {
                const Subgroup& Q = F.obj(q);
                if (!Q.is_subset_of(Sp)) continue;
                // skip Q that are Fe-isomorphic to P
                bool fe_iso = false;
                int qe = T.Fe->obj_index(Q);
                int pe = T.Fe->obj_index(P);
                for (const Hom& h : T.Fe->hom[qe][pe])
                    if (h.image() == P) { fe_iso = true; break; }
                if (fe_iso) continue;
                if (homs_to_sprime(*T.Fe, Q) != homs_to_sprime(*T.F2, Q)) {
                    clause = false;
                    break;
                }
            }
        }
        v.condition2 = aut_match && clause;
    }
    v.criteria_apply = v.base_hypothesis && (v.condition1 || v.condition2);
    v.graph_is_tree = build_rep_graph(T, P).is_tree();
    (void)sp_f;
    return v;
}

// ---------------------------------------------------------------------------
// Pruning scenario: Lambda = (H, N_F(P), N_H(P)) gives trees away from P

struct PruningVerdict {
    std::vector<std::pair<std::string, bool>> hypotheses;
    bool hypotheses_hold = false;
    bool all_trees = true;                 // over Q in C not conjugate below P
    std::vector<int> non_tree_objects;
    bool p_minimal_in_family = false;
    bool kernel_vanishes = false;          // checked when P is minimal in C
    bool conclusion_holds = false;
};

inline PruningVerdict pruning_vanishing_check(const FusionPtr& F, const FusionPtr& H,
                                              const Subgroup& P, const SubgroupFamily& fam,
                                              int p) {
    PruningVerdict v;
    auto add_hyp = [&](const std::string& name, bool ok) {
        v.hypotheses.emplace_back(name, ok);
        return ok;
    };
    bool ok = true;
    ok &= add_hyp("H is a subsystem of F", fusion_subsystem_leq(*H, *F));
    ok &= add_hyp("F is saturated", is_saturated(*F).saturated);
    ok &= add_hyp("H is saturated", is_saturated(*H).saturated);
    int pobj = F->obj_index(P);
    ok &= add_hyp("P lies in the family", fam.contains(pobj));
    {
        auto rep = classify(*F);
        ok &= add_hyp("P fully F-normalized", rep[pobj].fully_normalized);
    }
    {
        std::vector<Hom> seeds;
        for (const auto& row : H->hom)
            for (const auto& hs : row) seeds.insert(seeds.end(), hs.begin(), hs.end());
        const auto& auts = F->hom[pobj][pobj];
        seeds.insert(seeds.end(), auts.begin(), auts.end());
        auto gen = generate(F->lattice, F->S, seeds);
        ok &= add_hyp("F = <H, Aut_F(P)>_S", fusion_subsystem_eq(*gen, *F));
    }
    v.hypotheses_hold = ok;
    if (!ok) return v;

    Triple T = pruning_triple(F, H, P);
    for (int a : fam.members) {
        const Subgroup& Q = fam.F->obj(a);
        // skip Q conjugate into a proper subgroup of P
        bool below = false;
        for (int r = 0; r < F->nobj() && !below; ++r) {
            const Subgroup& R = F->obj(r);
            if (R.order() >= P.order() || !R.is_subset_of(P)) continue;
            for (int q : F->class_of(r))
                if (q == a) { below = true; break; }
        }
        if (below) continue;
        if (!build_rep_graph(T, Q).is_tree()) {
            v.all_trees = false;
            v.non_tree_objects.push_back(a);
        }
    }
    v.p_minimal_in_family = true;
    for (int a : fam.members) {
        const Subgroup& Q = fam.F->obj(a);
        if (Q.order() < P.order() && Q.is_subset_of(P)) v.p_minimal_in_family = false;
        if (Q.order() == P.order() && !(Q == P) && Q.is_subset_of(P))
            v.p_minimal_in_family = false;
    }
    if (v.p_minimal_in_family) {
        FunctorModule ker = c_functor(T, fam, p);
        v.kernel_vanishes = true;
        for (int d : ker.dims)
            if (d != 0) v.kernel_vanishes = false;
        v.conclusion_holds = v.all_trees && v.kernel_vanishes;
    } else {
        v.conclusion_holds = v.all_trees;
    }
    return v;
}

}  // namespace fuslim
