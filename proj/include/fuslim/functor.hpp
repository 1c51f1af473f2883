#pragma once

// Contravariant functors from an orbit category to F_p-modules: a dimension
// per object and a matrix per morphism, M(phi: P -> Q): M(Q) -> M(P).
// Composition law: M(psi . phi) = M(phi) * M(psi).

#include "fp.hpp"
#include "orbit.hpp"

namespace fuslim {

struct FunctorModule {
    OrbitPtr cat;
    int p = 2;
    std::vector<int> dims;        // per local object
    std::vector<FpMat> action;    // per morphism id: dims[src] x dims[dst]

    int dim(int a) const { return dims[a]; }
    int total_dim() const {
        int s = 0;
        for (int d : dims) s += d;
        return s;
    }
    const FpMat& act(int mor_id) const { return action[mor_id]; }
};

inline void verify_functor(const FunctorModule& M, bool throw_on_failure = true) {
    const OrbitCategory& O = *M.cat;
    check_arg(int(M.dims.size()) == O.nobj() && int(M.action.size()) == O.nmor(),
              "verify_functor: shape mismatch");
    for (int i = 0; i < O.nmor(); ++i) {
        const auto& mor = O.mors[i];
        bool ok = M.action[i].rows() == M.dims[mor.src] && M.action[i].cols() == M.dims[mor.dst];
        if (mor.identity) ok = ok && M.action[i] == FpMat::identity(M.p, M.dims[mor.src]);
        if (!ok) {
            if (throw_on_failure) throw InvariantViolation("functor: bad identity/shape");
            return;
        }
    }
    for (int m1 = 0; m1 < O.nmor(); ++m1)
        for (int m2 = 0; m2 < O.nmor(); ++m2) {
            int c = O.comp[m2][m1];
            if (c < 0) continue;
            if (!(M.action[c] == M.action[m1].mul(M.action[m2]))) {
                if (throw_on_failure)
                    throw InvariantViolation("functor: M(psi.phi) != M(phi)M(psi)");
                return;
            }
        }
}

inline FunctorModule constant_functor(const OrbitPtr& O, int p) {
    FunctorModule M;
    M.cat = O;
    M.p = p;
    M.dims.assign(O->nobj(), 1);
    M.action.assign(O->nmor(), FpMat::identity(p, 1));
    return M;
}

inline FunctorModule zero_functor(const OrbitPtr& O, int p) {
    FunctorModule M;
    M.cat = O;
    M.p = p;
    M.dims.assign(O->nobj(), 0);
    M.action.assign(O->nmor(), FpMat(p, 0, 0));
    return M;
}

// Yoneda projective R_x: P |-> F_p[Hom_O(P, x)], action by precomposition.
inline FunctorModule representable_functor(const OrbitPtr& O, int x, int p) {
    FunctorModule M;
    M.cat = O;
    M.p = p;
    M.dims.resize(O->nobj());
    for (int a = 0; a < O->nobj(); ++a) M.dims[a] = int(O->hom_ids[a][x].size());
    M.action.reserve(O->nmor());
    for (int i = 0; i < O->nmor(); ++i) {
        const auto& mor = O->mors[i];  // phi: src -> dst
        FpMat mat(p, M.dims[mor.src], M.dims[mor.dst]);
        const auto& dst_basis = O->hom_ids[mor.dst][x];
        const auto& src_basis = O->hom_ids[mor.src][x];
        for (size_t j = 0; j < dst_basis.size(); ++j) {
            int composed = O->comp[dst_basis[j]][i];  // psi . phi: src -> x
            check_invariant(composed >= 0, "representable: composition failed");
            auto it = std::find(src_basis.begin(), src_basis.end(), composed);
            check_invariant(it != src_basis.end(), "representable: basis lookup failed");
            mat.set(int(it - src_basis.begin()), int(j), 1);
        }
        M.action.push_back(std::move(mat));
    }
    return M;
}

// Composition with an embedding: the restriction M| of a functor on the big
// category to the subcategory.
inline FunctorModule restrict_functor(const FunctorModule& M, const OrbitEmbedding& e) {
    check_arg(M.cat.get() == e.big.get(), "restrict_functor: functor lives elsewhere");
    FunctorModule R;
    R.cat = e.sub;
    R.p = M.p;
    R.dims.resize(e.sub->nobj());
    for (int a = 0; a < e.sub->nobj(); ++a) R.dims[a] = M.dims[e.obj_map[a]];
    R.action.reserve(e.sub->nmor());
    for (int i = 0; i < e.sub->nmor(); ++i) R.action.push_back(M.action[e.mor_map[i]]);
    return R;
}

struct NatTrans {
    const FunctorModule* src = nullptr;
    const FunctorModule* dst = nullptr;
    std::vector<FpMat> comp;  // per object: dst.dims[a] x src.dims[a]
};

inline bool naturality_holds(const NatTrans& t) {
    const OrbitCategory& O = *t.src->cat;
    for (int i = 0; i < O.nmor(); ++i) {
        const auto& mor = O.mors[i];
        // t_P . A(phi) == B(phi) . t_Q for phi: P -> Q
        FpMat lhs = t.comp[mor.src].mul(t.src->action[i]);
        FpMat rhs = t.dst->action[i].mul(t.comp[mor.dst]);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

// Basis of Nat(A, B) as the kernel of the naturality constraint system.
// Unknown vector: concatenated entries of the component matrices, row-major
// per object in order.
struct NatSpace {
    const FunctorModule* A = nullptr;
    const FunctorModule* B = nullptr;
    std::vector<int> offsets;  // per object, into the unknown vector
    int nvars = 0;
    std::vector<std::vector<uint8_t>> basis;  // kernel vectors

    NatTrans materialize(const std::vector<uint8_t>& v) const {
        NatTrans t;
        t.src = A;
        t.dst = B;
        const OrbitCategory& O = *A->cat;
        t.comp.reserve(O.nobj());
        for (int a = 0; a < O.nobj(); ++a) {
            FpMat m(A->p, B->dims[a], A->dims[a]);
            int off = offsets[a];
            for (int i = 0; i < B->dims[a]; ++i)
                for (int j = 0; j < A->dims[a]; ++j)
                    m.set(i, j, v[off + i * A->dims[a] + j]);
            t.comp.push_back(std::move(m));
        }
        return t;
    }

    std::vector<uint8_t> flatten(const NatTrans& t) const {
        std::vector<uint8_t> v(nvars, 0);
        const OrbitCategory& O = *A->cat;
        for (int a = 0; a < O.nobj(); ++a)
            for (int i = 0; i < B->dims[a]; ++i)
                for (int j = 0; j < A->dims[a]; ++j)
                    v[offsets[a] + i * A->dims[a] + j] = uint8_t(t.comp[a].get(i, j));
        return v;
    }

    int dim() const { return int(basis.size()); }
};

inline NatSpace nat_space(const FunctorModule& A, const FunctorModule& B) {
    check_arg(A.cat.get() == B.cat.get() && A.p == B.p, "nat_space: category/field mismatch");
    const OrbitCategory& O = *A.cat;
    NatSpace ns;
    ns.A = &A;
    ns.B = &B;
    ns.offsets.resize(O.nobj());
    int nv = 0;
    for (int a = 0; a < O.nobj(); ++a) {
        ns.offsets[a] = nv;
        nv += A.dims[a] * B.dims[a];
    }
    ns.nvars = nv;
    // constraints: for phi: P -> Q, X_P A(phi) - B(phi) X_Q = 0,
    // sized B.dims[P] x A.dims[Q]
    int nrows = 0;
    for (int i = 0; i < O.nmor(); ++i) {
        if (O.mors[i].identity) continue;
        nrows += B.dims[O.mors[i].src] * A.dims[O.mors[i].dst];
    }
    FpMat sys(A.p, std::max(nrows, 0), nv);
    int row = 0;
    for (int i = 0; i < O.nmor(); ++i) {
        if (O.mors[i].identity) continue;
        int P = O.mors[i].src, Q = O.mors[i].dst;
        const FpMat& Aphi = A.action[i];  // A.dims[P] x A.dims[Q]
        const FpMat& Bphi = B.action[i];  // B.dims[P] x B.dims[Q]
        for (int r = 0; r < B.dims[P]; ++r)
            for (int c = 0; c < A.dims[Q]; ++c) {
                // entry (r,c) of X_P A(phi): sum_k X_P[r,k] A(phi)[k,c]
                for (int k = 0; k < A.dims[P]; ++k) {
                    int v = Aphi.get(k, c);
                    if (v) sys.add_at(row, ns.offsets[P] + r * A.dims[P] + k, v);
                }
                // minus entry (r,c) of B(phi) X_Q: sum_k B(phi)[r,k] X_Q[k,c]
                for (int k = 0; k < B.dims[Q]; ++k) {
                    int v = Bphi.get(r, k);
                    if (v) sys.add_at(row, ns.offsets[Q] + k * A.dims[Q] + c, A.p - v);
                }
                ++row;
            }
    }
    ns.basis = sys.kernel_basis();
    return ns;
}

// ---------------------------------------------------------------------------
// Induction along a subsystem inclusion H <= F with matching families:
// (M ind)(P) = direct sum over [phi] in Rep_F(P,H) of M(phi(P)), with
// transport along the unique H-isomorphism matching representatives.

struct InducedFunctor {
    FunctorModule fun;
    // block structure: per big-category object, the Rep classes labelling the
    // direct summands, the subcategory object carrying each block and its
    // offset inside the value space
    std::vector<std::vector<RepClass>> blocks;
    std::vector<std::vector<int>> block_obj;     // sub-local object index
    std::vector<std::vector<int>> block_offset;
};

inline InducedFunctor induce_functor(const FunctorModule& M, const OrbitPtr& big,
                                     const FusionSystem& H) {
    const OrbitCategory& sub = *M.cat;
    check_arg(sub.F.get() == &H || fusion_subsystem_eq(*sub.F, H),
              "induce_functor: M must live over the subsystem's orbit category");
    const FusionSystem& F = *big->F;
    InducedFunctor out;
    out.fun.cat = big;
    out.fun.p = M.p;
    int n = big->nobj();
    out.blocks.resize(n);
    out.block_obj.resize(n);
    out.block_offset.resize(n);
    out.fun.dims.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        auto classes = rep_set(F, big->obj(a), H);
        int off = 0;
        for (const auto& cls : classes) {
            Subgroup img = cls.rep.image();
            int so = sub.local_index(img);
            out.blocks[a].push_back(cls);
            out.block_obj[a].push_back(so);
            out.block_offset[a].push_back(off);
            off += M.dims[so];
        }
        out.fun.dims[a] = off;
    }
    out.fun.action.reserve(big->nmor());
    for (int i = 0; i < big->nmor(); ++i) {
        const auto& mor = big->mors[i];  // psi: P' -> P
        int Pp = mor.src, P = mor.dst;
        FpMat mat(M.p, out.fun.dims[Pp], out.fun.dims[P]);
        for (size_t bi = 0; bi < out.blocks[P].size(); ++bi) {
            const Hom& phi = out.blocks[P][bi].rep;       // P -> S_H, image X
            // phi . psi : P' -> S_H
            const Subgroup& Psrc = big->obj(Pp);
            std::vector<uint16_t> phipsi(Psrc.order());
            for (int k = 0; k < Psrc.order(); ++k)
                phipsi[k] = uint16_t(phi.apply(mor.rep.apply(Psrc.member(k))));
            Hom comp(Psrc, H.S, phipsi, false);
            int ti = rep_class_index(H, out.blocks[Pp], comp);
            const Hom& phiprime = out.blocks[Pp][ti].rep;  // canonical rep of [phi psi]
            // unique theta: (phi psi)(P') -> phi'(P') with theta.(phi psi) = phi'
            Subgroup Y = comp.image();
            Subgroup Xp = phiprime.image();
            std::vector<uint16_t> theta_inv(Xp.order());   // theta^{-1}: X' -> Y
            for (int k = 0; k < Psrc.order(); ++k) {
                int xp = phiprime.map()[k];
                theta_inv[Xp.member_pos(xp)] = uint16_t(comp.map()[k]);
            }
            // rho = iota . theta^{-1}: X' -> X, an H-morphism
            Subgroup X = phi.image();
            Hom rho(Xp, X, theta_inv, false);
            check_invariant(H.contains_hom(rho), "induce_functor: transport not in H");
            int rho_id = sub.mor_id_of_hom(rho);
            const FpMat& tmat = M.action[rho_id];  // M(X) -> M(X')
            int roff = out.block_offset[Pp][ti];
            int coff = out.block_offset[P][int(bi)];
            for (int r = 0; r < tmat.rows(); ++r)
                for (int c = 0; c < tmat.cols(); ++c) {
                    int v = tmat.get(r, c);
                    if (v) mat.add_at(roff + r, coff + c, v);
                }
        }
        out.fun.action.push_back(std::move(mat));
    }
    verify_functor(out.fun);
    return out;
}

// The induced constant functor with its Rep-class basis.
inline InducedFunctor induced_constant_functor(const OrbitPtr& big, const OrbitPtr& subcat,
                                               const FusionSystem& H, int p) {
    FunctorModule c = constant_functor(subcat, p);
    return induce_functor(c, big, H);
}

}  // namespace fuslim
