#pragma once

// The cosimplicial-replacement cochain complex computing higher limits of a
// contravariant functor over a finite category: C^n is the product over
// chains of n composable non-identity morphisms P0 -> ... -> Pn of M(P0),
// with the normalized differential (identity-composite terms drop out).

#include <map>

#include "cochain.hpp"
#include "functor.hpp"

namespace fuslim {

struct CobarComplex {
    // chain: anchor object for level 0; morphism id lists for levels >= 1
    struct Chain {
        int first_obj;
        std::vector<int> mors;
    };
    std::vector<std::vector<Chain>> levels;
    std::vector<std::vector<int>> offsets;  // basis offset per chain, per level
    std::vector<int> dims;                  // total basis size per level
    std::shared_ptr<CochainComplex> cx;
};

inline CobarComplex cobar_complex(const FunctorModule& M, int n_max,
                                  size_t cell_budget = size_t(6) << 26, int n_cap = 5) {
    check_arg(n_max >= 0, "cobar_complex: n_max must be nonnegative");
    if (n_max > n_cap)
        throw CapacityError("cobar degree cap exceeded (n_max " + std::to_string(n_max) +
                            " > cap " + std::to_string(n_cap) + ")");
    const OrbitCategory& O = *M.cat;
    CobarComplex cb;
    int levels = n_max + 2;  // C^0 .. C^{n_max+1}
    cb.levels.resize(levels);
    cb.offsets.resize(levels);
    cb.dims.assign(levels, 0);

    std::vector<int> nonid;
    for (int i = 0; i < O.nmor(); ++i)
        if (!O.mors[i].identity) nonid.push_back(i);

    for (int a = 0; a < O.nobj(); ++a) cb.levels[0].push_back({a, {}});
    for (int n = 1; n < levels; ++n) {
        for (const auto& ch : cb.levels[n - 1]) {
            int tail = ch.mors.empty() ? ch.first_obj : O.mors[ch.mors.back()].dst;
            for (int m : nonid) {
                if (O.mors[m].src != tail) continue;
                CobarComplex::Chain ext{ch.first_obj, ch.mors};
                ext.mors.push_back(m);
                cb.levels[n].push_back(std::move(ext));
            }
        }
        if (n == 1) {
            // anchor of a nonempty chain is the source of its first morphism
            for (auto& ch : cb.levels[1]) ch.first_obj = O.mors[ch.mors[0]].src;
        }
    }

    size_t total_cells = 0;
    for (int n = 0; n < levels; ++n) {
        cb.offsets[n].resize(cb.levels[n].size());
        int off = 0;
        for (size_t c = 0; c < cb.levels[n].size(); ++c) {
            cb.offsets[n][c] = off;
            off += M.dims[cb.levels[n][c].first_obj];
        }
        cb.dims[n] = off;
        if (n > 0) total_cells += size_t(cb.dims[n]) * cb.dims[n - 1];
        if (total_cells > cell_budget)
            throw CapacityError("cobar complex exceeds the cell budget");
    }

    // chain lookup per level
    std::vector<std::map<std::vector<int>, int>> lookup(levels);
    for (int n = 1; n < levels; ++n)
        for (size_t c = 0; c < cb.levels[n].size(); ++c)
            lookup[n][cb.levels[n][c].mors] = int(c);

    std::vector<FpMat> diffs;
    for (int n = 0; n + 1 < levels; ++n) {
        FpMat d(M.p, cb.dims[n + 1], cb.dims[n]);
        for (size_t ci = 0; ci < cb.levels[n + 1].size(); ++ci) {
            const auto& ch = cb.levels[n + 1][ci];
            int roff = cb.offsets[n + 1][ci];
            int rdim = M.dims[ch.first_obj];
            // front face: apply M(phi_1) to the tail chain
            {
                int phi1 = ch.mors[0];
                int tgt;
                if (n == 0) {
                    tgt = O.mors[phi1].dst;  // level-0 chain anchored at P1
                    int coff = cb.offsets[0][tgt];
                    const FpMat& A = M.action[phi1];
                    for (int r = 0; r < rdim; ++r)
                        for (int c = 0; c < A.cols(); ++c) {
                            int v = A.get(r, c);
                            if (v) d.add_at(roff + r, coff + c, v);
                        }
                } else {
                    std::vector<int> tail(ch.mors.begin() + 1, ch.mors.end());
                    tgt = lookup[n].at(tail);
                    int coff = cb.offsets[n][tgt];
                    const FpMat& A = M.action[phi1];
                    for (int r = 0; r < rdim; ++r)
                        for (int c = 0; c < A.cols(); ++c) {
                            int v = A.get(r, c);
                            if (v) d.add_at(roff + r, coff + c, v);
                        }
                }
            }
            // middle faces: compose adjacent pairs, dropping identity composites
            int sign = 1;
            for (int i = 0; i + 1 < int(ch.mors.size()); ++i) {
                sign = -sign;
                int comp = O.comp[ch.mors[i + 1]][ch.mors[i]];
                check_invariant(comp >= 0, "cobar: chain not composable");
                if (O.mors[comp].identity) continue;
                std::vector<int> merged;
                merged.reserve(ch.mors.size() - 1);
                for (int k = 0; k < int(ch.mors.size()); ++k) {
                    if (k == i) merged.push_back(comp);
                    else if (k != i + 1) merged.push_back(ch.mors[k]);
                }
                int tgt = lookup[n].at(merged);
                int coff = cb.offsets[n][tgt];
                int v = sign < 0 ? M.p - 1 : 1;
                for (int r = 0; r < rdim; ++r) d.add_at(roff + r, coff + r, v);
            }
            // back face: drop the last morphism
            sign = -sign;
            {
                int tgt;
                if (n == 0) {
                    tgt = ch.first_obj;
                } else {
                    std::vector<int> head(ch.mors.begin(), ch.mors.end() - 1);
                    tgt = lookup[n].at(head);
                }
                int coff = cb.offsets[n][tgt];
                int v = sign < 0 ? M.p - 1 : 1;
                for (int r = 0; r < rdim; ++r) d.add_at(roff + r, coff + r, v);
            }
        }
        diffs.push_back(std::move(d));
    }

    std::vector<int> dims = cb.dims;
    cb.cx = std::make_shared<CochainComplex>(M.p, std::move(dims), std::move(diffs));
    return cb;
}

// lim^0 by the direct equalizer definition: families (x_P) compatible with
// every action map, identified inside the product of the values.
struct Lim0 {
    int dim = 0;
    std::vector<int> offsets;                  // per object into the product
    std::vector<std::vector<uint8_t>> basis;   // compatible families
};

inline Lim0 lim0_equalizer(const FunctorModule& M) {
    const OrbitCategory& O = *M.cat;
    Lim0 out;
    out.offsets.resize(O.nobj());
    int nv = 0;
    for (int a = 0; a < O.nobj(); ++a) {
        out.offsets[a] = nv;
        nv += M.dims[a];
    }
    int nrows = 0;
    for (int i = 0; i < O.nmor(); ++i)
        if (!O.mors[i].identity) nrows += M.dims[O.mors[i].src];
    FpMat sys(M.p, nrows, nv);
    int row = 0;
    for (int i = 0; i < O.nmor(); ++i) {
        if (O.mors[i].identity) continue;
        int P = O.mors[i].src, Q = O.mors[i].dst;
        const FpMat& A = M.action[i];
        for (int r = 0; r < M.dims[P]; ++r) {
            for (int c = 0; c < M.dims[Q]; ++c) {
                int v = A.get(r, c);
                if (v) sys.add_at(row, out.offsets[Q] + c, v);
            }
            sys.add_at(row, out.offsets[P] + r, M.p - 1);
            ++row;
        }
    }
    out.basis = sys.kernel_basis();
    out.dim = int(out.basis.size());
    return out;
}

}  // namespace fuslim
