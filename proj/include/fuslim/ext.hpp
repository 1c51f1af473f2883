#pragma once

// Ext groups over the orbit category via resolutions by finite direct sums
// of Yoneda projectives R_x. Covers pick generators greedily (a generator is
// added only where the generated subfunctor still misses a value), which
// keeps resolutions near-minimal; by Yoneda, Nat(R_x, M) = M(x), so the Ext
// complex is assembled directly from the action matrices of M.

#include <functional>

#include "cochain.hpp"
#include "functor.hpp"

namespace fuslim {

// A subfunctor K of a direct sum of representables, carried objectwise by a
// basis of vectors in the coordinates of that sum; level 0's "sum" is the
// functor being resolved itself.
struct ResolutionLevel {
    // generators chosen for the cover of the previous kernel: pairs of
    // (object x, vector in the previous level's coordinates at x)
    std::vector<int> gen_obj;
    std::vector<std::vector<uint8_t>> gen_vec;
    // the new kernel: per object a basis, each vector in this level's
    // coordinates (the direct sum over generators of F_p[Hom(P, x_j)])
    std::vector<std::vector<std::vector<uint8_t>>> kernel;
    std::vector<int> sum_dims;      // per object, dim of the representable sum
    std::vector<std::vector<int>> gen_offsets;  // per object, offset per generator
};

class RepresentableResolution {
public:
    using Action = std::function<std::vector<uint8_t>(int, const std::vector<uint8_t>&)>;

    RepresentableResolution(const FunctorModule& A, int steps, size_t budget = 200000)
        : A_(&A), O_(A.cat.get()), p_(A.p) {
        // level -1 data: the functor A itself
        std::vector<int> prev_dim = A.dims;
        Action act_prev = [this](int mor, const std::vector<uint8_t>& v) {
            return A_->action[mor].apply(v);
        };
        // kernel_{-1} = all of A: basis = unit vectors
        std::vector<std::vector<std::vector<uint8_t>>> prev_kernel(O_->nobj());
        for (int a = 0; a < O_->nobj(); ++a)
            for (int k = 0; k < A.dims[a]; ++k) {
                std::vector<uint8_t> e(A.dims[a], 0);
                e[k] = 1;
                prev_kernel[a].push_back(std::move(e));
            }
        for (int s = 0; s <= steps; ++s) {
            ResolutionLevel lvl = build_level(prev_kernel, prev_dim, act_prev, budget);
            prev_dim = lvl.sum_dims;
            prev_kernel = lvl.kernel;
            levels_.push_back(std::move(lvl));
            // action on the representable sum: block precomposition
            act_prev = [this, s](int mor, const std::vector<uint8_t>& v) {
                return sum_action(levels_[s], mor, v);
            };
        }
    }

    int nlevels() const { return int(levels_.size()); }
    const ResolutionLevel& level(int i) const { return levels_[i]; }

    // The Ext complex 0 -> Nat(R^0,M) -> Nat(R^1,M) -> ... for a coefficient
    // functor M over the same category; returns dims of Ext^0..Ext^{n}.
    std::vector<int> ext_dims(const FunctorModule& M, int n_max) const {
        check_arg(M.cat.get() == O_, "ext_dims: category mismatch");
        check_arg(n_max + 2 <= nlevels() + 0, "ext_dims: resolution too short");
        std::vector<int> dims;      // D^i = sum_j M(x_{i,j})
        std::vector<std::vector<int>> offs(nlevels());
        for (int i = 0; i < nlevels(); ++i) {
            int d = 0;
            for (int x : levels_[i].gen_obj) {
                offs[i].push_back(d);
                d += M.dims[x];
            }
            dims.push_back(d);
        }
        std::vector<FpMat> deltas;
        for (int i = 0; i + 1 < nlevels(); ++i) {
            FpMat delta(p_, dims[i + 1], dims[i]);
            const auto& next = levels_[i + 1];
            for (size_t k = 0; k < next.gen_obj.size(); ++k) {
                int y = next.gen_obj[k];
                // Yoneda element w in the level-i sum coordinates at y
                const auto& w = next.gen_vec[k];
                // block row k receives sum over (j, psi) of w[(j,psi)] M(psi)
                for (size_t j = 0; j < levels_[i].gen_obj.size(); ++j) {
                    int x = levels_[i].gen_obj[j];
                    const auto& ids = O_->hom_ids[y][x];
                    for (size_t t = 0; t < ids.size(); ++t) {
                        int coeff = w[levels_[i].gen_offsets[y][j] + int(t)];
                        if (!coeff) continue;
                        const FpMat& act = M.action[ids[t]];  // M(x) -> M(y)
                        for (int r = 0; r < act.rows(); ++r)
                            for (int c = 0; c < act.cols(); ++c) {
                                int v = act.get(r, c);
                                if (v) delta.add_at(offs[i + 1][k] + r, offs[i][j] + c,
                                                    (v * coeff) % p_);
                            }
                    }
                }
            }
            deltas.push_back(std::move(delta));
        }
        CochainComplex cx(p_, dims, std::move(deltas));
        std::vector<int> out;
        for (int n = 0; n <= n_max; ++n) out.push_back(cx.cohomology_dim(n));
        return out;
    }

private:
    // apply the representable-sum action of a level to a coordinate vector
    std::vector<uint8_t> sum_action(const ResolutionLevel& lvl, int mor,
                                    const std::vector<uint8_t>& v) const {
        const auto& m = O_->mors[mor];  // phi: src -> dst; map coords at dst to src
        std::vector<uint8_t> out(lvl.sum_dims[m.src], 0);
        for (size_t j = 0; j < lvl.gen_obj.size(); ++j) {
            int x = lvl.gen_obj[j];
            const auto& dst_ids = O_->hom_ids[m.dst][x];
            const auto& src_ids = O_->hom_ids[m.src][x];
            for (size_t t = 0; t < dst_ids.size(); ++t) {
                int coeff = v[lvl.gen_offsets[m.dst][j] + int(t)];
                if (!coeff) continue;
                int composed = O_->comp[dst_ids[t]][mor];
                auto it = std::find(src_ids.begin(), src_ids.end(), composed);
                check_invariant(it != src_ids.end(), "resolution: precomposition failed");
                int pos = int(it - src_ids.begin());
                out[lvl.gen_offsets[m.src][j] + pos] =
                    uint8_t((out[lvl.gen_offsets[m.src][j] + pos] + coeff) % p_);
            }
        }
        return out;
    }

    ResolutionLevel build_level(const std::vector<std::vector<std::vector<uint8_t>>>& prev_kernel,
                                const std::vector<int>& prev_dim, const Action& act_prev,
                                size_t budget) {
        ResolutionLevel lvl;
        int n = O_->nobj();
        // greedy cover: track the reached subspace of the previous kernel at
        // every object; add a generator where something is missing
        std::vector<SpanSolver> reached;
        for (int a = 0; a < n; ++a) reached.emplace_back(p_, prev_dim[a]);

        auto add_generator = [&](int x, const std::vector<uint8_t>& v) {
            lvl.gen_obj.push_back(x);
            lvl.gen_vec.push_back(v);
            for (int a = 0; a < n; ++a)
                for (int id : O_->hom_ids[a][x]) {
                    // K(psi)(v) for psi: a -> x
                    reached[a].add(act_prev(id, v));
                }
        };

        bool changed = true;
        while (changed) {
            changed = false;
            for (int a = 0; a < n; ++a) {
                for (const auto& kv : prev_kernel[a]) {
                    if (!reached[a].contains(kv)) {
                        add_generator(a, kv);
                        changed = true;
                    }
                }
            }
        }
        if (lvl.gen_obj.size() > budget)
            throw CapacityError("resolution size cap exceeded (cap " +
                                std::to_string(budget) + " generators)");

        // dims of the representable sum and kernels of the cover map
        lvl.sum_dims.assign(n, 0);
        lvl.gen_offsets.assign(n, {});
        for (int a = 0; a < n; ++a)
            for (size_t j = 0; j < lvl.gen_obj.size(); ++j) {
                lvl.gen_offsets[a].push_back(lvl.sum_dims[a]);
                lvl.sum_dims[a] += int(O_->hom_ids[a][lvl.gen_obj[j]].size());
            }
        lvl.kernel.resize(n);
        for (int a = 0; a < n; ++a) {
            // columns: basis of the sum at a; entries: values in prev coords
            FpMat cover(p_, prev_dim[a], lvl.sum_dims[a]);
            int col = 0;
            for (size_t j = 0; j < lvl.gen_obj.size(); ++j) {
                for (int id : O_->hom_ids[a][lvl.gen_obj[j]]) {
                    std::vector<uint8_t> val = act_prev(id, lvl.gen_vec[j]);
                    for (int r = 0; r < prev_dim[a]; ++r)
                        if (val[r]) cover.set(r, col, val[r]);
                    ++col;
                }
            }
            // surjectivity onto the previous kernel
            SpanSolver span(p_, prev_dim[a]);
            for (int c = 0; c < lvl.sum_dims[a]; ++c) {
                std::vector<uint8_t> e(lvl.sum_dims[a], 0);
                e[c] = 1;
                span.add(cover.apply(e));
            }
            for (const auto& kv : prev_kernel[a])
                check_invariant(span.contains(kv), "resolution cover not surjective");
            lvl.kernel[a] = cover.kernel_basis();
        }
        return lvl;
    }

    const FunctorModule* A_;
    const OrbitCategory* O_;
    int p_;
    std::vector<ResolutionLevel> levels_;
};

// Ext^n(A, M) dimensions for n = 0..n_max.
inline std::vector<int> ext_groups(const FunctorModule& A, const FunctorModule& M, int n_max) {
    RepresentableResolution res(A, n_max + 1);
    return res.ext_dims(M, n_max);
}

}  // namespace fuslim
