#pragma once

// Higher limits of a contravariant functor over an orbit category. Two
// independent pipelines: the cosimplicial (cobar) complex and Ext of the
// constant functor along a representable resolution. The dispatcher runs the
// cobar route when its matrices fit the cell budget and falls back to the
// Ext route for categories with large endomorphism monoids.

#include "cobar.hpp"
#include "ext.hpp"

namespace fuslim {

struct LimitOptions {
    size_t cobar_cell_budget = size_t(5) << 23;  // ~4e7 matrix cells
    int force_route = 0;                         // 0 auto, 1 cobar, 2 ext
};

struct LimitResult {
    int dim = 0;
    std::string route;  // "cobar" or "ext"
};

// Estimated largest differential size of the cobar complex through level n+1.
inline size_t cobar_cell_estimate(const FunctorModule& M, int n_max) {
    const OrbitCategory& O = *M.cat;
    // count chains weighted by the anchor dimension, level by level
    std::vector<double> weight(O.nobj(), 0.0);
    for (int a = 0; a < O.nobj(); ++a) weight[a] = M.dims[a];
    double prev_total = 0;
    for (int a = 0; a < O.nobj(); ++a) prev_total += weight[a];
    double worst = 0;
    std::vector<double> cur = weight;  // level-0 anchored mass per source object
    for (int n = 1; n <= n_max + 1; ++n) {
        std::vector<double> next(O.nobj(), 0.0);
        for (int i = 0; i < O.nmor(); ++i) {
            if (O.mors[i].identity) continue;
            // chains of length n ending anywhere, tracked by tail object
            next[O.mors[i].dst] += cur[O.mors[i].src];
        }
        double total = 0;
        for (double v : next) total += v;
        worst = std::max(worst, total * prev_total);
        prev_total = total;
        cur = std::move(next);
    }
    return size_t(std::min(worst, 1e18));
}

inline std::vector<int> higher_limits_cobar(const FunctorModule& M, int n_max,
                                            size_t cell_budget) {
    CobarComplex cb = cobar_complex(M, n_max, cell_budget);
    std::vector<int> out;
    for (int n = 0; n <= n_max; ++n) out.push_back(cb.cx->cohomology_dim(n));
    return out;
}

inline std::vector<int> higher_limits_ext(const FunctorModule& M, int n_max) {
    FunctorModule c = constant_functor(M.cat, M.p);
    return ext_groups(c, M, n_max);
}

// lim^0..lim^{n_max}, route chosen by size; a cobar capacity overflow falls
// back to the Ext route unless the cobar route was forced.
inline std::vector<LimitResult> higher_limits(const FunctorModule& M, int n_max,
                                              const LimitOptions& opt = {}) {
    bool use_cobar;
    switch (opt.force_route) {
        case 1: use_cobar = true; break;
        case 2: use_cobar = false; break;
        default: use_cobar = cobar_cell_estimate(M, n_max) <= opt.cobar_cell_budget;
    }
    std::vector<int> dims;
    if (use_cobar) {
        try {
            dims = higher_limits_cobar(M, n_max, opt.cobar_cell_budget * 2);
        } catch (const CapacityError&) {
            if (opt.force_route == 1) throw;
            use_cobar = false;
        }
    }
    if (!use_cobar) dims = higher_limits_ext(M, n_max);
    std::vector<LimitResult> out;
    for (int n = 0; n <= n_max; ++n)
        out.push_back(LimitResult{dims[n], use_cobar ? "cobar" : "ext"});
    return out;
}

inline int higher_limit_dim(const FunctorModule& M, int n, const LimitOptions& opt = {}) {
    return higher_limits(M, n, opt)[n].dim;
}

// Dimension together with representative cocycles of the cobar complex
// (kernel vectors completing the image of the previous differential).
struct LimitWithBasis {
    int dim = 0;
    std::vector<std::vector<uint8_t>> cocycles;  // coordinates in the cobar C^n
};

inline LimitWithBasis higher_limit_basis(const FunctorModule& M, int n,
                                         size_t cell_budget = size_t(6) << 26) {
    CobarComplex cb = cobar_complex(M, n, cell_budget);
    LimitWithBasis out;
    out.cocycles = cb.cx->cohomology_basis(n);
    out.dim = int(out.cocycles.size());
    return out;
}

}  // namespace fuslim
