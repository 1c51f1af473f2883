#pragma once

// The functor H^j(-;F_p) on an orbit category: values from the bar
// resolution, action matrices the pullbacks along coset representatives.
// Inner automorphisms act trivially on cohomology, so the value on an
// Inn-coset does not depend on the representative.

#include "functor.hpp"
#include "group_cohomology.hpp"

namespace fuslim {

inline FunctorModule cohomology_functor(CohomologyCache& cache, const OrbitPtr& O, int j) {
    FunctorModule M;
    M.cat = O;
    M.p = cache.p();
    M.dims.resize(O->nobj());
    for (int a = 0; a < O->nobj(); ++a) M.dims[a] = cache.get(O->obj(a), j)->dim;
    M.action.reserve(O->nmor());
    for (int i = 0; i < O->nmor(); ++i) {
        const auto& mor = O->mors[i];
        if (mor.identity)
            M.action.push_back(FpMat::identity(M.p, M.dims[mor.src]));
        else
            M.action.push_back(induced_cohomology_map(cache, mor.rep, j));
    }
    verify_functor(M);
    return M;
}

}  // namespace fuslim
