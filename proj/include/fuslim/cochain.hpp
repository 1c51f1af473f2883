#pragma once

// Cochain complexes of F_p-spaces with d.d = 0 asserted on construction.

#include "fp.hpp"

namespace fuslim {

class CochainComplex {
public:
    CochainComplex(int p, std::vector<int> dims, std::vector<FpMat> diffs)
        : p_(p), dims_(std::move(dims)), diffs_(std::move(diffs)) {
        check_arg(diffs_.size() + 1 == dims_.size() || (dims_.empty() && diffs_.empty()),
                  "CochainComplex: need one differential per adjacent pair");
        for (size_t n = 0; n < diffs_.size(); ++n) {
            check_arg(diffs_[n].cols() == dims_[n] && diffs_[n].rows() == dims_[n + 1],
                      "CochainComplex: differential shape mismatch");
            if (n > 0)
                check_invariant(diffs_[n].mul(diffs_[n - 1]).is_zero(),
                                "CochainComplex: d.d != 0");
        }
        // ranks computed up front so the value is immutable afterwards
        ranks_.reserve(diffs_.size());
        for (const auto& d : diffs_) ranks_.push_back(d.rank());
    }

    int p() const { return p_; }
    int terms() const { return int(dims_.size()); }
    int dim(int n) const { return (n >= 0 && n < terms()) ? dims_[n] : 0; }
    const FpMat& diff(int n) const { return diffs_[n]; }

    int rank(int n) const {
        if (n < 0 || n >= int(diffs_.size())) return 0;
        return ranks_[n];
    }

    // dim H^n = dim C^n - rank d^n - rank d^{n-1}
    int cohomology_dim(int n) const {
        if (n < 0 || n >= terms()) return 0;
        return dim(n) - rank(n) - rank(n - 1);
    }

    // representative cocycles spanning H^n (kernel vectors completing the
    // image of d^{n-1})
    std::vector<std::vector<uint8_t>> cohomology_basis(int n) const {
        std::vector<std::vector<uint8_t>> out;
        if (n < 0 || n >= terms()) return out;
        std::vector<std::vector<uint8_t>> kernel;
        if (n < int(diffs_.size())) {
            kernel = diffs_[n].kernel_basis();
        } else {
            for (int k = 0; k < dims_[n]; ++k) {
                std::vector<uint8_t> e(dims_[n], 0);
                e[k] = 1;
                kernel.push_back(std::move(e));
            }
        }
        SpanSolver s(p_, dims_[n]);
        if (n > 0) {
            for (int k = 0; k < dims_[n - 1]; ++k) {
                std::vector<uint8_t> e(dims_[n - 1], 0);
                e[k] = 1;
                s.add(diffs_[n - 1].apply(e));
            }
        }
        for (const auto& z : kernel)
            if (s.add(z)) out.push_back(z);
        return out;
    }

private:
    int p_;
    std::vector<int> dims_;
    std::vector<FpMat> diffs_;
    std::vector<int> ranks_;
};

}  // namespace fuslim
