#pragma once

// Exact dense linear algebra over the prime fields F_p. Matrices act on
// column vectors: an r x c matrix is a map F_p^c -> F_p^r. For p = 2 the
// rows are bit-packed; elimination always picks the first nonzero pivot so
// all results are deterministic.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "common.hpp"

namespace fuslim {

inline int fp_inv(int p, int a) {
    a %= p;
    if (a < 0) a += p;
    check_arg(a != 0, "fp_inv: zero has no inverse");
    for (int x = 1; x < p; ++x)
        if ((a * x) % p == 1) return x;
    throw ArgumentError("fp_inv: p not prime?");
}

class FpMat {
public:
    FpMat() : p_(2), r_(0), c_(0) {}
    FpMat(int p, int rows, int cols) : p_(p), r_(rows), c_(cols) {
        check_arg(p >= 2 && is_prime(p), "FpMat: p must be prime");
        if (p == 2) {
            wpr_ = (cols + 63) / 64;
            b_.assign(size_t(rows) * wpr_, 0);
        } else {
            d_.assign(size_t(rows) * cols, 0);
        }
    }

    static FpMat identity(int p, int n) {
        FpMat m(p, n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    int p() const { return p_; }
    int rows() const { return r_; }
    int cols() const { return c_; }

    int get(int i, int j) const {
        if (p_ == 2) return int((b_[size_t(i) * wpr_ + (j >> 6)] >> (j & 63)) & 1u);
        return d_[size_t(i) * c_ + j];
    }
    void set(int i, int j, int v) {
        v %= p_;
        if (v < 0) v += p_;
        if (p_ == 2) {
            uint64_t& w = b_[size_t(i) * wpr_ + (j >> 6)];
            if (v) w |= uint64_t(1) << (j & 63);
            else   w &= ~(uint64_t(1) << (j & 63));
        } else {
            d_[size_t(i) * c_ + j] = uint8_t(v);
        }
    }
    void add_at(int i, int j, int v) { set(i, j, get(i, j) + v); }

    bool operator==(const FpMat& o) const {
        return p_ == o.p_ && r_ == o.r_ && c_ == o.c_ && d_ == o.d_ && b_ == o.b_;
    }

    bool is_zero() const {
        for (uint64_t w : b_) if (w) return false;
        for (uint8_t v : d_) if (v) return false;
        return true;
    }

    // this * o, shapes (r_ x c_) * (o.r_ x o.c_) with c_ == o.r_
    FpMat mul(const FpMat& o) const {
        check_arg(p_ == o.p_, "FpMat::mul: field mismatch");
        check_arg(c_ == o.r_, "FpMat::mul: shape mismatch");
        FpMat out(p_, r_, o.c_);
        if (p_ == 2) {
            for (int i = 0; i < r_; ++i) {
                uint64_t* dst = &out.b_[size_t(i) * out.wpr_];
                for (int k = 0; k < c_; ++k) {
                    if (get(i, k)) {
                        const uint64_t* src = &o.b_[size_t(k) * o.wpr_];
                        for (int w = 0; w < o.wpr_; ++w) dst[w] ^= src[w];
                    }
                }
            }
        } else {
            for (int i = 0; i < r_; ++i)
                for (int k = 0; k < c_; ++k) {
                    int a = get(i, k);
                    if (!a) continue;
                    for (int j = 0; j < o.c_; ++j) {
                        int v = out.get(i, j) + a * o.get(k, j);
                        out.set(i, j, v % p_);
                    }
                }
        }
        return out;
    }

    std::vector<uint8_t> apply(const std::vector<uint8_t>& x) const {
        check_arg(int(x.size()) == c_, "FpMat::apply: length mismatch");
        std::vector<uint8_t> y(r_, 0);
        for (int i = 0; i < r_; ++i) {
            int acc = 0;
            for (int j = 0; j < c_; ++j)
                if (x[j]) acc += get(i, j) * x[j];
            y[i] = uint8_t(acc % p_);
        }
        return y;
    }

    FpMat transpose() const {
        FpMat t(p_, c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) {
                int v = get(i, j);
                if (v) t.set(j, i, v);
            }
        return t;
    }

    // Row-reduce in place; returns the pivot column of each pivot row.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < c_ && row < r_; ++col) {
            int pr = -1;
            for (int i = row; i < r_; ++i)
                if (get(i, col)) { pr = i; break; }
            if (pr < 0) continue;
            swap_rows(row, pr);
            int inv = (p_ == 2) ? 1 : fp_inv(p_, get(row, col));
            if (inv != 1) scale_row(row, inv);
            for (int i = 0; i < r_; ++i) {
                if (i == row) continue;
                int f = get(i, col);
                if (f) axpy_row(i, row, p_ - f);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const {
        FpMat m = *this;
        return int(m.rref().size());
    }

    // Basis of { x : A x = 0 }, deterministic order (one vector per free column).
    std::vector<std::vector<uint8_t>> kernel_basis() const {
        FpMat m = *this;
        std::vector<int> piv = m.rref();
        std::vector<int> pivot_of_col(c_, -1);
        for (size_t k = 0; k < piv.size(); ++k) pivot_of_col[piv[k]] = int(k);
        std::vector<std::vector<uint8_t>> basis;
        for (int j = 0; j < c_; ++j) {
            if (pivot_of_col[j] >= 0) continue;
            std::vector<uint8_t> v(c_, 0);
            v[j] = 1;
            for (size_t k = 0; k < piv.size(); ++k) {
                int e = m.get(int(k), j);
                if (e) v[piv[k]] = uint8_t((p_ - e) % p_);
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // One solution of A x = b, if any.
    std::optional<std::vector<uint8_t>> solve(const std::vector<uint8_t>& bvec) const {
        check_arg(int(bvec.size()) == r_, "FpMat::solve: length mismatch");
        FpMat aug(p_, r_, c_ + 1);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < c_; ++j) {
                int v = get(i, j);
                if (v) aug.set(i, j, v);
            }
            if (bvec[i]) aug.set(i, c_, bvec[i]);
        }
        std::vector<int> piv = aug.rref();
        std::vector<uint8_t> x(c_, 0);
        for (size_t k = 0; k < piv.size(); ++k) {
            if (piv[k] == c_) return std::nullopt;  // inconsistent
            x[piv[k]] = uint8_t(aug.get(int(k), c_));
        }
        return x;
    }

    static FpMat from_columns(int p, int nrows, const std::vector<std::vector<uint8_t>>& cols) {
        FpMat m(p, nrows, int(cols.size()));
        for (size_t j = 0; j < cols.size(); ++j) {
            check_arg(int(cols[j].size()) == nrows, "from_columns: ragged input");
            for (int i = 0; i < nrows; ++i)
                if (cols[j][i]) m.set(i, int(j), cols[j][i]);
        }
        return m;
    }

private:
    void swap_rows(int a, int b) {
        if (a == b) return;
        if (p_ == 2)
            std::swap_ranges(b_.begin() + size_t(a) * wpr_, b_.begin() + size_t(a + 1) * wpr_,
                             b_.begin() + size_t(b) * wpr_);
        else
            std::swap_ranges(d_.begin() + size_t(a) * c_, d_.begin() + size_t(a + 1) * c_,
                             d_.begin() + size_t(b) * c_);
    }
    void scale_row(int i, int f) {
        for (int j = 0; j < c_; ++j) {
            int v = get(i, j);
            if (v) set(i, j, (v * f) % p_);
        }
    }
    // row[i] += f * row[src]
    void axpy_row(int i, int src, int f) {
        if (p_ == 2) {
            uint64_t* a = &b_[size_t(i) * wpr_];
            const uint64_t* s = &b_[size_t(src) * wpr_];
            for (int w = 0; w < wpr_; ++w) a[w] ^= s[w];
        } else {
            for (int j = 0; j < c_; ++j) {
                int v = get(src, j);
                if (v) set(i, j, get(i, j) + f * v);
            }
        }
    }

    int p_, r_, c_;
    std::vector<uint8_t> d_;    // p > 2
    std::vector<uint64_t> b_;   // p == 2, bit-packed rows
    int wpr_ = 0;
};

// Incremental span with coordinate tracking: vectors are added one by one;
// coords() expresses a vector as a combination of the added ones.
class SpanSolver {
public:
    SpanSolver(int p, int n) : p_(p), n_(n) {}

    int dim() const { return int(rows_.size()); }
    int ambient_dim() const { return n_; }

    // Returns true if v enlarged the span.
    bool add(const std::vector<uint8_t>& v) {
        std::vector<uint8_t> r = v;
        std::vector<uint8_t> comb(nadded_ + 1, 0);
        comb[nadded_] = 1;
        ++nadded_;
        for (auto& c : combs_) c.push_back(0);
        reduce(r, comb);
        if (all_zero(r)) return false;
        normalize(r, comb);
        insert(std::move(r), std::move(comb));
        return true;
    }

    bool contains(const std::vector<uint8_t>& v) const {
        std::vector<uint8_t> r = v;
        std::vector<uint8_t> comb;
        reduce(r, comb);
        return all_zero(r);
    }

    // Coefficients over the *added* vectors, if v lies in the span.
    std::optional<std::vector<uint8_t>> coords(const std::vector<uint8_t>& v) const {
        std::vector<uint8_t> r = v;
        std::vector<uint8_t> comb(nadded_, 0);
        reduce(r, comb);
        if (!all_zero(r)) return std::nullopt;
        for (auto& c : comb) c = uint8_t((p_ - c) % p_);  // moved to the other side
        return comb;
    }

private:
    static bool all_zero(const std::vector<uint8_t>& v) {
        for (uint8_t x : v) if (x) return false;
        return true;
    }
    void reduce(std::vector<uint8_t>& r, std::vector<uint8_t>& comb) const {
        for (size_t k = 0; k < rows_.size(); ++k) {
            int lead = leads_[k];
            int f = r[lead];
            if (!f) continue;
            for (int j = 0; j < n_; ++j)
                r[j] = uint8_t((r[j] + (p_ - f) * rows_[k][j]) % p_);
            if (!comb.empty())
                for (size_t j = 0; j < comb.size() && j < combs_[k].size(); ++j)
                    comb[j] = uint8_t((comb[j] + (p_ - f) * combs_[k][j]) % p_);
        }
    }
    void normalize(std::vector<uint8_t>& r, std::vector<uint8_t>& comb) {
        int lead = -1;
        for (int j = 0; j < n_; ++j)
            if (r[j]) { lead = j; break; }
        int inv = fp_inv(p_, r[lead]);
        if (inv != 1) {
            for (auto& x : r) x = uint8_t((x * inv) % p_);
            for (auto& x : comb) x = uint8_t((x * inv) % p_);
        }
        pending_lead_ = lead;
    }
    void insert(std::vector<uint8_t> r, std::vector<uint8_t> comb) {
        // keep earlier rows reduced against the new one
        for (size_t k = 0; k < rows_.size(); ++k) {
            int f = rows_[k][pending_lead_];
            if (!f) continue;
            for (int j = 0; j < n_; ++j)
                rows_[k][j] = uint8_t((rows_[k][j] + (p_ - f) * r[j]) % p_);
            for (size_t j = 0; j < combs_[k].size() && j < comb.size(); ++j)
                combs_[k][j] = uint8_t((combs_[k][j] + (p_ - f) * comb[j]) % p_);
        }
        rows_.push_back(std::move(r));
        combs_.push_back(std::move(comb));
        leads_.push_back(pending_lead_);
    }

    int p_, n_, nadded_ = 0, pending_lead_ = -1;
    std::vector<std::vector<uint8_t>> rows_;
    std::vector<std::vector<uint8_t>> combs_;
    std::vector<int> leads_;
};

// F_p^n / W for a subspace W given by spanning vectors. A basis of the
// quotient is chosen among the unit vectors (first ones independent mod W);
// project() gives quotient coordinates, lift() the canonical representative.
class QuotientSpace {
public:
    QuotientSpace(int p, int n, const std::vector<std::vector<uint8_t>>& span_w)
        : p_(p), n_(n), nw_(int(span_w.size())), solver_(p, n) {
        for (const auto& v : span_w) {
            if (solver_.add(v)) ++wdim_;
        }
        for (int j = 0; j < n_; ++j) {
            std::vector<uint8_t> e(n_, 0);
            e[j] = 1;
            if (solver_.add(e)) free_.push_back(j);
        }
    }

    int dim() const { return int(free_.size()); }

    // Dependent added vectors always carry coefficient zero, so any coords()
    // representation reads v = w + sum c_k e_{free_k}; the c_k are the unique
    // quotient coordinates.
    std::vector<uint8_t> project(const std::vector<uint8_t>& v) const {
        auto c = solver_.coords(v);
        check_invariant(c.has_value(), "QuotientSpace: projection failed");
        std::vector<uint8_t> out(free_.size(), 0);
        for (size_t k = 0; k < free_.size(); ++k) out[k] = (*c)[nw_ + free_[k]];
        return out;
    }

    std::vector<uint8_t> lift(const std::vector<uint8_t>& coords) const {
        check_arg(int(coords.size()) == dim(), "QuotientSpace::lift: length");
        std::vector<uint8_t> v(n_, 0);
        for (size_t k = 0; k < free_.size(); ++k) v[free_[k]] = coords[k];
        return v;
    }

    const std::vector<int>& free_positions() const { return free_; }

private:
    int p_, n_, nw_, wdim_ = 0;
    SpanSolver solver_;
    std::vector<int> free_;
};

}  // namespace fuslim
