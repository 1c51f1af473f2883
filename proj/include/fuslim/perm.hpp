#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "common.hpp"

namespace fuslim {

// A permutation of {0..degree-1}, stored as its image sequence.
class Perm {
public:
    Perm() = default;
    explicit Perm(int degree) : img_(degree) {
        std::iota(img_.begin(), img_.end(), 0);
    }
    explicit Perm(std::vector<uint16_t> images) : img_(std::move(images)) {
        check_arg(is_bijection(img_), "Perm: images are not a bijection");
    }

    static Perm from_ints(const std::vector<int>& images) {
        std::vector<uint16_t> v(images.size());
        for (size_t i = 0; i < images.size(); ++i) {
            check_arg(images[i] >= 0 && images[i] < int(images.size()),
                      "Perm: image out of range");
            v[i] = uint16_t(images[i]);
        }
        return Perm(std::move(v));
    }

    int degree() const { return int(img_.size()); }
    int operator()(int x) const { return img_[x]; }
    const std::vector<uint16_t>& images() const { return img_; }

    bool is_identity() const {
        for (int i = 0; i < degree(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    // (a * b)(x) = a(b(x))
    Perm operator*(const Perm& o) const {
        check_arg(degree() == o.degree(), "Perm: degree mismatch");
        std::vector<uint16_t> r(img_.size());
        for (size_t i = 0; i < img_.size(); ++i) r[i] = img_[o.img_[i]];
        Perm p;
        p.img_ = std::move(r);
        return p;
    }

    Perm inverse() const {
        std::vector<uint16_t> r(img_.size());
        for (size_t i = 0; i < img_.size(); ++i) r[img_[i]] = uint16_t(i);
        Perm p;
        p.img_ = std::move(r);
        return p;
    }

    int order() const {
        Perm x = *this;
        int n = 1;
        while (!x.is_identity()) {
            x = x * *this;
            ++n;
        }
        return n;
    }

    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return img_ != o.img_; }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

private:
    static bool is_bijection(const std::vector<uint16_t>& v) {
        std::vector<char> seen(v.size(), 0);
        for (uint16_t x : v) {
            if (x >= v.size() || seen[x]) return false;
            seen[x] = 1;
        }
        return true;
    }

    std::vector<uint16_t> img_;
};

// Builds a permutation from disjoint-cycle notation, e.g. {{0,1,2,3}} on 4
// points is the 4-cycle. Points absent from all cycles are fixed.
inline Perm perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> img(degree);
    std::iota(img.begin(), img.end(), 0);
    for (const auto& cyc : cycles) {
        for (size_t i = 0; i < cyc.size(); ++i) {
            int from = cyc[i];
            int to = cyc[(i + 1) % cyc.size()];
            check_arg(from >= 0 && from < degree && to >= 0 && to < degree,
                      "perm_from_cycles: point out of range");
            img[from] = to;
        }
    }
    return Perm::from_ints(img);
}

}  // namespace fuslim
