#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuslim {

// Error hierarchy. Scenario checkers report hypothesis failures through
// verdict values instead of throwing; exceptions are reserved for misuse,
// resource caps and internal consistency alarms.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad arguments or malformed input (CLI exit code 2).
struct ArgumentError : Error {
    explicit ArgumentError(const std::string& what) : Error(what) {}
};

// A configurable resource cap was exceeded (CLI exit code 2, names the cap).
struct CapacityError : Error {
    explicit CapacityError(const std::string& what) : Error(what) {}
};

// An internal mathematical invariant failed. This is a correctness alarm
// (CLI exit code 4), never a recoverable condition.
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& what) : Error(what) {}
};

inline void check_arg(bool ok, const std::string& what) {
    if (!ok) throw ArgumentError(what);
}

inline void check_invariant(bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation(what);
}

// Dynamic bitset over 64-bit words with value semantics and lexicographic
// ordering on the index set.
class Bitset {
public:
    Bitset() : nbits_(0) {}
    explicit Bitset(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    int size() const { return nbits_; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += __builtin_popcountll(w);
        return c;
    }

    bool is_subset_of(const Bitset& o) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    Bitset operator&(const Bitset& o) const {
        Bitset r(nbits_);
        for (size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] & o.w_[k];
        return r;
    }
    Bitset operator|(const Bitset& o) const {
        Bitset r(nbits_);
        for (size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] | o.w_[k];
        return r;
    }

    bool operator==(const Bitset& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }
    bool operator!=(const Bitset& o) const { return !(*this == o); }
    bool operator<(const Bitset& o) const {
        if (nbits_ != o.nbits_) return nbits_ < o.nbits_;
        return w_ < o.w_;
    }

    std::vector<int> members() const {
        std::vector<int> m;
        for (int i = 0; i < nbits_; ++i)
            if (test(i)) m.push_back(i);
        return m;
    }

private:
    int nbits_;
    std::vector<uint64_t> w_;
};

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Returns p if n is a prime power p^k (k >= 1), 0 otherwise.
inline int prime_power_base(int n) {
    if (n < 2) return 0;
    int p = 0;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) { p = d; break; }
    }
    if (p == 0) return n;  // n itself prime
    while (n % p == 0) n /= p;
    return n == 1 ? p : 0;
}

inline int int_pow(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace fuslim
