#pragma once

#include "projalg/error.hpp"

#include <cstdint>
#include <vector>

namespace projalg {

bool is_prime(uint64_t n);

inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
}

inline uint64_t submod(uint64_t a, uint64_t b, uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    // moduli are restricted to < 2^31, so the product fits in 64 bits
    return (a * b) % p;
}

uint64_t invmod(uint64_t a, uint64_t p); // extended Euclid; throws on a == 0
uint64_t powmod(uint64_t a, uint64_t e, uint64_t p);

// An element of F_p. Immutable value type; operations on mismatched moduli
// throw.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(uint64_t v, uint64_t p) : v_(v % p), p_(p) {}
    static Fp from_int(int64_t v, uint64_t p) {
        int64_t r = v % static_cast<int64_t>(p);
        if (r < 0) r += static_cast<int64_t>(p);
        return Fp(static_cast<uint64_t>(r), p);
    }

    uint64_t value() const { return v_; }
    uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(const Fp& o) const { check(o); return Fp::raw(addmod(v_, o.v_, p_), p_); }
    Fp operator-(const Fp& o) const { check(o); return Fp::raw(submod(v_, o.v_, p_), p_); }
    Fp operator*(const Fp& o) const { check(o); return Fp::raw(mulmod(v_, o.v_, p_), p_); }
    Fp operator-() const { return Fp::raw(v_ == 0 ? 0 : p_ - v_, p_); }
    Fp inv() const { return Fp::raw(invmod(v_, p_), p_); }
    Fp operator/(const Fp& o) const { return *this * o.inv(); }
    Fp pow(uint64_t e) const { return Fp::raw(powmod(v_, e, p_), p_); }

    bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

private:
    static Fp raw(uint64_t v, uint64_t p) { Fp x; x.v_ = v; x.p_ = p; return x; }
    void check(const Fp& o) const {
        if (p_ != o.p_) throw Error("field element modulus mismatch");
    }
    uint64_t v_;
    uint64_t p_;
};

// Dense row-major matrix over F_p.
class FpMatrix {
public:
    FpMatrix(std::size_t rows, std::size_t cols, uint64_t p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    uint64_t modulus() const { return p_; }

    uint64_t& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    uint64_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Fp get(std::size_t i, std::size_t j) const { return Fp(at(i, j), p_); }
    void set(std::size_t i, std::size_t j, uint64_t v) { at(i, j) = v % p_; }

    bool operator==(const FpMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
    }

private:
    std::size_t rows_, cols_;
    uint64_t p_;
    std::vector<uint64_t> a_;
};

struct RowReduceResult {
    FpMatrix reduced;
    std::vector<std::size_t> pivot_cols;
    // Kernel basis in the canonical echelon parametrization: one vector per
    // free column, taken in ascending column index order; the vector has a 1
    // at its free column and the negated reduced entries at pivot columns.
    std::vector<std::vector<uint64_t>> kernel;

    std::size_t rank() const { return pivot_cols.size(); }
};

// Reduced row echelon form. Pivot selection: columns left to right, first row
// with a nonzero entry. Deterministic: identical input gives identical output.
RowReduceResult row_reduce(const FpMatrix& m);

// Rank only (same elimination, no kernel assembly).
std::size_t matrix_rank(const FpMatrix& m);

} // namespace projalg
