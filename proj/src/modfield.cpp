#include "projalg/modfield.hpp"

namespace projalg {

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint64_t invmod(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) throw Error("division by zero in F_p");
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a);
    while (newr != 0) {
        int64_t q = r / newr;
        int64_t tmp = t - q * newt;
        t = newt; newt = tmp;
        tmp = r - q * newr;
        r = newr; newr = tmp;
    }
    if (t < 0) t += static_cast<int64_t>(p);
    return static_cast<uint64_t>(t);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, uint64_t p)
    : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {
    if (p < 2 || p >= (1ull << 31)) throw Error("modulus out of range (need 2 <= p < 2^31)");
}

namespace {

// In-place forward+back elimination; returns pivot columns.
std::vector<std::size_t> rref_inplace(FpMatrix& m) {
    const uint64_t p = m.modulus();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m.at(sel, j), m.at(row, j));
        const uint64_t piv_inv = invmod(m.at(row, col), p);
        for (std::size_t j = col; j < m.cols(); ++j)
            m.at(row, j) = mulmod(m.at(row, j), piv_inv, p);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            const uint64_t f = m.at(i, col);
            if (f == 0) continue;
            const uint64_t nf = p - f;
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = (m.at(i, j) + nf * m.at(row, j)) % p;
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

RowReduceResult row_reduce(const FpMatrix& m) {
    FpMatrix r = m;
    std::vector<std::size_t> pivots = rref_inplace(r);
    const uint64_t p = m.modulus();

    std::vector<std::vector<uint64_t>> kernel;
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<uint64_t> v(m.cols(), 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            const uint64_t e = r.at(i, f);
            if (e) v[pivots[i]] = p - e;
        }
        kernel.push_back(std::move(v));
    }
    return RowReduceResult{std::move(r), std::move(pivots), std::move(kernel)};
}

std::size_t matrix_rank(const FpMatrix& m) {
    FpMatrix r = m;
    return rref_inplace(r).size();
}

} // namespace projalg
