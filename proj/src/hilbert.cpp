#include "projalg/groebner.hpp"

#include <algorithm>
#include <numeric>

namespace projalg {

namespace {

using ZPoly = std::vector<int64_t>; // ascending coefficients

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

ZPoly zp_shift(const ZPoly& a, std::size_t k) {
    if (a.empty()) return {};
    ZPoly r(a.size() + k, 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i + k] = a[i];
    return r;
}

ZPoly one_minus_tk(std::size_t k) {
    ZPoly r(k + 1, 0);
    r[0] = 1;
    r[k] = -1;
    return r;
}

void minimalize(std::vector<Exponents>& gens) {
    std::sort(gens.begin(), gens.end(), [](const Exponents& a, const Exponents& b) {
        int64_t da = exp_total_degree(a), db = exp_total_degree(b);
        if (da != db) return da < db;
        return a < b;
    });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<Exponents> out;
    for (const auto& g : gens) {
        bool covered = false;
        for (const auto& h : out)
            if (exp_divides(h, g)) { covered = true; break; }
        if (!covered) out.push_back(g);
    }
    gens = std::move(out);
}

bool pairwise_coprime(const std::vector<Exponents>& gens) {
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            for (std::size_t v = 0; v < gens[i].size(); ++v)
                if (gens[i][v] && gens[j][v]) return false;
    return true;
}

ZPoly numerator_rec(std::size_t nvars, std::vector<Exponents> gens, int depth) {
    if (depth > 4096) throw Error("hilbert numerator recursion too deep");
    minimalize(gens);
    if (gens.empty()) return {1};
    if (exp_total_degree(gens[0]) == 0) return {}; // unit ideal
    if (pairwise_coprime(gens)) {
        ZPoly r = {1};
        for (const auto& g : gens)
            r = zp_mul(r, one_minus_tk(static_cast<std::size_t>(exp_total_degree(g))));
        return r;
    }
    // pivot on the most frequent variable
    std::vector<std::size_t> freq(nvars, 0);
    for (const auto& g : gens)
        for (std::size_t v = 0; v < nvars; ++v)
            if (g[v]) ++freq[v];
    std::size_t pivot = static_cast<std::size_t>(
        std::max_element(freq.begin(), freq.end()) - freq.begin());

    // N(I) = N(I + (x)) + t * N(I : x)
    std::vector<Exponents> plus;
    Exponents xv(nvars, 0);
    xv[pivot] = 1;
    plus.push_back(xv);
    for (const auto& g : gens)
        if (!g[pivot]) plus.push_back(g);
    std::vector<Exponents> colon;
    for (auto g : gens) {
        if (g[pivot]) --g[pivot];
        colon.push_back(std::move(g));
    }
    return zp_add(numerator_rec(nvars, std::move(plus), depth + 1),
                  zp_shift(numerator_rec(nvars, std::move(colon), depth + 1), 1));
}

} // namespace

std::vector<int64_t> hilbert_numerator(std::size_t nvars, const std::vector<Exponents>& lead_monomials) {
    return numerator_rec(nvars, lead_monomials, 0);
}

std::pair<int64_t, int64_t> hilbert_dim_degree(const Ideal& i) {
    if (!i.is_homogeneous()) throw Error("hilbert_dim_degree: inhomogeneous ideal");
    const GroebnerBasis& g = i.groebner(MonomialOrder::grevlex());
    if (g.contains_constant()) return {-1, 0};
    std::vector<Exponents> leads;
    leads.reserve(g.elems.size());
    for (const auto& e : g.elems) leads.push_back(e.lt().e);

    ZPoly num = hilbert_numerator(i.ring()->nvars(), leads);
    if (num.empty()) return {-1, 0};

    // strip (1 - t) factors: Krull dimension of the quotient is nvars - k
    std::size_t k = 0;
    for (;;) {
        int64_t at1 = std::accumulate(num.begin(), num.end(), int64_t{0});
        if (at1 != 0) break;
        // divide by (1 - t): q_i = q_{i-1} + n_i
        ZPoly q(num.size() - 1, 0);
        int64_t carry = 0;
        for (std::size_t idx = 0; idx < q.size(); ++idx) {
            carry += num[idx];
            q[idx] = carry;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        num = std::move(q);
        ++k;
        if (num.empty()) return {-1, 0};
    }
    const int64_t krull = static_cast<int64_t>(i.ring()->nvars()) - static_cast<int64_t>(k);
    if (krull <= 0) return {-1, 0};
    const int64_t degree = std::accumulate(num.begin(), num.end(), int64_t{0});
    return {krull - 1, degree};
}

} // namespace projalg
