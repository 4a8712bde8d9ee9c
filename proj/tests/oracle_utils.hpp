#pragma once

// Test-only oracles, kept independent of the Groebner engine they check:
// degree-truncated linear-algebra membership and brute-force lowest-form
// tangent cones.

#include "projalg/groebner.hpp"
#include "projalg/rng.hpp"

#include <algorithm>
#include <map>

namespace projalg::testing {

inline std::vector<Exponents> monomials_up_to(std::size_t nvars, int64_t dmax) {
    std::vector<Exponents> all;
    for (int64_t d = 0; d <= dmax; ++d) {
        auto m = monomials_of_degree(nvars, d, MonomialOrder::grevlex());
        all.insert(all.end(), m.begin(), m.end());
    }
    return all;
}

// Membership of a homogeneous polynomial in a homogeneous ideal, decided
// degree by degree as linear algebra over the coefficient space.
inline bool membership_oracle(const Ideal& ideal, const Poly& f) {
    if (f.is_zero()) return true;
    const RingPtr& ring = ideal.ring();
    const uint64_t p = ring->prime();
    for (int64_t d = 0; d <= f.degree(); ++d) {
        Poly comp = f.homogeneous_component(d);
        if (comp.is_zero()) continue;
        auto monos = monomials_of_degree(ring->nvars(), d, MonomialOrder::grevlex());
        std::map<Exponents, std::size_t> index;
        for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
        std::vector<std::vector<uint64_t>> rows;
        for (const auto& g : ideal.gens()) {
            if (g.degree() > d) continue;
            for (const auto& m :
                 monomials_of_degree(ring->nvars(), d - g.degree(), MonomialOrder::grevlex())) {
                Poly mg = g.mul_term(m, 1);
                std::vector<uint64_t> row(monos.size(), 0);
                for (const auto& t : mg.terms()) row[index.at(t.e)] = t.c;
                rows.push_back(std::move(row));
            }
        }
        FpMatrix without(rows.size(), monos.size(), p);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < monos.size(); ++j) without.at(i, j) = rows[i][j];
        FpMatrix with(rows.size() + 1, monos.size(), p);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < monos.size(); ++j) with.at(i, j) = rows[i][j];
        for (const auto& t : comp.terms()) with.at(rows.size(), index.at(t.e)) = t.c;
        if (matrix_rank(with) != matrix_rank(without)) return false;
    }
    return true;
}

// Ideal generated by the lowest forms of an echelonized basis of the span
// { m * g : deg(m g) <= dmax } of an affine ideal through the origin.
inline Ideal tangent_cone_bruteforce(const RingPtr& ring, const std::vector<Poly>& gens,
                                     int64_t dmax) {
    const uint64_t p = ring->prime();
    auto monos = monomials_up_to(ring->nvars(), dmax); // grouped by ascending degree
    std::map<Exponents, std::size_t> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;

    std::vector<std::vector<uint64_t>> rows;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        for (int64_t md = 0; md + g.degree() <= dmax; ++md) {
            for (const auto& m : monomials_of_degree(ring->nvars(), md, MonomialOrder::grevlex())) {
                Poly mg = g.mul_term(m, 1);
                std::vector<uint64_t> row(monos.size(), 0);
                for (const auto& t : mg.terms()) row[index.at(t.e)] = t.c;
                rows.push_back(std::move(row));
            }
        }
    }
    FpMatrix mat(rows.size(), monos.size(), p);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < monos.size(); ++j) mat.at(i, j) = rows[i][j];
    RowReduceResult rr = row_reduce(mat);

    std::vector<Poly> lowest;
    for (std::size_t r = 0; r < rr.rank(); ++r) {
        std::vector<Term> ts;
        for (std::size_t j = 0; j < monos.size(); ++j)
            if (rr.reduced.at(r, j)) ts.push_back({monos[j], rr.reduced.at(r, j)});
        Poly f = Poly::from_terms(ring, std::move(ts));
        if (!f.is_zero()) lowest.push_back(f.lowest_form());
    }
    return Ideal(ring, std::move(lowest));
}

// Seeded random polynomial with degree <= dmax over the first nvars
// variables; homogeneous of degree exactly d when hom.
inline Poly random_poly(const RingPtr& ring, Rng& rng, int64_t d, bool hom, int terms = 4) {
    std::vector<Term> ts;
    for (int t = 0; t < terms; ++t) {
        int64_t deg = hom ? d : static_cast<int64_t>(rng.below(static_cast<uint64_t>(d) + 1));
        auto monos = monomials_of_degree(ring->nvars(), deg, MonomialOrder::grevlex());
        Exponents e = monos[rng.below(monos.size())];
        uint64_t c = 1 + rng.below(ring->prime() - 1);
        ts.push_back({std::move(e), c});
    }
    return Poly::from_terms(ring, std::move(ts));
}

} // namespace projalg::testing
