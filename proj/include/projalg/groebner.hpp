#pragma once

#include "projalg/polyring.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace projalg {

// Reduced Groebner basis: monic elements, no element's term divisible by
// another element's lead term, sorted ascending by lead term. The unique
// canonical form of an ideal for its order.
struct GroebnerBasis {
    RingPtr ring; // carries the order the basis was computed under
    std::vector<Poly> elems;

    bool contains_constant() const {
        return elems.size() == 1 && elems[0].degree() == 0 && !elems[0].is_zero();
    }
    std::string to_string() const; // header + one element per line, canonical
    uint64_t hash() const;
};

// A finitely generated ideal with a per-order cache of reduced bases.
class Ideal {
public:
    Ideal() = default;
    Ideal(RingPtr ring, std::vector<Poly> gens);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Poly>& gens() const { return gens_; }
    bool is_homogeneous() const;

    const GroebnerBasis& groebner(const MonomialOrder& order) const;
    const GroebnerBasis& groebner() const { return groebner(ring_->order()); }

    Ideal renamed_into(RingPtr target) const;

private:
    RingPtr ring_;
    std::vector<Poly> gens_;
    struct Cache {
        std::mutex mu;
        std::map<std::string, std::shared_ptr<const GroebnerBasis>> bases;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Remainder of f on division by G; no term of the result is divisible by a
// lead term of G. For a Groebner basis, zero iff f lies in the ideal.
Poly normal_form(const Poly& f, const GroebnerBasis& g);

// Reduced basis from arbitrary generators under the given order.
GroebnerBasis buchberger(RingPtr ring, std::vector<Poly> gens, const MonomialOrder& order);

// Post-hoc certificate: every S-polynomial of the basis reduces to zero.
bool gb_certificate_holds(const GroebnerBasis& g);

bool ideal_equal(const Ideal& a, const Ideal& b);
bool contains(const Ideal& i, const Ideal& j); // every generator of j reduces to 0 mod i

// I ∩ k[vars outside the block]; result lives in a ring on the remaining
// variables.
Ideal eliminate(const Ideal& i, const std::vector<std::size_t>& block);

Ideal intersect(const Ideal& a, const Ideal& b);
Ideal saturate_single(const Ideal& i, const Poly& f);
Ideal saturate(const Ideal& i, const Ideal& j); // I : J^inf
Ideal irrelevant_ideal(const RingPtr& ring);    // product rings: use saturate_blockwise
Ideal saturate_blockwise_irrelevant(const Ideal& i);

// (projective dimension, degree) from the Hilbert polynomial of the lead-term
// ideal of a grevlex basis. Empty projective scheme reports (-1, 0).
std::pair<int64_t, int64_t> hilbert_dim_degree(const Ideal& i);

// Hilbert series numerator of a monomial ideal (ascending coefficients).
std::vector<int64_t> hilbert_numerator(std::size_t nvars, const std::vector<Exponents>& lead_monomials);

// Ideal of lowest-degree forms of I translated so `point` sits at the origin
// of its canonical affine chart (last nonzero coordinate). Result is
// homogeneous in the chart ring; chart_var receives the dropped variable.
Ideal tangent_cone(const Ideal& i, const ProjPoint& point, std::size_t* chart_var = nullptr);

struct RationalPoints {
    std::vector<ProjPoint> points;
    int64_t unresolved_degree = 0; // total degree of eliminant factors with no F_p root
};

// All F_p-rational points of a zero-dimensional projective scheme, via
// univariate eliminants, gcd with x^p - x, and back-substitution.
RationalPoints rational_points_zero_dim(const Ideal& i);

} // namespace projalg
