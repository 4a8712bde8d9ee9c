#pragma once

#include "projalg/groebner.hpp"
#include "projalg/polyring.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace projalg {

// Rational map between projective varieties, given by equal-degree forms
// (per projective factor of the source) on the source ring, one form per
// target variable. The source may carry an ideal (the source variety).
class RationalMap {
public:
    RationalMap() = default;
    RationalMap(RingPtr source, RingPtr target, std::vector<Poly> forms,
                std::optional<Ideal> source_ideal = std::nullopt);
    static RationalMap from_map_file(const MapFile& f, uint64_t prime);

    const RingPtr& source() const { return source_; }
    const RingPtr& target() const { return target_; }
    const std::vector<Poly>& forms() const { return forms_; }
    const std::optional<Ideal>& source_ideal() const { return source_ideal_; }
    RationalMap with_source_ideal(Ideal i) const;

    // Ideal generated by the forms (saturation left to base_locus()).
    Ideal forms_ideal() const;

private:
    RingPtr source_;
    RingPtr target_;
    std::vector<Poly> forms_;
    std::optional<Ideal> source_ideal_;
};

struct BasePointError : Error {
    explicit BasePointError(const std::string& m) : Error(m) {}
};

ProjPoint eval_map(const RationalMap& phi, const ProjPoint& x);

RationalMap identity_map(const RingPtr& ring);

// g after f (source of g = target of f).
RationalMap compose(const RationalMap& f, const RationalMap& g);

// Graph equality: f_i g_j - f_j g_i vanishes modulo the source ideal, and the
// map is not degenerate.
bool maps_equal(const RationalMap& f, const RationalMap& g);

// n points on the image of the composed chain, seeded and deterministic.
// Samples of the first source are uniform; stages rejecting (all forms zero)
// trigger a bounded resample.
std::vector<ProjPoint> sample_points(const std::vector<RationalMap>& chain, std::size_t n,
                                     uint64_t seed);

enum class ImageStrategy { Interpolation, Elimination };

// Homogeneous ideal of the closure of the image. Every generator is certified
// by exact substitution into the source ideal. `chain` provides the sampling
// parametrization for the interpolation strategy (defaults to {phi}).
Ideal image(const RationalMap& phi, ImageStrategy strategy, int max_degree, uint64_t seed,
            const std::vector<RationalMap>& chain = {});

// Monomial maps only: lattice-kernel generators saturated at every variable.
Ideal image_toric(const RationalMap& phi);

// Ideal of the common zeros of the forms, saturated blockwise by the
// irrelevant ideals of the source factors.
Ideal base_locus(const RationalMap& phi);

// phi^{-1}(y) away from the base locus: 2x2 minors of (forms | y), plus the
// source ideal, saturated by the forms ideal.
Ideal fiber(const RationalMap& phi, const ProjPoint& y);

// Projective (per-factor) dimension of a subscheme; -1 when empty.
int64_t scheme_dimension(const Ideal& i);

// Degree of the fiber over the image of a seeded random source point;
// resamples when the fiber fails to be zero-dimensional. `source_chain`
// parametrizes the source variety when the map carries a source ideal.
int64_t map_degree(const RationalMap& phi, uint64_t seed,
                   const std::vector<RationalMap>& source_chain = {});

// Minimal-degree inverse with the exact bilinear certificate
// h_j(phi(x)) x_k - h_k(phi(x)) x_j = 0 modulo the source ideal. When the
// image is a proper subvariety, pass its ideal so the inverse's forms are
// taken in normal form against it (canonical representative).
RationalMap inverse_map(const RationalMap& phi, int max_degree, uint64_t seed,
                        const std::vector<RationalMap>& source_chain = {},
                        const std::optional<Ideal>& target_ideal = std::nullopt);

// X + ((n-d) x (n-d) jacobian minors), saturated by the irrelevant ideal;
// d is the (scenario-supplied) dimension of X.
Ideal singular_locus(const Ideal& x, int64_t dim);

Ideal jacobian_minors(const std::vector<Poly>& gens, std::size_t k);

enum class NodeType { Smooth, Node, QuadricConeNode, Other };
std::string to_string(NodeType t);

// Classification by the tangent cone at x: linear cone -> smooth; curve case
// with a squarefree rank-2 quadric -> node; surface case with a rank-3
// quadric -> quadric-cone-node; anything else -> other.
NodeType node_type(const Ideal& x, const ProjPoint& pt);

// Subfamily with all chart derivatives of order < m vanishing at x; chart is
// the last nonzero coordinate of x.
ParamFamily impose_point_multiplicity(const ParamFamily& family, const ProjPoint& x, int m,
                                      std::size_t* chart_out = nullptr);

// Condition matrix of the derivative conditions (rows: multi-indices of order
// < m; columns: parameters present in the family).
FpMatrix condition_matrix(const ParamFamily& family, const ProjPoint& x, int m,
                          std::size_t* chart_out = nullptr);

// C(d+2,2) - rank(conditions) - 1 for plane curves of degree d.
int64_t plane_system_dimension(uint64_t prime, int d,
                               const std::vector<std::pair<ProjPoint, int>>& conditions);

} // namespace projalg
