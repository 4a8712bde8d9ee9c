#pragma once

#include "projalg/error.hpp"
#include "projalg/modfield.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace projalg {

using Exponents = std::vector<uint16_t>;

int64_t exp_total_degree(const Exponents& e);
bool exp_divides(const Exponents& a, const Exponents& b); // a | b
Exponents exp_mul(const Exponents& a, const Exponents& b);
Exponents exp_div(const Exponents& a, const Exponents& b); // requires b | a
Exponents exp_lcm(const Exponents& a, const Exponents& b);

// Total multiplicative orders on monomials.
struct MonomialOrder {
    enum class Kind {
        Grevlex,   // degree, then last nonzero of a-b negative
        Lex,       // first differing exponent
        Elim,      // grevlex on the first `block` variables, then grevlex on the rest
        Weighted,  // weighted degree, grevlex tiebreak
        AuxGraded, // total degree, then exponent of variable 0, then grevlex on the rest
    };

    Kind kind = Kind::Grevlex;
    std::size_t block = 0;         // Elim
    std::vector<int64_t> weights;  // Weighted

    static MonomialOrder grevlex() { return {}; }
    static MonomialOrder lex() { return {Kind::Lex, 0, {}}; }
    static MonomialOrder elim(std::size_t k) { return {Kind::Elim, k, {}}; }
    static MonomialOrder weighted(std::vector<int64_t> w) { return {Kind::Weighted, 0, std::move(w)}; }
    static MonomialOrder aux_graded() { return {Kind::AuxGraded, 0, {}}; }

    // -1, 0, +1 for a < b, a == b, a > b. Throws on length mismatch.
    int compare(const Exponents& a, const Exponents& b) const;

    std::string to_string() const;                    // grevlex | lex | elim:k | ...
    static MonomialOrder parse(std::string_view s);   // the three file-format kinds

    bool operator==(const MonomialOrder& o) const {
        return kind == o.kind && block == o.block && weights == o.weights;
    }
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Immutable ring descriptor: prime modulus, ordered variable names, monomial
// order, and the projective block structure (sizes of projective factors;
// plain rings have a single block covering all variables).
class Ring {
public:
    static RingPtr make(uint64_t prime, std::vector<std::string> vars,
                        MonomialOrder order = MonomialOrder::grevlex(),
                        std::vector<std::size_t> blocks = {});

    uint64_t prime() const { return prime_; }
    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const MonomialOrder& order() const { return order_; }
    const std::vector<std::size_t>& blocks() const { return blocks_; }

    std::optional<std::size_t> find_var(std::string_view name) const;
    std::size_t var_index(std::string_view name) const; // throws if absent
    std::size_t block_of(std::size_t var) const;
    std::size_t block_start(std::size_t b) const;

    // Same prime, variables and order: polynomials may be combined.
    bool compatible(const Ring& o) const;
    // Same prime and variables, any order.
    bool same_vars(const Ring& o) const;

    RingPtr with_order(MonomialOrder order) const;
    // A name of the form base_k not colliding with any variable.
    std::string fresh_name(const std::string& base) const;

    std::string header_string() const; // "ring p=... vars=... order=..."

private:
    Ring() = default;
    uint64_t prime_ = 0;
    std::vector<std::string> vars_;
    MonomialOrder order_;
    std::vector<std::size_t> blocks_;
};

// Convenience: x_0..x_{n-1} style rings.
RingPtr make_ring(uint64_t prime, const std::string& base, std::size_t n,
                  MonomialOrder order = MonomialOrder::grevlex());

struct Term {
    Exponents e;
    uint64_t c; // in [1, p)
};

// Sparse multivariate polynomial over F_p. Terms are kept strictly descending
// in the ring's monomial order; no zero coefficients are stored.
class Poly {
public:
    Poly() = default; // detached zero; most operations require a ring

    static Poly zero(RingPtr ring);
    static Poly constant(RingPtr ring, uint64_t c);
    static Poly constant(RingPtr ring, int64_t c);
    static Poly variable(RingPtr ring, std::size_t i);
    static Poly monomial(RingPtr ring, Exponents e, uint64_t c);
    // Terms in any order, possibly with repeats; normalized here.
    static Poly from_terms(RingPtr ring, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t nterms() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& lt() const; // leading term; throws on zero

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(uint64_t c) const;
    Poly mul_term(const Exponents& e, uint64_t c) const;
    Poly monic() const;
    Poly pow(unsigned n) const;
    Poly derivative(std::size_t var) const;

    int64_t degree() const; // max total degree; -1 for zero
    int64_t degree_in(const std::vector<std::size_t>& vars) const;
    bool is_homogeneous() const;
    bool is_homogeneous_per_block() const;

    uint64_t eval(const std::vector<uint64_t>& point) const;
    // Substitute constants for a subset of variables (var -> value).
    Poly eval_partial(const std::vector<std::pair<std::size_t, uint64_t>>& assignment) const;

    // Homogeneous component of given total degree, optionally counting degree
    // only over a subset of variables.
    Poly homogeneous_component(int64_t d) const;
    Poly lowest_form() const;                                    // throws on zero
    Poly lowest_form_in(const std::vector<std::size_t>& vars) const;

    // Same variables and prime, possibly different order: re-sorts.
    Poly with_ring(RingPtr other) const;
    // Match variables of this ring into `target` by name; throws if a
    // variable that occurs in the polynomial is missing from the target.
    Poly rename_into(RingPtr target) const;

    std::string to_string() const;

private:
    void normalize();
    RingPtr ring_;
    std::vector<Term> terms_;
};

// images[i] is the image of variable i; all images in one common ring.
Poly apply_ring_map(const std::vector<Poly>& images, const Poly& f);

Poly parse_poly(const std::string& text, RingPtr ring);

// All exponent vectors of total degree d, sorted strictly descending in the
// given order.
std::vector<Exponents> monomials_of_degree(std::size_t nvars, int64_t d,
                                           const MonomialOrder& order);
// Coefficients of f over a monomial list (zero where absent).
std::vector<uint64_t> coeff_vector(const Poly& f, const std::vector<Exponents>& monomials);

// A point of the projective space (or product of projective spaces) attached
// to a ring's block structure. Canonical representative: within each block
// the first nonzero coordinate is 1.
class ProjPoint {
public:
    ProjPoint() = default;
    ProjPoint(std::vector<uint64_t> coords, std::vector<std::size_t> blocks, uint64_t p);
    static ProjPoint from_ints(std::vector<int64_t> coords, const RingPtr& ring);

    const std::vector<uint64_t>& coords() const { return coords_; }
    const std::vector<std::size_t>& blocks() const { return blocks_; }
    uint64_t modulus() const { return p_; }
    std::size_t dim() const { return coords_.size(); }

    std::string to_string() const;
    bool operator==(const ProjPoint& o) const;
    bool operator<(const ProjPoint& o) const; // for canonical sorting

private:
    std::vector<uint64_t> coords_;
    std::vector<std::size_t> blocks_;
    uint64_t p_ = 0;
};

// A linear system spanned by named parameters: the ring's first block holds
// the parameters, the second the geometric variables; the generic element is
// homogeneous in the geometric block and linear in the parameters.
class ParamFamily {
public:
    ParamFamily() = default;
    static ParamFamily make(RingPtr ring, Poly generic);

    const RingPtr& ring() const { return ring_; }
    const Poly& generic() const { return generic_; }
    std::size_t param_count() const;             // parameters actually present
    std::vector<std::size_t> param_indices() const;

    // Geometric-only ring (second block), grevlex.
    RingPtr geometric_ring() const;
    // The member at a unit parameter vector, as a polynomial in the
    // geometric ring.
    Poly generator_for(std::size_t param_index) const;
    std::vector<Poly> generators() const; // one per present parameter, ascending

private:
    RingPtr ring_;
    Poly generic_;
};

// Ideal/map text formats (see README for the grammar).
struct IdealFile {
    RingPtr ring;
    std::vector<Poly> polys;
};
// override_prime replaces the header's modulus when nonzero (the stored
// integer literals are re-reduced).
IdealFile read_ideal_file(std::istream& in, uint64_t override_prime = 0);
IdealFile read_ideal_file_path(const std::string& path, uint64_t override_prime = 0);
void write_ideal_file(std::ostream& out, const RingPtr& ring, const std::vector<Poly>& polys);

struct MapFile {
    RingPtr source;
    std::vector<std::string> target_vars;
    std::vector<Poly> forms;
};
MapFile read_map_file(std::istream& in, uint64_t override_prime = 0);
MapFile read_map_file_path(const std::string& path, uint64_t override_prime = 0);

} // namespace projalg
