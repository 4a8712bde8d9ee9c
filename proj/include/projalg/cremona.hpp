#pragma once

#include "projalg/error.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace projalg {

// Plane linear system (d; m_1, ..., m_k): curve degree with assigned point
// multiplicities under opaque labels.
struct PlaneSystem {
    int64_t degree = 0;
    std::vector<std::pair<std::string, int64_t>> mults; // insertion-ordered, unique labels

    int64_t mult_of(const std::string& label) const;
    void set_mult(const std::string& label, int64_t m);
    std::string to_string() const; // "(d; m1@l1, ...)" in insertion order
};

struct SystemInvariants {
    int64_t self_intersection;    // d^2 - sum m_i^2
    int64_t anticanonical_pairing; // 3d - sum m_i
    int64_t virtual_genus;         // (d-1)(d-2)/2 - sum m_i(m_i-1)/2
    bool operator==(const SystemInvariants&) const = default;
};

SystemInvariants system_invariants(const PlaneSystem& l);

// One plane quadratic transformation centered at three distinct labels.
// d' = 2d - m_a - m_b - m_c; the exceptional label replacing each center
// receives d minus the other two center multiplicities; every label is
// renamed through `relabel` (centers included: their entry names the new
// exceptional label).
PlaneSystem quadratic_transform(const PlaneSystem& l, const std::array<std::string, 3>& centers,
                                const std::map<std::string, std::string>& relabel);

struct ChainStep {
    std::array<std::string, 3> centers;
    std::map<std::string, std::string> relabel;
};

struct ChainResult {
    PlaneSystem final;
    std::vector<PlaneSystem> trace; // includes the input as trace[0]
};

ChainResult run_chain(const PlaneSystem& l, const std::vector<ChainStep>& steps);

// Step scripts, one per line: "centers: a,b,c ; relabel: old=new,..."
std::vector<ChainStep> parse_chain_script(const std::string& text);

// Divisor classes on the blow-up of P3 along the fixed center list: basis
// H, Ep, E0..E3, Ep1..Ep3 (first infinitesimal), Epp1..Epp3 (second),
// F01, F02, F03, F12, F13, F23, R1..R3.
class DivisorClass {
public:
    static const std::vector<std::string>& basis_names(); // 20 entries

    DivisorClass(); // zero class
    static DivisorClass unit(const std::string& basis_name);

    int64_t& operator[](const std::string& name);
    int64_t at(const std::string& name) const;

    DivisorClass operator+(const DivisorClass& o) const;
    DivisorClass operator-(const DivisorClass& o) const;
    DivisorClass scaled(int64_t c) const;
    bool operator==(const DivisorClass& o) const = default;

    std::string to_string() const; // e.g. "2H-Ep-E0-E1-E2-E3-F01-..."

private:
    std::vector<int64_t> c_;
};

} // namespace projalg
