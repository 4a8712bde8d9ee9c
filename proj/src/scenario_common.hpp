#pragma once

#include "projalg/groebner.hpp"
#include "projalg/replay.hpp"
#include "projalg/rng.hpp"
#include "projalg/varmap.hpp"

#include <chrono>
#include <string>
#include <vector>

namespace projalg::detail {

struct Fixtures {
    RationalMap quotient_map;        // P1xP1xP1 -> P13, the 14 invariant monomials
    Ideal image_quadrics;            // the 42 quadrics in P13
    RationalMap projection;          // P13 -> P5 away from the singular span
    Ideal intersection_quadrics;     // the two quadrics cutting Q in P5
    RationalMap quadric_param;       // P3 -> Q
    RationalMap quadric_param_inverse;
    RationalMap p3_recovery;         // P13 -> P3 on the threefold
    RationalMap sextic_system;       // P3 -> P13, the 14 sextics
    ParamFamily sextic_family;       // 14-parameter family, ring (l | s)
    Poly family_triple_point;        // four-parameter member, same ring
    Poly cone_cubic;                 // cubic cone at the triple point (chart ring)
    RingPtr cone_ring;
    std::vector<Ideal> lines_r;      // r1, r2, r3 in the s-ring

    static Fixtures load(const std::string& dir, uint64_t prime);
};

class ScenarioRun {
public:
    ScenarioRun(const Scenario& s, Report& rep, std::string prefix);

    const Scenario& scenario() const { return s_; }
    bool default_prime() const { return s_.prime == kDefaultPrime; }
    uint64_t seed_for(std::string_view purpose) const;

    void check(const std::string& name, const std::string& expected, const std::string& actual);
    void check_bool(const std::string& name, bool ok);
    void note(const std::string& name, const std::string& text); // always passes

    // step timing; value recorded as 0 unless --timings
    void step_begin(const std::string& name);
    void step_end();

private:
    const Scenario& s_;
    Report& rep_;
    std::string prefix_;
    std::string current_step_;
    std::chrono::steady_clock::time_point step_start_;
};

std::string fmt_dim_degree(const std::pair<int64_t, int64_t>& dd);
std::string gb_tag(const Ideal& i); // "gb[n]#<hash16>", embeds the basis hash

// Ideal of a single reduced point (kernel of its coordinate row).
Ideal point_ideal(const RingPtr& ring, const ProjPoint& pt);
// Line through two distinct points.
Ideal line_through(const RingPtr& ring, const ProjPoint& a, const ProjPoint& b);
// P2 -> P3 parametrization of the plane cut by a linear form.
RationalMap plane_parametrization(const RingPtr& p3, const Poly& linear_form,
                                  const RingPtr& p2);
// Coordinates of a point of the plane in the parametrization (solves B u = pt).
ProjPoint plane_coordinates(const RationalMap& param, const ProjPoint& pt);

void run_code1(ScenarioRun& run, const Fixtures& fix);
void run_code2(ScenarioRun& run, const Fixtures& fix);
void run_lemma(ScenarioRun& run, const Fixtures& fix);
void run_chain(ScenarioRun& run, const Fixtures& fix);

} // namespace projalg::detail
