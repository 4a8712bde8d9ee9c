#include "scenario_common.hpp"

#include <algorithm>

namespace projalg::detail {

// Replays the quotient-construction session: the image of the invariant
// monomial map, the projection away from the singular span, the quadric
// complete intersection, birationality, and the inverse recovering the
// sextic system.
void run_code1(ScenarioRun& run, const Fixtures& fix) {
    const RationalMap& pi = fix.quotient_map;
    const RingPtr& p13 = pi.target();
    const uint64_t p = p13->prime();

    // the eight fixed points of the coordinate-negation involution
    run.step_begin("fixed_points");
    const std::vector<std::vector<int64_t>> fixed = {
        {0, 1, 1, 0, 1, 0}, {1, 0, 0, 1, 0, 1}, {0, 1, 0, 1, 0, 1}, {1, 0, 1, 0, 1, 0},
        {0, 1, 1, 0, 0, 1}, {1, 0, 0, 1, 1, 0}, {0, 1, 0, 1, 1, 0}, {1, 0, 1, 0, 0, 1}};
    std::vector<ProjPoint> images;
    std::vector<std::size_t> coord_indices;
    bool all_coordinate_points = true;
    for (const auto& c : fixed) {
        ProjPoint x = ProjPoint::from_ints(c, pi.source());
        ProjPoint y = eval_map(pi, x);
        images.push_back(y);
        std::size_t nz = 0, idx = 0;
        for (std::size_t j = 0; j < y.dim(); ++j)
            if (y.coords()[j]) { ++nz; idx = j; }
        if (nz != 1) all_coordinate_points = false;
        else coord_indices.push_back(idx);
    }
    std::sort(coord_indices.begin(), coord_indices.end());
    std::string idx_str;
    for (std::size_t i : coord_indices) idx_str += (idx_str.empty() ? "" : ",") + std::to_string(i);
    run.check("fixed_point_images", "coordinate points 0,1,3,4,9,10,12,13",
              all_coordinate_points ? "coordinate points " + idx_str : "not coordinate points");
    run.step_end();

    // the projection is centered exactly at the span of those eight points
    run.step_begin("projection_center");
    const RationalMap& rho = fix.projection;
    bool center_ok = true;
    for (const auto& y : images)
        for (const auto& f : rho.forms())
            if (f.eval(y.coords()) != 0) center_ok = false;
    FpMatrix span(images.size(), p13->nvars(), p);
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = 0; j < p13->nvars(); ++j) span.at(i, j) = images[i].coords()[j];
    center_ok = center_ok && matrix_rank(span) == 8;
    run.check_bool("projection_center_is_singular_span", center_ok);
    run.step_end();

    // image of the quotient map: the 42 quadrics
    run.step_begin("image_quotient_map");
    Ideal W = image(pi, ImageStrategy::Interpolation, 2, run.seed_for("image-pi"));
    if (run.default_prime())
        run.check("image_equals_42_quadrics", gb_tag(fix.image_quadrics), gb_tag(W));
    run.check("dim_degree_W", "(3, 24)", fmt_dim_degree(hilbert_dim_degree(W)));
    {
        bool cert = true;
        for (const auto& g : W.gens())
            if (!apply_ring_map(pi.forms(), g).is_zero()) cert = false;
        run.check_bool("image_substitution_certificate_W", cert);
    }
    run.step_end();

    run.step_begin("image_toric_cross_check");
    Ideal Wtoric = image_toric(pi);
    run.check_bool("toric_path_agrees", ideal_equal(W, Wtoric));
    run.step_end();

    // projected image: the complete intersection of two quadrics
    run.step_begin("image_projection");
    RationalMap rho_pi = compose(pi, rho);
    Ideal Q = image(rho_pi, ImageStrategy::Interpolation, 2, run.seed_for("image-q"));
    if (run.default_prime())
        run.check("image_Q_equals_fixture", gb_tag(fix.intersection_quadrics), gb_tag(Q));
    run.check("dim_degree_Q", "(3, 4)", fmt_dim_degree(hilbert_dim_degree(Q)));
    {
        Ideal Qe = image(rho_pi, ImageStrategy::Elimination, 2, run.seed_for("image-q"));
        run.check_bool("strategy_agreement_Q", ideal_equal(Q, Qe));
    }
    run.step_end();

    run.step_begin("projection_birational");
    RationalMap rhoW(rho.source(), rho.target(), rho.forms(), W);
    run.check("rho_restricted_birational", "1",
              std::to_string(map_degree(rhoW, run.seed_for("deg-rho"), {pi})));
    run.step_end();

    // the quadric parametrization of Q and its inverse
    run.step_begin("quadric_param");
    const RationalMap& q = fix.quadric_param;
    Ideal imq = image(q, ImageStrategy::Interpolation, 2, run.seed_for("image-qq"));
    run.check_bool("q_image_matches_projection_image", ideal_equal(imq, Q));
    {
        Ideal imqe = image(q, ImageStrategy::Elimination, 2, run.seed_for("image-qq"));
        run.check_bool("strategy_agreement_q", ideal_equal(imq, imqe));
    }
    run.check("q_birational", "1", std::to_string(map_degree(q, run.seed_for("deg-q"))));
    run.step_end();

    run.step_begin("quadric_param_inverse");
    RationalMap qinv = inverse_map(q, 2, run.seed_for("inv-q"), {}, imq);
    RationalMap qinv_fix(fix.quadric_param_inverse.source(), fix.quadric_param_inverse.target(),
                         fix.quadric_param_inverse.forms(), imq);
    run.check_bool("inverse_q_matches", maps_equal(qinv, qinv_fix));
    run.step_end();

    // the composed birational map back to P3 and its inverse
    run.step_begin("recovery_map");
    RationalMap composed = compose(RationalMap(rho.source(), rho.target(), rho.forms(), W), qinv);
    RationalMap wb(fix.p3_recovery.source(), fix.p3_recovery.target(), fix.p3_recovery.forms(), W);
    run.check_bool("recovery_map_matches", maps_equal(composed, wb));
    run.check("recovery_birational", "1",
              std::to_string(map_degree(wb, run.seed_for("deg-wb"), {pi})));
    run.step_end();

    run.step_begin("inverse_recovery");
    RationalMap nu = inverse_map(wb, 6, run.seed_for("inv-wb"), {pi});
    run.check("inverse_recovery_degree", "6", std::to_string(nu.forms()[0].degree()));
    if (run.default_prime()) {
        bool exact = true;
        for (std::size_t i = 0; i < nu.forms().size(); ++i)
            if (!(nu.forms()[i] == fix.sextic_system.forms()[i].rename_into(nu.source())))
                exact = false;
        run.check_bool("inverse_recovery_equals_sextics", exact);
    } else {
        RationalMap nufix(fix.sextic_system.source(), fix.sextic_system.target(),
                          fix.sextic_system.forms());
        run.check_bool("inverse_recovery_equals_sextics", maps_equal(nu, nufix));
    }
    run.step_end();

    run.step_begin("image_sextic_system");
    RationalMap nu_plain(nu.source(), nu.target(), nu.forms());
    Ideal imnu = image(nu_plain, ImageStrategy::Interpolation, 2, run.seed_for("image-nu"));
    run.check_bool("image_nu_equals_image_pi", ideal_equal(imnu, W));
    run.step_end();

    // sampled points of the projected chain satisfy both quadrics
    run.step_begin("sample_chain");
    auto samples = sample_points({pi, rho}, 25, run.seed_for("chain-samples"));
    bool on_q = true;
    for (const auto& s : samples)
        for (const auto& g : Q.gens())
            if (g.eval(s.coords()) != 0) on_q = false;
    run.check_bool("sample_chain_on_Q", on_q);
    run.step_end();
}

} // namespace projalg::detail
