#include "scenario_common.hpp"

#include <algorithm>

namespace projalg::detail {

namespace {

// The restricted forms contract their locus to one point iff their
// coefficient matrix has rank 1; the image point is any nonzero column.
bool contracted_image(const std::vector<Poly>& restricted, ProjPoint* image_out, uint64_t p,
                      const RingPtr& target) {
    std::map<Exponents, std::size_t> cols;
    for (const auto& f : restricted)
        for (const auto& t : f.terms()) cols.emplace(t.e, 0);
    if (cols.empty()) return false; // every form vanishes on the locus
    std::size_t idx = 0;
    for (auto& [e, i] : cols) i = idx++;
    FpMatrix m(restricted.size(), cols.size(), p);
    for (std::size_t r = 0; r < restricted.size(); ++r)
        for (const auto& t : restricted[r].terms()) m.at(r, cols[t.e]) = t.c;
    if (matrix_rank(m) != 1) return false;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        std::vector<uint64_t> col(restricted.size());
        bool nz = false;
        for (std::size_t r = 0; r < restricted.size(); ++r) {
            col[r] = m.at(r, j);
            nz = nz || col[r];
        }
        if (nz) {
            *image_out = ProjPoint(col, target->blocks(), p);
            return true;
        }
    }
    return false;
}

} // namespace

// Replays the triple-point imposition: the ten independent conditions, the
// four-parameter family, the cubic image with four quadric-cone nodes, the
// cubic-curve fibers, the base-locus certificate, the contractions, and the
// tangent cone at the triple point.
void run_code2(ScenarioRun& run, const Fixtures& fix) {
    const ParamFamily& fam = fix.sextic_family;
    const RingPtr famring = fam.ring();
    const RingPtr geo = fam.geometric_ring();
    const uint64_t p = famring->prime();
    const std::size_t np = famring->blocks()[0];

    ProjPoint triple = ProjPoint::from_ints({1, 1, 1, -1}, geo);

    run.step_begin("conditions");
    std::size_t chart = 0;
    FpMatrix cm = condition_matrix(fam, triple, 3, &chart);
    run.check("condition_rank", "10", std::to_string(matrix_rank(cm)));
    run.note("condition_chart", geo->vars()[chart]);
    ParamFamily sub = impose_point_multiplicity(fam, triple, 3);
    run.check("family_parameter_count", "4", std::to_string(sub.param_count()));
    if (run.default_prime())
        run.check_bool("family_equation_matches", sub.generic() == fix.family_triple_point);
    run.step_end();

    // the rational map defined by the surviving family
    run.step_begin("image");
    RingPtr target = make_ring(p, "x", 4);
    RationalMap nub(geo, target, sub.generators());
    Ideal delta_i = image(nub, ImageStrategy::Interpolation, 3, run.seed_for("image"));
    Ideal delta_e = image(nub, ImageStrategy::Elimination, 3, run.seed_for("image"));
    run.check_bool("strategy_agreement_cayley", ideal_equal(delta_i, delta_e));
    const Ideal& delta =
        (run.scenario().strategy == ImageStrategy::Elimination) ? delta_e : delta_i;
    run.check("image_dim_degree", "(2, 3)", fmt_dim_degree(hilbert_dim_degree(delta)));
    {
        bool cert = true;
        for (const auto& g : delta.gens())
            if (!apply_ring_map(nub.forms(), g).is_zero()) cert = false;
        run.check_bool("image_substitution_certificate", cert);
    }
    run.step_end();

    run.step_begin("nodes");
    Ideal sing = singular_locus(delta, 2);
    run.check("singular_locus_dim_degree", "(0, 4)", fmt_dim_degree(hilbert_dim_degree(sing)));
    RationalPoints nodes = rational_points_zero_dim(sing);
    run.check("nodes_count", "4",
              std::to_string(nodes.points.size()) +
                  (nodes.unresolved_degree ? " (+unresolved)" : ""));
    {
        bool all_cone = !nodes.points.empty();
        for (const auto& q : nodes.points)
            if (node_type(delta, q) != NodeType::QuadricConeNode) all_cone = false;
        run.check_bool("node_types_quadric_cone", all_cone);
    }
    run.step_end();

    // generic fiber: a plane cubic with a node at the triple point
    run.step_begin("fiber");
    Poly tetra = Poly::variable(geo, 0) * Poly::variable(geo, 1) * Poly::variable(geo, 2) *
                 Poly::variable(geo, 3);
    ProjPoint y;
    {
        Rng rng(run.seed_for("fiber-point"));
        bool found = false;
        for (int attempt = 0; attempt < 8 && !found; ++attempt) {
            auto xs = sample_points({identity_map(geo)}, 1, rng.next());
            const ProjPoint& x = xs[0];
            if (tetra.eval(x.coords()) == 0) continue; // on the tetrahedron
            bool on_r = false;
            for (const auto& r : fix.lines_r) {
                bool vanish = true;
                for (const auto& g : r.gens())
                    if (g.eval(x.coords()) != 0) vanish = false;
                on_r = on_r || vanish;
            }
            if (on_r || x == triple) continue;
            try {
                y = eval_map(nub, x);
                found = true;
            } catch (const BasePointError&) {
            }
        }
        if (!found) throw Error("code2: no generic fiber point within the retry budget");
    }
    Ideal gamma = fiber(nub, y);
    run.check("fiber_dim_degree", "(1, 3)", fmt_dim_degree(hilbert_dim_degree(gamma)));

    std::vector<Poly> gamma_linear;
    for (const auto& g : gamma.groebner(MonomialOrder::grevlex()).elems)
        if (g.degree() == 1) gamma_linear.push_back(g.with_ring(geo));
    run.check("fiber_plane_count", "1", std::to_string(gamma_linear.size()));
    if (gamma_linear.size() == 1) {
        Ideal alpha(geo, {gamma_linear[0]});
        run.check("fiber_plane_dim_degree", "(2, 1)", fmt_dim_degree(hilbert_dim_degree(alpha)));
    }
    {
        bool contains_p = true;
        for (const auto& g : gamma.gens())
            if (g.eval(triple.coords()) != 0) contains_p = false;
        run.check_bool("fiber_contains_p", contains_p);
    }
    {
        Ideal jm = jacobian_minors(gamma.gens(), 2);
        std::vector<Poly> gens = gamma.gens();
        for (const auto& m : jm.gens()) gens.push_back(m);
        Ideal singular_scheme = saturate(Ideal(geo, std::move(gens)), irrelevant_ideal(geo));
        run.check("fiber_singular_point_is_p", gb_tag(point_ideal(geo, triple)),
                  gb_tag(singular_scheme));
    }
    run.check("fiber_node_at_p", "node", to_string(node_type(gamma, triple)));
    {
        bool all_01 = true;
        for (std::size_t i = 0; i < 4 && all_01; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) {
                std::vector<Poly> gens = gamma.gens();
                gens.push_back(Poly::variable(geo, i));
                gens.push_back(Poly::variable(geo, j));
                auto dd = hilbert_dim_degree(Ideal(geo, std::move(gens)));
                if (dd != std::pair<int64_t, int64_t>{0, 1}) { all_01 = false; break; }
            }
        run.check("fiber_meets_edges", "(0, 1) x6", all_01 ? "(0, 1) x6" : "unexpected");
    }
    run.step_end();

    // the lines r_i from the synthetic construction match the fixed ideals
    run.step_begin("r_lines");
    {
        bool all_match = true;
        for (int i = 1; i <= 3; ++i) {
            // plane through p containing the edge {s_0 = s_i = 0},
            // then its intersection with the opposite edge
            std::vector<uint64_t> q(4, 0);
            q[0] = triple.coords()[0];
            q[static_cast<std::size_t>(i)] = triple.coords()[static_cast<std::size_t>(i)];
            ProjPoint cut(q, geo->blocks(), p);
            Ideal ri = line_through(geo, triple, cut);
            if (!ideal_equal(ri, fix.lines_r[static_cast<std::size_t>(i - 1)])) all_match = false;
        }
        run.check_bool("r_lines_match_construction", all_match);
    }
    run.step_end();

    // base locus: contained in the nine lines, nothing else of positive dim
    run.step_begin("base_locus");
    Ideal bl = base_locus(nub);
    std::vector<Ideal> nine;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            nine.emplace_back(geo, std::vector<Poly>{Poly::variable(geo, i),
                                                     Poly::variable(geo, j)});
    for (const auto& r : fix.lines_r) nine.push_back(r);
    {
        bool contained = true;
        for (const auto& line : nine)
            if (!contains(line, bl)) contained = false;
        run.check_bool("base_locus_in_nine_lines", contained);
    }
    {
        Ideal residual = bl;
        for (const auto& line : nine) residual = saturate(residual, line);
        int64_t dim = scheme_dimension(residual);
        run.check("base_locus_residual_dim", "<= 0", dim <= 0 ? "<= 0" : std::to_string(dim));
    }
    run.step_end();

    // the four faces and the four lines through p and the vertices contract
    // to the four nodes
    run.step_begin("contractions");
    {
        std::vector<ProjPoint> face_images;
        bool faces_ok = true;
        for (std::size_t i = 0; i < 4 && faces_ok; ++i) {
            std::vector<Poly> restricted;
            for (const auto& f : nub.forms()) restricted.push_back(f.eval_partial({{i, 0}}));
            ProjPoint img;
            if (!contracted_image(restricted, &img, p, nub.target())) {
                faces_ok = false;
                break;
            }
            face_images.push_back(img);
        }
        bool face_set_is_nodes = faces_ok && face_images.size() == 4;
        if (face_set_is_nodes) {
            std::vector<ProjPoint> sorted_faces = face_images;
            std::sort(sorted_faces.begin(), sorted_faces.end());
            face_set_is_nodes = (sorted_faces == nodes.points);
        }
        run.check_bool("faces_contracted_to_nodes", face_set_is_nodes);

        bool lines_ok = faces_ok;
        RingPtr uv = make_ring(p, "v", 2);
        for (std::size_t i = 0; i < 4 && lines_ok; ++i) {
            // the line joining the triple point and the vertex e_i
            std::vector<Poly> images;
            for (std::size_t jj = 0; jj < 4; ++jj) {
                Poly f = Poly::variable(uv, 0).scaled(triple.coords()[jj]);
                if (jj == i) f = f + Poly::variable(uv, 1);
                images.push_back(f);
            }
            std::vector<Poly> restricted;
            for (const auto& f : nub.forms()) restricted.push_back(apply_ring_map(images, f));
            ProjPoint img;
            if (!contracted_image(restricted, &img, p, nub.target()) || !(img == face_images[i]))
                lines_ok = false;
        }
        run.check_bool("lines_to_same_nodes", lines_ok);
    }
    run.step_end();

    // tangent cone of the generic member at the triple point, in the
    // coordinates moving the point to [0:0:0:1]
    run.step_begin("tangent_cone");
    std::vector<Poly> translation;
    for (std::size_t i = 0; i < famring->nvars(); ++i) translation.push_back(Poly::variable(famring, i));
    for (std::size_t j = 0; j < 3; ++j)
        translation[np + j] = Poly::variable(famring, np + j) - Poly::variable(famring, np + 3);
    Poly translated = apply_ring_map(translation, sub.generic());
    Poly affine = translated.eval_partial({{np + 3, 1}});
    std::vector<std::size_t> svars = {np, np + 1, np + 2};
    Poly cone = affine.lowest_form_in(svars);
    run.check("tangent_cone_degree", "3", std::to_string(cone.degree_in(svars)));
    if (run.default_prime())
        run.check_bool("tangent_cone_matches", cone == fix.cone_cubic.rename_into(famring));
    run.step_end();

    // base points of the cone system: the translated r_i on the plane s_3 = 0
    run.step_begin("cone_base_points");
    {
        std::vector<Poly> cone_gens = {Poly::variable(geo, 3)};
        for (std::size_t k : sub.param_indices()) {
            std::vector<std::pair<std::size_t, uint64_t>> unit;
            for (std::size_t other : sub.param_indices()) unit.push_back({other, other == k ? 1u : 0u});
            Poly ck = cone.eval_partial(unit);
            cone_gens.push_back(ck.rename_into(geo));
        }
        Ideal cone_base(geo, std::move(cone_gens));
        RationalPoints pts = rational_points_zero_dim(cone_base);
        std::vector<Poly> geo_translation;
        for (std::size_t i = 0; i < 3; ++i)
            geo_translation.push_back(Poly::variable(geo, i) - Poly::variable(geo, 3));
        geo_translation.push_back(Poly::variable(geo, 3));
        std::vector<ProjPoint> expected;
        for (const auto& r : fix.lines_r) {
            std::vector<Poly> gens = {Poly::variable(geo, 3)};
            for (const auto& g : r.gens()) gens.push_back(apply_ring_map(geo_translation, g));
            RationalPoints rp = rational_points_zero_dim(Ideal(geo, std::move(gens)));
            for (const auto& q : rp.points) expected.push_back(q);
        }
        std::sort(expected.begin(), expected.end());
        bool match = (pts.points == expected) && pts.points.size() == 3 &&
                     pts.unresolved_degree == 0;
        run.check_bool("cone_base_points_are_translated_r", match);
    }
    run.step_end();

    run.note("note.cayley_normal_form", "not-checked");
}

} // namespace projalg::detail
