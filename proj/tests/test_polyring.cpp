#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle_utils.hpp"
#include "projalg/polyring.hpp"
#include "projalg/rng.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace projalg;

namespace {
constexpr uint64_t P = 10000019;

RingPtr s_ring() { return make_ring(P, "s", 4); }
}

TEST_CASE("parse simple polynomials") {
    RingPtr r = s_ring();
    Poly f = parse_poly("s_0+s_3", r);
    CHECK(f.nterms() == 2);
    CHECK(f == Poly::variable(r, 0) + Poly::variable(r, 3));

    Poly g = parse_poly("2*s_0^2*s_1 - s_2", r);
    CHECK(g.degree() == 3);
    CHECK(g == Poly::variable(r, 0).pow(2) * Poly::variable(r, 1).scaled(2) - Poly::variable(r, 2));

    // coefficients reduce mod p
    CHECK(parse_poly("10000020*s_0", r) == Poly::variable(r, 0));
    CHECK(parse_poly("10000019*s_0", r).is_zero());
}

TEST_CASE("parse quadric under renaming") {
    RingPtr s6 = make_ring(P, "s", 6);
    RingPtr t6 = make_ring(P, "t", 6);
    Poly f = parse_poly("s_2*s_3 - s_0*s_5", s6);
    // renames by position through the exponent vectors
    std::vector<Poly> images;
    for (std::size_t i = 0; i < 6; ++i) images.push_back(Poly::variable(t6, i));
    CHECK(apply_ring_map(images, f) == parse_poly("t_2*t_3 - t_0*t_5", t6));
}

TEST_CASE("parse errors carry positions") {
    RingPtr r = s_ring();
    CHECK_THROWS_AS(parse_poly("x^(-1)", r), ParseError);
    CHECK_THROWS_AS(parse_poly("s_0^(2)", r), ParseError);
    CHECK_THROWS_AS(parse_poly("s_9+s_0", r), ParseError);
    CHECK_THROWS_AS(parse_poly("", r), ParseError);
    try {
        parse_poly("s_0+q_1", r);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("print round trip over the fixture corpus") {
    namespace fs = std::filesystem;
    int polys_seen = 0;
    for (const auto& entry : fs::directory_iterator(PROJALG_FIXTURES)) {
        const std::string path = entry.path().string();
        std::vector<Poly> polys;
        if (path.ends_with(".ideal")) {
            auto f = read_ideal_file_path(path);
            polys = f.polys;
        } else if (path.ends_with(".map")) {
            auto f = read_map_file_path(path);
            polys = f.forms;
        }
        for (const auto& g : polys) {
            ++polys_seen;
            CHECK(parse_poly(g.to_string(), g.ring()) == g);
        }
    }
    CHECK(polys_seen > 70); // the corpus covers every displayed polynomial
}

TEST_CASE("monomial order axioms") {
    Rng rng(99);
    std::vector<MonomialOrder> orders = {
        MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::elim(2),
        MonomialOrder::weighted({3, 1, 2, 1}), MonomialOrder::aux_graded()};
    for (const auto& ord : orders) {
        for (int trial = 0; trial < 200; ++trial) {
            Exponents a(4), b(4), c(4);
            for (int i = 0; i < 4; ++i) {
                a[static_cast<std::size_t>(i)] = static_cast<uint16_t>(rng.below(5));
                b[static_cast<std::size_t>(i)] = static_cast<uint16_t>(rng.below(5));
                c[static_cast<std::size_t>(i)] = static_cast<uint16_t>(rng.below(5));
            }
            // totality / antisymmetry
            CHECK(ord.compare(a, b) == -ord.compare(b, a));
            CHECK((ord.compare(a, b) == 0) == (a == b));
            // multiplicativity
            CHECK(ord.compare(exp_mul(a, c), exp_mul(b, c)) == ord.compare(a, b));
            // 1 is minimal
            Exponents one(4, 0);
            if (a != one) CHECK(ord.compare(a, one) > 0);
        }
    }
}

TEST_CASE("specific order comparisons") {
    // grevlex in 3 vars: x^2 > x y
    MonomialOrder g = MonomialOrder::grevlex();
    CHECK(g.compare({2, 0, 0}, {1, 1, 0}) > 0);
    // lex: x > y^2
    MonomialOrder l = MonomialOrder::lex();
    CHECK(l.compare({1, 0}, {0, 2}) > 0);
    // elimination with first block {x}: x > y^5
    MonomialOrder e = MonomialOrder::elim(1);
    CHECK(e.compare({1, 0}, {0, 5}) > 0);
    CHECK_THROWS_AS(g.compare({1, 0}, {1, 0, 0}), Error);
}

TEST_CASE("ring axioms on random polynomials") {
    RingPtr r = make_ring(P, "x", 3);
    Rng rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
        Poly f = testing::random_poly(r, rng, 3, false);
        Poly g = testing::random_poly(r, rng, 3, false);
        Poly h = testing::random_poly(r, rng, 2, false);
        CHECK(f * g == g * f);
        CHECK((f + g) * h == f * h + g * h);
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * Poly::constant(r, uint64_t{1}) == f);
        CHECK((f - f).is_zero());
    }
}

TEST_CASE("ring map composition") {
    RingPtr a = make_ring(P, "x", 2);
    RingPtr b = make_ring(P, "y", 2);
    RingPtr c = make_ring(P, "z", 2);
    Rng rng(555);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Poly> f_images = {testing::random_poly(b, rng, 2, false),
                                      testing::random_poly(b, rng, 2, false)};
        std::vector<Poly> g_images = {testing::random_poly(c, rng, 2, false),
                                      testing::random_poly(c, rng, 2, false)};
        Poly h = testing::random_poly(a, rng, 2, false);
        // (g o f)(h) = g(f(h))
        std::vector<Poly> composed = {apply_ring_map(g_images, f_images[0]),
                                      apply_ring_map(g_images, f_images[1])};
        CHECK(apply_ring_map(composed, h) == apply_ring_map(g_images, apply_ring_map(f_images, h)));
    }
    // identity images leave the polynomial unchanged
    Poly h = testing::random_poly(a, rng, 3, false);
    CHECK(apply_ring_map({Poly::variable(a, 0), Poly::variable(a, 1)}, h) == h);
    CHECK_THROWS_AS(apply_ring_map({Poly::variable(a, 0)}, h), Error);
}

TEST_CASE("translation substitution example") {
    RingPtr r = s_ring();
    Poly f = parse_poly("s_0^2-s_3^2", r);
    std::vector<Poly> tr;
    for (std::size_t i = 0; i < 4; ++i) {
        Poly v = Poly::variable(r, i);
        if (i < 3) v = v - Poly::variable(r, 3);
        tr.push_back(v);
    }
    CHECK(apply_ring_map(tr, f) == parse_poly("s_0^2-2*s_0*s_3", r));
}

TEST_CASE("lowest form") {
    RingPtr r = make_ring(P, "x", 2);
    Poly f = parse_poly("x_1^2-x_0^2-x_0^3", r);
    CHECK(f.lowest_form() == parse_poly("x_1^2-x_0^2", r));
    Poly hom = parse_poly("x_0^2+x_0*x_1", r);
    CHECK(hom.lowest_form() == hom);
    CHECK(parse_poly("1+x_0", r).lowest_form() == Poly::constant(r, uint64_t{1}));
    CHECK_THROWS_AS(Poly::zero(r).lowest_form(), Error);

    Rng rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        Poly a = testing::random_poly(r, rng, 3, false);
        Poly b = testing::random_poly(r, rng, 3, false);
        if (a.is_zero() || b.is_zero()) continue;
        Poly prod = a.lowest_form() * b.lowest_form();
        if (!prod.is_zero()) CHECK((a * b).lowest_form() == prod);
    }
}

TEST_CASE("parametric family basics") {
    // conics in P2 with a double point at a general point: 6 -> 3 parameters
    auto monos = monomials_of_degree(3, 2, MonomialOrder::grevlex());
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < monos.size(); ++i) vars.push_back("c_" + std::to_string(i));
    vars.insert(vars.end(), {"u_0", "u_1", "u_2"});
    RingPtr ring = Ring::make(P, vars, MonomialOrder::grevlex(), {monos.size(), 3});
    std::vector<Term> ts;
    for (std::size_t i = 0; i < monos.size(); ++i) {
        Term t{Exponents(monos.size() + 3, 0), 1};
        t.e[i] = 1;
        for (int k = 0; k < 3; ++k)
            t.e[monos.size() + static_cast<std::size_t>(k)] = monos[i][static_cast<std::size_t>(k)];
        ts.push_back(std::move(t));
    }
    ParamFamily fam = ParamFamily::make(ring, Poly::from_terms(ring, std::move(ts)));
    CHECK(fam.param_count() == 6);
    CHECK(fam.generators().size() == 6);
    // ill-formed: quadratic in a parameter
    Poly bad = Poly::variable(ring, 0) * Poly::variable(ring, 0);
    CHECK_THROWS_AS(ParamFamily::make(ring, bad), Error);
}

TEST_CASE("ideal file write and read round trip") {
    RingPtr r = s_ring();
    std::vector<Poly> polys = {parse_poly("s_0^2-s_1*s_2", r), parse_poly("s_3", r)};
    std::ostringstream out;
    write_ideal_file(out, r, polys);
    std::istringstream in(out.str());
    IdealFile f = read_ideal_file(in);
    CHECK(f.ring->vars() == r->vars());
    REQUIRE(f.polys.size() == 2);
    CHECK(f.polys[0] == polys[0].with_ring(f.ring));
    CHECK(f.polys[1] == polys[1].with_ring(f.ring));
}

TEST_CASE("projective point canonicalization") {
    ProjPoint a({0, 3, 6}, {3}, P);
    CHECK(a.coords() == std::vector<uint64_t>{0, 1, mulmod(6, invmod(3, P), P)});
    CHECK(a.to_string().substr(0, 3) == "[0:");
    CHECK_THROWS_AS(ProjPoint({0, 0, 0}, {3}, P), Error);
    // per-block canonicalization
    ProjPoint b({2, 4, 0, 5}, {2, 2}, P);
    CHECK(b.coords()[0] == 1);
    CHECK(b.coords()[2] == 0);
    CHECK(b.coords()[3] == 1);
}
