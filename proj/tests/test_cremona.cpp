#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "projalg/cremona.hpp"
#include "projalg/rng.hpp"

using namespace projalg;

namespace {

PlaneSystem sextic_start() {
    PlaneSystem l;
    l.degree = 6;
    l.set_mult("p", 3);
    for (std::string a : {"A01", "A02", "A03", "A12", "A13", "A23"}) l.set_mult(a, 2);
    return l;
}

std::map<std::string, std::string> step1_relabel() {
    return {{"p", "p'"},    {"A12", "B12"}, {"A03", "B03"}, {"A01", "B01"},
            {"A02", "B02"}, {"A13", "B13"}, {"A23", "B23"}};
}

} // namespace

TEST_CASE("quadratic transform of the sextic system") {
    PlaneSystem l = sextic_start();
    PlaneSystem q5 = quadratic_transform(l, {"p", "A12", "A03"}, step1_relabel());
    CHECK(q5.degree == 5);
    CHECK(q5.mult_of("p'") == 2);
    CHECK(q5.mult_of("B12") == 1);
    CHECK(q5.mult_of("B03") == 1);
    CHECK(q5.mult_of("B23") == 2);
    CHECK(q5.mult_of("B13") == 2);
    CHECK(q5.mult_of("B01") == 2);
    CHECK(q5.mult_of("B02") == 2);

    PlaneSystem q4 = quadratic_transform(
        q5, {"p'", "B23", "B01"},
        {{"p'", "p''"}, {"B23", "C23"}, {"B01", "C01"}, {"B02", "C02"},
         {"B03", "C03"}, {"B12", "C12"}, {"B13", "C13"}});
    CHECK(q4.degree == 4);
    CHECK(q4.mult_of("C13") == 2);
    CHECK(q4.mult_of("C02") == 2);
    CHECK(q4.mult_of("p''") == 1);
    CHECK(q4.mult_of("C23") == 1);
    CHECK(q4.mult_of("C12") == 1);
    CHECK(q4.mult_of("C01") == 1);
    CHECK(q4.mult_of("C03") == 1);

    CHECK_THROWS_AS(quadratic_transform(l, {"p", "p", "A03"}, {}), Error);
}

TEST_CASE("lines map to conics through the fundamental points") {
    PlaneSystem line;
    line.degree = 1;
    PlaneSystem conic = quadratic_transform(line, {"a", "b", "c"}, {});
    CHECK(conic.degree == 2);
    CHECK(conic.mult_of("a") == 1);
    CHECK(conic.mult_of("b") == 1);
    CHECK(conic.mult_of("c") == 1);
}

TEST_CASE("transform is an involution up to relabeling") {
    Rng rng(808);
    for (int trial = 0; trial < 100; ++trial) {
        PlaneSystem l;
        int64_t ma = static_cast<int64_t>(rng.below(4));
        int64_t mb = static_cast<int64_t>(rng.below(4));
        int64_t mc = static_cast<int64_t>(rng.below(4));
        l.degree = ma + mb + mc + 1 + static_cast<int64_t>(rng.below(4));
        l.set_mult("a", ma);
        l.set_mult("b", mb);
        l.set_mult("c", mc);
        l.set_mult("d", static_cast<int64_t>(rng.below(3)));
        PlaneSystem once = quadratic_transform(l, {"a", "b", "c"}, {});
        PlaneSystem twice = quadratic_transform(once, {"a", "b", "c"}, {});
        CHECK(twice.degree == l.degree);
        for (const auto& [label, m] : l.mults) CHECK(twice.mult_of(label) == m);

        // numerical invariants survive the transformation
        CHECK(system_invariants(once) == system_invariants(l));
    }
}

TEST_CASE("system invariants") {
    PlaneSystem s = sextic_start();
    CHECK(system_invariants(s) == SystemInvariants{3, 3, 1});
    PlaneSystem cubic;
    cubic.degree = 3;
    for (std::string d : {"D01", "D02", "D03", "D12", "D13", "D23"}) cubic.set_mult(d, 1);
    CHECK(system_invariants(cubic) == SystemInvariants{3, 3, 1});
    PlaneSystem plain;
    plain.degree = 5;
    CHECK(system_invariants(plain) == SystemInvariants{25, 15, 6});
}

TEST_CASE("chain runner and script parser") {
    const std::string script =
        "# the three-step descent\n"
        "centers: p,A12,A03 ; relabel: p=p',A12=B12,A03=B03,A01=B01,A02=B02,A13=B13,A23=B23\n"
        "centers: p',B23,B01 ; relabel: p'=p'',B23=C23,B01=C01,B02=C02,B03=C03,B12=C12,B13=C13\n"
        "centers: p'',C13,C02 ; relabel: p''=p''',C13=D13,C02=D02,C01=D01,C03=D03,C12=D12,C23=D23\n";
    auto steps = parse_chain_script(script);
    REQUIRE(steps.size() == 3);
    CHECK(steps[0].centers == std::array<std::string, 3>{"p", "A12", "A03"});
    CHECK(steps[1].relabel.at("B23") == "C23");

    ChainResult r = run_chain(sextic_start(), steps);
    REQUIRE(r.trace.size() == 4);
    CHECK(r.trace[0].degree == 6);
    CHECK(r.trace[1].degree == 5);
    CHECK(r.trace[2].degree == 4);
    CHECK(r.final.degree == 3);
    CHECK(r.final.mult_of("p'''") == 0);
    for (std::string d : {"D01", "D02", "D03", "D12", "D13", "D23"})
        CHECK(r.final.mult_of(d) == 1);
    for (const auto& sys : r.trace)
        CHECK(system_invariants(sys) == SystemInvariants{3, 3, 1});

    // empty step list leaves the system unchanged
    ChainResult id = run_chain(sextic_start(), {});
    CHECK(id.final.to_string() == sextic_start().to_string());

    CHECK_THROWS_AS(parse_chain_script("centers: a,b\n"), Error);
    CHECK_THROWS_AS(parse_chain_script("centers: a,b,c relabel: x=y\n"), Error);
}

TEST_CASE("divisor class arithmetic") {
    DivisorClass sigma;
    sigma["H"] = 6;
    sigma["Ep"] = -3;
    for (std::string e : {"E0", "E1", "E2", "E3"}) sigma[e] = -3;
    for (std::string e : {"Ep1", "Ep2", "Ep3", "Epp1", "Epp2", "Epp3"}) sigma[e] = -2;
    for (std::string e : {"F01", "F02", "F03", "F12", "F13", "F23"}) sigma[e] = -2;
    for (std::string e : {"R1", "R2", "R3"}) sigma[e] = -1;

    DivisorClass k;
    k["H"] = -4;
    k["Ep"] = 2;
    for (std::string e : {"E0", "E1", "E2", "E3"}) k[e] = 2;
    for (std::string e : {"Ep1", "Ep2", "Ep3", "Epp1", "Epp2", "Epp3"}) k[e] = 2;
    for (std::string e : {"F01", "F02", "F03", "F12", "F13", "F23"}) k[e] = 1;
    for (std::string e : {"R1", "R2", "R3"}) k[e] = 1;

    DivisorClass sum = k + sigma;
    CHECK(sum.at("H") == 2);
    CHECK(sum.at("Ep") == -1);
    CHECK(sum.at("E2") == -1);
    CHECK(sum.at("Ep1") == 0);
    CHECK(sum.at("Epp3") == 0);
    CHECK(sum.at("F13") == -1);
    CHECK(sum.at("R2") == 0);

    DivisorClass zero;
    CHECK(sigma + zero == sigma);
    CHECK(sigma - sigma == zero);
    CHECK(DivisorClass::unit("H").scaled(2).at("H") == 2);
    CHECK_THROWS_AS(zero["X99"], Error);
}
