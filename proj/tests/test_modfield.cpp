#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "projalg/modfield.hpp"
#include "projalg/rng.hpp"

using namespace projalg;

namespace {
constexpr uint64_t P = 10000019;
}

TEST_CASE("inverse examples") {
    CHECK(invmod(1, P) == 1);
    CHECK(invmod(P - 1, P) == P - 1); // (-1)^2 = 1
    CHECK(invmod(2, P) == 5000010);   // (p+1)/2
    CHECK_THROWS_AS(invmod(0, P), Error);
}

TEST_CASE("inverse group properties") {
    Rng rng(501);
    for (int i = 0; i < 200; ++i) {
        uint64_t a = 1 + rng.below(P - 1);
        uint64_t b = 1 + rng.below(P - 1);
        CHECK(mulmod(a, invmod(a, P), P) == 1);
        CHECK(invmod(mulmod(a, b, P), P) == mulmod(invmod(b, P), invmod(a, P), P));
        CHECK(invmod(invmod(a, P), P) == a);
    }
}

TEST_CASE("field element arithmetic") {
    Fp a(7, P), b(P - 3, P);
    CHECK((a + b).value() == 4);
    CHECK((a * b).value() == mulmod(7, P - 3, P));
    CHECK((a - a).is_zero());
    CHECK((a / a).value() == 1);
    CHECK(Fp::from_int(-1, P).value() == P - 1);
    CHECK_THROWS_AS(a + Fp(1, 65537), Error);
}

TEST_CASE("row reduce identity and zero") {
    FpMatrix id(4, 4, P);
    for (int i = 0; i < 4; ++i) id.at(i, i) = 1;
    auto r = row_reduce(id);
    CHECK(r.rank() == 4);
    CHECK(r.kernel.empty());

    FpMatrix zero(3, 5, P);
    auto z = row_reduce(zero);
    CHECK(z.rank() == 0);
    REQUIRE(z.kernel.size() == 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(z.kernel[i][j] == (i == j ? 1u : 0u));
}

TEST_CASE("row reduce is idempotent and kernel annihilates") {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t rows = 1 + rng.below(6), cols = 1 + rng.below(6);
        FpMatrix m(rows, cols, P);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rng.below(P);
        auto r = row_reduce(m);
        auto r2 = row_reduce(r.reduced);
        CHECK(r2.reduced == r.reduced);
        CHECK(r2.rank() == r.rank());
        CHECK(r.rank() + r.kernel.size() == cols);
        for (const auto& k : r.kernel) {
            for (std::size_t i = 0; i < rows; ++i) {
                uint64_t acc = 0;
                for (std::size_t j = 0; j < cols; ++j)
                    acc = (acc + m.at(i, j) * k[j]) % P;
                CHECK(acc == 0);
            }
        }
        // determinism: bit-identical recomputation
        auto r3 = row_reduce(m);
        CHECK(r3.reduced == r.reduced);
        CHECK(r3.kernel == r.kernel);
    }
}

TEST_CASE("kernel echelon parametrization") {
    // x + 2y + 3z = 0: free columns y, z in ascending order
    FpMatrix m(1, 3, P);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(0, 2) = 3;
    auto r = row_reduce(m);
    REQUIRE(r.kernel.size() == 2);
    CHECK(r.kernel[0] == std::vector<uint64_t>{P - 2, 1, 0});
    CHECK(r.kernel[1] == std::vector<uint64_t>{P - 3, 0, 1});
}
