#include "doctest.h"

#include "cechlap/rational.hpp"

using namespace cechlap;

TEST_CASE("decimal literals parse exactly") {
    CHECK(rat_from_decimal("0.12") == Rat(12, 100));
    CHECK(rat_from_decimal("1.0") == Rat(1));
    CHECK(rat_from_decimal("-3.5e-2") == Rat(-35, 1000));
    CHECK(rat_from_decimal("2e3") == Rat(2000));
    CHECK_THROWS_AS(rat_from_decimal("abc"), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_decimal("1.2.3"), std::invalid_argument);
}

TEST_CASE("doubles convert to their exact dyadic value") {
    CHECK(rat_from_double(0.5) == Rat(1, 2));
    CHECK(rat_from_double(3.0) == Rat(3));
    CHECK(rat_from_double(0.1) != Rat(1, 10)); // 0.1 is not a dyadic rational
    CHECK(to_double(rat_from_double(0.1)) == 0.1);
}

TEST_CASE("bareiss determinant is exact") {
    std::vector<std::vector<BigInt>> m = {{BigInt(1), BigInt(-1), BigInt(0)},
                                          {BigInt(-1), BigInt(2), BigInt(-1)},
                                          {BigInt(0), BigInt(-1), BigInt(2)}};
    CHECK(bareiss_determinant(m) == 1);
    std::vector<std::vector<BigInt>> sing = {{BigInt(1), BigInt(2)}, {BigInt(2), BigInt(4)}};
    CHECK(bareiss_determinant(sing) == 0);
    CHECK(bareiss_determinant({}) == 1);
}

TEST_CASE("rational rank and solve") {
    RatMatrix a(3, 2);
    a(0, 0) = 1; a(1, 1) = 1; a(2, 0) = 1; a(2, 1) = 1;
    CHECK(rational_rank(a) == 2);

    RatMatrix p(2, 2), b(2, 1);
    p(0, 0) = 2; p(0, 1) = 1; p(1, 0) = 1; p(1, 1) = 3;
    b(0, 0) = 1; b(1, 0) = 0;
    RatMatrix x = rational_solve(p, b);
    CHECK(x(0, 0) == Rat(3, 5));
    CHECK(x(1, 0) == Rat(-1, 5));
}
