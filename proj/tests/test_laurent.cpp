#include "hhh/laurent.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace hhh;

TEST_CASE("laurent arithmetic and rendering") {
    Laurent p = Laurent::mono(2, rat(1)) + Laurent::mono(-2, rat(1)) + Laurent::constant(rat(-2));
    CHECK(p.str() == "q^-2 - 2 + q^2");
    CHECK(p.bar() == p);
    Laurent q = Laurent::mono(1, rat(1));
    CHECK((q * q.bar()) == Laurent::one());
    CHECK((p - p).is_zero_poly());
}

TEST_CASE("bivariate laurent division by x^k - 1") {
    // (a^2 - 1)*(q^2*a^4 + 3) divides back exactly
    Laurent2 f = Laurent2::mono(2, 4, rat(1)) + Laurent2::mono(0, 0, rat(3));
    Laurent2 n = f * cyclo_factor(1, 2);
    auto g = divide_exact(n, 1, 2);
    REQUIRE(g.has_value());
    CHECK(*g == f);

    // q^2*a - 1 is not divisible by a^2 - 1
    Laurent2 bad = Laurent2::mono(2, 1, rat(1)) - Laurent2::one();
    CHECK(!divide_exact(bad, 1, 2).has_value());

    // division works on negative exponent ranges too
    Laurent2 h = Laurent2::mono(-3, -2, rat(2)) + Laurent2::mono(0, -5, rat(-1, 3));
    Laurent2 n2 = h * cyclo_factor(0, 2);
    auto g2 = divide_exact(n2, 0, 2);
    REQUIRE(g2.has_value());
    CHECK(*g2 == h);
}

TEST_CASE("monomial ratio detection") {
    Laurent2 base = Laurent2::mono(0, 0, rat(1)) + Laurent2::mono(4, 0, rat(1)) +
                    Laurent2::mono(4, 1, rat(1));
    Laurent2 scaled = base * Laurent2::mono(-2, 3, rat(-1));
    auto f = monomial_ratio(scaled, base);
    REQUIRE(f.has_value());
    CHECK(*f == std::make_tuple(-1, -2, 3));

    Laurent2 other = base + Laurent2::mono(1, 1, rat(1));
    CHECK(!monomial_ratio(other, base).has_value());
}
