#include <doctest.h>

#include "grm/bigint.hpp"

using namespace grm;

TEST_SUITE("bigint") {

TEST_CASE("decimal round trips and arithmetic") {
    BigUint a(1234567890123456789ull);
    CHECK(a.to_decimal() == "1234567890123456789");
    BigUint b = a * a;
    CHECK(b.to_decimal() == "1524157875323883675019051998750190521");
    BigUint c = b;
    c -= a;
    c += a;
    CHECK(c == b);
    c.mul_small(1000000007);
    c.div_small(1000000007);
    CHECK(c == b);
}

TEST_CASE("binomial values") {
    CHECK(BigUint::binomial(6, 2).to_decimal() == "15");
    CHECK(BigUint::binomial(52, 5).to_decimal() == "2598960");
    // C(100, 50), a 30-digit classic
    CHECK(BigUint::binomial(100, 50).to_decimal() == "100891344545564193334812497256");
    CHECK(BigUint::binomial(3, 9).is_zero());
    // Pascal identity on a band
    for (u64 n = 1; n < 40; ++n) {
        for (u64 k = 1; k <= n; ++k) {
            BigUint lhs = BigUint::binomial(n, k);
            BigUint rhs = BigUint::binomial(n - 1, k - 1) + BigUint::binomial(n - 1, k);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("divmod and gcd") {
    BigUint n = BigUint::binomial(200, 71);
    BigUint d(99991);
    auto [quot, rem] = BigUint::divmod(n, d);
    BigUint back = quot * d;
    back += rem;
    CHECK(back == n);
    CHECK(rem < d);

    BigUint a = BigUint(2 * 3 * 5 * 7) * BigUint(1000003);
    BigUint b = BigUint(3 * 7 * 11) * BigUint(1000003);
    BigUint g = big_gcd(a, b);
    CHECK(g.to_decimal() == std::to_string(21ull * 1000003));
}

TEST_CASE("decimal_ratio") {
    CHECK(decimal_ratio(BigUint(2), BigUint(5), 4) == "0.4000");
    CHECK(decimal_ratio(BigUint(1), BigUint(3), 6) == "0.333333");
    CHECK(decimal_ratio(BigUint(7), BigUint(7), 2) == "1.00");
    double x = ratio_to_double(BigUint(1), BigUint(8));
    CHECK(x == doctest::Approx(0.125).epsilon(1e-12));
}

}
