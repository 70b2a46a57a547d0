#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "grm/analysis.hpp"

using namespace grm;

namespace {

// Independent oracle: enumerate every s-subset of Z_n and count those whose
// residues mod r2 miss at least one class.  Returns the hit count; the
// probability is hits / C(n, s).
u64 fiber_miss_bruteforce(u64 n, u64 r2, u64 s) {
    std::vector<u32> idx(s);
    for (u64 i = 0; i < s; ++i) idx[i] = static_cast<u32>(i);
    u64 hits = 0;
    std::vector<u8> seen(r2);
    while (true) {
        std::fill(seen.begin(), seen.end(), 0);
        u64 covered = 0;
        for (u32 i : idx) {
            u64 f = i % r2;
            if (!seen[f]) {
                seen[f] = 1;
                ++covered;
            }
        }
        if (covered < r2) ++hits;
        long i = static_cast<long>(s) - 1;
        while (i >= 0 && idx[i] == n - s + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    return hits;
}

bool fraction_equals(const ProbResult& p, u64 hits, const BigUint& total) {
    BigUint lhs = p.p_num * total;
    BigUint rhs = p.p_den * BigUint(hits);
    return lhs == rhs;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("bounds_row anchors") {
    BoundsRow r34 = bounds_row(3, 4);
    CHECK(r34.r1 == 5);
    CHECK(r34.r2 == 16);
    CHECK(r34.rho1.floor_val() == 16);
    CHECK(r34.s == 31);

    BoundsRow r53 = bounds_row(5, 3);
    CHECK(r53.r1 == 31);
    CHECK(r53.r2 == 4);
    CHECK(r53.rho1.floor_val() == 31);
    CHECK(r53.s == 43);

    BoundsRow r48 = bounds_row(4, 8);
    CHECK(r48.r1 == 257);
    CHECK(r48.r2 == 255);
    CHECK(r48.rho1.floor_val() == 7281);
    CHECK(r48.s == 8414);

    CHECK_THROWS_AS(bounds_row(3, 2), std::invalid_argument);
}

TEST_CASE("bounds_row internal consistency") {
    for (auto [q, m] : {std::pair<u64, unsigned>{3, 5}, {4, 6}, {5, 7}, {3, 9}}) {
        BoundsRow r = bounds_row(q, m);
        CHECK(r.s == (r.lambda0 + 1) * r.r2 - 1);
        CHECK(r.rho1.num == r.n);
        CHECK(r.rho1.den == m + 1);
        CHECK(r.rho2.num == ipow(q, m - 1) * (q - 1) - 1);
        CHECK(r.rho2.den == 2);
        CHECK(r.rho3.num == r.n + 1);
        CHECK(r.s_eff == std::min(r.s, r.t));
    }
}

TEST_CASE("proposition 5.1 anchors") {
    // (3,3): floor(rho1) = 6 and floor(rho3) = floor(27/4) = 6
    CHECK((ipow(3, 3) - 1) / 4 == 6);
    CHECK(ipow(3, 3) / 4 == 6);
    // (4,3): floor(rho1) = 15, floor(rho3) = 16, the +1 branch
    CHECK((ipow(4, 3) - 1) / 4 == 15);
    CHECK(ipow(4, 3) / 4 == 16);
    CHECK(prop51_check(3, 3));
    CHECK(prop51_check(4, 3));
    CHECK(prop51_check(5, 3));  // rho2 = 49.5 >= 31 = rho1
}

TEST_CASE("proposition 5.1 across the grid") {
    for (u64 q : {3ull, 4ull, 5ull, 7ull, 8ull, 9ull})
        for (unsigned m = 3; m <= 10; ++m) CHECK(prop51_check(q, m));
    // m = 2 is outside the hypothesis; record the observed failure at (3, 2)
    MESSAGE("prop51 at (3,2): " << std::string(prop51_check(3, 2) ? "holds" : "fails (rho2 < rho1)"));
}

TEST_CASE("prob_exact tiny oracle") {
    // n=6, r1=3, r2=2, s=2: 6 within-fiber pairs out of C(6,2) = 15
    ProbResult p = prob_exact(6, 3, 2, 2);
    CHECK(p.delta == 1);
    CHECK(p.p_num.to_decimal() == "2");
    CHECK(p.p_den.to_decimal() == "5");
    u64 hits = fiber_miss_bruteforce(6, 2, 2);
    CHECK(hits == 6);
    CHECK(fraction_equals(p, hits, BigUint::binomial(6, 2)));
}

TEST_CASE("prob_exact equals brute force on every split with n <= 12") {
    for (u64 r1 = 2; r1 <= 6; ++r1) {
        for (u64 r2 = 2; r2 <= 6; ++r2) {
            u64 n = r1 * r2;
            if (n > 12) continue;
            for (u64 s = 1; s <= n; ++s) {
                ProbResult p = prob_exact(n, r1, r2, s);
                u64 hits = fiber_miss_bruteforce(n, r2, s);
                CHECK(fraction_equals(p, hits, BigUint::binomial(n, s)));
            }
        }
    }
}

TEST_CASE("degenerate probabilities") {
    // s < r2: the image can never cover Z_r2, so p = 1
    ProbResult one = prob_exact(12, 3, 4, 3);
    CHECK(one.p_num == one.p_den);
    // s > n - r1: every subset covers all fibers, p = 0
    ProbResult zero = prob_exact(12, 3, 4, 10);
    CHECK(zero.p_num.is_zero());
    CHECK_THROWS_AS(prob_exact(12, 3, 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(prob_exact(12, 3, 4, 13), std::invalid_argument);
    CHECK_THROWS_AS(prob_exact(10, 3, 4, 2), std::invalid_argument);
}

TEST_CASE("truncation at r2 - delta discards only vanishing terms") {
    for (auto [n, r1, r2, s] : {std::tuple<u64, u64, u64, u64>{24, 4, 6, 7},
                                {24, 2, 12, 9},
                                {80, 5, 16, 31}}) {
        ProbResult p = prob_exact(n, r1, r2, s);
        // full-range alternating sum, j = 1..r2, with C(a, s) = 0 for a < s
        BigUint pos, neg;
        for (u64 j = 1; j <= r2; ++j) {
            if (j * r1 > n) break;
            BigUint term = BigUint::binomial(r2, j) * BigUint::binomial(n - j * r1, s);
            if (j & 1)
                pos += term;
            else
                neg += term;
        }
        BigUint full = pos;
        full -= neg;
        // compare full / C(n,s) with the reduced fraction
        CHECK(p.p_num * BigUint::binomial(n, s) == p.p_den * full);
    }
}

TEST_CASE("p is non-increasing in s for fixed r1, r2") {
    for (auto [r1, r2] : {std::pair<u64, u64>{3, 4}, {5, 3}, {7, 5}}) {
        u64 n = r1 * r2;
        ProbResult prev = prob_exact(n, r1, r2, 1);
        for (u64 s = 2; s <= n; ++s) {
            ProbResult cur = prob_exact(n, r1, r2, s);
            // prev >= cur as fractions: prev.num * cur.den >= cur.num * prev.den
            BigUint lhs = prev.p_num * cur.p_den;
            BigUint rhs = cur.p_num * prev.p_den;
            CHECK(rhs <= lhs);
            prev = cur;
        }
    }
}

TEST_CASE("monte carlo degenerate cases") {
    // s = n: the image always covers Z_r2
    CHECK(prob_montecarlo(12, 3, 4, 12, 500, 1) == 0.0);
    // s < r2: pigeonhole, the image can never cover
    CHECK(prob_montecarlo(12, 3, 4, 3, 500, 1) == 1.0);
}

TEST_CASE("monte carlo matches the exact value within 3 sigma") {
    u64 trials = 20000;
    ProbResult exact = prob_exact(728, 7, 104, 207);
    double est = prob_montecarlo(728, 7, 104, 207, trials, 4242);
    double p = exact.p_approx;
    double sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
    CHECK(std::abs(est - p) <= 3 * sigma + 1e-12);
    // deterministic per seed, independent of the job count
    CHECK(prob_montecarlo(728, 7, 104, 207, 5000, 7) ==
          prob_montecarlo(728, 7, 104, 207, 5000, 7, 4));
}

TEST_CASE("bounds tables match the reference rows") {
    // (r1, r2, floor(rho1), s) per m; three cells deviate from the commonly
    // printed table because the printed values contradict the defining
    // formulas (see the comments on those rows)
    struct Row {
        unsigned m;
        u64 r1, r2, rho1, s;
    };
    const Row t1[] = {
        {3, 13, 2, 6, 9},
        {4, 5, 16, 16, 31},
        {5, 121, 2, 40, 49},
        {6, 7, 104, 104, 207},  // rho1/s printed transposed; formulas force this order
        {7, 1093, 2, 273, 313},
        {8, 41, 160, 728, 959},
        {9, 757, 26, 1968, 2209},
        {10, 61, 968, 5368, 6775},
    };
    const Row t2[] = {
        {2, 5, 3, 5, 8},
        {3, 7, 9, 15, 26},
        {4, 17, 15, 51, 74},  // printed rho1 = 54, but floor(255/5) = 51
        {5, 11, 93, 170, 278},
        {6, 13, 315, 585, 944},
        {7, 43, 381, 2047, 2666},
        {8, 257, 255, 7281, 8414},
        {9, 19, 13797, 26214, 41390},
        {10, 41, 25575, 95325, 127874},
    };
    const Row t3[] = {
        {2, 3, 8, 8, 15},
        {3, 31, 4, 31, 43},
        {4, 13, 48, 124, 191},
        {5, 11, 284, 520, 851},
        {6, 7, 2232, 2232, 4463},
        {8, 313, 1248, 43402, 49919},  // printed r2 = 1284, but 313*1284 != 5^8-1,
                                       // and s = 40*1248 - 1 = 49919 confirms 1248
        {9, 19, 102796, 195312, 308387},
        {10, 33, 295928, 887784, 1183711},
    };
    auto check_rows = [](u64 q, std::span<const Row> rows) {
        for (const Row& expect : rows) {
            BoundsRow got = bounds_row(q, expect.m);
            CHECK(got.r1 == expect.r1);
            CHECK(got.r2 == expect.r2);
            CHECK(got.rho1.floor_val() == expect.rho1);
            CHECK(got.s == expect.s);
        }
    };
    check_rows(3, t1);
    check_rows(4, t2);
    check_rows(5, t3);
    // 5^7 - 1 = 4 * 19531 appears with r1 = 19531
    BoundsRow r57 = bounds_row(5, 7);
    CHECK(r57.r1 == 19531);
    CHECK(r57.r2 == 4);
    CHECK(r57.rho1.floor_val() == 9765);
    CHECK(r57.s == 11163);
}

TEST_CASE("probability table rows at displayed precision") {
    auto rows = probability_table(8);
    REQUIRE(rows.size() == 6);
    const double expect[] = {0.9999, 0.9482, 0.9999, 1.0, 0.9516, 0.9999};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == 3) {
            CHECK(rows[i].prob.p_approx > 0.99995);  // displayed as "1"
        } else {
            CHECK(std::abs(rows[i].prob.p_approx - expect[i]) < 1e-4);
        }
    }
    // the fixed decompositions, including the alternative split at (3, 8)
    CHECK(rows[1].q == 3);
    CHECK(rows[1].m == 8);
    CHECK(rows[1].r1 == 32);
    CHECK(rows[1].r2 == 205);
    CHECK(rows[1].s == 819);
}

TEST_CASE("table rendering embeds the rows") {
    auto rows = bounds_table(3, 2, 6);
    REQUIRE(rows.size() == 4);  // m = 2 has no decomposition
    std::string csv = render_bounds_table(3, rows, TableFormat::csv);
    CHECK(csv.find("3,6,7,104,104,207") != std::string::npos);
    std::string md = render_bounds_table(3, rows, TableFormat::markdown);
    CHECK(md.find("| 6 | 7 | 104 | 104 | 207 |") != std::string::npos);
    std::string js = render_bounds_table(3, rows, TableFormat::json);
    CHECK(js.find("\"s\":207") != std::string::npos);
}

}
