#include "grm/infoset.hpp"

#include <algorithm>
#include <stdexcept>

namespace grm {

Decomposition make_decomposition(u64 q, unsigned m, u64 r1, u64 r2) {
    u64 n = ipow(q, m) - 1;
    if (r1 < 2 || r2 < 2) throw std::invalid_argument("decomposition: r1, r2 must exceed 1");
    if (r1 * r2 != n) throw std::invalid_argument("decomposition: r1 * r2 != q^m - 1");
    if (gcd_u64(r1, r2) != 1) throw std::invalid_argument("decomposition: gcd(r1, r2) != 1");
    Decomposition d;
    d.q = q;
    d.m = m;
    d.n = n;
    d.r1 = r1;
    d.r2 = r2;
    d.a = static_cast<unsigned>(mult_order(q, r1));
    if (m % d.a != 0) throw std::logic_error("decomposition: order does not divide m");
    d.e1 = crt_pair(1, r1, 0, r2);
    d.e2 = crt_pair(0, r1, 1, r2);
    return d;
}

std::vector<Decomposition> find_decompositions(u64 q, unsigned m) {
    u64 n = ipow(q, m) - 1;
    auto factors = factorize(n);
    std::vector<u64> prime_powers;
    for (auto [p, e] : factors) prime_powers.push_back(ipow(p, e));
    std::size_t w = prime_powers.size();
    std::vector<Decomposition> out;
    if (w < 2) return out;
    for (u64 mask = 1; mask + 1 < (1ull << w); ++mask) {
        u64 r1 = 1;
        for (std::size_t i = 0; i < w; ++i)
            if (mask & (1ull << i)) r1 *= prime_powers[i];
        u64 r2 = n / r1;
        if (mult_order(q, r1) == m) out.push_back(make_decomposition(q, m, r1, r2));
    }
    std::sort(out.begin(), out.end(),
              [](const Decomposition& a, const Decomposition& b) { return a.r1 < b.r1; });
    return out;
}

bool suitable_decomposition_exists(u64 q, unsigned m) {
    if (q < 2 || m == 0) throw std::invalid_argument("decomposition scan: bad parameters");
    u128 n = ipow128(q, m) - 1;
    if (n <= UINT64_MAX) {
        auto factors = factorize(static_cast<u64>(n));
        return factors.size() >= 2;
    }
    if (q == 2)  // Mersenne-type n beyond u64 would need real factorization
        throw std::invalid_argument("decomposition scan: q = 2 beyond 64-bit range");
    // q - 1 divides n, so its smallest prime factor divides n too; a split
    // exists iff stripping that prime leaves a nontrivial coprime cofactor
    u64 f = factorize(q - 1).front().first;
    while (n % f == 0) n /= f;
    return n > 1;
}

InfoSet build_infoset(const Decomposition& dec, unsigned m) {
    if (m % dec.a != 0) throw std::invalid_argument("build_infoset: a does not divide m");
    if (dec.a > dec.r1 || m / dec.a > dec.r2)
        throw std::invalid_argument("build_infoset: gamma does not fit the grid");
    InfoSet I;
    unsigned rows = dec.a, cols = m / dec.a;
    for (unsigned i1 = 0; i1 < rows; ++i1)
        for (unsigned i2 = 0; i2 < cols; ++i2) I.gamma.push_back({i1, i2});
    for (auto [i1, i2] : I.gamma)
        I.exponents.push_back(static_cast<u32>(dec.from_pair(i1, i2)));
    std::sort(I.exponents.begin(), I.exponents.end());
    I.positions.push_back(0);
    for (u32 e : I.exponents) I.positions.push_back(1 + e);
    return I;
}

bool verify_infoset(const GrmCode& code, const InfoSet& I) {
    if (I.positions.size() != code.k)
        throw std::invalid_argument("verify_infoset: |positions| != k");
    return rank_of_columns(code.gen, code.sub, I.positions) == code.k;
}

}  // namespace grm
