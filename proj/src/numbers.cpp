#include "grm/numbers.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace grm {

u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

u64 inv_mod(u64 a, u64 m) {
    // extended Euclid over signed 128-bit to dodge sign juggling
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 quot = r / new_r;
        t -= quot * new_t;
        std::swap(t, new_t);
        r -= quot * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw std::invalid_argument("inv_mod: not invertible");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

namespace {

u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    u64 c = 1;
    while (true) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
        ++c;
    }
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<u64> primes;
    // peel small factors first; rho only sees the hard residue
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.push_back({p, 1});
    }
    return out;
}

u64 ipow(u64 base, unsigned exp) {
    u64 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) throw std::overflow_error("ipow: overflow");
        r *= base;
    }
    return r;
}

u128 ipow128(u64 base, unsigned exp) {
    u128 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        u128 next = r * base;
        if (base != 0 && next / base != r) throw std::overflow_error("ipow128: overflow");
        r = next;
    }
    return r;
}

u64 mult_order(u64 q, u64 r) {
    if (r == 0) throw std::invalid_argument("mult_order: modulus 0");
    if (r == 1) return 1;
    if (gcd_u64(q % r, r) != 1) throw std::invalid_argument("mult_order: gcd(q, r) != 1");
    // order divides the group exponent; scan divisors of lambda via phi-free
    // direct walk, which is plenty at desk scale (r <= ~10^7 here)
    u64 a = 1;
    u64 x = q % r;
    u64 cur = x;
    while (cur != 1) {
        cur = mul_mod(cur, x, r);
        ++a;
        if (a > r) throw std::logic_error("mult_order: no order found");
    }
    return a;
}

bool divisibility_check(unsigned m, unsigned delta, u64 q) {
    (void)q;
    if (m == 0) throw std::invalid_argument("divisibility_check: m = 0");
    return delta % m == 0;
}

u64 crt_pair(u64 x, u64 r1, u64 y, u64 r2) {
    if (gcd_u64(r1, r2) != 1) throw std::invalid_argument("crt_pair: moduli not coprime");
    // z = x + r1 * ((y - x) * r1^{-1} mod r2)
    u64 inv = inv_mod(r1 % r2, r2);
    u64 diff = (y + r2 - x % r2) % r2;
    u64 z = x + r1 * mul_mod(diff, inv, r2);
    return z % (r1 * r2);
}

u64 binomial_capped(u64 n, u64 k, u64 cap) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    u128 r = 1;
    for (u64 i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // exact at every step
        if (r > cap) return cap + 1;
    }
    return static_cast<u64>(r);
}

u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

u64 derive_seed(u64 seed, u64 index) {
    return splitmix64(seed ^ splitmix64(index + 0x5851f42d4c957f2dull));
}

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace grm
