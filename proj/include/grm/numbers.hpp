#ifndef GRM_NUMBERS_HPP
#define GRM_NUMBERS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace grm {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);
u64 gcd_u64(u64 a, u64 b);
u64 inv_mod(u64 a, u64 m);

bool is_prime(u64 n);

// Prime factorization of n, sorted by prime.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

// base^exp, throwing std::overflow_error if it does not fit u64.
u64 ipow(u64 base, unsigned exp);
u128 ipow128(u64 base, unsigned exp);

// Least a > 0 with q^a = 1 (mod r).  Requires gcd(q, r) = 1.
u64 mult_order(u64 q, u64 r);

// m | delta.  The interesting fact (checked by tests) is the equivalence
// with q^m - 1 | q^delta - 1.
bool divisibility_check(unsigned m, unsigned delta, u64 q);

// Unique z in [0, r1*r2) with z = x (mod r1), z = y (mod r2); gcd(r1,r2)=1.
u64 crt_pair(u64 x, u64 r1, u64 y, u64 r2);

// Binomial coefficient in u64, saturating at cap (returns cap+1 on overflow
// or once the value exceeds cap).
u64 binomial_capped(u64 n, u64 k, u64 cap);

// Deterministic per-index substream seed.
u64 splitmix64(u64 x);
u64 derive_seed(u64 seed, u64 index);

std::string u128_to_string(u128 v);

}  // namespace grm

#endif
