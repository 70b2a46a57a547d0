#ifndef GRM_BIGINT_HPP
#define GRM_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "grm/numbers.hpp"

namespace grm {

// Unsigned big integer, little-endian 32-bit limbs.  Covers the exact
// binomial/inclusion-exclusion arithmetic; not a general-purpose bignum.
class BigUint {
public:
    BigUint() = default;
    BigUint(u64 v);

    bool is_zero() const { return limbs_.empty(); }
    std::size_t bit_length() const;

    int compare(const BigUint& o) const;
    bool operator==(const BigUint& o) const { return compare(o) == 0; }
    bool operator<(const BigUint& o) const { return compare(o) < 0; }
    bool operator<=(const BigUint& o) const { return compare(o) <= 0; }

    BigUint& operator+=(const BigUint& o);
    BigUint& operator-=(const BigUint& o);  // requires *this >= o
    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
    friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }

    BigUint operator*(const BigUint& o) const;

    BigUint& mul_small(u64 f);
    BigUint& div_small(u64 d);          // floor division, d < 2^32
    u32 divmod_small(u32 d);            // in-place quotient, returns remainder

    BigUint& shift_right(unsigned bits);
    BigUint& shift_left(unsigned bits);
    unsigned trailing_zero_bits() const;  // undefined for zero

    std::string to_decimal() const;
    double to_double() const;

    bool get_bit(std::size_t i) const;

    static BigUint binomial(u64 n, u64 k);
    // floor quotient and remainder (binary long division)
    static std::pair<BigUint, BigUint> divmod(const BigUint& a, const BigUint& b);
    friend BigUint big_gcd(BigUint a, BigUint b);

private:
    void trim();
    std::vector<u32> limbs_;
};

// Decimal expansion of num/den truncated to `digits` fractional digits,
// e.g. "0.99991234".  Requires den != 0.
std::string decimal_ratio(const BigUint& num, const BigUint& den, unsigned digits);

double ratio_to_double(const BigUint& num, const BigUint& den);

}  // namespace grm

#endif
