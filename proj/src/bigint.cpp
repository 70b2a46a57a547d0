#include "grm/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grm {

BigUint::BigUint(u64 v) {
    while (v > 0) {
        limbs_.push_back(static_cast<u32>(v & 0xffffffffu));
        v >>= 32;
    }
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

std::size_t BigUint::bit_length() const {
    if (limbs_.empty()) return 0;
    std::size_t bits = (limbs_.size() - 1) * 32;
    u32 top = limbs_.back();
    while (top > 0) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

int BigUint::compare(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    }
    return 0;
}

BigUint& BigUint::operator+=(const BigUint& o) {
    limbs_.resize(std::max(limbs_.size(), o.limbs_.size()), 0);
    u64 carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u64 sum = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
        limbs_[i] = static_cast<u32>(sum);
        carry = sum >> 32;
    }
    if (carry) limbs_.push_back(static_cast<u32>(carry));
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& o) {
    if (compare(o) < 0) throw std::underflow_error("BigUint: negative result");
    u64 borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u64 sub = static_cast<u64>(i < o.limbs_.size() ? o.limbs_[i] : 0) + borrow;
        if (limbs_[i] >= sub) {
            limbs_[i] = static_cast<u32>(limbs_[i] - sub);
            borrow = 0;
        } else {
            limbs_[i] = static_cast<u32>((1ull << 32) + limbs_[i] - sub);
            borrow = 1;
        }
    }
    trim();
    return *this;
}

BigUint BigUint::operator*(const BigUint& o) const {
    if (is_zero() || o.is_zero()) return {};
    BigUint r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u64 carry = 0;
        for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
            u64 cur = static_cast<u64>(limbs_[i]) * o.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<u32>(cur);
            carry = cur >> 32;
        }
        std::size_t k = i + o.limbs_.size();
        while (carry) {
            u64 cur = r.limbs_[k] + carry;
            r.limbs_[k] = static_cast<u32>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    r.trim();
    return r;
}

BigUint& BigUint::mul_small(u64 f) {
    if (f == 0 || is_zero()) {
        limbs_.clear();
        return *this;
    }
    u32 lo = static_cast<u32>(f & 0xffffffffu);
    u32 hi = static_cast<u32>(f >> 32);
    if (hi == 0) {
        u64 carry = 0;
        for (auto& limb : limbs_) {
            u64 cur = static_cast<u64>(limb) * lo + carry;
            limb = static_cast<u32>(cur);
            carry = cur >> 32;
        }
        while (carry) {
            limbs_.push_back(static_cast<u32>(carry));
            carry >>= 32;
        }
        return *this;
    }
    BigUint factor(f);
    *this = *this * factor;
    return *this;
}

BigUint& BigUint::div_small(u64 d) {
    if (d == 0) throw std::invalid_argument("BigUint: division by zero");
    if (d >> 32) {
        // two-limb divisor, long division over u128 windows
        u128 rem = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            u128 cur = (rem << 32) | limbs_[i];
            limbs_[i] = static_cast<u32>(cur / d);
            rem = cur % d;
        }
        trim();
        return *this;
    }
    divmod_small(static_cast<u32>(d));
    return *this;
}

u32 BigUint::divmod_small(u32 d) {
    if (d == 0) throw std::invalid_argument("BigUint: division by zero");
    u64 rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        u64 cur = (rem << 32) | limbs_[i];
        limbs_[i] = static_cast<u32>(cur / d);
        rem = cur % d;
    }
    trim();
    return static_cast<u32>(rem);
}

BigUint& BigUint::shift_right(unsigned bits) {
    unsigned limb_shift = bits / 32, bit_shift = bits % 32;
    if (limb_shift >= limbs_.size()) {
        limbs_.clear();
        return *this;
    }
    limbs_.erase(limbs_.begin(), limbs_.begin() + limb_shift);
    if (bit_shift) {
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            u32 hi = (i + 1 < limbs_.size()) ? limbs_[i + 1] : 0;
            limbs_[i] = (limbs_[i] >> bit_shift) | (hi << (32 - bit_shift));
        }
    }
    trim();
    return *this;
}

BigUint& BigUint::shift_left(unsigned bits) {
    if (is_zero()) return *this;
    unsigned limb_shift = bits / 32, bit_shift = bits % 32;
    if (bit_shift) {
        u32 carry = 0;
        for (auto& limb : limbs_) {
            u32 next = limb >> (32 - bit_shift);
            limb = (limb << bit_shift) | carry;
            carry = next;
        }
        if (carry) limbs_.push_back(carry);
    }
    limbs_.insert(limbs_.begin(), limb_shift, 0);
    return *this;
}

unsigned BigUint::trailing_zero_bits() const {
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        if (limbs_[i] != 0)
            return static_cast<unsigned>(i * 32 + __builtin_ctz(limbs_[i]));
    }
    return 0;
}

std::string BigUint::to_decimal() const {
    if (is_zero()) return "0";
    BigUint tmp = *this;
    std::vector<u32> chunks;
    while (!tmp.is_zero()) chunks.push_back(tmp.divmod_small(1000000000u));
    std::string s = std::to_string(chunks.back());
    for (std::size_t i = chunks.size() - 1; i-- > 0;) {
        std::string part = std::to_string(chunks[i]);
        s += std::string(9 - part.size(), '0') + part;
    }
    return s;
}

double BigUint::to_double() const {
    double r = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) r = r * 4294967296.0 + limbs_[i];
    return r;
}

bool BigUint::get_bit(std::size_t i) const {
    std::size_t limb = i / 32;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 32)) & 1u;
}

std::pair<BigUint, BigUint> BigUint::divmod(const BigUint& a, const BigUint& b) {
    if (b.is_zero()) throw std::invalid_argument("BigUint: division by zero");
    if (a.compare(b) < 0) return {BigUint{}, a};
    BigUint q, r;
    std::size_t bits = a.bit_length();
    q.limbs_.assign((bits + 31) / 32, 0);
    for (std::size_t i = bits; i-- > 0;) {
        r.shift_left(1);
        if (a.get_bit(i)) {
            if (r.limbs_.empty())
                r.limbs_.push_back(1);
            else
                r.limbs_[0] |= 1u;
        }
        if (b <= r) {
            r -= b;
            q.limbs_[i / 32] |= (1u << (i % 32));
        }
    }
    q.trim();
    return {q, r};
}

BigUint BigUint::binomial(u64 n, u64 k) {
    if (k > n) return {};
    if (k > n - k) k = n - k;
    BigUint r(1);
    for (u64 i = 1; i <= k; ++i) {
        r.mul_small(n - k + i);
        r.div_small(i);  // exact: running value is C(n-k+i, i)
    }
    return r;
}

BigUint big_gcd(BigUint a, BigUint b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    unsigned za = a.trailing_zero_bits(), zb = b.trailing_zero_bits();
    unsigned shift = std::min(za, zb);
    a.shift_right(za);
    b.shift_right(zb);
    while (true) {
        if (a.compare(b) > 0) std::swap(a, b);
        b -= a;
        if (b.is_zero()) break;
        b.shift_right(b.trailing_zero_bits());
    }
    a.shift_left(shift);
    return a;
}

std::string decimal_ratio(const BigUint& num, const BigUint& den, unsigned digits) {
    if (den.is_zero()) throw std::invalid_argument("decimal_ratio: zero denominator");
    // integer part by repeated subtraction; ratios here are probabilities
    BigUint rem = num;
    u64 int_part = 0;
    while (den <= rem) {
        rem -= den;
        ++int_part;
    }
    std::string s = std::to_string(int_part);
    if (digits == 0) return s;
    s += '.';
    for (unsigned i = 0; i < digits; ++i) {
        rem.mul_small(10);
        unsigned digit = 0;
        while (den <= rem) {
            rem -= den;
            ++digit;
        }
        s += static_cast<char>('0' + digit);
    }
    return s;
}

double ratio_to_double(const BigUint& num, const BigUint& den) {
    if (den.is_zero()) throw std::invalid_argument("ratio_to_double: zero denominator");
    if (num.is_zero()) return 0.0;
    return std::stod(decimal_ratio(num, den, 19));
}

}  // namespace grm
