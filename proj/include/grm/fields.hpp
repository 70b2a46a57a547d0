#ifndef GRM_FIELDS_HPP
#define GRM_FIELDS_HPP

#include <memory>
#include <stdexcept>
#include <vector>

#include "grm/numbers.hpp"

namespace grm {

// A realized finite field GF(p^deg).  Elements are integer indices in
// [0, size): the base-p positional encoding of the coefficient tuple in the
// polynomial basis, index 0 the additive zero and index 1 the identity.
// Immutable after construction; every operation is pure and thread-safe.
struct FieldCtx {
    u64 p = 0;
    unsigned deg = 0;
    u64 size = 0;                 // p^deg
    std::vector<u32> modulus;     // c0..c_deg, monic irreducible over GF(p)
    u32 prim = 0;                 // least primitive element index
    std::vector<u32> log_table;   // nonzero index -> exponent
    std::vector<u32> antilog_table;  // exponent in [0, size-1) -> index

    u32 add(u32 a, u32 b) const;
    u32 neg(u32 a) const;
    u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }
    u32 mul(u32 a, u32 b) const {
        if (a == 0 || b == 0) return 0;
        u64 e = log_table[a] + log_table[b];
        u64 g = size - 1;
        return antilog_table[e >= g ? e - g : e];
    }
    u32 inv(u32 a) const {
        if (a == 0) throw std::domain_error("field inverse of zero");
        u64 e = log_table[a];
        return antilog_table[e == 0 ? 0 : size - 1 - e];
    }
    u32 pow(u32 a, u64 e) const;
    u32 log(u32 a) const {
        if (a == 0) throw std::domain_error("field log of zero");
        return log_table[a];
    }
    // alpha^e for the fixed primitive alpha = prim, exponent taken mod size-1
    u32 alpha_pow(u64 e) const { return antilog_table[e % (size - 1)]; }
    u64 element_order(u32 a) const;
};

// Deterministic construction: lexicographically first monic irreducible
// modulus, least primitive element.  `seed` is reserved for a randomized
// fallback search and ignored on the default path.
std::shared_ptr<const FieldCtx> build_field(u64 p, unsigned deg, u64 seed = 0);

// GF(q) realized inside an ambient field of size q^m via
// beta = alpha^((q^m-1)/(q-1)).  Canonical subfield indexing:
// 0 -> 0, 1+j -> beta^j.  Carries q x q arithmetic tables over the
// canonical indices so codes never touch ambient arithmetic in hot loops.
struct SubfieldCtx {
    std::shared_ptr<const FieldCtx> ambient;
    u64 q = 0;
    unsigned m = 0;               // ambient size == q^m
    u32 beta = 0;
    std::vector<u32> members;     // canonical order, size q
    std::vector<int> to_sub;      // ambient index -> canonical index or -1

    std::vector<u8> add_tbl, mul_tbl, neg_tbl, inv_tbl;

    u8 add(u8 a, u8 b) const { return add_tbl[a * q + b]; }
    u8 mul(u8 a, u8 b) const { return mul_tbl[a * q + b]; }
    u8 neg(u8 a) const { return neg_tbl[a]; }
    u8 sub(u8 a, u8 b) const { return add(a, neg(b)); }
    u8 inv(u8 a) const {
        if (a == 0) throw std::domain_error("subfield inverse of zero");
        return inv_tbl[a];
    }
    u8 pow(u8 a, u64 e) const;
};

SubfieldCtx subfield_embed(std::shared_ptr<const FieldCtx> ambient, u64 q);

// Tr(x) = x + x^q + ... + x^(q^(m-1)); the result always lies in the
// embedded GF(q) and is returned as an ambient element.
u32 trace(const SubfieldCtx& sub, u32 x);

}  // namespace grm

#endif
