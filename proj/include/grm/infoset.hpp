#ifndef GRM_INFOSET_HPP
#define GRM_INFOSET_HPP

#include <utility>
#include <vector>

#include "grm/grm_code.hpp"

namespace grm {

// A coprime split n = r1 * r2 (both > 1) together with the canonical CRT
// bijection Z_n <-> Z_r1 x Z_r2, i -> (i mod r1, i mod r2).
struct Decomposition {
    u64 q = 0;
    unsigned m = 0;
    u64 n = 0, r1 = 0, r2 = 0;
    unsigned a = 0;  // mult_order(q, r1); a | m always
    u64 e1 = 0, e2 = 0;  // CRT generators: e1 = (1,0), e2 = (0,1)

    std::pair<u64, u64> to_pair(u64 i) const { return {i % r1, i % r2}; }
    u64 from_pair(u64 x, u64 y) const {
        return static_cast<u64>((static_cast<u128>(x) * e1 + static_cast<u128>(y) * e2) % n);
    }
};

Decomposition make_decomposition(u64 q, unsigned m, u64 r1, u64 r2);

// Every oriented split of q^m - 1 satisfying the coprime conditions with
// mult_order(q, r1) = m, sorted by r1.  Empty when no split exists.
std::vector<Decomposition> find_decompositions(u64 q, unsigned m);

// Existence-only check that works beyond u64 (the grid scan needs q^m - 1
// up to ~2^95): a suitable split exists iff q^m - 1 is not a prime power.
bool suitable_decomposition_exists(u64 q, unsigned m);

struct InfoSet {
    std::vector<std::pair<u32, u32>> gamma;  // subset of Z_r1 x Z_r2
    std::vector<u32> exponents;              // sorted phi^{-1}(gamma)
    std::vector<u32> positions;              // {0} u {1 + e : e in exponents}
};

// Gamma = [0, a) x [0, m/a); for oriented decompositions a = m and Gamma
// degenerates to {(i, 0) : i < m}.
InfoSet build_infoset(const Decomposition& dec, unsigned m);

// True iff the generator matrix restricted to I.positions has full rank k.
// A size mismatch (|positions| != k) throws instead.
bool verify_infoset(const GrmCode& code, const InfoSet& I);

}  // namespace grm

#endif
