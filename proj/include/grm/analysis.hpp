#ifndef GRM_ANALYSIS_HPP
#define GRM_ANALYSIS_HPP

#include <string>

#include "grm/bigint.hpp"
#include "grm/permdec.hpp"

namespace grm {

struct RatU64 {
    u64 num = 0, den = 1;
    u64 floor_val() const { return num / den; }
    // exact comparison a/b >= c/d
    bool operator>=(const RatU64& o) const {
        return static_cast<u128>(num) * o.den >= static_cast<u128>(o.num) * den;
    }
};

// Correction-capability comparison row for the best-s decomposition of
// one (q, m): the three prior bounds, the shift-group bound, and the
// classical capability t.
struct BoundsRow {
    u64 q = 0;
    unsigned m = 0;
    u64 n = 0, r1 = 0, r2 = 0;
    RatU64 rho1, rho2, rho3;
    u64 lambda0 = 0, s = 0, t = 0, s_eff = 0;
};

BoundsRow bounds_row(u64 q, unsigned m);

// floor(rho3) in {floor(rho1), floor(rho1)+1} and rho2 >= rho1; holds for
// q, m >= 3 (for m = 2 call it to record, but do not assert).
bool prop51_check(u64 q, unsigned m);

struct ProbResult {
    u64 n = 0, r1 = 0, r2 = 0, s = 0, delta = 0;
    BigUint p_num, p_den;   // reduced fraction, 0 <= p <= 1
    std::string p_decimal;  // truncated decimal rendering
    double p_approx = 0.0;
};

// Exact probability that a uniform s-subset of Z_r1 x Z_r2 misses at least
// one second-coordinate fiber:
//   p = sum_{j=1}^{r2-delta} (-1)^(j+1) C(r2,j) C(n - j r1, s) / C(n, s).
ProbResult prob_exact(u64 n, u64 r1, u64 r2, u64 s, unsigned digits = 10);

// Direct sampling of the same event; deterministic per seed and independent
// of the job count.
double prob_montecarlo(u64 n, u64 r1, u64 r2, u64 s, u64 trials, u64 seed, unsigned jobs = 1);

enum class TableFormat { markdown, csv, json };

std::vector<BoundsRow> bounds_table(u64 q, unsigned m_min, unsigned m_max);
std::string render_bounds_table(u64 q, std::span<const BoundsRow> rows, TableFormat fmt);

struct ProbTableRow {
    u64 q = 0;
    unsigned m = 0;
    u64 r1 = 0, r2 = 0, s = 0;
    ProbResult prob;
};

// The fixed probability showcase: six (q, m, r1, r2) selections, s from the
// shift-group bound, p computed exactly.
std::vector<ProbTableRow> probability_table(unsigned digits = 10);
std::string render_prob_table(std::span<const ProbTableRow> rows, TableFormat fmt);

}  // namespace grm

#endif
