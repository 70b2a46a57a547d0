#include "grm/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace grm {

BoundsRow bounds_row(u64 q, unsigned m) {
    auto decs = find_decompositions(q, m);
    if (decs.empty()) throw std::invalid_argument("bounds_row: no decomposition for (q, m)");
    BoundsRow row;
    row.q = q;
    row.m = m;
    row.n = ipow(q, m) - 1;
    u64 best_s = 0;
    const Decomposition* best = nullptr;
    for (const auto& d : decs) {
        auto b = s_pd_bound(d, m);
        if (b && b->s > best_s) {
            best_s = b->s;
            best = &d;
            row.lambda0 = b->lambda0;
        }
    }
    if (!best) throw std::logic_error("bounds_row: no decomposition with a bound");
    row.r1 = best->r1;
    row.r2 = best->r2;
    row.s = best_s;
    row.rho1 = {row.n, m + 1};
    row.rho2 = {ipow(q, m - 1) * (q - 1) - 1, 2};
    row.rho3 = {row.n + 1, m + 1};
    u64 d = ipow(q, m - 1) * (q - 1);
    row.t = (d - 1) / 2;
    row.s_eff = std::min(row.s, row.t);
    return row;
}

bool prop51_check(u64 q, unsigned m) {
    u64 n = ipow(q, m) - 1;
    RatU64 rho1{n, m + 1};
    RatU64 rho2{ipow(q, m - 1) * (q - 1) - 1, 2};
    RatU64 rho3{n + 1, m + 1};
    u64 f1 = rho1.floor_val(), f3 = rho3.floor_val();
    bool clause1 = (f3 == f1) || (f3 == f1 + 1);
    bool clause2 = rho2 >= rho1;
    return clause1 && clause2;
}

ProbResult prob_exact(u64 n, u64 r1, u64 r2, u64 s, unsigned digits) {
    if (r1 < 1 || r2 < 1 || n != r1 * r2) throw std::invalid_argument("prob_exact: n != r1 * r2");
    if (s == 0 || s > n) throw std::invalid_argument("prob_exact: s out of range");
    ProbResult res;
    res.n = n;
    res.r1 = r1;
    res.r2 = r2;
    res.s = s;
    res.delta = (s + r1 - 1) / r1;

    BigUint den = BigUint::binomial(n, s);
    BigUint pos, neg;
    if (res.delta <= r2) {
        u64 jmax = r2 - res.delta;
        // C(n - j*r1, s) stepped down incrementally: C(a-1,s) = C(a,s)(a-s)/a
        BigUint top = BigUint::binomial(n, s);
        u64 a = n;
        BigUint comb_r2(1);  // C(r2, j), starting at j = 0
        for (u64 j = 1; j <= jmax; ++j) {
            for (u64 step = 0; step < r1; ++step) {
                top.mul_small(a - s);
                top.div_small(a);
                --a;
            }
            comb_r2.mul_small(r2 - (j - 1));
            comb_r2.div_small(j);
            BigUint term = comb_r2 * top;
            if (j & 1)
                pos += term;
            else
                neg += term;
        }
    }
    BigUint num = pos;
    num -= neg;
    if (den < num) throw std::logic_error("prob_exact: probability above 1");
    if (!num.is_zero()) {
        BigUint g = big_gcd(num, den);
        num = BigUint::divmod(num, g).first;
        den = BigUint::divmod(den, g).first;
    }
    res.p_num = num;
    res.p_den = den;
    res.p_decimal = decimal_ratio(num, den, digits);
    res.p_approx = num.is_zero() ? 0.0 : ratio_to_double(num, den);
    return res;
}

double prob_montecarlo(u64 n, u64 r1, u64 r2, u64 s, u64 trials, u64 seed, unsigned jobs) {
    if (r1 < 1 || r2 < 1 || n != r1 * r2) throw std::invalid_argument("prob_montecarlo: n != r1*r2");
    if (s == 0 || s > n) throw std::invalid_argument("prob_montecarlo: s out of range");
    if (trials == 0) throw std::invalid_argument("prob_montecarlo: trials = 0");

    std::atomic<u64> hits{0};
    std::atomic<u64> next{0};
    auto worker = [&]() {
        std::vector<u64> in_set(n, 0);
        std::vector<u64> fiber_seen(r2, 0);
        u64 local_hits = 0;
        while (true) {
            u64 trial = next.fetch_add(1);
            if (trial >= trials) break;
            u64 state = derive_seed(seed, trial);
            auto rnd = [&state](u64 bound) {
                state = splitmix64(state);
                return state % bound;
            };
            u64 epoch = trial + 1;
            u64 covered = 0;
            // Floyd sampling; track pi_2 fiber coverage on the fly
            for (u64 j = n - s; j < n; ++j) {
                u64 t = rnd(j + 1);
                u64 pick = (in_set[t] == epoch) ? j : t;
                in_set[pick] = epoch;
                u64 fiber = pick % r2;
                if (fiber_seen[fiber] != epoch) {
                    fiber_seen[fiber] = epoch;
                    ++covered;
                }
            }
            if (covered < r2) ++local_hits;
        }
        hits += local_hits;
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return static_cast<double>(hits.load()) / static_cast<double>(trials);
}

std::vector<BoundsRow> bounds_table(u64 q, unsigned m_min, unsigned m_max) {
    std::vector<BoundsRow> rows;
    for (unsigned m = m_min; m <= m_max; ++m) {
        if (!suitable_decomposition_exists(q, m)) continue;
        rows.push_back(bounds_row(q, m));
    }
    return rows;
}

std::string render_bounds_table(u64 q, std::span<const BoundsRow> rows, TableFormat fmt) {
    std::ostringstream os;
    switch (fmt) {
        case TableFormat::markdown:
            os << "Corrected errors for q = " << q << "\n\n";
            os << "| m | r1 | r2 | rho1 | s |\n|---|----|----|------|---|\n";
            for (const auto& r : rows)
                os << "| " << r.m << " | " << r.r1 << " | " << r.r2 << " | "
                   << r.rho1.floor_val() << " | " << r.s << " |\n";
            break;
        case TableFormat::csv:
            os << "q,m,r1,r2,rho1,s,t,s_eff\n";
            for (const auto& r : rows)
                os << r.q << ',' << r.m << ',' << r.r1 << ',' << r.r2 << ','
                   << r.rho1.floor_val() << ',' << r.s << ',' << r.t << ',' << r.s_eff << "\n";
            break;
        case TableFormat::json:
            os << "[";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto& r = rows[i];
                os << (i ? "," : "") << "{\"q\":" << r.q << ",\"m\":" << r.m
                   << ",\"r1\":" << r.r1 << ",\"r2\":" << r.r2
                   << ",\"rho1\":" << r.rho1.floor_val() << ",\"s\":" << r.s
                   << ",\"t\":" << r.t << ",\"s_eff\":" << r.s_eff << "}";
            }
            os << "]";
            break;
    }
    return os.str();
}

std::vector<ProbTableRow> probability_table(unsigned digits) {
    // fixed showcase decompositions, including the alternative split at
    // (q=3, m=8) with r1=32, r2=205
    const struct {
        u64 q;
        unsigned m;
        u64 r1, r2;
    } picks[] = {
        {3, 6, 7, 104}, {3, 8, 32, 205},  {5, 5, 11, 284},
        {5, 6, 7, 2232}, {4, 5, 11, 93},  {4, 6, 13, 315},
    };
    std::vector<ProbTableRow> rows;
    for (const auto& p : picks) {
        Decomposition dec = make_decomposition(p.q, p.m, p.r1, p.r2);
        auto bound = s_pd_bound(dec, p.m);
        if (!bound) throw std::logic_error("probability_table: bound unavailable");
        ProbTableRow row;
        row.q = p.q;
        row.m = p.m;
        row.r1 = p.r1;
        row.r2 = p.r2;
        row.s = bound->s;
        row.prob = prob_exact(dec.n, p.r1, p.r2, bound->s, digits);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_prob_table(std::span<const ProbTableRow> rows, TableFormat fmt) {
    std::ostringstream os;
    switch (fmt) {
        case TableFormat::markdown:
            os << "| q | m | r1 | r2 | s | p |\n|---|---|----|----|---|---|\n";
            for (const auto& r : rows)
                os << "| " << r.q << " | " << r.m << " | " << r.r1 << " | " << r.r2
                   << " | " << r.s << " | " << r.prob.p_decimal << " |\n";
            break;
        case TableFormat::csv:
            os << "q,m,r1,r2,s,p\n";
            for (const auto& r : rows)
                os << r.q << ',' << r.m << ',' << r.r1 << ',' << r.r2 << ',' << r.s << ','
                   << r.prob.p_decimal << "\n";
            break;
        case TableFormat::json:
            os << "[";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto& r = rows[i];
                os << (i ? "," : "") << "{\"q\":" << r.q << ",\"m\":" << r.m
                   << ",\"r1\":" << r.r1 << ",\"r2\":" << r.r2 << ",\"s\":" << r.s
                   << ",\"p\":\"" << r.prob.p_decimal << "\"}";
            }
            os << "]";
            break;
    }
    return os.str();
}

}  // namespace grm
