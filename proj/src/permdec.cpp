#include "grm/permdec.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace grm {

Perm Perm::inverse() const {
    Perm inv;
    inv.map.resize(map.size());
    for (u32 i = 0; i < map.size(); ++i) inv.map[map[i]] = i;
    return inv;
}

Perm Perm::then(const Perm& next) const {
    Perm out;
    out.map.resize(map.size());
    for (u32 i = 0; i < map.size(); ++i) out.map[i] = next.map[map[i]];
    return out;
}

Perm realize(const GrmCode& code, const PermSpec& spec) {
    Perm p;
    p.map.resize(code.len);
    switch (spec.kind) {
        case PermSpec::Kind::identity:
            for (u32 i = 0; i < code.len; ++i) p.map[i] = i;
            break;
        case PermSpec::Kind::shift: {
            u64 j = spec.param % code.n;
            p.map[0] = 0;
            for (u64 i = 0; i < code.n; ++i)
                p.map[1 + i] = static_cast<u32>(1 + (i + j) % code.n);
            break;
        }
        case PermSpec::Kind::translate: {
            u32 shift_elem = code.field->alpha_pow(spec.param % code.n);
            for (u32 pos = 0; pos < code.len; ++pos) {
                u32 elem = code.elem_of_pos(pos);
                p.map[pos] = code.pos_of_elem(code.field->add(elem, shift_elem));
            }
            break;
        }
    }
    return p;
}

Perm realize(const GrmCode& code, std::span<const PermSpec> composition) {
    Perm acc = realize(code, PermSpec::ident());
    for (const PermSpec& s : composition) acc = acc.then(realize(code, s));
    return acc;
}

CodeVector apply_perm(const Perm& p, std::span<const u8> v) {
    if (p.map.size() != v.size()) throw std::invalid_argument("apply_perm: length mismatch");
    CodeVector out(v.size());
    for (u32 i = 0; i < v.size(); ++i) out[p.map[i]] = v[i];
    return out;
}

CodeVector apply_perm(const GrmCode& code, const PermSpec& spec, std::span<const u8> v) {
    return apply_perm(realize(code, spec), v);
}

StandardForm standard_form(const GrmCode& code, const InfoSet& I) {
    if (!verify_infoset(code, I)) throw std::invalid_argument("standard_form: not an information set");
    const SubfieldCtx& F = code.sub;
    StandardForm sf;
    sf.info_positions = I.positions;

    // reduce the generator so its restriction to I is the identity, pivoting
    // in I order
    Mat G = code.gen;
    if (!pivot_on_columns(G, sf.info_positions, F))
        throw std::logic_error("standard_form: rank collapse");
    sf.G_std = std::move(G);

    std::vector<bool> in_info(code.len, false);
    for (u32 c : sf.info_positions) in_info[c] = true;
    for (u32 c = 0; c < code.len; ++c)
        if (!in_info[c]) sf.complement.push_back(c);

    // parity rows: v[c] - sum_r G_std[r][c] v[I_r] = 0 for every codeword
    sf.H_std = Mat(sf.complement.size(), code.len);
    for (std::size_t idx = 0; idx < sf.complement.size(); ++idx) {
        u32 c = sf.complement[idx];
        sf.H_std.at(idx, c) = 1;
        for (std::size_t r = 0; r < code.k; ++r) {
            u8 v = sf.G_std.at(r, c);
            if (v != 0) sf.H_std.at(idx, sf.info_positions[r]) = F.neg(v);
        }
    }
    return sf;
}

u64 syndrome_weight(const Mat& H, std::span<const u8> r, const SubfieldCtx& F) {
    if (r.size() != H.cols) throw std::invalid_argument("syndrome_weight: length mismatch");
    u64 w = 0;
    for (std::size_t row = 0; row < H.rows; ++row) {
        u8 acc = 0;
        const u8* h = H.row(row);
        for (std::size_t c = 0; c < H.cols; ++c)
            if (h[c] != 0 && r[c] != 0) acc = F.add(acc, F.mul(h[c], r[c]));
        if (acc != 0) ++w;
    }
    return w;
}

bool syndrome_test(const Mat& H_std, std::span<const u8> r, u64 t, const SubfieldCtx& F) {
    return syndrome_weight(H_std, r, F) <= t;
}

std::vector<u32> pd_enumeration_order(const Decomposition& dec) {
    std::vector<u32> order;
    order.reserve(dec.n);
    std::vector<bool> seen(dec.n, false);
    // <T_2> first: multiples of e = (0 mod r1, 1 mod r2)
    for (u64 jj = 0; jj < dec.r2; ++jj) {
        u64 e = static_cast<u64>(static_cast<u128>(jj) * dec.e2 % dec.n);
        order.push_back(static_cast<u32>(e));
        seen[e] = true;
    }
    for (u64 e = 0; e < dec.n; ++e)
        if (!seen[e]) order.push_back(static_cast<u32>(e));
    return order;
}

std::optional<SPdBound> s_pd_bound(const Decomposition& dec, unsigned m) {
    if (dec.r1 <= m) return std::nullopt;
    u64 lambda0 = 0;
    for (u64 lambda = 1;; ++lambda) {
        u64 ceil_val = (dec.r1 + lambda - 1) / lambda;
        if (ceil_val > m)
            lambda0 = lambda;
        else
            break;
    }
    return SPdBound{lambda0, (lambda0 + 1) * dec.r2 - 1};
}

u64 find_mu(u64 r, std::span<const u64> xs) {
    if (xs.empty() || xs.size() > r) throw std::invalid_argument("find_mu: bad subset");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] >= r || (i > 0 && xs[i] <= xs[i - 1]))
            throw std::invalid_argument("find_mu: xs not strictly increasing in [0, r)");
    }
    u64 h = xs.size();
    u64 lower = (r + h - 1) / h - 1;
    for (u64 mu = 0; mu < r; ++mu) {
        bool all_high = true, touches_top = false;
        for (u64 x : xs) {
            u64 shifted = (x + mu) % r;
            if (shifted < lower) {
                all_high = false;
                break;
            }
            if (shifted == r - 1) touches_top = true;
        }
        if (all_high && touches_top) return mu;
    }
    throw std::logic_error("find_mu: exhausted without a witness");
}

namespace {

// small-n fast path: subsets as u64 masks, Gosper enumeration (colex order)
bool mask_has_escape(u64 mask, u64 gamma_mask, unsigned n) {
    u64 full = (n == 64) ? ~0ull : ((1ull << n) - 1);
    for (unsigned j = 0; j < n; ++j) {
        u64 rot = j == 0 ? mask : (((mask << j) | (mask >> (n - j))) & full);
        if ((rot & gamma_mask) == 0) return true;
    }
    return false;
}

std::vector<u32> mask_to_subset(u64 mask, unsigned n) {
    std::vector<u32> out;
    for (unsigned i = 0; i < n; ++i)
        if (mask & (1ull << i)) out.push_back(i);
    return out;
}

// general-n escape test: shift j fails iff j = (g - b) mod n for some
// g in gamma, b in B; mark all bad shifts, then look for an unmarked one
bool subset_has_escape(std::span<const u32> subset, std::span<const u32> gamma, u64 n,
                       std::vector<u64>& stamp, u64 epoch) {
    for (u32 b : subset)
        for (u32 g : gamma) stamp[(g + n - b) % n] = epoch;
    for (u64 j = 0; j < n; ++j)
        if (stamp[j] != epoch) return true;
    return false;
}

PdCheckResult verify_exhaustive(const Decomposition& dec, std::span<const u32> gamma, u64 s,
                                unsigned jobs, u64 cap) {
    u64 n = dec.n;
    u64 total = binomial_capped(n, s, cap);
    if (total > cap) throw CapExceeded("verify_pd_like: C(n, s) exceeds cap");
    PdCheckResult res;
    if (s > n) throw std::invalid_argument("verify_pd_like: s > n");

    if (n <= 63) {
        u64 gamma_mask = 0;
        for (u32 g : gamma) gamma_mask |= 1ull << g;
        unsigned nn = static_cast<unsigned>(n);

        // strata by highest element keep colex order across workers
        struct Stratum {
            u64 first_fail = ~0ull;
            u64 tested = 0;
        };
        std::vector<Stratum> strata(n);
        std::atomic<u64> next_top{s - 1};
        auto worker = [&]() {
            while (true) {
                u64 top = next_top.fetch_add(1);
                if (top >= n) break;
                Stratum& st = strata[top];
                u64 lowbits = s - 1;
                u64 mask0 = lowbits == 0 ? 0 : (1ull << lowbits) - 1;
                u64 mask = mask0;
                u64 limit = 1ull << top;
                while (true) {
                    u64 full_mask = mask | (1ull << top);
                    ++st.tested;
                    if (!mask_has_escape(full_mask, gamma_mask, nn)) {
                        st.first_fail = full_mask;
                        break;
                    }
                    if (lowbits == 0) break;
                    // Gosper's hack: next (s-1)-bit word below 2^top
                    u64 c = mask & (~mask + 1);
                    u64 r = mask + c;
                    mask = (((r ^ mask) >> 2) / c) | r;
                    if (mask >= limit) break;
                }
            }
        };
        if (jobs <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        for (u64 top = s - 1; top < n; ++top) {
            res.subsets_tested += strata[top].tested;
            if (!res.ok && res.counterexample.empty() && strata[top].first_fail != ~0ull) {
                res.counterexample = mask_to_subset(strata[top].first_fail, nn);
            }
        }
        res.ok = res.counterexample.empty();
        return res;
    }

    // general n: odometer over index combinations in lexicographic order
    std::vector<u32> idx(s);
    for (u64 i = 0; i < s; ++i) idx[i] = static_cast<u32>(i);
    std::vector<u64> stamp(n, 0);
    u64 epoch = 0;
    while (true) {
        ++epoch;
        ++res.subsets_tested;
        if (!subset_has_escape(idx, gamma, n, stamp, epoch)) {
            res.counterexample = idx;
            res.ok = false;
            return res;
        }
        // next combination
        long i = static_cast<long>(s) - 1;
        while (i >= 0 && idx[i] == n - s + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    res.ok = true;
    return res;
}

PdCheckResult verify_sampled(const Decomposition& dec, std::span<const u32> gamma, u64 s,
                             u64 trials, u64 seed, unsigned jobs) {
    u64 n = dec.n;
    if (s > n) throw std::invalid_argument("verify_pd_like: s > n");
    PdCheckResult res;
    res.ok = true;

    std::mutex mtx;
    u64 first_fail_trial = trials;  // lowest failing trial wins, so the
    std::vector<u32> first_fail;    // counterexample is independent of jobs
    std::atomic<u64> next_trial{0};
    auto worker = [&]() {
        std::vector<u64> stamp(n, 0);
        std::vector<u64> in_set(n, 0);
        u64 epoch = 0;
        std::vector<u32> subset;
        while (true) {
            u64 trial = next_trial.fetch_add(1);
            if (trial >= trials) break;
            u64 state = derive_seed(seed, trial);
            auto rnd = [&state](u64 bound) {
                state = splitmix64(state);
                return state % bound;
            };
            // Floyd's uniform s-subset of [0, n)
            ++epoch;
            subset.clear();
            for (u64 j = n - s; j < n; ++j) {
                u64 t = rnd(j + 1);
                u64 pick = (in_set[t] == epoch) ? j : t;
                in_set[pick] = epoch;
                subset.push_back(static_cast<u32>(pick));
            }
            u64 check_epoch = trials + 1 + trial;
            if (!subset_has_escape(subset, gamma, n, stamp, check_epoch)) {
                std::lock_guard<std::mutex> lock(mtx);
                if (trial < first_fail_trial) {
                    first_fail_trial = trial;
                    std::sort(subset.begin(), subset.end());
                    first_fail = subset;
                }
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_fail_trial < trials) {
        res.ok = false;
        res.counterexample = std::move(first_fail);
    }
    res.subsets_tested = trials;
    return res;
}

}  // namespace

PdCheckResult verify_pd_like(const Decomposition& dec, std::span<const u32> iprime_exponents,
                             u64 s, PdMode mode, u64 trials, u64 seed, unsigned jobs,
                             u64 exhaustive_cap) {
    if (s == 0 || s > dec.n) throw std::invalid_argument("verify_pd_like: s out of range");
    if (mode == PdMode::exhaustive)
        return verify_exhaustive(dec, iprime_exponents, s, jobs, exhaustive_cap);
    if (trials == 0) throw std::invalid_argument("verify_pd_like: sampled mode needs trials");
    return verify_sampled(dec, iprime_exponents, s, trials, seed, jobs);
}

PermDecoder::PermDecoder(GrmCode code, Decomposition dec)
    : code_(std::move(code)), dec_(std::move(dec)) {
    if (dec_.n != code_.n) throw std::invalid_argument("PermDecoder: decomposition for wrong n");
    if (dec_.a != code_.m)
        throw std::invalid_argument("PermDecoder: decomposition not oriented (order != m)");
    info_ = build_infoset(dec_, code_.m);
    forms_ = standard_form(code_, info_);
    pd_order_ = pd_enumeration_order(dec_);
    auto bound = s_pd_bound(dec_, code_.m);
    if (!bound) throw std::invalid_argument("PermDecoder: s-bound unavailable (r1 <= m)");
    lambda0_ = bound->lambda0;
    s_bound_ = bound->s;
    t_ = code_.t;
    s_eff_ = std::min(s_bound_, t_);
}

std::optional<DecodeResult> PermDecoder::decode(std::span<const u8> received) const {
    if (received.size() != code_.len) throw std::invalid_argument("decode: bad word length");
    const SubfieldCtx& F = code_.sub;
    u64 n = code_.n;
    DecodeStats stats;

    CodeVector sigma_r(received.begin(), received.end());
    CodeVector shifted(code_.len);
    for (long outer = -1; outer < static_cast<long>(n); ++outer) {
        Perm sigma;
        if (outer >= 0) {
            sigma = realize(code_, PermSpec::translate(static_cast<u64>(outer)));
            sigma_r = apply_perm(sigma, received);
        }
        for (u32 j : pd_order_) {
            // T_alpha^j on top of sigma(r)
            shifted[0] = sigma_r[0];
            for (u64 i = 0; i < n; ++i) shifted[1 + (i + j) % n] = sigma_r[1 + i];
            ++stats.syndrome_checks;
            if (syndrome_weight(forms_.H_std, shifted, F) <= t_) {
                std::vector<u8> msg(code_.k);
                for (std::size_t r = 0; r < code_.k; ++r)
                    msg[r] = shifted[forms_.info_positions[r]];
                CodeVector cw = vec_mat_mul(msg, forms_.G_std, F);
                // undo the composite actually applied: first the shift...
                CodeVector unshifted(code_.len);
                unshifted[0] = cw[0];
                for (u64 i = 0; i < n; ++i) unshifted[1 + i] = cw[1 + (i + j) % n];
                // ...then the translation
                CodeVector decoded = outer >= 0 ? apply_perm(sigma.inverse(), unshifted)
                                                : std::move(unshifted);
                stats.success = true;
                stats.sigma_index = outer;
                stats.shift_exponent = j;
                return DecodeResult{std::move(decoded), stats};
            }
        }
    }
    return std::nullopt;
}

}  // namespace grm
