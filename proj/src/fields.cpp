#include "grm/fields.hpp"

#include <algorithm>

namespace grm {

namespace {

constexpr u64 kMaxFieldSize = 1u << 20;  // table memory guard

// dense polynomial over GF(p), little-endian coefficients, no leading zeros
using Poly = std::vector<u32>;

void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, u64 p) {
    // f monic
    while (a.size() >= f.size()) {
        u32 lead = a.back();
        if (lead != 0) {
            std::size_t shift = a.size() - f.size();
            for (std::size_t i = 0; i < f.size(); ++i)
                a[shift + i] = static_cast<u32>((a[shift + i] + p - mul_mod(f[i], lead, p)) % p);
        }
        a.pop_back();
    }
    poly_trim(a);
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = static_cast<u32>((prod[i + j] + mul_mod(a[i], b[j], p)) % p);
        }
    }
    return poly_mod(std::move(prod), f, p);
}

Poly poly_powmod(Poly base, u64 e, const Poly& f, u64 p) {
    Poly r = {1};
    while (e > 0) {
        if (e & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    while (!b.empty()) {
        // make b monic for poly_mod
        u32 lead_inv = static_cast<u32>(pow_mod(b.back(), p - 2, p));
        Poly bm = b;
        for (auto& c : bm) c = static_cast<u32>(mul_mod(c, lead_inv, p));
        a = poly_mod(std::move(a), bm, p);
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(const Poly& f, u64 p) {
    // f monic of degree d: irreducible iff x^(p^d) = x (mod f) and
    // gcd(x^(p^(d/r)) - x, f) = 1 for every prime r | d
    unsigned d = static_cast<unsigned>(f.size() - 1);
    if (d == 0) return false;
    Poly x = {0, 1};
    if (d == 1) return true;
    // t_i = x^(p^i) mod f, computed by repeated p-th powers
    std::vector<Poly> frob(d + 1);
    frob[0] = x;
    for (unsigned i = 1; i <= d; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
    Poly diff = frob[d];
    // x^(p^d) - x == 0 ?
    Poly sub = diff;
    if (sub.size() < 2) sub.resize(2, 0);
    sub[1] = static_cast<u32>((sub[1] + p - 1) % p);
    poly_trim(sub);
    if (!sub.empty()) return false;
    for (auto [r, e] : factorize(d)) {
        (void)e;
        Poly g = frob[d / r];
        if (g.size() < 2) g.resize(2, 0);
        g[1] = static_cast<u32>((g[1] + p - 1) % p);
        poly_trim(g);
        Poly gc = poly_gcd(f, g, p);
        if (gc.size() != 1) return false;
    }
    return true;
}

u32 encode_poly(const Poly& f, u64 p, unsigned deg) {
    u64 v = 0;
    for (unsigned i = deg; i-- > 0;) v = v * p + (i < f.size() ? f[i] : 0);
    return static_cast<u32>(v);
}

Poly decode_index(u64 v, u64 p, unsigned deg) {
    Poly f(deg, 0);
    for (unsigned i = 0; i < deg; ++i) {
        f[i] = static_cast<u32>(v % p);
        v /= p;
    }
    poly_trim(f);
    return f;
}

}  // namespace

u32 FieldCtx::add(u32 a, u32 b) const {
    if (p == 2) return a ^ b;
    u64 r = 0, mult = 1, x = a, y = b;
    for (unsigned i = 0; i < deg; ++i) {
        r += (x % p + y % p) % p * mult;
        x /= p;
        y /= p;
        mult *= p;
    }
    return static_cast<u32>(r);
}

u32 FieldCtx::neg(u32 a) const {
    if (p == 2) return a;
    u64 r = 0, mult = 1, x = a;
    for (unsigned i = 0; i < deg; ++i) {
        u64 digit = x % p;
        r += (digit == 0 ? 0 : p - digit) * mult;
        x /= p;
        mult *= p;
    }
    return static_cast<u32>(r);
}

u32 FieldCtx::pow(u32 a, u64 e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    u64 g = size - 1;
    return antilog_table[mul_mod(log_table[a] % g, e % g, g)];
}

u64 FieldCtx::element_order(u32 a) const {
    if (a == 0) throw std::domain_error("order of zero");
    u64 g = size - 1;
    return g / gcd_u64(g, log_table[a]);
}

std::shared_ptr<const FieldCtx> build_field(u64 p, unsigned deg, u64 seed) {
    (void)seed;  // default path is fully deterministic
    if (!is_prime(p)) throw std::invalid_argument("build_field: p not prime");
    if (deg == 0) throw std::invalid_argument("build_field: degree 0");
    u64 size = ipow(p, deg);
    if (size > kMaxFieldSize) throw std::invalid_argument("build_field: field too large for tables");

    auto ctx = std::make_shared<FieldCtx>();
    ctx->p = p;
    ctx->deg = deg;
    ctx->size = size;

    // lexicographically first monic irreducible of degree deg
    Poly mod;
    for (u64 w = 0;; ++w) {
        Poly cand = decode_index(w, p, deg);
        cand.resize(deg + 1, 0);
        cand[deg] = 1;
        if (is_irreducible(cand, p)) {
            mod = cand;
            break;
        }
        if (w + 1 == size) throw std::logic_error("build_field: no irreducible found");
    }
    ctx->modulus.assign(deg + 1, 0);
    for (std::size_t i = 0; i < mod.size(); ++i) ctx->modulus[i] = mod[i];

    // least index with multiplicative order size-1
    u64 group = size - 1;
    auto factors = factorize(group);
    u32 prim = 0;
    for (u64 cand = 1; cand < size; ++cand) {
        Poly c = decode_index(cand, p, deg);
        bool primitive = group == 1;  // GF(2): the identity generates trivially
        if (group > 1) {
            primitive = true;
            for (auto [r, e] : factors) {
                (void)e;
                Poly t = poly_powmod(c, group / r, mod, p);
                if (t.size() == 1 && t[0] == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                Poly t = poly_powmod(c, group, mod, p);
                if (!(t.size() == 1 && t[0] == 1)) primitive = false;
            }
        }
        if (primitive) {
            prim = static_cast<u32>(cand);
            break;
        }
    }
    if (prim == 0) throw std::logic_error("build_field: no primitive element");
    ctx->prim = prim;

    ctx->antilog_table.assign(group, 0);
    ctx->log_table.assign(size, 0xffffffffu);
    ctx->log_table[0] = 0;
    Poly prim_poly = decode_index(prim, p, deg);
    Poly acc = {1};
    for (u64 e = 0; e < group; ++e) {
        u32 idx = encode_poly(acc, p, deg);
        if (idx == 0 || ctx->log_table[idx] != 0xffffffffu)
            throw std::logic_error("build_field: power table collision (modulus not irreducible?)");
        ctx->antilog_table[e] = idx;
        ctx->log_table[idx] = static_cast<u32>(e);
        acc = poly_mulmod(acc, prim_poly, mod, p);
    }
    if (!(acc.size() == 1 && acc[0] == 1))
        throw std::logic_error("build_field: primitive element order check failed");
    return ctx;
}

u8 SubfieldCtx::pow(u8 a, u64 e) const {
    u8 r = 1;
    u8 base = a;
    if (a == 0) return e == 0 ? 1 : 0;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

SubfieldCtx subfield_embed(std::shared_ptr<const FieldCtx> ambient, u64 q) {
    if (!ambient) throw std::invalid_argument("subfield_embed: null ambient");
    // q must be p^e with size = q^m
    u64 qq = q;
    unsigned e = 0;
    while (qq % ambient->p == 0) {
        qq /= ambient->p;
        ++e;
    }
    if (qq != 1 || e == 0) throw std::invalid_argument("subfield_embed: q not a power of p");
    if (ambient->deg % e != 0) throw std::invalid_argument("subfield_embed: q^m != ambient size");
    unsigned m = ambient->deg / e;

    SubfieldCtx sub;
    sub.ambient = ambient;
    sub.q = q;
    sub.m = m;
    u64 idx_exp = (ambient->size - 1) / (q - 1);
    sub.beta = ambient->antilog_table[idx_exp % (ambient->size - 1)];

    sub.members.assign(q, 0);
    sub.to_sub.assign(ambient->size, -1);
    sub.members[0] = 0;
    sub.to_sub[0] = 0;
    u32 cur = 1;
    for (u64 j = 0; j + 1 < q; ++j) {
        sub.members[1 + j] = cur;
        if (sub.to_sub[cur] != -1) throw std::logic_error("subfield_embed: beta order too small");
        sub.to_sub[cur] = static_cast<int>(1 + j);
        cur = ambient->mul(cur, sub.beta);
    }
    if (cur != 1) throw std::logic_error("subfield_embed: beta^(q-1) != 1");

    sub.add_tbl.assign(q * q, 0);
    sub.mul_tbl.assign(q * q, 0);
    sub.neg_tbl.assign(q, 0);
    sub.inv_tbl.assign(q, 0);
    for (u64 a = 0; a < q; ++a) {
        for (u64 b = 0; b < q; ++b) {
            u32 s = ambient->add(sub.members[a], sub.members[b]);
            u32 t = ambient->mul(sub.members[a], sub.members[b]);
            if (sub.to_sub[s] < 0 || sub.to_sub[t] < 0)
                throw std::logic_error("subfield_embed: members not closed");
            sub.add_tbl[a * q + b] = static_cast<u8>(sub.to_sub[s]);
            sub.mul_tbl[a * q + b] = static_cast<u8>(sub.to_sub[t]);
        }
        u32 ng = ambient->neg(sub.members[a]);
        sub.neg_tbl[a] = static_cast<u8>(sub.to_sub[ng]);
        if (a != 0) sub.inv_tbl[a] = static_cast<u8>(sub.to_sub[ambient->inv(sub.members[a])]);
    }
    return sub;
}

u32 trace(const SubfieldCtx& sub, u32 x) {
    const FieldCtx& F = *sub.ambient;
    u32 acc = 0;
    u32 cur = x;
    for (unsigned i = 0; i < sub.m; ++i) {
        acc = F.add(acc, cur);
        cur = F.pow(cur, sub.q);
    }
    if (sub.to_sub[acc] < 0) throw std::logic_error("trace: value outside subfield");
    return acc;
}

}  // namespace grm
