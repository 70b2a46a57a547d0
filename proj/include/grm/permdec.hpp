#ifndef GRM_PERMDEC_HPP
#define GRM_PERMDEC_HPP

#include <optional>

#include "grm/infoset.hpp"

namespace grm {

// Symbolic permutation: identity, T_alpha^j (fixes position 0, exponent
// i -> i + j), or the translation u -> u + alpha^k on the whole group.
struct PermSpec {
    enum class Kind { identity, shift, translate };
    Kind kind = Kind::identity;
    u64 param = 0;

    static PermSpec ident() { return {}; }
    static PermSpec shift(u64 j) { return {Kind::shift, j}; }
    static PermSpec translate(u64 k) { return {Kind::translate, k}; }
};

// Realized position permutation: out[map[pos]] = in[pos].
struct Perm {
    std::vector<u32> map;
    Perm inverse() const;
    Perm then(const Perm& next) const;  // apply *this first, then next
};

Perm realize(const GrmCode& code, const PermSpec& spec);
Perm realize(const GrmCode& code, std::span<const PermSpec> composition);

CodeVector apply_perm(const Perm& p, std::span<const u8> v);
CodeVector apply_perm(const GrmCode& code, const PermSpec& spec, std::span<const u8> v);

struct StandardForm {
    Mat G_std;  // restriction to info positions = identity
    Mat H_std;  // restriction to complement positions = identity
    std::vector<u32> info_positions;
    std::vector<u32> complement;
};

StandardForm standard_form(const GrmCode& code, const InfoSet& I);

u64 syndrome_weight(const Mat& H, std::span<const u8> r, const SubfieldCtx& F);
bool syndrome_test(const Mat& H_std, std::span<const u8> r, u64 t, const SubfieldCtx& F);

// All n shift exponents: first the r2 exponents realizing <T_2> (multiples
// of the CRT unit e = (0,1)), then the rest ascending.
std::vector<u32> pd_enumeration_order(const Decomposition& dec);

struct SPdBound {
    u64 lambda0 = 0;
    u64 s = 0;
};

// s = (lambda0 + 1) r2 - 1 with lambda0 = max{ lambda : m < ceil(r1/lambda) };
// empty when r1 <= m (no lambda qualifies).
std::optional<SPdBound> s_pd_bound(const Decomposition& dec, unsigned m);

// Least mu in [0, r) with ceil(r/h) - 1 <= (x_i + mu) mod r for all i and
// (x_j + mu) mod r = r - 1 for some j.  xs strictly increasing in [0, r).
u64 find_mu(u64 r, std::span<const u64> xs);

enum class PdMode { exhaustive, sampled };

struct PdCheckResult {
    bool ok = false;
    std::vector<u32> counterexample;  // first failing subset when !ok
    u64 subsets_tested = 0;
};

// Does every s-subset B of the n exponents admit a shift j with
// (B + j) mod n disjoint from the given exponent set?
PdCheckResult verify_pd_like(const Decomposition& dec, std::span<const u32> iprime_exponents,
                             u64 s, PdMode mode, u64 trials = 0, u64 seed = 0,
                             unsigned jobs = 1, u64 exhaustive_cap = 10'000'000);

struct DecodeStats {
    u64 syndrome_checks = 0;
    long sigma_index = -1;  // -1 = identity entry of Sigma
    u64 shift_exponent = 0;
    bool success = false;
};

struct DecodeResult {
    CodeVector codeword;
    DecodeStats stats;
};

// Immutable decoding context for one (code, decomposition) pair.
class PermDecoder {
public:
    PermDecoder(GrmCode code, Decomposition dec);

    const GrmCode& code() const { return code_; }
    const Decomposition& decomposition() const { return dec_; }
    const InfoSet& info_set() const { return info_; }
    const StandardForm& forms() const { return forms_; }
    const std::vector<u32>& pd_order() const { return pd_order_; }
    u64 s_bound() const { return s_bound_; }
    u64 lambda0() const { return lambda0_; }
    u64 t() const { return t_; }
    u64 s_eff() const { return s_eff_; }

    // Algorithm: outer loop over Sigma = (identity, sigma_0..sigma_{n-1}),
    // inner loop over the PD order as shifts; at the first composite pi with
    // passing syndrome, re-encode the information symbols and undo pi.
    std::optional<DecodeResult> decode(std::span<const u8> received) const;

private:
    GrmCode code_;
    Decomposition dec_;
    InfoSet info_;
    StandardForm forms_;
    std::vector<u32> pd_order_;
    u64 lambda0_ = 0, s_bound_ = 0, t_ = 0, s_eff_ = 0;
};

}  // namespace grm

#endif
