#ifndef GRM_GRM_CODE_HPP
#define GRM_GRM_CODE_HPP

#include <optional>
#include <span>
#include <string>

#include "grm/linalg.hpp"

namespace grm {

// Codewords are length-q^m sequences of canonical GF(q) indices, position
// order [0-position, alpha^0, alpha^1, ..., alpha^(n-1)].
using CodeVector = std::vector<u8>;

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CodeCaps {
    u64 build_max_len = 1u << 16;   // q^m
    u64 kernel_max_len = 256;       // dense kernel elimination above this is avoided
    u64 parity_max_bytes = 64u << 20;
    u64 dist_max_words = 1'000'000;  // brute-force enumeration budget (q^k)
    u64 auto_dist_ops = 100'000'000;  // auto-verify d when q^k * q^m is below this
};

struct GrmCode {
    u64 q = 0;
    unsigned m = 0, rho = 0;
    u64 n = 0;    // q^m - 1
    u64 len = 0;  // q^m
    std::shared_ptr<const FieldCtx> field;  // GF(q^m)
    SubfieldCtx sub;                        // GF(q) inside it
    std::vector<u64> def_set;               // sorted
    Mat gen;                                // k x len, independent rows
    std::optional<Mat> par;                 // (len-k) x len when affordable
    std::size_t k = 0;
    u64 d = 0;
    bool d_verified = false;
    u64 t = 0;  // floor((d-1)/2)
    std::string construction;  // "kernel" or "evaluation"

    u32 pos_of_elem(u32 x) const { return x == 0 ? 0 : 1 + field->log(x); }
    u32 elem_of_pos(u32 pos) const { return pos == 0 ? 0 : field->alpha_pow(pos - 1); }
};

// Sum of base-q digits of k.
unsigned q_weight(u64 k, u64 q);

// { i in [0, q^m-1) : wt_q(i) < m(q-1) - rho }
std::vector<u64> defining_set(u64 q, unsigned m, unsigned rho);

GrmCode build_code(u64 q, unsigned m, unsigned rho, const CodeCaps& caps = {});

// phi_s(v) = b*0^s + sum a_i alpha^{is}, with 0^0 = 1; returns an ambient
// field element.  Codewords are exactly the joint kernel over the defining set.
u32 check_map_phi(const GrmCode& code, u64 s, std::span<const u8> v);

// Independent construction of R_q(1,m) by trace evaluations: the all-ones
// row plus rows (Tr(alpha^j * u))_u for j = 0..m-1.  Cross-check oracle.
Mat eval_code_oracle(const SubfieldCtx& sub);

// Systematic encoding: the returned codeword restricted to info_positions
// equals msg.  Throws if the positions are not an information set.
CodeVector encode(const GrmCode& code, std::span<const u8> msg,
                  std::span<const u32> info_positions);

CodeVector puncture(std::span<const u8> v);
CodeVector extend(const SubfieldCtx& sub, std::span<const u8> v);

u64 min_distance_bruteforce(const GrmCode& code, u64 max_words = CodeCaps{}.dist_max_words);

u64 hamming_weight(std::span<const u8> v);

// Membership via the parity-check matrix when present, else via the full
// defining-set evaluation (slow path, small codes only).
bool is_codeword(const GrmCode& code, std::span<const u8> v);

}  // namespace grm

#endif
