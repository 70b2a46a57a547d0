#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

#include "grm/grm_code.hpp"
#include "grm/infoset.hpp"
#include "grm/permdec.hpp"

using namespace grm;

namespace {

std::vector<CodeVector> all_codewords(const GrmCode& code) {
    std::vector<CodeVector> words;
    u64 count = 1;
    for (std::size_t i = 0; i < code.k; ++i) count *= code.q;
    std::vector<u8> msg(code.k, 0);
    for (u64 idx = 0; idx < count; ++idx) {
        words.push_back(vec_mat_mul(msg, code.gen, code.sub));
        std::size_t j = 0;
        while (j < code.k && ++msg[j] == code.q) msg[j++] = 0;
    }
    return words;
}

}  // namespace

TEST_SUITE("grm_code") {

TEST_CASE("q_weight") {
    CHECK(q_weight(0, 3) == 0);
    CHECK(q_weight(5, 3) == 3);  // 5 = 1*3 + 2
    for (u64 i = 0; i < 81; ++i) CHECK(q_weight(3 * i, 3) == q_weight(i, 3));
    for (u64 i = 0; i < 64; ++i) CHECK(q_weight(4 * i, 4) == q_weight(i, 4));
}

TEST_CASE("defining_set") {
    auto d = defining_set(3, 3, 1);
    CHECK(d.size() == 23);  // q^m - 1 - m
    CHECK(d.front() == 0);
    // closed under i -> q*i mod n (q-weight is digit-shift invariant)
    for (auto [q, m, rho] : {std::tuple<u64, unsigned, unsigned>{3, 3, 1}, {4, 3, 2}, {5, 2, 3}}) {
        auto ds = defining_set(q, m, rho);
        std::set<u64> dset(ds.begin(), ds.end());
        u64 n = ipow(q, m) - 1;
        for (u64 s : ds) CHECK(dset.count(s * q % n) == 1);
    }
    // rho = m(q-1): threshold 0, empty set
    CHECK(defining_set(3, 2, 4).empty());
    CHECK_THROWS_AS(defining_set(3, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(defining_set(3, 3, 7), std::invalid_argument);
    // 0 is in D whenever the threshold is positive
    for (unsigned rho = 1; rho < 6; ++rho) {
        auto ds = defining_set(3, 3, rho);
        CHECK(std::find(ds.begin(), ds.end(), 0u) != ds.end());
    }
}

TEST_CASE("first-order code parameters") {
    struct Row {
        u64 q;
        unsigned m;
        std::size_t k;
        u64 d;
    };
    for (auto row : {Row{3, 3, 4, 18}, Row{4, 2, 3, 12}, Row{5, 2, 3, 20}}) {
        GrmCode code = build_code(row.q, row.m, 1);
        CHECK(code.k == row.k);
        CHECK(code.d == row.d);
        CHECK(code.d_verified);
        CHECK(code.construction == "kernel");
    }
}

TEST_CASE("check map annihilates the code exactly on the defining set") {
    GrmCode code = build_code(3, 3, 1);
    CodeVector zero(code.len, 0);
    for (u64 s : code.def_set) CHECK(check_map_phi(code, s, zero) == 0);
    // phi_0 of the all-ones vector: q^m mod p = 0
    CodeVector ones(code.len, 1);
    CHECK(check_map_phi(code, 0, ones) == 0);
    // every generator row is killed by every s in D (the defining property)
    for (std::size_t r = 0; r < code.k; ++r) {
        CodeVector g(code.gen.row(r), code.gen.row(r) + code.len);
        for (u64 s : code.def_set) CHECK(check_map_phi(code, s, g) == 0);
    }
    // and for s outside D some codeword survives (the code is exactly the kernel)
    std::vector<bool> in_d(code.n, false);
    for (u64 s : code.def_set) in_d[s] = true;
    for (u64 s = 0; s < code.n; ++s) {
        if (in_d[s]) continue;
        bool some_row_survives = false;
        for (std::size_t r = 0; r < code.k && !some_row_survives; ++r) {
            CodeVector g(code.gen.row(r), code.gen.row(r) + code.len);
            some_row_survives = check_map_phi(code, s, g) != 0;
        }
        CHECK(some_row_survives);
    }
    CHECK_THROWS_AS(check_map_phi(code, code.n, zero), std::invalid_argument);
}

TEST_CASE("kernel construction equals the trace-evaluation oracle") {
    for (auto [q, m] : {std::pair<u64, unsigned>{3, 3}, {3, 4}, {4, 2}, {4, 3}, {5, 2}}) {
        GrmCode code = build_code(q, m, 1);
        Mat oracle = eval_code_oracle(code.sub);
        CHECK(rank(oracle, code.sub) == m + 1);
        CHECK(row_spaces_equal(code.gen, oracle, code.sub));
        for (std::size_t r = 0; r < oracle.rows; ++r) {
            CodeVector v(oracle.row(r), oracle.row(r) + code.len);
            for (u64 s : code.def_set) CHECK(check_map_phi(code, s, v) == 0);
        }
    }
}

TEST_CASE("parity annihilates generated codewords") {
    GrmCode code = build_code(3, 3, 1);
    REQUIRE(code.par.has_value());
    for (const auto& w : all_codewords(code)) CHECK(is_codeword(code, w));
}

TEST_CASE("systematic encoding") {
    GrmCode code = build_code(3, 3, 1);
    auto dec = find_decompositions(3, 3).at(0);
    InfoSet I = build_infoset(dec, 3);

    std::vector<u8> zero_msg(code.k, 0);
    CHECK(encode(code, zero_msg, I.positions) == CodeVector(code.len, 0));

    // restriction to I returns the message, for all q^k messages
    std::vector<u8> msg(code.k, 0);
    std::set<CodeVector> images;
    for (u64 idx = 0; idx < 81; ++idx) {
        CodeVector cw = encode(code, msg, I.positions);
        for (std::size_t r = 0; r < code.k; ++r) CHECK(cw[I.positions[r]] == msg[r]);
        CHECK(is_codeword(code, cw));
        images.insert(cw);
        std::size_t j = 0;
        while (j < code.k && ++msg[j] == code.q) msg[j++] = 0;
    }
    CHECK(images.size() == 81);  // injective
}

TEST_CASE("puncture and extend") {
    auto f = build_field(3, 3);
    auto sub = subfield_embed(f, 3);

    CodeVector zeros(26, 0);
    CHECK(extend(sub, zeros) == CodeVector(27, 0));

    // all-ones of length 26 over GF(3): b = -26 mod 3 = 1
    CodeVector ones(26, 1);
    CodeVector ext = extend(sub, ones);
    CHECK(ext[0] == 1);

    GrmCode code = build_code(3, 3, 1);
    for (const auto& w : all_codewords(code)) {
        CHECK(extend(code.sub, puncture(w)) == w);  // coordinates sum to zero
    }
    CHECK_THROWS_AS(puncture(CodeVector{}), std::invalid_argument);
}

TEST_CASE("brute-force distance and the weight support") {
    GrmCode code = build_code(3, 3, 1);
    CHECK(min_distance_bruteforce(code) == 18);
    for (const auto& w : all_codewords(code)) {
        u64 wt = hamming_weight(w);
        if (wt != 0) CHECK(wt >= 18);
    }
    GrmCode c42 = build_code(4, 2, 1);
    CHECK(min_distance_bruteforce(c42) == 12);
    for (const auto& w : all_codewords(c42)) {
        u64 wt = hamming_weight(w);
        if (wt != 0) CHECK(wt >= 12);
    }

    // second order at q = 3, m = 2: no first-order formula applies; the
    // enumeration gives d = 3, consistent with (q - b) q^(m - a - 1) for
    // rho = a(q-1) + b
    GrmCode r322 = build_code(3, 2, 2);
    CHECK(r322.k == 6);
    CHECK(min_distance_bruteforce(r322) == 3);
    CHECK(r322.d == 3);
    CHECK(r322.d_verified);
}

TEST_CASE("distance cap") {
    GrmCode code = build_code(3, 4, 1);  // q^k = 243
    CHECK_THROWS_AS(min_distance_bruteforce(code, 100), CapExceeded);
}

TEST_CASE("evaluation route above the kernel cap") {
    CodeCaps caps;
    caps.kernel_max_len = 64;  // force (3,5) onto the evaluation path
    GrmCode code = build_code(3, 5, 1, caps);
    CHECK(code.construction == "evaluation");
    CHECK(code.k == 6);
    REQUIRE(code.par.has_value());
    // spot-check the defining property on a sample of exponents
    for (std::size_t r = 0; r < code.k; ++r) {
        CodeVector g(code.gen.row(r), code.gen.row(r) + code.len);
        for (u64 s : {0ull, 1ull, 2ull, 7ull, 100ull, 200ull}) {
            if (q_weight(s, 3) < 5 * 2 - 1) CHECK(check_map_phi(code, s, g) == 0);
        }
    }
    // same row space as the kernel construction at the same size
    GrmCode kernel_code = build_code(3, 5, 1);
    CHECK(kernel_code.construction == "kernel");
    CHECK(row_spaces_equal(code.gen, kernel_code.gen, code.sub));
}

TEST_CASE("caps are enforced") {
    CodeCaps caps;
    caps.kernel_max_len = 64;
    CHECK_THROWS_AS(build_code(3, 5, 2, caps), CapExceeded);  // rho >= 2 needs the kernel
    caps.build_max_len = 16;
    CHECK_THROWS_AS(build_code(3, 3, 1, caps), CapExceeded);
}

TEST_CASE("affine invariance: shifts and translations preserve the code") {
    GrmCode code = build_code(3, 3, 1);
    auto words = all_codewords(code);
    for (u64 k = 0; k < code.n; ++k) {
        Perm tk = realize(code, PermSpec::translate(k));
        Perm sk = realize(code, PermSpec::shift(k));
        bool ok = true;
        for (const auto& w : words) {
            ok = ok && is_codeword(code, apply_perm(tk, w));
            ok = ok && is_codeword(code, apply_perm(sk, w));
        }
        CHECK(ok);
    }
}

TEST_CASE("affine invariance, randomized on a larger code") {
    GrmCode code = build_code(3, 5, 1);  // q^m = 243 with parity available
    REQUIRE(code.par.has_value());
    u64 state = 12345;
    auto rnd = [&state](u64 bound) {
        state = splitmix64(state);
        return state % bound;
    };
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<u8> msg(code.k);
        for (auto& x : msg) x = static_cast<u8>(rnd(code.q));
        CodeVector w = vec_mat_mul(msg, code.gen, code.sub);
        PermSpec spec =
            (trial & 1) ? PermSpec::translate(rnd(code.n)) : PermSpec::shift(rnd(code.n));
        CHECK(is_codeword(code, apply_perm(code, spec, w)));
    }
}

}
